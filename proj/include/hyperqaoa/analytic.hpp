#pragma once

#include "hyperqaoa/hypergraph.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hyperqaoa {

// Closed-form p=1 correlators J_alpha = <Z_{Q_alpha}> and the angle transfer
// rules derived from them.
//
// Sign convention (checked against the statevector simulator, which is the
// ground truth): with mixer factor exp(+i*beta*X) per qubit, the literal
// neighbourhood sum carries the phase exp(i*gamma*(C(z) - C(z'))) where z is
// the bra configuration, and the acyclic odd-subset sum carries
// (-1)^((k_q - 1)/2). Both reduce to -sin(2 beta) sin(2 gamma w) for an
// isolated one-vertex term and to -sin(4 beta) sin(2 gamma w) for an
// isolated two-vertex term.

// Upper bound on d_alpha + 2 k_alpha accepted by j_general.
inline constexpr int kGeneralSumCap = 30;

// Literal sum over the neighbourhood N(alpha), Q_alpha and the flipped copy
// z'. Exponential in d_alpha + 2 k_alpha; exists to check the starting point
// of the derivation, not to be fast.
double j_general(const Hypergraph &h, std::size_t alpha, double beta,
                 double gamma);

// Odd-subset closed form. Valid when the hypergraph has no Berge cycle of
// length 2 or 3; throws PreconditionError otherwise. When every vertex of
// Q_alpha (k >= 2) also carries its own locality-1 term, one extra product
// term is added: (-1)^k sin^k(2 beta) [cos(2 gamma w_alpha) if k is odd]
// prod_j sin(2 gamma w_{j}) prod_{r in E'(j), |r|>1} cos(2 gamma w_r).
double j_acyclic(const Hypergraph &h, std::size_t alpha, double beta,
                 double gamma);

// Same formula without the cycle check, for studying where it breaks down.
double j_acyclic_unchecked(const Hypergraph &h, std::size_t alpha, double beta,
                           double gamma);

// Leading small-gamma term: -2 gamma w sin(2 k beta).
double j_small_gamma(int locality, double weight, double beta, double gamma);

// -2 gamma sum_alpha w_alpha^2 sin(2 k_alpha beta)
double energy_small_gamma(const Hypergraph &h, double beta, double gamma);

// (pi/4) * sum w^2 k / sum w^2 k^2, the first combined peak of the
// small-gamma energy.
double beta_star(const Hypergraph &h);

struct TransferContext {
  std::vector<double> reference_gammas;
  std::vector<double> reference_betas;
  double reference_beta_star = 0.0;
  std::optional<double> reference_degree;
  std::string source_label;

  std::size_t depth() const noexcept { return reference_gammas.size(); }
  void validate() const;
};

// beta_i = (beta*(target) / beta*_ref) * beta_ref_i for every layer.
std::vector<double> transfer_betas(const TransferContext &ctx,
                                   const Hypergraph &target);

// gamma_i = gamma_ref_i / sqrt(D(target)); with the flag set,
// gamma_ref_i * sqrt(D_ref) / sqrt(D(target)).
std::vector<double> transfer_gammas(const TransferContext &ctx,
                                    const Hypergraph &target,
                                    bool normalize_by_reference_degree = false);

} // namespace hyperqaoa
