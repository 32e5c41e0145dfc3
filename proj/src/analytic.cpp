#include "hyperqaoa/analytic.hpp"

#include "hyperqaoa/error.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>

namespace hyperqaoa {

double j_general(const Hypergraph &h, std::size_t alpha, double beta,
                 double gamma) {
  if (alpha >= h.num_edges())
    throw InvalidArgument("j_general: edge index out of range");
  const Hyperedge &target = h.edge(alpha);
  const Neighborhood nb = neighborhood(h, alpha);
  const int k = static_cast<int>(target.locality());
  const int d = static_cast<int>(nb.degree());
  if (d + 2 * k > kGeneralSumCap)
    throw CapacityError("j_general: d + 2k = " + std::to_string(d + 2 * k) +
                        " exceeds " + std::to_string(kGeneralSumCap));

  // Local bit layout: bits [0, k) are Q_alpha, bits [k, k+d) are N(alpha).
  std::vector<int> local(static_cast<std::size_t>(h.num_vertices()), -1);
  for (int i = 0; i < k; ++i)
    local[static_cast<std::size_t>(target.nodes[static_cast<std::size_t>(i)])] = i;
  for (int i = 0; i < d; ++i)
    local[static_cast<std::size_t>(nb.vertices[static_cast<std::size_t>(i)])] = k + i;

  // C_alpha: every term touching Q_alpha, alpha included.
  struct LocalTerm {
    std::uint64_t mask;
    double weight;
  };
  std::vector<LocalTerm> terms;
  const std::uint64_t qmask = target.mask();
  for (const auto &e : h.edges()) {
    if (!(e.mask() & qmask))
      continue;
    std::uint64_t m = 0;
    for (Vertex v : e.nodes)
      m |= std::uint64_t{1} << local[static_cast<std::size_t>(v)];
    terms.push_back({m, e.weight});
  }
  auto c_alpha = [&](std::uint64_t bits) {
    double c = 0.0;
    for (const auto &t : terms)
      c += (std::popcount(bits & t.mask) & 1) ? -t.weight : t.weight;
    return c;
  };

  const std::complex<double> up = std::polar(1.0, 2.0 * beta);
  const std::complex<double> down = std::polar(1.0, -2.0 * beta);
  const std::uint64_t q_count = std::uint64_t{1} << k;
  const std::uint64_t n_count = std::uint64_t{1} << d;

  std::complex<double> total = 0.0;
  for (std::uint64_t zq = 0; zq < q_count; ++zq)
    for (std::uint64_t flip = 0; flip < q_count; ++flip) {
      // prod_j (e^{2i beta} z_j + e^{-2i beta} z'_j)
      std::complex<double> mix = 1.0;
      for (int j = 0; j < k; ++j) {
        const double zj = ((zq >> j) & 1) ? -1.0 : 1.0;
        const double zpj = ((flip >> j) & 1) ? -zj : zj;
        mix *= up * zj + down * zpj;
      }
      std::complex<double> phases = 0.0;
      for (std::uint64_t zn = 0; zn < n_count; ++zn) {
        const std::uint64_t z = zq | (zn << k);
        const std::uint64_t zp = z ^ flip;
        phases += std::polar(1.0, gamma * (c_alpha(z) - c_alpha(zp)));
      }
      total += mix * phases;
    }
  total *= std::ldexp(1.0, -(d + 2 * k));
  if (std::abs(total.imag()) >= 1e-9)
    throw Error("j_general: imaginary residue " + std::to_string(total.imag()));
  return total.real();
}

double j_acyclic_unchecked(const Hypergraph &h, std::size_t alpha, double beta,
                           double gamma) {
  if (alpha >= h.num_edges())
    throw InvalidArgument("j_acyclic: edge index out of range");
  const Hyperedge &target = h.edge(alpha);
  const Neighborhood nb = neighborhood(h, alpha);
  const std::size_t k = target.locality();

  // a_j = prod_{r in E'(j)} cos(2 gamma w_r); the subset sum over q only
  // needs the elementary symmetric polynomials e_m(a_1..a_k).
  std::vector<double> esym(k + 1, 0.0);
  esym[0] = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    double a = 1.0;
    for (std::size_t r : nb.edges_per_node[j])
      a *= std::cos(2.0 * gamma * h.edge(r).weight);
    for (std::size_t m = j + 1; m > 0; --m)
      esym[m] += a * esym[m - 1];
  }

  const double c = std::cos(2.0 * beta);
  const double s = std::sin(2.0 * beta);
  double sum = 0.0;
  for (std::size_t m = 1; m <= k; m += 2) {
    const double sign = ((m - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    sum += sign * std::pow(c, static_cast<double>(k - m)) *
           std::pow(s, static_cast<double>(m)) * esym[m];
  }
  double value = -std::sin(2.0 * gamma * target.weight) * sum;

  // Locality-1 terms on every vertex of Q_alpha cancel the all-Y string
  // exactly, which the odd-subset sum does not account for.
  if (k >= 2) {
    double product = 1.0;
    for (std::size_t j = 0; j < k && product != 0.0; ++j) {
      bool has_single = false;
      for (std::size_t r : nb.edges_per_node[j]) {
        const double theta = 2.0 * gamma * h.edge(r).weight;
        if (h.edge(r).locality() == 1) {
          has_single = true;
          product *= std::sin(theta);
        } else {
          product *= std::cos(theta);
        }
      }
      if (!has_single)
        product = 0.0;
    }
    if (product != 0.0) {
      const double alpha_factor =
          k % 2 == 1 ? std::cos(2.0 * gamma * target.weight) : 1.0;
      value += (k % 2 == 1 ? -1.0 : 1.0) *
               std::pow(s, static_cast<double>(k)) * alpha_factor * product;
    }
  }
  return value;
}

double j_acyclic(const Hypergraph &h, std::size_t alpha, double beta,
                 double gamma) {
  if (has_short_berge_cycle(h, 3))
    throw PreconditionError(
        "j_acyclic: hypergraph has a Berge cycle of length 2 or 3");
  return j_acyclic_unchecked(h, alpha, beta, gamma);
}

double j_small_gamma(int locality, double weight, double beta, double gamma) {
  return -2.0 * gamma * weight * std::sin(2.0 * locality * beta);
}

double energy_small_gamma(const Hypergraph &h, double beta, double gamma) {
  double sum = 0.0;
  for (const auto &e : h.edges())
    sum += e.weight * e.weight *
           std::sin(2.0 * static_cast<double>(e.locality()) * beta);
  return -2.0 * gamma * sum;
}

double beta_star(const Hypergraph &h) {
  if (h.empty())
    throw InvalidArgument("beta_star: hypergraph has no edges");
  double num = 0.0;
  double den = 0.0;
  for (const auto &e : h.edges()) {
    const double w2 = e.weight * e.weight;
    const double k = static_cast<double>(e.locality());
    num += w2 * k;
    den += w2 * k * k;
  }
  return std::numbers::pi / 4.0 * num / den;
}

void TransferContext::validate() const {
  if (reference_gammas.size() != reference_betas.size())
    throw ConfigError("transfer context: gammas and betas differ in length");
  if (!(reference_beta_star > 0.0))
    throw ConfigError("transfer context: reference beta* must be positive");
  if (reference_degree && !(*reference_degree > 0.0))
    throw ConfigError("transfer context: reference degree must be positive");
}

std::vector<double> transfer_betas(const TransferContext &ctx,
                                   const Hypergraph &target) {
  ctx.validate();
  const double scale = beta_star(target) / ctx.reference_beta_star;
  std::vector<double> out;
  out.reserve(ctx.depth());
  for (double b : ctx.reference_betas)
    out.push_back(scale * b);
  return out;
}

std::vector<double> transfer_gammas(const TransferContext &ctx,
                                    const Hypergraph &target,
                                    bool normalize_by_reference_degree) {
  ctx.validate();
  const double degree = average_degree(target);
  if (!(degree > 0.0))
    throw InvalidArgument("transfer_gammas: target average degree must be positive");
  double scale = 1.0 / std::sqrt(degree);
  if (normalize_by_reference_degree) {
    if (!ctx.reference_degree)
      throw ConfigError(
          "transfer_gammas: reference-degree normalization needs degree_ref");
    scale *= std::sqrt(*ctx.reference_degree);
  }
  std::vector<double> out;
  out.reserve(ctx.depth());
  for (double g : ctx.reference_gammas)
    out.push_back(scale * g);
  return out;
}

} // namespace hyperqaoa
