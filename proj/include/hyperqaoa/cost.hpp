#pragma once

#include "hyperqaoa/hypergraph.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hyperqaoa {

// Basis index convention: bit j of the index is qubit j, and bit b maps to
// the spin z = 1 - 2b.
using BasisIndex = std::uint64_t;

inline constexpr int kDefaultEnumerationCap = 26;

// C(z) = sum_alpha w_alpha prod_{j in Q_alpha} z_j for a +-1 spin vector.
double cost(const Hypergraph &h, std::span<const int> spins);

// Same value for the spin configuration encoded by a basis index.
double cost_of_index(const Hypergraph &h, BasisIndex index);

std::vector<int> spins_from_index(BasisIndex index, int n);

// Diagonal of the problem Hamiltonian over all 2^n basis states, plus a
// compressed view: the distinct values ("levels") and each state's level.
// Integer weights give at most 2m+1 levels, which lets the phase layer
// evaluate one complex exponential per level instead of per state.
class CostTable {
public:
  explicit CostTable(const Hypergraph &h, int cap = kDefaultEnumerationCap);

  int num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return values_.size(); }

  const std::vector<double> &values() const noexcept { return values_; }
  const std::vector<double> &levels() const noexcept { return levels_; }
  const std::vector<std::uint32_t> &level_index() const noexcept {
    return level_index_;
  }

  double operator[](BasisIndex z) const { return values_[z]; }

private:
  int n_;
  std::vector<double> values_;
  std::vector<double> levels_;
  std::vector<std::uint32_t> level_index_;
};

struct EnergySpectrumSummary {
  double e_min = 0.0;
  double e_max = 0.0;
  BasisIndex argmin = 0; // lowest index among ties
};

EnergySpectrumSummary extreme_energies(const Hypergraph &h,
                                       int cap = kDefaultEnumerationCap);
EnergySpectrumSummary extreme_energies(const CostTable &table);

} // namespace hyperqaoa
