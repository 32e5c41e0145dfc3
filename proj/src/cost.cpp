#include "hyperqaoa/cost.hpp"

#include "hyperqaoa/error.hpp"

#include <algorithm>
#include <bit>

namespace hyperqaoa {

double cost(const Hypergraph &h, std::span<const int> spins) {
  if (spins.size() != static_cast<std::size_t>(h.num_vertices()))
    throw DimensionError("cost: spin vector has length " +
                         std::to_string(spins.size()) + ", hypergraph has n=" +
                         std::to_string(h.num_vertices()));
  double total = 0.0;
  for (const auto &e : h.edges()) {
    int sign = 1;
    for (Vertex v : e.nodes)
      sign *= spins[static_cast<std::size_t>(v)];
    total += e.weight * sign;
  }
  return total;
}

double cost_of_index(const Hypergraph &h, BasisIndex index) {
  double total = 0.0;
  for (const auto &e : h.edges())
    total += (std::popcount(index & e.mask()) & 1) ? -e.weight : e.weight;
  return total;
}

std::vector<int> spins_from_index(BasisIndex index, int n) {
  std::vector<int> z(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    z[static_cast<std::size_t>(j)] = ((index >> j) & 1) ? -1 : 1;
  return z;
}

CostTable::CostTable(const Hypergraph &h, int cap) : n_(h.num_vertices()) {
  if (n_ > cap)
    throw CapacityError("cost table: n=" + std::to_string(n_) +
                        " exceeds enumeration cap " + std::to_string(cap));
  const std::size_t dim = std::size_t{1} << n_;
  values_.assign(dim, 0.0);
  for (const auto &e : h.edges()) {
    const std::uint64_t mask = e.mask();
    const double w = e.weight;
    for (std::size_t z = 0; z < dim; ++z)
      values_[z] += (std::popcount(z & mask) & 1) ? -w : w;
  }

  levels_ = values_;
  std::sort(levels_.begin(), levels_.end());
  levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
  level_index_.resize(dim);
  for (std::size_t z = 0; z < dim; ++z) {
    auto it = std::lower_bound(levels_.begin(), levels_.end(), values_[z]);
    level_index_[z] = static_cast<std::uint32_t>(it - levels_.begin());
  }
}

EnergySpectrumSummary extreme_energies(const CostTable &table) {
  const auto &v = table.values();
  EnergySpectrumSummary s;
  s.e_min = v[0];
  s.e_max = v[0];
  for (std::size_t z = 1; z < v.size(); ++z) {
    if (v[z] < s.e_min) {
      s.e_min = v[z];
      s.argmin = z;
    }
    s.e_max = std::max(s.e_max, v[z]);
  }
  return s;
}

EnergySpectrumSummary extreme_energies(const Hypergraph &h, int cap) {
  return extreme_energies(CostTable(h, cap));
}

} // namespace hyperqaoa
