#pragma once

#include "hyperqaoa/hypergraph.hpp"
#include "hyperqaoa/random.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace hyperqaoa::testing {

// Random subset of {0..n-1} of size k, sorted.
inline std::vector<Vertex> random_subset(int n, int k, Rng &rng) {
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (int i = 0; i < k; ++i)
    std::swap(all[i], all[i + static_cast<int>(rng.next() % (n - i))]);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

// Grows a hypergraph by proposing random edges of locality 1..max_k with
// +-1 weights and keeping each one only while no Berge cycle of length 2 or 3
// appears. Cycles of length 4 and more are allowed.
inline Hypergraph random_girth4(int n, int max_k, int proposals, Rng &rng) {
  std::vector<Hyperedge> edges;
  for (int t = 0; t < proposals; ++t) {
    const int k = 1 + static_cast<int>(rng.next() % std::min(max_k, n));
    Hyperedge e{random_subset(n, k, rng), rng.coin() ? 1.0 : -1.0};
    if (std::find_if(edges.begin(), edges.end(), [&](const Hyperedge &f) {
          return f.nodes == e.nodes;
        }) != edges.end())
      continue;
    edges.push_back(e);
    if (has_short_berge_cycle(Hypergraph(n, edges)))
      edges.pop_back();
  }
  return Hypergraph(n, std::move(edges));
}

// Random hypergraph that contains at least one Berge cycle of length 2 or 3.
inline Hypergraph random_cyclic(int n, int max_k, Rng &rng) {
  while (true) {
    std::vector<Hyperedge> edges;
    const int m = 3 + static_cast<int>(rng.next() % 6);
    for (int t = 0; t < m; ++t) {
      const int k = 1 + static_cast<int>(rng.next() % std::min(max_k, n));
      Hyperedge e{random_subset(n, k, rng), rng.coin() ? 1.0 : -1.0};
      if (std::none_of(edges.begin(), edges.end(), [&](const Hyperedge &f) {
            return f.nodes == e.nodes;
          }))
        edges.push_back(std::move(e));
    }
    Hypergraph h(n, std::move(edges));
    if (has_short_berge_cycle(h))
      return h;
  }
}

} // namespace hyperqaoa::testing
