#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hyperqaoa {

using Vertex = int;

// Largest vertex count a Hypergraph can hold; vertex sets are packed into
// 64-bit masks throughout.
inline constexpr int kMaxVertices = 64;

struct Hyperedge {
  std::vector<Vertex> nodes; // strictly increasing
  double weight = 1.0;

  std::size_t locality() const noexcept { return nodes.size(); }
  std::uint64_t mask() const noexcept;

  bool operator==(const Hyperedge &) const = default;
};

class Hypergraph {
public:
  Hypergraph() = default;

  // Validates every edge (nonempty, sorted, in range, nonzero weight) and
  // rejects duplicate node sets.
  Hypergraph(int n, std::vector<Hyperedge> edges);

  int num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  const std::vector<Hyperedge> &edges() const noexcept { return edges_; }
  const Hyperedge &edge(std::size_t alpha) const { return edges_.at(alpha); }

  // m_k indexed by locality k (index 0 unused), sized max(n, 5) + 1 so
  // callers can always read m_1..m_5.
  std::vector<std::size_t> locality_counts() const;
  std::size_t max_locality() const noexcept;

  // Indices of every edge containing vertex v.
  std::vector<std::size_t> incident_edges(Vertex v) const;

  bool operator==(const Hypergraph &) const = default;

private:
  int n_ = 0;
  std::vector<Hyperedge> edges_;
};

struct GenerationSpec {
  int n = 0;
  std::map<int, double> probs; // locality -> inclusion probability
  std::uint64_t seed = 0;
  std::size_t max_retries = 10000;

  void validate() const;
};

// min(1, base_p * C(n,2) / C(n,k)).
double rescale_probability(double base_p, int k, int n);

double binomial(int n, int k);

// Independent inclusion of every k-subset with probability p_k and a
// uniform +-1 weight, redrawn until connected. Pure in `spec`.
Hypergraph generate_random(const GenerationSpec &spec);

// One draw of the inclusion process with no connectivity requirement.
Hypergraph sample_hypergraph(int n, const std::map<int, double> &probs,
                             std::uint64_t seed);

bool is_connected(const Hypergraph &h);

// Brute force over edge pairs (length 2) and triples (length 3). Scales as
// O(m^3) and is meant for desk-scale instances only.
bool has_short_berge_cycle(const Hypergraph &h, int max_len = 3);

// D = sum_k k * m_k / n.
double average_degree(const Hypergraph &h);

struct Neighborhood {
  // N(alpha): vertices sharing an edge with Q_alpha, excluding Q_alpha.
  std::vector<Vertex> vertices;
  // E'(j) for each j in Q_alpha (same order as the edge's nodes): edges
  // containing j other than alpha itself.
  std::vector<std::vector<std::size_t>> edges_per_node;

  std::size_t degree() const noexcept { return vertices.size(); }
};

Neighborhood neighborhood(const Hypergraph &h, std::size_t alpha);

// Line format: "n <int>" then "w <weight> : <v1> <v2> ..." per edge.
std::string to_text(const Hypergraph &h);
Hypergraph from_text(std::string_view text);

void write_hypergraph(const Hypergraph &h, const std::filesystem::path &path);
Hypergraph read_hypergraph(const std::filesystem::path &path);

std::string format_double(double value);

} // namespace hyperqaoa
