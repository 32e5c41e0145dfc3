#include "hyperqaoa/hypergraph.hpp"

#include "hyperqaoa/error.hpp"
#include "hyperqaoa/random.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace hyperqaoa {

std::uint64_t Hyperedge::mask() const noexcept {
  std::uint64_t m = 0;
  for (Vertex v : nodes)
    m |= std::uint64_t{1} << v;
  return m;
}

Hypergraph::Hypergraph(int n, std::vector<Hyperedge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1 || n_ > kMaxVertices)
    throw InvalidArgument("hypergraph vertex count must be in [1, 64], got " +
                          std::to_string(n_));
  std::set<std::uint64_t> seen;
  for (const auto &e : edges_) {
    if (e.nodes.empty())
      throw InvalidArgument("hyperedge with no vertices");
    if (e.weight == 0.0)
      throw InvalidArgument("hyperedge weight must be nonzero");
    for (std::size_t i = 0; i < e.nodes.size(); ++i) {
      if (e.nodes[i] < 0 || e.nodes[i] >= n_)
        throw InvalidArgument("hyperedge vertex " +
                              std::to_string(e.nodes[i]) + " out of range");
      if (i > 0 && e.nodes[i] <= e.nodes[i - 1])
        throw InvalidArgument("hyperedge vertices must be strictly increasing");
    }
    if (!seen.insert(e.mask()).second)
      throw InvalidArgument("duplicate hyperedge node set");
  }
}

std::vector<std::size_t> Hypergraph::locality_counts() const {
  std::vector<std::size_t> m(static_cast<std::size_t>(std::max(n_, 5)) + 1, 0);
  for (const auto &e : edges_)
    ++m[e.locality()];
  return m;
}

std::size_t Hypergraph::max_locality() const noexcept {
  std::size_t k = 0;
  for (const auto &e : edges_)
    k = std::max(k, e.locality());
  return k;
}

std::vector<std::size_t> Hypergraph::incident_edges(Vertex v) const {
  std::vector<std::size_t> out;
  const std::uint64_t bit = std::uint64_t{1} << v;
  for (std::size_t a = 0; a < edges_.size(); ++a)
    if (edges_[a].mask() & bit)
      out.push_back(a);
  return out;
}

void GenerationSpec::validate() const {
  if (n < 1 || n > kMaxVertices)
    throw InvalidArgument("generation: n must be in [1, 64]");
  if (max_retries == 0)
    throw InvalidArgument("generation: max_retries must be positive");
  bool any_nontrivial = false;
  for (const auto &[k, p] : probs) {
    if (k < 1 || k > n)
      throw InvalidArgument("generation: locality " + std::to_string(k) +
                            " outside [1, n]");
    if (!(p >= 0.0 && p <= 1.0))
      throw InvalidArgument("generation: probability outside [0, 1]");
    if (k >= 2 && p > 0.0)
      any_nontrivial = true;
  }
  if (!any_nontrivial)
    throw InvalidArgument(
        "generation: at least one locality k >= 2 needs a nonzero probability");
}

double binomial(int n, int k) {
  if (k < 0 || k > n)
    return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return std::round(r);
}

double rescale_probability(double base_p, int k, int n) {
  if (k < 1 || k > n)
    throw InvalidArgument("rescale_probability: invalid locality " +
                          std::to_string(k) + " for n=" + std::to_string(n));
  if (!(base_p >= 0.0 && base_p <= 1.0))
    throw InvalidArgument("rescale_probability: base probability outside [0, 1]");
  return std::min(1.0, base_p * binomial(n, 2) / binomial(n, k));
}

namespace {

// Visits every k-subset of {0..n-1} in lexicographic order.
template <class F> void for_each_subset(int n, int k, F &&visit) {
  std::vector<Vertex> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i)
      --i;
    if (i < 0)
      return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

Hypergraph draw(int n, const std::map<int, double> &probs, Rng &rng) {
  std::vector<Hyperedge> edges;
  for (const auto &[k, p] : probs) {
    if (p <= 0.0)
      continue;
    for_each_subset(n, k, [&](const std::vector<Vertex> &nodes) {
      if (rng.uniform() < p)
        edges.push_back({nodes, rng.coin() ? 1.0 : -1.0});
    });
  }
  return Hypergraph(n, std::move(edges));
}

} // namespace

Hypergraph sample_hypergraph(int n, const std::map<int, double> &probs,
                             std::uint64_t seed) {
  Rng rng(seed);
  return draw(n, probs, rng);
}

Hypergraph generate_random(const GenerationSpec &spec) {
  spec.validate();
  Rng rng(spec.seed);
  for (std::size_t attempt = 1; attempt <= spec.max_retries; ++attempt) {
    Hypergraph h = draw(spec.n, spec.probs, rng);
    if (is_connected(h))
      return h;
  }
  throw GenerationFailure("no connected hypergraph after " +
                              std::to_string(spec.max_retries) + " attempts",
                          spec.max_retries);
}

bool is_connected(const Hypergraph &h) {
  const int n = h.num_vertices();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      auto &p = parent[static_cast<std::size_t>(v)];
      p = parent[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  };
  std::uint64_t covered = 0;
  for (const auto &e : h.edges()) {
    covered |= e.mask();
    const int root = find(e.nodes.front());
    for (Vertex v : e.nodes)
      parent[static_cast<std::size_t>(find(v))] = root;
  }
  const std::uint64_t all =
      n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  if (covered != all)
    return false;
  const int root = find(0);
  for (int v = 1; v < n; ++v)
    if (find(v) != root)
      return false;
  return true;
}

bool has_short_berge_cycle(const Hypergraph &h, int max_len) {
  if (max_len != 2 && max_len != 3)
    throw InvalidArgument("has_short_berge_cycle: max_len must be 2 or 3");
  std::vector<std::uint64_t> masks;
  masks.reserve(h.num_edges());
  for (const auto &e : h.edges())
    masks.push_back(e.mask());
  const std::size_t m = masks.size();

  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (std::popcount(masks[a] & masks[b]) >= 2)
        return true;
  if (max_len == 2)
    return false;

  // Distinct edges A, B, C close a triangle when the pairwise intersections
  // admit a system of distinct representatives.
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const std::uint64_t ab = masks[a] & masks[b];
      if (!ab)
        continue;
      for (std::size_t c = b + 1; c < m; ++c) {
        const std::uint64_t bc = masks[b] & masks[c];
        const std::uint64_t ca = masks[c] & masks[a];
        if (!bc || !ca)
          continue;
        for (std::uint64_t x = ab; x; x &= x - 1) {
          const std::uint64_t xb = x & -x;
          for (std::uint64_t y = bc & ~xb; y; y &= y - 1) {
            const std::uint64_t yb = y & -y;
            if (ca & ~xb & ~yb)
              return true;
          }
        }
      }
    }
  return false;
}

double average_degree(const Hypergraph &h) {
  if (h.num_vertices() <= 0)
    return 0.0;
  std::size_t memberships = 0;
  for (const auto &e : h.edges())
    memberships += e.locality();
  return static_cast<double>(memberships) / h.num_vertices();
}

Neighborhood neighborhood(const Hypergraph &h, std::size_t alpha) {
  if (alpha >= h.num_edges())
    throw InvalidArgument("neighborhood: edge index out of range");
  const Hyperedge &target = h.edge(alpha);
  const std::uint64_t qmask = target.mask();

  Neighborhood nb;
  nb.edges_per_node.resize(target.locality());
  std::uint64_t around = 0;
  for (std::size_t r = 0; r < h.num_edges(); ++r) {
    if (r == alpha)
      continue;
    const std::uint64_t rm = h.edge(r).mask();
    if (!(rm & qmask))
      continue;
    around |= rm;
    for (std::size_t i = 0; i < target.locality(); ++i)
      if (rm & (std::uint64_t{1} << target.nodes[i]))
        nb.edges_per_node[i].push_back(r);
  }
  around &= ~qmask;
  for (std::uint64_t x = around; x; x &= x - 1)
    nb.vertices.push_back(std::countr_zero(x));
  return nb;
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string to_text(const Hypergraph &h) {
  std::ostringstream os;
  os << "n " << h.num_vertices() << '\n';
  for (const auto &e : h.edges()) {
    os << "w " << format_double(e.weight) << " :";
    for (Vertex v : e.nodes)
      os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

namespace {

template <class T> T parse_number(std::string_view token, std::size_t line) {
  T value{};
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw ParseError("hypergraph line " + std::to_string(line) +
                     ": bad number '" + std::string(token) + "'");
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
      ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r')
      ++j;
    if (j > i)
      out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

} // namespace

Hypergraph from_text(std::string_view text) {
  int n = -1;
  std::vector<Hyperedge> edges;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#')
      continue;
    if (tok[0] == "n") {
      if (n >= 0 || tok.size() != 2)
        throw ParseError("hypergraph line " + std::to_string(line_no) +
                         ": malformed header");
      n = parse_number<int>(tok[1], line_no);
    } else if (tok[0] == "w") {
      if (n < 0)
        throw ParseError("hypergraph: edge before 'n' header");
      if (tok.size() < 4 || tok[2] != ":")
        throw ParseError("hypergraph line " + std::to_string(line_no) +
                         ": expected 'w <weight> : <v> ...'");
      Hyperedge e;
      e.weight = parse_number<double>(tok[1], line_no);
      for (std::size_t i = 3; i < tok.size(); ++i)
        e.nodes.push_back(parse_number<int>(tok[i], line_no));
      edges.push_back(std::move(e));
    } else {
      throw ParseError("hypergraph line " + std::to_string(line_no) +
                       ": unknown record '" + std::string(tok[0]) + "'");
    }
  }
  if (n < 0)
    throw ParseError("hypergraph: missing 'n' header");
  return Hypergraph(n, std::move(edges));
}

void write_hypergraph(const Hypergraph &h, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write " + path.string());
  out << to_text(h);
}

Hypergraph read_hypergraph(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

} // namespace hyperqaoa
