#pragma once

#include "hyperqaoa/analytic.hpp"
#include "hyperqaoa/hypergraph.hpp"
#include "hyperqaoa/optimizer.hpp"
#include "hyperqaoa/transfer_context.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hyperqaoa {

enum class Scheme { Variational, GammaOnly, GammaBeta };

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view token); // "v", "g", "gb" or full names

struct ExperimentConfig {
  int n = 10;
  // Base probabilities. Every locality, k = 1 included, goes through
  // rescale_probability (clamped at 1), so base {0, 0.1, 1} at k = 1 yields
  // {0, 0.1 r_1, 1}.
  std::vector<double> p1_choices{0.0};
  std::vector<double> p2_choices{0.0, 0.2};
  std::vector<double> pk_base_choices{0.0, 0.2}; // k = 3..max_locality
  int max_locality = 4;
  std::size_t instances_per_combo = 2;
  std::vector<std::size_t> depths{1, 2, 3, 4};
  std::vector<Scheme> schemes{Scheme::Variational, Scheme::GammaOnly,
                              Scheme::GammaBeta};
  std::string transfer_context_path; // empty: derive the reference angles
  std::uint64_t master_seed = 20240901;
  std::size_t max_retries = 10000;
  bool normalize_gamma_by_reference_degree = false;
  OptimizerBudget budget;
  unsigned threads = 0;

  // Fallback reference: random 3-regular graph, all weights +1.
  int reference_n = 10;
  std::uint64_t reference_seed = 3;
  std::size_t reference_max_depth = 5;

  std::size_t max_depth() const;
  void validate() const;

  static ExperimentConfig from_text(std::string_view text);
  static ExperimentConfig load(const std::string &path);
  std::string to_text() const;

  // Paper-scale sweep: n = 14, p2 in {0, .1, .2, .3}, same bases for k = 3..5,
  // three p1 choices, four instances, p = 1..5, 100/1000 starts.
  static ExperimentConfig paper_scale();
};

// One probability per locality 1..max_locality (index 0 is k = 1).
struct Combo {
  std::size_t index = 0;
  std::vector<double> probabilities;
};

// Cartesian product of the choices with every all-zero-for-k>=2 combination
// removed. Counting only; nothing is generated.
std::vector<Combo> enumerate_combos(const ExperimentConfig &cfg);

struct DatasetEntry {
  std::string instance_id;
  Combo combo;
  std::uint64_t seed = 0;
  Hypergraph graph;
};

struct Dataset {
  std::vector<DatasetEntry> entries;

  std::string manifest_text() const;
  void write(const std::filesystem::path &dir) const;
  static Dataset read(const std::filesystem::path &dir);
};

Dataset build_dataset(const ExperimentConfig &cfg);

struct ExperimentRecord {
  std::string instance_id;
  int n = 0;
  std::vector<std::size_t> m; // m_1..m_5
  double degree = 0.0;
  double beta_star = 0.0;
  Scheme scheme = Scheme::Variational;
  std::size_t p = 0;
  double energy = 0.0;
  double e_min = 0.0;
  double ratio = 0.0;
  std::string method;
  std::uint64_t seed = 0;
  std::vector<double> gammas;
  std::vector<double> betas;

  bool only_low_locality() const; // m_k = 0 for every k >= 3
};

// Evaluates the reference angles rescaled for `h`. No optimization happens:
// GAMMA_ONLY keeps the reference betas, GAMMA_BETA rescales both.
ExperimentRecord run_transfer(const Hypergraph &h, Scheme scheme,
                              std::size_t p, const TransferLibrary &library,
                              const ExperimentConfig &cfg);

// Single (instance, scheme, depth) cell. VARIATIONAL optimizes depths 1..p
// with bootstrapping and reports depth p.
ExperimentRecord run_scheme(const Hypergraph &h, Scheme scheme, std::size_t p,
                            const TransferLibrary &library,
                            const ExperimentConfig &cfg);

// Every scheme and depth in cfg for one instance, optimizing once.
std::vector<ExperimentRecord> run_instance(const DatasetEntry &entry,
                                           const TransferLibrary &library,
                                           const ExperimentConfig &cfg);

std::vector<ExperimentRecord> run_experiment(const Dataset &dataset,
                                             const TransferLibrary &library,
                                             const ExperimentConfig &cfg);

// Random simple connected 3-regular graph with unit weights.
Hypergraph random_regular3(int n, std::uint64_t seed);

// Reference angles for p = 1..max_depth optimized on random_regular3(n, seed),
// moved by exact symmetries of that instance to the representative with
// every gamma and beta in [-pi/4, pi/4) and gamma_1 >= 0.
TransferLibrary derive_reference_library(int n, std::uint64_t seed,
                                         std::size_t max_depth,
                                         const OptimizerBudget &budget);

// Loads cfg.transfer_context_path, or derives the fallback when empty.
TransferLibrary resolve_reference_library(const ExperimentConfig &cfg);

} // namespace hyperqaoa
