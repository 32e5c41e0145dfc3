#pragma once

#include "hyperqaoa/hypergraph.hpp"
#include "hyperqaoa/simulator.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace hyperqaoa {

// Declaration order is also the tie-break order across methods.
enum class Method { Grid, Multistart, Bootstrap };

std::string_view method_name(Method m);

struct OptimizationResult {
  AngleSchedule schedule;
  double energy = 0.0;
  Method method = Method::Multistart;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
};

struct OptimizerBudget {
  int grid_points = 64;
  std::size_t starts_p1 = 30;
  std::size_t starts_higher = 100;
  double fd_step = 1e-6;
  double tolerance = 1e-10;       // stop when one step changes energy less
  std::size_t max_evaluations = 2000; // per local run
  std::size_t lbfgs_memory = 6;
  unsigned threads = 0;           // 0: hardware concurrency

  std::size_t starts_for(std::size_t p) const {
    return p <= 1 ? starts_p1 : starts_higher;
  }
};

// Search box: gamma in [-pi, pi), beta in [-pi/2, pi/2) per layer.
struct AngleBox {
  static constexpr double gamma_lo = -3.14159265358979323846;
  static constexpr double gamma_hi = 3.14159265358979323846;
  static constexpr double beta_lo = -1.57079632679489661923;
  static constexpr double beta_hi = 1.57079632679489661923;
};

OptimizationResult grid_search_p1(const Hypergraph &h, int grid_points);

// Limited-memory BFGS on central finite-difference gradients with a
// backtracking line search that only accepts decreasing energies.
OptimizationResult local_minimize(QaoaSimulator &sim, AngleSchedule start,
                                  const OptimizerBudget &budget);

OptimizationResult multistart_local(const Hypergraph &h, std::size_t p,
                                    std::size_t n_starts, std::uint64_t seed,
                                    const OptimizerBudget &budget = {});

enum class BootstrapStrategy { AppendZero, Interpolate };

// Depth-(p+1) starting schedule built from a depth-p schedule.
AngleSchedule bootstrap_start(const AngleSchedule &prev,
                              BootstrapStrategy strategy);

OptimizationResult bootstrap_extend(const Hypergraph &h,
                                    const OptimizationResult &prev,
                                    BootstrapStrategy strategy,
                                    const OptimizerBudget &budget = {});

// Grid (p=1 only), multistart and, when `prev` is the depth-(p-1) best,
// bootstrap with both strategies; the lowest energy wins.
OptimizationResult best_schedule(const Hypergraph &h, std::size_t p,
                                 const OptimizerBudget &budget,
                                 std::uint64_t seed,
                                 const std::optional<OptimizationResult> &prev =
                                     std::nullopt);

// best_schedule for p = 1..max_depth, each depth bootstrapped from the last.
std::vector<OptimizationResult> optimize_depths(const Hypergraph &h,
                                                std::size_t max_depth,
                                                const OptimizerBudget &budget,
                                                std::uint64_t seed);

} // namespace hyperqaoa
