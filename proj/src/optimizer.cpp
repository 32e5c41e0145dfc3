#include "hyperqaoa/optimizer.hpp"

#include "hyperqaoa/error.hpp"
#include "hyperqaoa/parallel.hpp"
#include "hyperqaoa/random.hpp"

#include <cmath>
#include <deque>
#include <memory>
#include <numbers>

namespace hyperqaoa {

std::string_view method_name(Method m) {
  switch (m) {
  case Method::Grid:
    return "grid";
  case Method::Multistart:
    return "multistart";
  case Method::Bootstrap:
    return "bootstrap";
  }
  return "unknown";
}

namespace {

void require_edges(const Hypergraph &h) {
  if (h.empty())
    throw InvalidArgument("optimizer: hypergraph has no edges");
}

using Vec = std::vector<double>;

double dot(const Vec &a, const Vec &b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

// Flattened parameters: gammas then betas.
class Objective {
public:
  Objective(QaoaSimulator &sim, std::size_t p) : sim_(sim), p_(p) {}

  double operator()(const Vec &x) {
    ++evaluations;
    return sim_.energy(std::span(x.data(), p_), std::span(x.data() + p_, p_));
  }

  void gradient(Vec &x, double h, Vec &g) {
    g.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double keep = x[i];
      x[i] = keep + h;
      const double fp = (*this)(x);
      x[i] = keep - h;
      const double fm = (*this)(x);
      x[i] = keep;
      g[i] = (fp - fm) / (2.0 * h);
    }
  }

  std::size_t evaluations = 0;

private:
  QaoaSimulator &sim_;
  std::size_t p_;
};

AngleSchedule unflatten(const Vec &x, std::size_t p) {
  return {Vec(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(p)),
          Vec(x.begin() + static_cast<std::ptrdiff_t>(p), x.end())};
}

} // namespace

OptimizationResult grid_search_p1(const Hypergraph &h, int grid_points) {
  require_edges(h);
  if (grid_points < 8)
    throw InvalidArgument("grid_search_p1: need at least 8 grid points");
  QaoaSimulator sim(h);
  const double dg = (AngleBox::gamma_hi - AngleBox::gamma_lo) / grid_points;
  const double db = (AngleBox::beta_hi - AngleBox::beta_lo) / grid_points;
  OptimizationResult best;
  best.method = Method::Grid;
  best.energy = std::numeric_limits<double>::infinity();
  double g = 0.0, b = 0.0;
  for (int i = 0; i < grid_points; ++i)
    for (int j = 0; j < grid_points; ++j) {
      g = AngleBox::gamma_lo + i * dg;
      b = AngleBox::beta_lo + j * db;
      const double e = sim.energy(std::span(&g, 1), std::span(&b, 1));
      if (e < best.energy) {
        best.energy = e;
        best.schedule = {{g}, {b}};
      }
    }
  best.evaluations = static_cast<std::size_t>(grid_points) * grid_points;
  return best;
}

OptimizationResult local_minimize(QaoaSimulator &sim, AngleSchedule start,
                                  const OptimizerBudget &budget) {
  start.validate();
  const std::size_t p = start.depth();
  const std::size_t dim = 2 * p;
  Objective f(sim, p);

  Vec x(start.gammas);
  x.insert(x.end(), start.betas.begin(), start.betas.end());
  double fx = f(x);

  Vec g, g_new, dir(dim), x_new(dim);
  std::deque<Vec> s_hist, y_hist;
  std::deque<double> rho_hist;
  const std::size_t gradient_cost = 2 * dim;

  if (f.evaluations + gradient_cost <= budget.max_evaluations)
    f.gradient(x, budget.fd_step, g);

  while (!g.empty() && f.evaluations + gradient_cost < budget.max_evaluations) {
    if (std::sqrt(dot(g, g)) < 1e-14)
      break;

    // Two-loop recursion.
    dir = g;
    std::vector<double> a(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      a[i] = rho_hist[i] * dot(s_hist[i], dir);
      for (std::size_t j = 0; j < dim; ++j)
        dir[j] -= a[i] * y_hist[i][j];
    }
    double scale = 1.0;
    if (!s_hist.empty())
      scale = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
    else
      scale = std::min(1.0, 0.1 / std::sqrt(dot(g, g)));
    for (double &v : dir)
      v *= scale;
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double bcoef = rho_hist[i] * dot(y_hist[i], dir);
      for (std::size_t j = 0; j < dim; ++j)
        dir[j] += s_hist[i][j] * (a[i] - bcoef);
    }
    for (double &v : dir)
      v = -v;
    double slope = dot(g, dir);
    if (slope >= 0.0) {
      // Not a descent direction; restart from steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      const double sd = std::min(1.0, 0.1 / std::sqrt(dot(g, g)));
      for (std::size_t j = 0; j < dim; ++j)
        dir[j] = -sd * g[j];
      slope = dot(g, dir);
    }

    // Backtracking (Armijo); only strictly lower energies are accepted.
    double step = 1.0;
    double f_new = fx;
    bool accepted = false;
    while (f.evaluations + gradient_cost + 1 <= budget.max_evaluations) {
      for (std::size_t j = 0; j < dim; ++j)
        x_new[j] = x[j] + step * dir[j];
      f_new = f(x_new);
      if (f_new < fx && f_new <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
      if (step < 1e-12)
        break;
    }
    if (!accepted)
      break;

    const double delta = fx - f_new;
    f.gradient(x_new, budget.fd_step, g_new);
    Vec s(dim), y(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      s[j] = x_new[j] - x[j];
      y[j] = g_new[j] - g[j];
    }
    const double sy = dot(s, y);
    if (sy > 1e-16) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > budget.lbfgs_memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    x = x_new;
    fx = f_new;
    g = g_new;
    if (delta < budget.tolerance)
      break;
  }

  OptimizationResult out;
  out.schedule = unflatten(x, p);
  out.energy = fx;
  out.evaluations = f.evaluations;
  return out;
}

OptimizationResult multistart_local(const Hypergraph &h, std::size_t p,
                                    std::size_t n_starts, std::uint64_t seed,
                                    const OptimizerBudget &budget) {
  require_edges(h);
  if (p < 1 || n_starts < 1)
    throw InvalidArgument("multistart_local: need p >= 1 and n_starts >= 1");
  auto table = std::make_shared<const CostTable>(h, kMaxQubits);
  std::vector<OptimizationResult> runs(n_starts);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(budget.threads), n_starts));
  std::vector<std::unique_ptr<QaoaSimulator>> sims;
  for (unsigned w = 0; w < workers; ++w)
    sims.push_back(std::make_unique<QaoaSimulator>(table));

  parallel_for(n_starts, workers, [&](unsigned w, std::size_t i) {
    Rng rng(derive_seed(seed, i));
    AngleSchedule start;
    for (std::size_t l = 0; l < p; ++l)
      start.gammas.push_back(rng.uniform(AngleBox::gamma_lo, AngleBox::gamma_hi));
    for (std::size_t l = 0; l < p; ++l)
      start.betas.push_back(rng.uniform(AngleBox::beta_lo, AngleBox::beta_hi));
    runs[i] = local_minimize(*sims[w], std::move(start), budget);
  });

  OptimizationResult best = runs[0];
  std::size_t evaluations = 0;
  for (const auto &r : runs) {
    evaluations += r.evaluations;
    if (r.energy < best.energy)
      best = r;
  }
  best.method = Method::Multistart;
  best.evaluations = evaluations;
  best.seed = seed;
  return best;
}

AngleSchedule bootstrap_start(const AngleSchedule &prev,
                              BootstrapStrategy strategy) {
  prev.validate();
  const std::size_t p = prev.depth();
  if (strategy == BootstrapStrategy::AppendZero) {
    AngleSchedule next = prev;
    next.gammas.push_back(0.0);
    next.betas.push_back(0.0);
    return next;
  }
  // Piecewise-linear resampling of the layer-index-normalized curves from
  // p points onto p+1 points.
  auto resample = [p](const Vec &v) {
    Vec out(p + 1);
    for (std::size_t j = 0; j <= p; ++j) {
      if (p == 1) {
        out[j] = v[0];
        continue;
      }
      const double t = static_cast<double>(j) / static_cast<double>(p) *
                       static_cast<double>(p - 1);
      const std::size_t lo = std::min(static_cast<std::size_t>(t), p - 2);
      const double frac = t - static_cast<double>(lo);
      out[j] = v[lo] + frac * (v[lo + 1] - v[lo]);
    }
    return out;
  };
  return {resample(prev.gammas), resample(prev.betas)};
}

OptimizationResult bootstrap_extend(const Hypergraph &h,
                                    const OptimizationResult &prev,
                                    BootstrapStrategy strategy,
                                    const OptimizerBudget &budget) {
  require_edges(h);
  QaoaSimulator sim(h);
  OptimizationResult out =
      local_minimize(sim, bootstrap_start(prev.schedule, strategy), budget);
  out.method = Method::Bootstrap;
  out.seed = prev.seed;
  return out;
}

OptimizationResult best_schedule(const Hypergraph &h, std::size_t p,
                                 const OptimizerBudget &budget,
                                 std::uint64_t seed,
                                 const std::optional<OptimizationResult> &prev) {
  require_edges(h);
  if (p < 1)
    throw InvalidArgument("best_schedule: depth must be at least 1");
  std::vector<OptimizationResult> candidates;
  if (p == 1)
    candidates.push_back(grid_search_p1(h, budget.grid_points));
  candidates.push_back(
      multistart_local(h, p, budget.starts_for(p), derive_seed(seed, p), budget));
  if (prev && prev->schedule.depth() + 1 == p) {
    candidates.push_back(
        bootstrap_extend(h, *prev, BootstrapStrategy::AppendZero, budget));
    candidates.push_back(
        bootstrap_extend(h, *prev, BootstrapStrategy::Interpolate, budget));
  }
  std::size_t total = 0;
  const OptimizationResult *best = &candidates.front();
  for (const auto &c : candidates) {
    total += c.evaluations;
    if (c.energy < best->energy)
      best = &c;
  }
  OptimizationResult out = *best;
  out.evaluations = total;
  out.seed = seed;
  return out;
}

std::vector<OptimizationResult> optimize_depths(const Hypergraph &h,
                                                std::size_t max_depth,
                                                const OptimizerBudget &budget,
                                                std::uint64_t seed) {
  std::vector<OptimizationResult> out;
  std::optional<OptimizationResult> prev;
  for (std::size_t p = 1; p <= max_depth; ++p) {
    out.push_back(best_schedule(h, p, budget, seed, prev));
    prev = out.back();
  }
  return out;
}

} // namespace hyperqaoa
