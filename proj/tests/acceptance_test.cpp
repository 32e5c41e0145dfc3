// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Config files are read from the source tree.

#include "hyperqaoa/analytic.hpp"
#include "hyperqaoa/config.hpp"
#include "hyperqaoa/experiments.hpp"
#include "hyperqaoa/report.hpp"
#include "hyperqaoa/simulator.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <string>

using namespace hyperqaoa;
using hyperqaoa::testing::random_cyclic;
using hyperqaoa::testing::random_girth4;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char *f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string config_path(const char *name) {
  return std::string(HYPERQAOA_SOURCE_DIR) + "/configs/" + name;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int failures = 0;

void report(int id, const char *name, double limit_s,
            const std::function<Outcome()> &body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double t = seconds_since(t0);
  if (limit_s > 0 && t >= limit_s) {
    o.pass = false;
    o.detail += "; over the " + fmt("%.0f", limit_s) + " s limit";
  }
  if (!o.pass)
    ++failures;
  std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL",
              id, name, o.detail.c_str(), t);
  std::fflush(stdout);
}

Hypergraph uniform_instance(int k, std::uint64_t seed) {
  const int n = 10;
  const auto drawn =
      sample_hypergraph(n, {{k, rescale_probability(0.3, k, n)}}, seed);
  std::vector<Hyperedge> edges = drawn.edges();
  for (auto &e : edges)
    e.weight = 1.0;
  return Hypergraph(n, std::move(edges));
}

std::map<std::pair<Scheme, std::size_t>, double>
means(const std::vector<ExperimentRecord> &records, RecordFilter filter) {
  std::map<std::pair<Scheme, std::size_t>, double> out;
  for (const auto &row : aggregate_report(records, filter))
    out[{row.scheme, row.p}] = row.mean_ratio;
  return out;
}

std::string series(const std::map<std::pair<Scheme, std::size_t>, double> &m,
                   Scheme s) {
  std::string out = std::string(scheme_name(s)) + " [";
  bool first = true;
  for (const auto &[key, v] : m)
    if (key.first == s) {
      out += (first ? "" : ", ") + fmt("%.4f", v);
      first = false;
    }
  return out + "]";
}

std::string read_tree(const std::filesystem::path &dir) {
  std::string all;
  std::vector<std::filesystem::path> files;
  for (const auto &e : std::filesystem::recursive_directory_iterator(dir))
    if (e.is_regular_file())
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto &f : files)
    all += std::filesystem::relative(f, dir).string() + "\n" +
           read_text_file(f.string());
  return all;
}

} // namespace

int main() {
  report(1, "acyclic closed form vs simulator", 60, [] {
    Rng rng(20240901);
    double worst = 0;
    std::size_t compared = 0;
    for (int g = 0; g < 200; ++g) {
      const int n = 2 + static_cast<int>(rng.next() % 9);
      const auto h = random_girth4(n, 5, 14, rng);
      if (has_short_berge_cycle(h))
        return Outcome{false, "generator produced a short Berge cycle"};
      for (int t = 0; t < 10; ++t) {
        const double gamma = rng.uniform(-pi, pi);
        const double beta = rng.uniform(-pi / 2, pi / 2);
        const auto state = evolve(h, {{gamma}, {beta}});
        for (std::size_t a = 0; a < h.num_edges(); ++a) {
          worst = std::max(worst, std::abs(j_acyclic(h, a, beta, gamma) -
                                           correlator(state, h.edge(a).nodes)));
          ++compared;
        }
      }
    }
    return Outcome{worst < 1e-9, "200 graphs, " + std::to_string(compared) +
                                     " correlators, max error " +
                                     fmt("%.2e", worst)};
  });

  report(2, "general neighbourhood sum vs simulator", 120, [] {
    Rng rng(20240902);
    double worst = 0;
    std::size_t compared = 0;
    for (int g = 0; g < 200; ++g) {
      const int n = 3 + static_cast<int>(rng.next() % 6);
      const auto h = random_cyclic(n, 5, rng);
      for (int t = 0; t < 10; ++t) {
        const double gamma = rng.uniform(-pi, pi);
        const double beta = rng.uniform(-pi / 2, pi / 2);
        const auto state = evolve(h, {{gamma}, {beta}});
        for (std::size_t a = 0; a < h.num_edges(); ++a) {
          worst = std::max(worst, std::abs(j_general(h, a, beta, gamma) -
                                           correlator(state, h.edge(a).nodes)));
          ++compared;
        }
      }
    }
    return Outcome{worst < 1e-9, "200 cyclic graphs, " +
                                     std::to_string(compared) +
                                     " correlators, max error " +
                                     fmt("%.2e", worst)};
  });

  report(3, "beta optimum at pi/(4k) for small gamma", 60, [] {
    bool ok = true;
    std::string detail;
    for (int k = 1; k <= 5; ++k) {
      const auto h = uniform_instance(k, 100 + k);
      QaoaSimulator sim(h);
      const double target = pi / (4 * k);
      double best_b = 0, best_e = 1e300;
      const int steps = static_cast<int>(std::floor(pi / (2 * k) / 1e-4));
      for (int i = 0; i <= steps; ++i) {
        const double b = i * 1e-4;
        const double e = sim.energy({{1e-3}, {b}});
        if (e < best_e)
          best_e = e, best_b = b;
      }
      const double off = std::abs(best_b - target);
      ok = ok && off < 5e-3;
      detail += "k=" + std::to_string(k) + " (m=" +
                std::to_string(h.num_edges()) + ") off " + fmt("%.1e", off) +
                (k < 5 ? "; " : "");
    }
    return Outcome{ok, detail};
  });

  report(4, "transfer-rule arithmetic", 0, [] {
    const auto cubic = random_regular3(14, 7);
    const Hypergraph k3(9, {{{0, 1, 2}, 1.0}, {{2, 3, 4}, -1.0},
                            {{4, 5, 6}, 1.0}, {{6, 7, 8}, -1.0}});
    const double b3 = beta_star(cubic);
    const double bk = beta_star(k3);
    TransferContext ctx{{0.3}, {0.6}, b3, 3.0, "check"};
    const double scale = transfer_betas(ctx, k3)[0] / 0.6;
    const bool ok = std::abs(b3 - pi / 8) < 1e-12 &&
                    std::abs(bk - pi / 12) < 1e-12 &&
                    std::abs(scale - 2.0 / 3.0) < 1e-12;
    return Outcome{ok, "beta*(3-regular) - pi/8 = " + fmt("%.1e", b3 - pi / 8) +
                           ", beta*(k=3) - pi/12 = " + fmt("%.1e", bk - pi / 12) +
                           ", scale - 2/3 = " + fmt("%.1e", scale - 2.0 / 3.0)};
  });

  // Criteria 5 and 7 share one mixed-locality run.
  std::vector<ExperimentRecord> mixed_records;
  const auto mixed_t0 = std::chrono::steady_clock::now();
  report(5, "mixed-locality trend", 900, [&] {
    const auto cfg = ExperimentConfig::load(config_path("mixed.cfg"));
    if (cfg.n != 10 || cfg.max_locality != 4 || cfg.p1_choices != std::vector<double>{0.0})
      return Outcome{false, "mixed.cfg is not an n=10, localities 2-4 sweep"};
    const auto dataset = build_dataset(cfg);
    if (dataset.entries.size() < 30)
      return Outcome{false, "fewer than 30 instances"};
    const auto library = resolve_reference_library(cfg);
    mixed_records = run_experiment(dataset, library, cfg);
    const auto m = means(mixed_records, RecordFilter::All);
    bool gb_above = true, gb_up = true, go_down = true;
    for (std::size_t p = 1; p <= 4; ++p) {
      const double go = m.at({Scheme::GammaOnly, p});
      const double gb = m.at({Scheme::GammaBeta, p});
      if (p >= 2) {
        gb_above = gb_above && gb > go;
        gb_up = gb_up && gb >= m.at({Scheme::GammaBeta, p - 1});
        go_down = go_down && go <= m.at({Scheme::GammaOnly, p - 1});
      }
    }
    std::string detail = std::to_string(dataset.entries.size()) +
                         " instances; " + series(m, Scheme::GammaOnly) + "; " +
                         series(m, Scheme::GammaBeta) + "; " +
                         series(m, Scheme::Variational) +
                         "; gamma_beta > gamma_only at p>=2: " +
                         (gb_above ? "yes" : "no") +
                         "; gamma_beta non-decreasing: " + (gb_up ? "yes" : "no") +
                         "; gamma_only non-increasing: " + (go_down ? "yes" : "no");
    return Outcome{gb_above && gb_up && go_down, detail};
  });
  const double mixed_seconds = seconds_since(mixed_t0);

  report(6, "pairwise-only datasets barely react to beta reweighting", 600, [] {
    const auto cfg = ExperimentConfig::load(config_path("k2only.cfg"));
    const auto dataset = build_dataset(cfg);
    const auto library = resolve_reference_library(cfg);
    const auto records = run_experiment(dataset, library, cfg);
    const auto m = means(records, RecordFilter::K2Only);
    double worst = 0;
    for (std::size_t p : cfg.depths)
      worst = std::max(worst, std::abs(m.at({Scheme::GammaBeta, p}) -
                                       m.at({Scheme::GammaOnly, p})));
    return Outcome{worst < 0.05, std::to_string(dataset.entries.size()) +
                                     " instances; max |gamma_beta - gamma_only| " +
                                     fmt("%.2e", worst) + "; " +
                                     series(m, Scheme::GammaOnly) + "; " +
                                     series(m, Scheme::GammaBeta)};
  });

  report(7, "variational at least as good as transfer", 0, [&] {
    if (mixed_records.empty())
      return Outcome{false, "no records from criterion 5"};
    std::map<std::pair<std::string, std::size_t>, std::pair<double, double>> cells;
    for (const auto &r : mixed_records) {
      auto &c = cells.try_emplace({r.instance_id, r.p}, -1.0, -1e300).first->second;
      if (r.scheme == Scheme::Variational)
        c.first = r.ratio;
      else
        c.second = std::max(c.second, r.ratio);
    }
    std::size_t good = 0;
    for (const auto &[key, c] : cells)
      if (c.first >= c.second - 1e-12)
        ++good;
    const double frac = static_cast<double>(good) / static_cast<double>(cells.size());
    return Outcome{frac >= 0.95, std::to_string(good) + " of " +
                                     std::to_string(cells.size()) + " cells (" +
                                     fmt("%.1f", 100 * frac) + "%)"};
  });

  report(8, "property suite", 0, [&] {
    std::string failed;
    auto need = [&](bool ok, const char *what) {
      if (!ok)
        failed += std::string(failed.empty() ? "" : ", ") + what;
    };
    Rng rng(8);
    double norm_err = 0, lin_err = 0, per_err = 0;
    for (int t = 0; t < 30; ++t) {
      const auto h = sample_hypergraph(
          9, {{1, 0.2}, {2, 0.2}, {3, 0.05}, {4, 0.02}, {5, 0.01}}, 500 + t);
      if (h.empty())
        continue;
      AngleSchedule s;
      for (int l = 0; l < 10; ++l) {
        s.gammas.push_back(rng.uniform(-pi, pi));
        s.betas.push_back(rng.uniform(-pi / 2, pi / 2));
      }
      const auto state = evolve(h, s);
      norm_err = std::max(norm_err, std::abs(state.norm() - 1.0));
      double sum = 0;
      for (const auto &e : h.edges())
        sum += e.weight * correlator(state, e.nodes);
      lin_err = std::max(lin_err, std::abs(sum - expectation_energy(state, h)));
      QaoaSimulator sim(h);
      const double e = sim.energy(s);
      auto g = s, b = s;
      g.gammas[t % 10] += 2 * pi;
      b.betas[(t + 3) % 10] += pi;
      per_err = std::max({per_err, std::abs(sim.energy(g) - e),
                          std::abs(sim.energy(b) - e)});
    }
    need(norm_err < 1e-12, "norm");
    need(lin_err < 1e-12, "linearity");
    need(per_err < 1e-12, "periodicity");

    double max_ratio = 0;
    for (const auto &r : mixed_records)
      max_ratio = std::max(max_ratio, r.ratio);
    need(!mixed_records.empty() && max_ratio <= 1 + 1e-12, "ratio <= 1");

    const auto cfg = ExperimentConfig::load(config_path("desk.cfg"));
    const auto base = std::filesystem::temp_directory_path() / "hyperqaoa_acceptance";
    std::filesystem::remove_all(base);
    build_dataset(cfg).write(base / "a");
    build_dataset(cfg).write(base / "b");
    need(read_tree(base / "a") == read_tree(base / "b"), "dataset determinism");
    std::filesystem::remove_all(base);

    const auto paper = ExperimentConfig::load(config_path("paper.cfg"));
    const auto combos = enumerate_combos(paper);
    need(combos.size() == 765 && combos.size() * paper.instances_per_combo == 3060,
         "765/3060 count");

    return Outcome{failed.empty(),
                   failed.empty()
                       ? "norm " + fmt("%.1e", norm_err) + ", linearity " +
                             fmt("%.1e", lin_err) + ", periodicity " +
                             fmt("%.1e", per_err) + ", max ratio " +
                             fmt("%.6f", max_ratio) + ", dataset byte-identical, " +
                             std::to_string(combos.size()) + " combos / " +
                             std::to_string(combos.size() * paper.instances_per_combo) +
                             " instances"
                       : "failed: " + failed};
  });

  std::printf("mixed-locality run took %.1f s\n", mixed_seconds);
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
