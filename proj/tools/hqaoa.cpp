#include "hyperqaoa/analytic.hpp"
#include "hyperqaoa/config.hpp"
#include "hyperqaoa/error.hpp"
#include "hyperqaoa/experiments.hpp"
#include "hyperqaoa/random.hpp"
#include "hyperqaoa/report.hpp"
#include "hyperqaoa/simulator.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>

using namespace hyperqaoa;

namespace {

int cmd_generate(const std::string &config, const std::string &out) {
  const auto cfg = ExperimentConfig::load(config);
  const auto dataset = build_dataset(cfg);
  dataset.write(out);
  std::printf("wrote %zu instances to %s\n", dataset.entries.size(), out.c_str());
  return 0;
}

int cmd_run(const std::string &config, const std::string &dataset_dir,
            const std::string &out, const std::string &schemes,
            bool no_timestamp) {
  auto cfg = ExperimentConfig::load(config);
  if (!schemes.empty()) {
    cfg.schemes.clear();
    for (const auto &s : split_list(schemes))
      cfg.schemes.push_back(parse_scheme(s));
    cfg.validate();
  }
  const auto dataset = Dataset::read(dataset_dir);
  const auto library = resolve_reference_library(cfg);
  const auto records = run_experiment(dataset, library, cfg);
  write_text_file(out, records_to_csv(records, !no_timestamp));
  std::printf("wrote %zu records to %s\n", records.size(), out.c_str());
  return 0;
}

int cmd_report(const std::string &in, const std::string &filter,
               const std::string &out, const std::string &plot) {
  const auto records = records_from_csv(read_text_file(in));
  const auto f = parse_filter(filter);
  const auto rows = aggregate_report(records, f);
  write_text_file(out, aggregate_to_csv(rows));
  if (!plot.empty())
    write_text_file(plot, render_svg(rows, f == RecordFilter::All
                                               ? "All instances"
                                               : "Locality 2 or less"));
  std::cout << aggregate_to_csv(rows);
  return 0;
}

int cmd_check_analytic(const std::string &dataset_dir, double tolerance,
                       std::size_t points, std::uint64_t seed) {
  const auto dataset = Dataset::read(dataset_dir);
  std::size_t checked = 0, mismatches = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < dataset.entries.size(); ++i) {
    const auto &entry = dataset.entries[i];
    const auto &h = entry.graph;
    const bool acyclic = !has_short_berge_cycle(h, 3);
    Rng rng(derive_seed(seed, i));
    for (std::size_t t = 0; t < points; ++t) {
      const double gamma = rng.uniform(-std::numbers::pi, std::numbers::pi);
      const double beta =
          rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2);
      const auto state = evolve(h, AngleSchedule{{gamma}, {beta}});
      for (std::size_t a = 0; a < h.edges().size(); ++a) {
        const double sim = correlator(state, h.edges()[a].nodes);
        auto compare = [&](const char *form, double value) {
          const double err = std::abs(value - sim);
          worst = std::max(worst, err);
          ++checked;
          if (!(err < tolerance)) {
            ++mismatches;
            std::fprintf(stderr,
                         "%s edge %zu %s: analytic %.17g simulator %.17g "
                         "(gamma %.17g beta %.17g)\n",
                         entry.instance_id.c_str(), a, form, value, sim, gamma,
                         beta);
          }
        };
        compare("general", j_general(h, a, beta, gamma));
        if (acyclic)
          compare("acyclic", j_acyclic(h, a, beta, gamma));
      }
    }
  }
  std::printf("%zu comparisons over %zu instances, %zu mismatches, max error "
              "%.3g\n",
              checked, dataset.entries.size(), mismatches, worst);
  return mismatches == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Hypergraph QAOA experiments"};
  app.require_subcommand(1);

  std::string config, out, dataset_dir, schemes, in, filter = "all", plot;
  bool no_timestamp = false;
  double tolerance = 1e-9;
  std::size_t points = 4;
  std::uint64_t seed = 1;

  auto *gen = app.add_subcommand("generate", "Generate a hypergraph dataset");
  gen->add_option("--config", config, "Experiment config file")->required();
  gen->add_option("--out", out, "Output directory")->required();

  auto *run = app.add_subcommand("run", "Run the schemes over a dataset");
  run->add_option("--config", config, "Experiment config file")->required();
  run->add_option("--dataset", dataset_dir, "Dataset directory")->required();
  run->add_option("--out", out, "Results CSV")->required();
  run->add_option("--schemes", schemes, "Comma list of v, g, gb");
  run->add_flag("--no-timestamp", no_timestamp, "Omit the timestamp line");

  auto *rep = app.add_subcommand("report", "Aggregate results per scheme and depth");
  rep->add_option("--in", in, "Results CSV")->required();
  rep->add_option("--filter", filter, "all or k2only")
      ->check(CLI::IsMember({"all", "k2only"}));
  rep->add_option("--out", out, "Aggregate CSV")->required();
  rep->add_option("--plot", plot, "SVG line chart");

  auto *chk = app.add_subcommand(
      "check-analytic", "Compare closed-form correlators with the simulator");
  chk->add_option("--dataset", dataset_dir, "Dataset directory")->required();
  chk->add_option("--tolerance", tolerance, "Absolute tolerance");
  chk->add_option("--points", points, "Random angle pairs per instance");
  chk->add_option("--seed", seed, "Angle seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen)
      return cmd_generate(config, out);
    if (*run)
      return cmd_run(config, dataset_dir, out, schemes, no_timestamp);
    if (*rep)
      return cmd_report(in, filter, out, plot);
    if (*chk)
      return cmd_check_analytic(dataset_dir, tolerance, points, seed);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
