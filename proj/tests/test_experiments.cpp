#include "hyperqaoa/error.hpp"
#include "hyperqaoa/experiments.hpp"
#include "hyperqaoa/simulator.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <numbers>

using namespace hyperqaoa;

namespace {

constexpr double pi = std::numbers::pi;

ExperimentConfig tiny() {
  ExperimentConfig cfg;
  cfg.n = 8;
  cfg.p2_choices = {0.0, 0.3};
  cfg.pk_base_choices = {0.0, 0.3};
  cfg.max_locality = 3;
  cfg.instances_per_combo = 1;
  cfg.depths = {1, 2};
  cfg.budget.starts_p1 = 4;
  cfg.budget.starts_higher = 4;
  cfg.budget.grid_points = 16;
  cfg.threads = 1;
  return cfg;
}

TransferLibrary cubic_library() {
  TransferLibrary lib;
  lib.add({{0.62}, {0.39}, pi / 8, 3.0, "literature"});
  lib.add({{0.49, 0.88}, {0.55, 0.29}, pi / 8, 3.0, "literature"});
  return lib;
}

std::filesystem::path scratch_dir(const char *name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

} // namespace

TEST(Schemes, Names) {
  EXPECT_EQ(parse_scheme("v"), Scheme::Variational);
  EXPECT_EQ(parse_scheme("gamma_only"), Scheme::GammaOnly);
  EXPECT_EQ(parse_scheme("gb"), Scheme::GammaBeta);
  EXPECT_EQ(scheme_name(Scheme::GammaBeta), "gamma_beta");
  EXPECT_THROW(parse_scheme("x"), ConfigError);
}

TEST(Config, TextRoundTrip) {
  auto cfg = ExperimentConfig::paper_scale();
  cfg.transfer_context_path = "angles.txt";
  cfg.normalize_gamma_by_reference_degree = true;
  const auto back = ExperimentConfig::from_text(cfg.to_text());
  EXPECT_EQ(back.to_text(), cfg.to_text());
  EXPECT_EQ(back.n, 14);
  EXPECT_EQ(back.budget.starts_higher, 1000u);
}

TEST(Config, Errors) {
  EXPECT_THROW(ExperimentConfig::from_text("n = 10\nbogus = 1\n"), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_text("n = ten\n"), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_text("p2_choices = 0\npk_base_choices = 0\n"),
               ConfigError);
  EXPECT_THROW(ExperimentConfig::from_text("depths = 0\n"), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_text("max_locality = 6\n"), ConfigError);
}

TEST(Combos, PaperScaleCount) {
  const auto cfg = ExperimentConfig::paper_scale();
  const auto combos = enumerate_combos(cfg);
  EXPECT_EQ(combos.size(), 765u);
  EXPECT_EQ(combos.size() * cfg.instances_per_combo, 3060u);
  // The k = 1 choices rescale to {0, 0.65, 1} at n = 14.
  std::set<double> p1;
  for (const auto &c : combos)
    p1.insert(c.probabilities[0]);
  EXPECT_EQ(p1.size(), 3u);
  EXPECT_NEAR(*std::next(p1.begin()), 0.65, 1e-15);
}

TEST(Combos, DeskCountAndExclusion) {
  ExperimentConfig cfg;
  cfg.p1_choices = {0.0};
  cfg.p2_choices = {0.0, 0.2};
  cfg.pk_base_choices = {0.0, 0.2};
  cfg.max_locality = 3;
  cfg.instances_per_combo = 1;
  const auto combos = enumerate_combos(cfg);
  EXPECT_EQ(combos.size(), 3u);
  for (std::size_t i = 0; i < combos.size(); ++i) {
    EXPECT_EQ(combos[i].index, i);
    EXPECT_TRUE(combos[i].probabilities[1] > 0 || combos[i].probabilities[2] > 0);
  }
  EXPECT_EQ(build_dataset(cfg).entries.size(), 3u);
}

TEST(Dataset, DeterministicAndRoundTrips) {
  const auto cfg = tiny();
  const auto a = build_dataset(cfg);
  const auto b = build_dataset(cfg);
  EXPECT_EQ(a.manifest_text(), b.manifest_text());
  ASSERT_EQ(a.entries.size(), 3u);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].graph, b.entries[i].graph);
    EXPECT_TRUE(is_connected(a.entries[i].graph));
  }

  const auto dir = scratch_dir("hyperqaoa_dataset_test");
  a.write(dir);
  const auto back = Dataset::read(dir);
  EXPECT_EQ(back.manifest_text(), a.manifest_text());
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    EXPECT_EQ(back.entries[i].graph, a.entries[i].graph);
  std::filesystem::remove_all(dir);

  auto other = cfg;
  other.master_seed += 1;
  EXPECT_NE(build_dataset(other).manifest_text(), a.manifest_text());
}

TEST(Dataset, GenerationFailureNamesCombo) {
  auto cfg = tiny();
  cfg.p2_choices = {0.01};
  cfg.pk_base_choices = {0.0};
  cfg.max_locality = 2;
  cfg.max_retries = 3;
  try {
    build_dataset(cfg);
    FAIL() << "expected GenerationFailure";
  } catch (const GenerationFailure &e) {
    EXPECT_NE(std::string(e.what()).find("combo 0"), std::string::npos);
  }
}

TEST(RunTransfer, ReferenceFamilyIsIdentity) {
  const auto cubic = random_regular3(8, 1);
  ASSERT_DOUBLE_EQ(average_degree(cubic), 3.0);
  auto cfg = tiny();
  cfg.normalize_gamma_by_reference_degree = true;
  const auto lib = cubic_library();
  const auto r = run_transfer(cubic, Scheme::GammaBeta, 2, lib, cfg);
  EXPECT_EQ(r.gammas, lib.at_depth(2).reference_gammas);
  EXPECT_EQ(r.betas, lib.at_depth(2).reference_betas);
  EXPECT_EQ(r.method, "transfer-file");
}

TEST(RunTransfer, UniformThreeLocalScalesBeta) {
  const Hypergraph k3(9, {{{0, 1, 2}, 1.0}, {{2, 3, 4}, -1.0}, {{4, 5, 6}, 1.0},
                          {{6, 7, 8}, 1.0}});
  const auto lib = cubic_library();
  const auto gb = run_transfer(k3, Scheme::GammaBeta, 1, lib, tiny());
  const auto g = run_transfer(k3, Scheme::GammaOnly, 1, lib, tiny());
  EXPECT_NEAR(gb.betas[0], 0.39 * 2.0 / 3.0, 1e-15);
  EXPECT_EQ(g.betas[0], 0.39);
  EXPECT_EQ(g.gammas, gb.gammas);
  EXPECT_NEAR(gb.gammas[0], 0.62 / std::sqrt(average_degree(k3)), 1e-15);
  const auto spec = extreme_energies(k3);
  for (const auto *r : {&g, &gb}) {
    EXPECT_GE(r->energy, spec.e_min - 1e-12);
    EXPECT_LE(r->energy, spec.e_max + 1e-12);
    EXPECT_EQ(r->ratio, r->energy / r->e_min);
  }
}

TEST(RunTransfer, MissingDepthIsConfigError) {
  const auto h = random_regular3(6, 2);
  EXPECT_THROW(run_transfer(h, Scheme::GammaOnly, 3, cubic_library(), tiny()),
               ConfigError);
  EXPECT_THROW(run_transfer(h, Scheme::Variational, 1, cubic_library(), tiny()),
               InvalidArgument);
}

TEST(RunExperiment, RecordsAreSelfConsistentAndDeterministic) {
  const auto cfg = tiny();
  const auto ds = build_dataset(cfg);
  const auto lib = cubic_library();
  const auto records = run_experiment(ds, lib, cfg);
  ASSERT_EQ(records.size(), ds.entries.size() * 3 * 2);
  for (const auto &r : records) {
    EXPECT_LE(r.ratio, 1.0 + 1e-12);
    EXPECT_EQ(r.ratio, r.energy / r.e_min);
    EXPECT_EQ(r.m.size(), 5u);
    const auto it = std::find_if(ds.entries.begin(), ds.entries.end(),
                                 [&](const DatasetEntry &e) {
                                   return e.instance_id == r.instance_id;
                                 });
    ASSERT_NE(it, ds.entries.end());
    EXPECT_EQ(r.seed, it->seed);
    EXPECT_NEAR(QaoaSimulator(it->graph).energy(r.gammas, r.betas), r.energy,
                1e-9);
  }

  auto threaded = cfg;
  threaded.threads = 3;
  const auto again = run_experiment(ds, lib, threaded);
  ASSERT_EQ(again.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(again[i].instance_id, records[i].instance_id);
    EXPECT_EQ(again[i].energy, records[i].energy);
    EXPECT_EQ(again[i].gammas, records[i].gammas);
  }
}

TEST(RunScheme, VariationalBeatsTransferOnSmallInstance) {
  const Hypergraph h(6, {{{0, 1}, 1.0}, {{1, 2, 3}, -1.0}, {{3, 4}, 1.0},
                         {{2, 4, 5}, 1.0}, {{0, 5}, -1.0}});
  const auto lib = cubic_library();
  const auto cfg = tiny();
  const auto v = run_scheme(h, Scheme::Variational, 2, lib, cfg);
  const auto g = run_scheme(h, Scheme::GammaOnly, 2, lib, cfg);
  EXPECT_EQ(v.p, 2u);
  EXPECT_LE(v.energy, g.energy + 1e-9);
}

TEST(Reference, RandomRegular3) {
  const auto h = random_regular3(10, 3);
  EXPECT_EQ(h.num_edges(), 15u);
  for (int v = 0; v < 10; ++v)
    EXPECT_EQ(h.incident_edges(v).size(), 3u);
  EXPECT_TRUE(is_connected(h));
  EXPECT_EQ(h, random_regular3(10, 3));
  EXPECT_NEAR(beta_star(h), pi / 8, 1e-15);
  EXPECT_THROW(random_regular3(7, 1), InvalidArgument);
}

TEST(Reference, DerivedLibraryIsCanonical) {
  OptimizerBudget budget;
  budget.starts_p1 = 4;
  budget.starts_higher = 4;
  budget.grid_points = 16;
  budget.threads = 1;
  const auto lib = derive_reference_library(6, 1, 2, budget);
  EXPECT_EQ(lib.max_depth(), 2u);
  const auto ref = random_regular3(6, 1);
  for (const auto &[p, ctx] : lib.contexts()) {
    EXPECT_EQ(ctx.depth(), p);
    EXPECT_EQ(ctx.reference_beta_star, pi / 8);
    EXPECT_EQ(ctx.reference_degree, 3.0);
    EXPECT_EQ(ctx.source_label.rfind("derived", 0), 0u);
    EXPECT_GE(ctx.reference_gammas[0], 0.0);
    for (std::size_t l = 0; l < p; ++l) {
      EXPECT_GE(ctx.reference_gammas[l], -pi / 4);
      EXPECT_LT(ctx.reference_gammas[l], pi / 4);
      EXPECT_GE(ctx.reference_betas[l], -pi / 4);
      EXPECT_LT(ctx.reference_betas[l], pi / 4);
    }
    EXPECT_LT(QaoaSimulator(ref).energy(ctx.reference_gammas, ctx.reference_betas),
              0.0);
  }
}
