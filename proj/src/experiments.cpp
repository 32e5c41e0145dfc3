#include "hyperqaoa/experiments.hpp"

#include "hyperqaoa/config.hpp"
#include "hyperqaoa/cost.hpp"
#include "hyperqaoa/error.hpp"
#include "hyperqaoa/parallel.hpp"
#include "hyperqaoa/random.hpp"
#include "hyperqaoa/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

namespace hyperqaoa {

std::string_view scheme_name(Scheme s) {
  switch (s) {
  case Scheme::Variational:
    return "variational";
  case Scheme::GammaOnly:
    return "gamma_only";
  case Scheme::GammaBeta:
    return "gamma_beta";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view token) {
  token = trim(token);
  if (token == "v" || token == "variational")
    return Scheme::Variational;
  if (token == "g" || token == "gamma_only")
    return Scheme::GammaOnly;
  if (token == "gb" || token == "gamma_beta")
    return Scheme::GammaBeta;
  throw ConfigError("unknown scheme '" + std::string(token) + "'");
}

// ---------------------------------------------------------------- config

std::size_t ExperimentConfig::max_depth() const {
  return depths.empty() ? 0 : *std::max_element(depths.begin(), depths.end());
}

void ExperimentConfig::validate() const {
  if (n < 2 || n > kMaxQubits)
    throw ConfigError("config: n must be in [2, " + std::to_string(kMaxQubits) +
                      "]");
  if (max_locality < 2 || max_locality > std::min(n, 5))
    throw ConfigError("config: max_locality must be in [2, min(n, 5)]");
  if (p1_choices.empty() || p2_choices.empty() ||
      (max_locality >= 3 && pk_base_choices.empty()))
    throw ConfigError("config: every locality needs at least one probability");
  auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  for (const auto *list : {&p1_choices, &p2_choices, &pk_base_choices})
    if (!std::all_of(list->begin(), list->end(), in_unit))
      throw ConfigError("config: probabilities must lie in [0, 1]");
  auto any_positive = [](const std::vector<double> &v) {
    return std::any_of(v.begin(), v.end(), [](double p) { return p > 0.0; });
  };
  if (!any_positive(p2_choices) &&
      (max_locality < 3 || !any_positive(pk_base_choices)))
    throw ConfigError("config: every combination has p_k = 0 for all k >= 2");
  if (instances_per_combo == 0)
    throw ConfigError("config: instances_per_combo must be positive");
  if (depths.empty() || std::find(depths.begin(), depths.end(), 0u) != depths.end())
    throw ConfigError("config: depths must be a nonempty list of p >= 1");
  if (schemes.empty())
    throw ConfigError("config: no schemes selected");
  if (budget.grid_points < 8)
    throw ConfigError("config: grid_points must be at least 8");
  if (budget.starts_p1 == 0 || budget.starts_higher == 0)
    throw ConfigError("config: optimizer start counts must be positive");
  if (reference_n < 4 || reference_n % 2 != 0 || reference_n > kMaxQubits)
    throw ConfigError("config: reference_n must be even and in [4, 26]");
}

namespace {

std::vector<std::size_t> to_sizes(const std::vector<std::int64_t> &v) {
  std::vector<std::size_t> out;
  for (auto x : v) {
    if (x < 0)
      throw ConfigError("config: negative value in a count list");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

} // namespace

ExperimentConfig ExperimentConfig::from_text(std::string_view text) {
  ExperimentConfig cfg;
  for (const auto &kv : parse_key_values(text)) {
    const auto &k = kv.key;
    const auto &v = kv.value;
    try {
      if (k == "n")
        cfg.n = static_cast<int>(parse_int(v));
      else if (k == "p1_choices")
        cfg.p1_choices = parse_double_list(v);
      else if (k == "p2_choices")
        cfg.p2_choices = parse_double_list(v);
      else if (k == "pk_base_choices")
        cfg.pk_base_choices = parse_double_list(v);
      else if (k == "max_locality")
        cfg.max_locality = static_cast<int>(parse_int(v));
      else if (k == "instances_per_combo")
        cfg.instances_per_combo = static_cast<std::size_t>(parse_uint64(v));
      else if (k == "depths")
        cfg.depths = to_sizes(parse_int_list(v));
      else if (k == "schemes") {
        cfg.schemes.clear();
        for (const auto &s : split_list(v))
          cfg.schemes.push_back(parse_scheme(s));
      } else if (k == "transfer_context_path")
        cfg.transfer_context_path = v;
      else if (k == "master_seed")
        cfg.master_seed = parse_uint64(v);
      else if (k == "max_retries")
        cfg.max_retries = static_cast<std::size_t>(parse_uint64(v));
      else if (k == "normalize_gamma_by_reference_degree")
        cfg.normalize_gamma_by_reference_degree = parse_bool(v);
      else if (k == "grid_points")
        cfg.budget.grid_points = static_cast<int>(parse_int(v));
      else if (k == "starts_p1")
        cfg.budget.starts_p1 = static_cast<std::size_t>(parse_uint64(v));
      else if (k == "starts_higher")
        cfg.budget.starts_higher = static_cast<std::size_t>(parse_uint64(v));
      else if (k == "max_evaluations")
        cfg.budget.max_evaluations = static_cast<std::size_t>(parse_uint64(v));
      else if (k == "tolerance")
        cfg.budget.tolerance = parse_double(v);
      else if (k == "fd_step")
        cfg.budget.fd_step = parse_double(v);
      else if (k == "threads")
        cfg.threads = static_cast<unsigned>(parse_uint64(v));
      else if (k == "reference_n")
        cfg.reference_n = static_cast<int>(parse_int(v));
      else if (k == "reference_seed")
        cfg.reference_seed = parse_uint64(v);
      else if (k == "reference_max_depth")
        cfg.reference_max_depth = static_cast<std::size_t>(parse_uint64(v));
      else
        throw ConfigError("unknown key '" + k + "'");
    } catch (const ParseError &e) {
      throw ConfigError("config line " + std::to_string(kv.line) + " (" + k +
                        "): " + e.what());
    } catch (const ConfigError &e) {
      throw ConfigError("config line " + std::to_string(kv.line) + ": " +
                        e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string &path) {
  return from_text(read_text_file(path));
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream os;
  auto sizes = [](const std::vector<std::size_t> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
      s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  std::string scheme_list;
  for (std::size_t i = 0; i < schemes.size(); ++i)
    scheme_list += (i ? "," : "") + std::string(scheme_name(schemes[i]));
  os << "n = " << n << '\n'
     << "p1_choices = " << join_doubles(p1_choices, ',') << '\n'
     << "p2_choices = " << join_doubles(p2_choices, ',') << '\n'
     << "pk_base_choices = " << join_doubles(pk_base_choices, ',') << '\n'
     << "max_locality = " << max_locality << '\n'
     << "instances_per_combo = " << instances_per_combo << '\n'
     << "depths = " << sizes(depths) << '\n'
     << "schemes = " << scheme_list << '\n'
     << "transfer_context_path = " << transfer_context_path << '\n'
     << "master_seed = " << master_seed << '\n'
     << "max_retries = " << max_retries << '\n'
     << "normalize_gamma_by_reference_degree = "
     << (normalize_gamma_by_reference_degree ? "true" : "false") << '\n'
     << "grid_points = " << budget.grid_points << '\n'
     << "starts_p1 = " << budget.starts_p1 << '\n'
     << "starts_higher = " << budget.starts_higher << '\n'
     << "max_evaluations = " << budget.max_evaluations << '\n'
     << "tolerance = " << format_double(budget.tolerance) << '\n'
     << "fd_step = " << format_double(budget.fd_step) << '\n'
     << "threads = " << threads << '\n'
     << "reference_n = " << reference_n << '\n'
     << "reference_seed = " << reference_seed << '\n'
     << "reference_max_depth = " << reference_max_depth << '\n';
  return os.str();
}

ExperimentConfig ExperimentConfig::paper_scale() {
  ExperimentConfig cfg;
  cfg.n = 14;
  cfg.p1_choices = {0.0, 0.1, 1.0};
  cfg.p2_choices = {0.0, 0.1, 0.2, 0.3};
  cfg.pk_base_choices = {0.0, 0.1, 0.2, 0.3};
  cfg.max_locality = 5;
  cfg.instances_per_combo = 4;
  cfg.depths = {1, 2, 3, 4, 5};
  cfg.budget.starts_p1 = 100;
  cfg.budget.starts_higher = 1000;
  return cfg;
}

// ---------------------------------------------------------------- dataset

std::vector<Combo> enumerate_combos(const ExperimentConfig &cfg) {
  cfg.validate();
  std::vector<std::vector<double>> per_locality;
  per_locality.reserve(static_cast<std::size_t>(cfg.max_locality));
  for (int k = 1; k <= cfg.max_locality; ++k) {
    const auto &base = k == 1   ? cfg.p1_choices
                       : k == 2 ? cfg.p2_choices
                                : cfg.pk_base_choices;
    std::vector<double> probs;
    for (double b : base)
      probs.push_back(rescale_probability(b, k, cfg.n));
    per_locality.push_back(std::move(probs));
  }

  std::vector<Combo> combos;
  std::vector<std::size_t> digit(per_locality.size(), 0);
  while (true) {
    Combo c;
    for (std::size_t k = 0; k < digit.size(); ++k)
      c.probabilities.push_back(per_locality[k][digit[k]]);
    const bool trivial = std::all_of(c.probabilities.begin() + 1,
                                     c.probabilities.end(),
                                     [](double p) { return p == 0.0; });
    if (!trivial) {
      c.index = combos.size();
      combos.push_back(std::move(c));
    }
    // Odometer with locality 1 as the slowest digit.
    std::size_t pos = digit.size();
    while (pos > 0) {
      --pos;
      if (++digit[pos] < per_locality[pos].size())
        break;
      digit[pos] = 0;
      if (pos == 0)
        return combos;
    }
  }
}

namespace {

std::string instance_name(std::size_t combo, std::size_t j) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "c%04zu-i%zu", combo, j);
  return buf;
}

std::map<int, double> combo_probs(const Combo &c) {
  std::map<int, double> probs;
  for (std::size_t k = 0; k < c.probabilities.size(); ++k)
    if (c.probabilities[k] > 0.0)
      probs[static_cast<int>(k + 1)] = c.probabilities[k];
  return probs;
}

std::string describe(const Combo &c) {
  std::string s = "combo " + std::to_string(c.index) + " (";
  for (std::size_t k = 0; k < c.probabilities.size(); ++k)
    s += (k ? ", p" : "p") + std::to_string(k + 1) + "=" +
         format_double(c.probabilities[k]);
  return s + ")";
}

} // namespace

Dataset build_dataset(const ExperimentConfig &cfg) {
  Dataset ds;
  for (const auto &combo : enumerate_combos(cfg)) {
    for (std::size_t j = 0; j < cfg.instances_per_combo; ++j) {
      GenerationSpec spec;
      spec.n = cfg.n;
      spec.probs = combo_probs(combo);
      spec.seed = derive_seed(derive_seed(cfg.master_seed, combo.index), j);
      spec.max_retries = cfg.max_retries;
      try {
        ds.entries.push_back(
            {instance_name(combo.index, j), combo, spec.seed, generate_random(spec)});
      } catch (const GenerationFailure &e) {
        throw GenerationFailure(describe(combo) + ", instance " +
                                    std::to_string(j) + ": " + e.what(),
                                e.attempts());
      }
    }
  }
  return ds;
}

std::string Dataset::manifest_text() const {
  std::size_t kmax = 0;
  for (const auto &e : entries)
    kmax = std::max(kmax, e.combo.probabilities.size());
  std::string out = "instance_id,combo,seed,n";
  for (std::size_t k = 1; k <= kmax; ++k)
    out += ",p" + std::to_string(k);
  out += ",file\n";
  for (const auto &e : entries) {
    out += e.instance_id + "," + std::to_string(e.combo.index) + "," +
           std::to_string(e.seed) + "," + std::to_string(e.graph.num_vertices());
    for (std::size_t k = 0; k < kmax; ++k)
      out += "," + format_double(k < e.combo.probabilities.size()
                                     ? e.combo.probabilities[k]
                                     : 0.0);
    out += ",graphs/" + e.instance_id + ".hg\n";
  }
  return out;
}

void Dataset::write(const std::filesystem::path &dir) const {
  std::filesystem::create_directories(dir / "graphs");
  for (const auto &e : entries)
    write_hypergraph(e.graph, dir / "graphs" / (e.instance_id + ".hg"));
  write_text_file((dir / "manifest.csv").string(), manifest_text());
}

Dataset Dataset::read(const std::filesystem::path &dir) {
  const std::string text = read_text_file((dir / "manifest.csv").string());
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("manifest: empty file");
  const auto header = split_list(line);
  if (header.size() < 5 || header[0] != "instance_id" || header.back() != "file")
    throw ParseError("manifest: unexpected header");
  const std::size_t kmax = header.size() - 5;
  Dataset ds;
  while (std::getline(in, line)) {
    if (trim(line).empty())
      continue;
    const auto cols = split_list(line);
    if (cols.size() != header.size())
      throw ParseError("manifest: wrong column count in '" + line + "'");
    DatasetEntry e;
    e.instance_id = cols[0];
    e.combo.index = static_cast<std::size_t>(parse_uint64(cols[1]));
    e.seed = parse_uint64(cols[2]);
    for (std::size_t k = 0; k < kmax; ++k)
      e.combo.probabilities.push_back(parse_double(cols[4 + k]));
    e.graph = read_hypergraph(dir / cols.back());
    if (e.graph.num_vertices() != parse_int(cols[3]))
      throw ParseError("manifest: n mismatch for " + e.instance_id);
    ds.entries.push_back(std::move(e));
  }
  return ds;
}

// ---------------------------------------------------------------- records

bool ExperimentRecord::only_low_locality() const {
  for (std::size_t k = 3; k <= m.size(); ++k)
    if (m[k - 1] != 0)
      return false;
  return true;
}

namespace {

ExperimentRecord base_record(const Hypergraph &h, Scheme scheme, std::size_t p,
                             double e_min) {
  ExperimentRecord r;
  r.n = h.num_vertices();
  const auto counts = h.locality_counts();
  r.m.assign(counts.begin() + 1, counts.begin() + 6);
  r.degree = average_degree(h);
  r.beta_star = h.empty() ? 0.0 : beta_star(h);
  r.scheme = scheme;
  r.p = p;
  r.e_min = e_min;
  return r;
}

std::string transfer_method(const TransferContext &ctx) {
  return ctx.source_label.rfind("derived", 0) == 0 ? "transfer-derived"
                                                   : "transfer-file";
}

ExperimentRecord transfer_with(QaoaSimulator &sim, const Hypergraph &h,
                               Scheme scheme, std::size_t p,
                               const TransferLibrary &library,
                               const ExperimentConfig &cfg, double e_min) {
  if (scheme == Scheme::Variational)
    throw InvalidArgument("run_transfer: VARIATIONAL is not a transfer scheme");
  const TransferContext &ctx = library.at_depth(p);
  ExperimentRecord r = base_record(h, scheme, p, e_min);
  r.gammas = transfer_gammas(ctx, h, cfg.normalize_gamma_by_reference_degree);
  r.betas = scheme == Scheme::GammaBeta ? transfer_betas(ctx, h)
                                        : ctx.reference_betas;
  r.energy = sim.energy(r.gammas, r.betas);
  r.ratio = r.energy / r.e_min;
  r.method = transfer_method(ctx);
  return r;
}

ExperimentRecord variational_record(const Hypergraph &h,
                                    const OptimizationResult &opt, double e_min) {
  ExperimentRecord r =
      base_record(h, Scheme::Variational, opt.schedule.depth(), e_min);
  r.gammas = opt.schedule.gammas;
  r.betas = opt.schedule.betas;
  r.energy = opt.energy;
  r.ratio = r.energy / r.e_min;
  r.method = std::string(method_name(opt.method));
  return r;
}

std::uint64_t optimizer_seed(std::uint64_t instance_seed) {
  return derive_seed(instance_seed, 0x0b7f11a5ULL);
}

} // namespace

ExperimentRecord run_transfer(const Hypergraph &h, Scheme scheme,
                              std::size_t p, const TransferLibrary &library,
                              const ExperimentConfig &cfg) {
  auto table = std::make_shared<const CostTable>(h, kMaxQubits);
  QaoaSimulator sim(table);
  return transfer_with(sim, h, scheme, p, library, cfg,
                       extreme_energies(*table).e_min);
}

ExperimentRecord run_scheme(const Hypergraph &h, Scheme scheme, std::size_t p,
                            const TransferLibrary &library,
                            const ExperimentConfig &cfg) {
  if (scheme != Scheme::Variational)
    return run_transfer(h, scheme, p, library, cfg);
  const double e_min = extreme_energies(h, kMaxQubits).e_min;
  const auto opts = optimize_depths(h, p, cfg.budget, optimizer_seed(0));
  return variational_record(h, opts.back(), e_min);
}

std::vector<ExperimentRecord> run_instance(const DatasetEntry &entry,
                                           const TransferLibrary &library,
                                           const ExperimentConfig &cfg) {
  const Hypergraph &h = entry.graph;
  auto table = std::make_shared<const CostTable>(h, kMaxQubits);
  QaoaSimulator sim(table);
  const double e_min = extreme_energies(*table).e_min;

  std::vector<std::size_t> depths = cfg.depths;
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());

  std::vector<ExperimentRecord> out;
  for (Scheme scheme : cfg.schemes) {
    if (scheme == Scheme::Variational) {
      const auto opts = optimize_depths(h, depths.back(), cfg.budget,
                                        optimizer_seed(entry.seed));
      for (std::size_t p : depths)
        out.push_back(variational_record(h, opts[p - 1], e_min));
    } else {
      for (std::size_t p : depths)
        out.push_back(transfer_with(sim, h, scheme, p, library, cfg, e_min));
    }
  }
  for (auto &r : out) {
    r.instance_id = entry.instance_id;
    r.seed = entry.seed;
  }
  return out;
}

std::vector<ExperimentRecord> run_experiment(const Dataset &dataset,
                                             const TransferLibrary &library,
                                             const ExperimentConfig &cfg) {
  cfg.validate();
  if (std::find_if(cfg.schemes.begin(), cfg.schemes.end(), [](Scheme s) {
        return s != Scheme::Variational;
      }) != cfg.schemes.end())
    for (std::size_t p : cfg.depths)
      library.at_depth(p);

  const unsigned outer = static_cast<unsigned>(std::min<std::size_t>(
      resolve_threads(cfg.threads), std::max<std::size_t>(1, dataset.entries.size())));
  ExperimentConfig inner = cfg;
  if (outer > 1)
    inner.budget.threads = 1;

  std::vector<std::vector<ExperimentRecord>> per_instance(dataset.entries.size());
  parallel_for(dataset.entries.size(), outer, [&](unsigned, std::size_t i) {
    per_instance[i] = run_instance(dataset.entries[i], library, inner);
  });
  std::vector<ExperimentRecord> out;
  for (auto &v : per_instance)
    out.insert(out.end(), std::make_move_iterator(v.begin()),
               std::make_move_iterator(v.end()));
  return out;
}

// ---------------------------------------------------------------- reference

Hypergraph random_regular3(int n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0)
    throw InvalidArgument("random_regular3: n must be even and at least 4");
  Rng rng(seed);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<int> stubs;
    for (int v = 0; v < n; ++v)
      stubs.insert(stubs.end(), 3, v);
    for (std::size_t i = stubs.size() - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.next() % (i + 1)]);
    std::set<std::pair<int, int>> pairs;
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
      const int a = std::min(stubs[i], stubs[i + 1]);
      const int b = std::max(stubs[i], stubs[i + 1]);
      simple = a != b && pairs.insert({a, b}).second;
    }
    if (!simple)
      continue;
    std::vector<Hyperedge> edges;
    for (const auto &[a, b] : pairs)
      edges.push_back({{a, b}, 1.0});
    Hypergraph h(n, std::move(edges));
    if (is_connected(h))
      return h;
  }
  throw GenerationFailure("random_regular3: no simple connected graph", 100000);
}

namespace {

double wrap(double x, double lo, double period) {
  return x - period * std::floor((x - lo) / period);
}

// Exact symmetries of a unit-weight graph whose vertices all have odd
// degree: exp(-i pi/2 C) is Z^n up to phase, and Z^n flips the sign of every
// later mixer angle. So gamma_l -> gamma_l + pi/2 with beta_j -> -beta_j for
// j >= l, beta_l -> beta_l + pi/2 (X^n commutes with an even-locality C),
// and the global sign flip of all angles. Pick the representative with
// gamma_l, beta_l in [-pi/4, pi/4) and gamma_1 >= 0.
AngleSchedule canonicalize_odd_regular(const AngleSchedule &s) {
  AngleSchedule c = s;
  const double quarter = std::numbers::pi / 4;
  for (std::size_t l = 0; l < c.depth(); ++l) {
    const double shifts = std::floor((c.gammas[l] + quarter) / (2 * quarter));
    c.gammas[l] -= shifts * 2 * quarter;
    if (static_cast<long long>(shifts) % 2 != 0)
      for (std::size_t j = l; j < c.depth(); ++j)
        c.betas[j] = -c.betas[j];
  }
  for (double &b : c.betas)
    b = wrap(b, -quarter, 2 * quarter);
  if (c.gammas.front() < 0.0) {
    for (double &g : c.gammas)
      g = -g;
    for (double &b : c.betas)
      b = -b;
  }
  return c;
}

} // namespace

TransferLibrary derive_reference_library(int n, std::uint64_t seed,
                                         std::size_t max_depth,
                                         const OptimizerBudget &budget) {
  const Hypergraph ref = random_regular3(n, seed);
  QaoaSimulator sim(ref);
  const auto opts = optimize_depths(ref, max_depth, budget, derive_seed(seed, 1));
  TransferLibrary lib;
  for (const auto &opt : opts) {
    const AngleSchedule c = canonicalize_odd_regular(opt.schedule);
    const double e = sim.energy(c);
    if (std::abs(e - opt.energy) > 1e-9)
      throw Error("reference canonicalization changed the energy");
    TransferContext ctx;
    ctx.reference_gammas = c.gammas;
    ctx.reference_betas = c.betas;
    ctx.reference_beta_star = beta_star(ref);
    ctx.reference_degree = average_degree(ref);
    ctx.source_label = "derived 3-regular n=" + std::to_string(n) +
                       " seed=" + std::to_string(seed);
    lib.add(std::move(ctx));
  }
  return lib;
}

TransferLibrary resolve_reference_library(const ExperimentConfig &cfg) {
  if (!cfg.transfer_context_path.empty())
    return TransferLibrary::load(cfg.transfer_context_path);
  return derive_reference_library(
      cfg.reference_n, cfg.reference_seed,
      std::max(cfg.reference_max_depth, cfg.max_depth()), cfg.budget);
}

} // namespace hyperqaoa
