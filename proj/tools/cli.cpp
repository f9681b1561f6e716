#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qfs/data.hpp"
#include "qfs/error.hpp"
#include "qfs/eval.hpp"
#include "qfs/infotheory.hpp"
#include "qfs/json.hpp"
#include "qfs/qubo.hpp"
#include "qfs/rng.hpp"
#include "qfs/selection.hpp"
#include "qfs/solve.hpp"

namespace qfs::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";
constexpr std::size_t kAutoExhaustiveLimit = 20;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
  if (!f) throw Error("write to '" + path + "' failed");
}

void emit(const json& j, const std::string& path, std::ostream& out) { emit(j.dump(2) + "\n", path, out); }

/// Parses "0,3,5" into indices.
std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t v = 0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size())
      throw InputError("bad feature index '" + tok + "' in list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    double v = 0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size())
      throw InputError("bad number '" + tok + "' in list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

qubo::MuPolicy parse_mu(const std::string& text) {
  if (text == "max") return qubo::MuPolicy::max_entry();
  double v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size() || !(v > 0))
    throw InputError("--mu must be 'max' or a positive number, got '" + text + "'");
  return qubo::MuPolicy::fixed(v);
}

// Everything needed to rerun an invocation. Thread counts are left out: they
// never change results, and leaving them out keeps artifacts byte-identical
// across parallelism settings.
struct Manifest {
  explicit Manifest(std::string sub, std::vector<std::string> in = {})
      : subcommand(std::move(sub)), inputs(std::move(in)) {}

  std::string subcommand;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::optional<int> B;
  std::optional<std::size_t> k;
  std::optional<double> epsilon;
  std::optional<std::string> mu;
  std::optional<json> solver;
  std::optional<std::uint64_t> seed;

  json to_json() const {
    json j;
    j["tool"] = "qfs";
    j["version"] = kVersion;
    j["subcommand"] = subcommand;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["B"] = B ? json(*B) : json();
    j["k"] = k ? json(*k) : json();
    j["epsilon"] = epsilon ? json(*epsilon) : json();
    j["mu"] = mu ? json(*mu) : json();
    j["solver"] = solver ? *solver : json();
    j["seed"] = seed ? json(*seed) : json();
    return j;
  }
};

// ---------------------------------------------------------------------------
// Shared option groups

struct DataOptions {
  std::string input;        // CSV
  std::string discretized;  // JSON from `discretize`
  std::string label;
  std::optional<std::size_t> label_index;
  int B = 20;

  void add(CLI::App* app) {
    app->add_option("--input", input, "CSV with a header row")->check(CLI::ExistingFile);
    app->add_option("--label", label, "label column name (default: last column)");
    app->add_option("--label-index", label_index, "zero-based label column index");
    app->add_option("--B", B, "quantile bins per feature")->check(CLI::Range(2, 65535));
  }
  void add_discretized(CLI::App* app) {
    app->add_option("--discretized", discretized, "discretized dataset JSON")->check(CLI::ExistingFile);
  }

  std::optional<data::LabelColumn> label_column() const {
    if (label_index) return data::LabelColumn{*label_index};
    if (!label.empty()) return data::LabelColumn{label};
    return std::nullopt;
  }
};

struct SolverOptions {
  std::string kind = "auto";
  std::optional<int> shots;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  int sweeps = 1000;
  int subproblem = 20;
  int tenure = 10;
  int stall = 3;

  void add(CLI::App* app) {
    app->add_option("--solver", kind, "auto, exhaustive, annealing or tabu");
    app->add_option("--shots", shots, "shots (annealing) or restarts (tabu)")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "master seed");
    app->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--sweeps", sweeps, "annealing sweeps per shot")->check(CLI::PositiveNumber);
    app->add_option("--subproblem-size", subproblem, "tabu decomposition subproblem size")->check(CLI::PositiveNumber);
    app->add_option("--tenure", tenure, "tabu tenure")->check(CLI::NonNegativeNumber);
    app->add_option("--stall-rounds", stall, "non-improving rounds before a restart stops")->check(CLI::PositiveNumber);
  }

  solve::SolverConfig resolve(std::size_t n) const {
    solve::SolverConfig c;
    if (kind == "auto")
      c.kind = n <= kAutoExhaustiveLimit ? solve::SolverKind::Exhaustive : solve::SolverKind::TabuDecomposition;
    else
      c.kind = solve::parse_solver_kind(kind);
    switch (c.kind) {
      case solve::SolverKind::Exhaustive: c.shots = shots.value_or(1); break;
      case solve::SolverKind::Annealing: c.shots = shots.value_or(100); break;
      case solve::SolverKind::TabuDecomposition: c.shots = shots.value_or(10); break;
    }
    c.seed = seed;
    c.threads = threads;
    c.annealing.sweeps = sweeps;
    c.tabu.subproblem_size = std::min<int>(subproblem, static_cast<int>(n));
    c.tabu.tenure = tenure;
    c.tabu.stall_rounds = stall;
    c.validate();
    return c;
  }
};

json solver_json(const solve::SolverConfig& c) {
  json j{{"kind", solve::to_string(c.kind)}, {"shots", c.shots}, {"seed", c.seed}};
  if (c.kind == solve::SolverKind::Annealing) j["sweeps"] = c.annealing.sweeps;
  if (c.kind == solve::SolverKind::TabuDecomposition)
    j["tabu"] = {{"subproblem_size", c.tabu.subproblem_size},
                 {"tenure", c.tabu.tenure},
                 {"stall_rounds", c.tabu.stall_rounds}};
  return j;
}

struct MiSource {
  info::ImportanceVector importance;
  info::RedundancyMatrix redundancy;
  std::vector<std::string> feature_names;
};

data::DiscretizedDataset load_discretized(DataOptions& d, Manifest& m) {
  if (!d.discretized.empty()) {
    m.inputs.push_back(d.discretized);
    const json j = read_json(d.discretized);
    const auto dataset = io::discretized_from_json(j.contains("dataset") ? j.at("dataset") : j);
    m.B = dataset.B();
    return dataset;
  }
  if (d.input.empty()) throw InputError("one of --input or --discretized is required");
  m.inputs.push_back(d.input);
  m.B = d.B;
  return data::discretize(data::load_csv(d.input, d.label_column()), d.B);
}

/// (I, R) from --mi, --discretized or --input, in that order of preference.
MiSource load_mi(const std::string& mi_path, DataOptions& d, unsigned threads, Manifest& m) {
  MiSource s;
  if (!mi_path.empty()) {
    m.inputs.push_back(mi_path);
    const json j = read_json(mi_path);
    std::tie(s.importance, s.redundancy) = io::mi_from_json(j);
    if (j.contains("feature_names")) s.feature_names = j["feature_names"].get<std::vector<std::string>>();
    return s;
  }
  if (d.input.empty() && d.discretized.empty())
    throw InputError("one of --mi, --discretized or --input is required");
  if (!d.input.empty() && d.discretized.empty()) {
    m.inputs.push_back(d.input);
    m.B = d.B;
    const auto ds = data::load_csv(d.input, d.label_column());
    s.feature_names = ds.feature_names;
    const auto disc = data::discretize(ds, d.B);
    s.importance = info::importance(disc);
    s.redundancy = info::redundancy(disc, threads);
    return s;
  }
  const auto disc = load_discretized(d, m);
  s.importance = info::importance(disc);
  s.redundancy = info::redundancy(disc, threads);
  return s;
}

qubo::QuboInstance load_qubo(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return qubo::from_json(text);
  return qubo::from_coordinate_list(text);
}

// ---------------------------------------------------------------------------
// Subcommands

struct GenSynth {
  data::SynthSpec spec;
  std::string out, truth;

  void add(CLI::App& app, std::function<void()> select) {
    auto* c = app.add_subcommand("gen-synth", "generate a synthetic classification dataset");
    c->add_option("--n", spec.n, "feature count")->check(CLI::PositiveNumber);
    c->add_option("--d-inf", spec.d_inf, "informative feature count")->check(CLI::PositiveNumber);
    c->add_option("--N", spec.N, "sample count")->check(CLI::PositiveNumber);
    c->add_option("--seed", spec.seed, "seed");
    c->add_option("--out", out, "CSV output path (default: stdout)");
    c->add_option("--truth", truth, "ground-truth JSON path (default: <out>.truth.json)");
    c->callback(std::move(select));
  }

  int run(std::ostream& o) {
    if (truth.empty() && !out.empty()) truth = out + ".truth.json";
    Manifest m{"gen-synth"};
    if (!out.empty()) m.outputs.push_back(out);
    if (!truth.empty()) m.outputs.push_back(truth);
    m.seed = spec.seed;
    const auto r = data::gen_synth(spec);
    emit(data::to_csv(r.dataset), out, o);
    if (!truth.empty()) {
      json j{{"manifest", m.to_json()},
             {"n", spec.n},
             {"d_inf", spec.d_inf},
             {"N", spec.N},
             {"informative", r.informative}};
      emit(j, truth, o);
    }
    return kOk;
  }
};

struct Discretize {
  DataOptions data;
  std::string out;

  void add(CLI::App& app, std::function<void()> select) {
    auto* c = app.add_subcommand("discretize", "quantile-bin a CSV dataset");
    data.add(c);
    c->add_option("--out", out, "JSON output path (default: stdout)");
    c->callback(std::move(select));
  }

  int run(std::ostream& o) {
    if (data.input.empty()) throw InputError("--input is required");
    Manifest m{"discretize"};
    if (!out.empty()) m.outputs.push_back(out);
    const auto d = load_discretized(data, m);
    emit(json{{"manifest", m.to_json()}, {"dataset", io::to_json(d)}}, out, o);
    return kOk;
  }
};

struct Mi {
  DataOptions data;
  unsigned threads = 1;
  std::string out;

  void add(CLI::App& app, std::function<void()> select) {
    auto* c = app.add_subcommand("mi", "importance vector and redundancy matrix");
    data.add(c);
    data.add_discretized(c);
    c->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--out", out, "JSON output path (default: stdout)");
    c->callback(std::move(select));
  }

  int run(std::ostream& o) {
    Manifest m{"mi"};
    if (!out.empty()) m.outputs.push_back(out);
    const auto s = load_mi("", data, threads, m);
    json j = io::to_json(s.importance, s.redundancy);
    if (!s.feature_names.empty()) j["feature_names"] = s.feature_names;
    j["manifest"] = m.to_json();
    emit(j, out, o);
    return kOk;
  }
};

struct Build {
  std::string mi;
  double alpha = 0.5;
  double epsilon = 1e-8;
  std::string mu = "max";
  bool plain = false;
  std::optional<int> penalty_k;
  double lambda = 1.0;
  std::string out;

  void add(CLI::App& app, std::function<void()> select) {
    auto* c = app.add_subcommand("build", "assemble the QUBO for one alpha");
    c->add_option("--mi", mi, "MI JSON from `mi`")->required()->check(CLI::ExistingFile);
    c->add_option("--alpha", alpha, "trade-off weight in [0, 1]")->check(CLI::Range(0.0, 1.0));
    c->add_option("--epsilon", epsilon, "importance threshold for the mu substitution");
    c->add_option("--mu", mu, "'max' or a positive number");
    c->add_flag("--plain", plain, "skip the epsilon/mu substitution");
    c->add_option("--penalty-k", penalty_k, "build the penalty baseline for this k instead");
    c->add_option("--lambda", lambda, "penalty weight");
    c->add_option("--out", out, "JSON output path (default: stdout)");
    c->callback(std::move(select));
  }

  int run(std::ostream& o) {
    Manifest m{"build"};
    DataOptions none;
    const auto s = load_mi(mi, none, 1, m);
    if (!out.empty()) m.outputs.push_back(out);
    std::optional<qubo::QuboInstance> q;
    if (penalty_k) {
      m.k = static_cast<std::size_t>(std::max(*penalty_k, 0));
      q = qubo::build_penalty(s.importance, s.redundancy, alpha, *penalty_k, lambda);
    } else if (plain) {
      q = qubo::build(s.importance, s.redundancy, alpha);
    } else {
      m.epsilon = epsilon;
      m.mu = mu;
      q = selection::probe_instance(s.importance, s.redundancy, alpha, {epsilon, parse_mu(mu)});
    }
    json j = json::parse(qubo::to_json(*q));
    if (penalty_k) j["penalty"] = {{"k", *penalty_k}, {"lambda", lambda}};
    j["manifest"] = m.to_json();
    emit(j, out, o);
    return kOk;
  }
};

struct Solve {
  std::string qubo_path;
  SolverOptions solver;
  std::optional<double> reference;
  std::string out;

  void add(CLI::App& app, std::function<void()> select) {
    auto* c = app.add_subcommand("solve", "sample a QUBO and summarize the shots");
    c->add_option("--qubo", qubo_path, "QUBO as JSON or coordinate list")->required()->check(CLI::ExistingFile);
    solver.add(c);
    c->add_option("--reference", reference, "reference energy for the attainment fraction");
    c->add_option("--out", out, "JSON output path (default: stdout)");
    c->callback(std::move(select));
  }

  int run(std::ostream& o) {
    Manifest m{"solve", {qubo_path}};
    if (!out.empty()) m.outputs.push_back(out);
    const auto q = load_qubo(qubo_path);
    const auto cfg = solver.resolve(q.size());
    m.solver = solver_json(cfg);
    m.seed = cfg.seed;
    json j = io::to_json(solve::summarize(solve::run(q, cfg), reference));
    j["manifest"] = m.to_json();
    emit(j, out, o);
    return kOk;
  }
};

struct Select {
  DataOptions data;
  std::string mi;
  std::size_t k = 0;
  double epsilon = 1e-8;
  std::string mu = "max";
  SolverOptions solver;
  std::string out;

  void add(CLI::App& app, std::function<void()> select) {
    auto* c = app.add_subcommand("select", "binary search over alpha for exactly k features");
    data.add(c);
    data.add_discretized(c);
    c->add_option("--mi", mi, "MI JSON from `mi`")->check(CLI::ExistingFile);
    c->add_option("--k", k, "number of features to select")->required();
    c->add_option("--epsilon", epsilon, "importance threshold for the mu substitution");
    c->add_option("--mu", mu, "'max' or a positive number");
    solver.add(c);
    c->add_option("--out", out, "JSON output path (default: stdout)");
    c->callback(std::move(select));
  }

  int run(std::ostream& o) {
    Manifest m{"select"};
    if (!out.empty()) m.outputs.push_back(out);
    const auto s = load_mi(mi, data, solver.threads, m);
    const auto cfg = solver.resolve(static_cast<std::size_t>(s.importance.values.size()));
    m.k = k;
    m.epsilon = epsilon;
    m.mu = mu;
    m.solver = solver_json(cfg);
    m.seed = cfg.seed;
    const auto r = selection::select_k(s.importance, s.redundancy, k, cfg, {epsilon, parse_mu(mu)});
    json j = io::to_json(r);
    const auto chosen = eval::FeatureSubset::from_bits(r.x_star);
    j["selected"] = chosen.indices();
    if (!s.feature_names.empty()) {
      std::vector<std::string> names;
      for (auto i : chosen.indices()) names.push_back(s.feature_names[i]);
      j["selected_names"] = names;
    }
    j["manifest"] = m.to_json();
    emit(j, out, o);
    return kOk;
  }
};

struct Sweep {
  DataOptions data;
  std::string mi;
  std::size_t points = 101;
  std::string grid;
  double epsilon = 1e-8;
  std::string mu = "max";
  SolverOptions solver;
  std::string out;

  void add(CLI::App& app, std::function<void()> select) {
    auto* c = app.add_subcommand("sweep", "selected weight and energy across an alpha grid");
    data.add(c);
    data.add_discretized(c);
    c->add_option("--mi", mi, "MI JSON from `mi`")->check(CLI::ExistingFile);
    c->add_option("--points", points, "evenly spaced grid points from 0 to 1")->check(CLI::PositiveNumber);
    c->add_option("--grid", grid, "explicit comma-separated alpha values");
    c->add_option("--epsilon", epsilon, "importance threshold for the mu substitution");
    c->add_option("--mu", mu, "'max' or a positive number");
    solver.add(c);
    c->add_option("--out", out, "JSON output path (default: stdout)");
    c->callback(std::move(select));
  }

  int run(std::ostream& o) {
    Manifest m{"sweep"};
    if (!out.empty()) m.outputs.push_back(out);
    const auto s = load_mi(mi, data, solver.threads, m);
    const auto cfg = solver.resolve(static_cast<std::size_t>(s.importance.values.size()));
    m.epsilon = epsilon;
    m.mu = mu;
    m.solver = solver_json(cfg);
    m.seed = cfg.seed;
    const auto g = grid.empty() ? selection::linear_grid(points) : parse_double_list(grid);
    const auto pts = selection::sweep_alpha(s.importance, s.redundancy, g, cfg, {epsilon, parse_mu(mu)});
    bool monotone = true;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (pts[i].alpha >= pts[i - 1].alpha && pts[i].k < pts[i - 1].k) monotone = false;
    emit(json{{"manifest", m.to_json()}, {"monotone", monotone}, {"points", io::to_json(pts)}}, out, o);
    return kOk;
  }
};

struct VerifyProp {
  std::string mi;
  std::size_t n = 8;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  bool table = false;
  std::string out;

  void add(CLI::App& app, std::function<void()> select) {
    auto* c = app.add_subcommand("verify-prop1",
                                 "check that every subset size is optimal for some alpha");
    c->add_option("--mi", mi, "check this MI JSON instead of random instances")->check(CLI::ExistingFile);
    c->add_option("--n", n, "features per random instance")->check(CLI::Range(1, 12));
    c->add_option("--trials", trials, "random instances")->check(CLI::PositiveNumber);
    c->add_option("--seed", seed, "seed");
    c->add_flag("--table", table, "print a plain-text witness table instead of JSON");
    c->add_option("--out", out, "output path (default: stdout)");
    c->callback(std::move(select));
  }

  static MiSource random_instance(std::size_t n, std::uint64_t seed, std::uint64_t trial) {
    auto eng = make_stream(seed, trial);
    const auto nn = static_cast<Eigen::Index>(n);
    MiSource s{{Eigen::VectorXd(nn)}, {Eigen::MatrixXd::Zero(nn, nn)}, {}};
    for (Eigen::Index i = 0; i < nn; ++i) s.importance.values(i) = uniform01(eng);
    for (Eigen::Index i = 0; i < nn; ++i)
      for (Eigen::Index j = i + 1; j < nn; ++j)
        s.redundancy.values(i, j) = s.redundancy.values(j, i) = uniform01(eng);
    return s;
  }

  int run(std::ostream& o) {
    Manifest m{"verify-prop1"};
    if (!out.empty()) m.outputs.push_back(out);
    std::vector<MiSource> instances;
    if (!mi.empty()) {
      DataOptions none;
      instances.push_back(load_mi(mi, none, 1, m));
    } else {
      m.seed = seed;
      for (std::size_t t = 0; t < trials; ++t) instances.push_back(random_instance(n, seed, t));
    }
    bool all = true;
    json runs = json::array();
    std::ostringstream text;
    text << "trial k found kind alpha lo hi\n";
    for (std::size_t t = 0; t < instances.size(); ++t) {
      const auto rep = selection::verify_proposition1(instances[t].importance, instances[t].redundancy);
      all = all && rep.holds;
      json r = io::to_json(rep);
      r["trial"] = t;
      runs.push_back(std::move(r));
      for (const auto& w : rep.witnesses) {
        text << t << ' ' << w.k << ' ' << (w.found ? "yes" : "no");
        if (w.found)
          text << ' ' << (w.point ? "point" : "interval") << ' ' << w.alpha << ' ' << w.lo << ' ' << w.hi;
        text << '\n';
      }
    }
    text << (all ? "holds" : "FAILS") << " on " << instances.size() << " instance(s)\n";
    if (table)
      emit(text.str(), out, o);
    else
      emit(json{{"manifest", m.to_json()}, {"holds", all}, {"runs", std::move(runs)}}, out, o);
    return all ? kOk : kFailure;
  }
};

struct Eval {
  std::string selected, truth;
  std::vector<std::string> subsets;
  std::optional<std::size_t> n;
  std::string out;

  void add(CLI::App& app, std::function<void()> select) {
    auto* c = app.add_subcommand("eval", "recovery report or distance graph of feature subsets");
    c->add_option("--selected", selected, "selection JSON or index list like 0,3,5");
    c->add_option("--truth", truth, "gen-synth truth JSON or index list");
    c->add_option("--subset", subsets, "name=indices or name=selection.json; repeat for a distance graph");
    c->add_option("--n", n, "ambient feature count for index lists");
    c->add_option("--out", out, "JSON output path (default: stdout)");
    c->callback(std::move(select));
  }

  eval::FeatureSubset subset(const std::string& spec, Manifest& m) const {
    if (fs::is_regular_file(spec)) {
      m.inputs.push_back(spec);
      const json j = read_json(spec);
      if (j.contains("x_star")) return eval::FeatureSubset::from_bits(io::selection_from_json(j).x_star);
      if (j.contains("informative") && j.contains("n"))
        return eval::FeatureSubset(j["informative"].get<std::vector<std::size_t>>(), j["n"].get<std::size_t>());
      throw InputError("'" + spec + "' is neither a selection result nor a truth file");
    }
    if (!n) throw InputError("--n is required when subsets are given as index lists");
    return eval::FeatureSubset(parse_index_list(spec), *n);
  }

  int run(std::ostream& o) {
    Manifest m{"eval"};
    if (!out.empty()) m.outputs.push_back(out);
    json j;
    if (!subsets.empty()) {
      if (!selected.empty() || !truth.empty())
        throw InputError("--subset cannot be combined with --selected/--truth");
      std::vector<eval::NamedSubset> named;
      for (const auto& s : subsets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("--subset expects name=indices, got '" + s + "'");
        named.push_back({s.substr(0, eq), subset(s.substr(eq + 1), m)});
      }
      j = io::to_json(eval::distance_graph(named));
    } else {
      if (selected.empty() || truth.empty())
        throw InputError("eval needs --selected and --truth, or two or more --subset");
      j = io::to_json(eval::recovery_report(subset(selected, m), subset(truth, m)));
    }
    j["manifest"] = m.to_json();
    emit(j, out, o);
    return kOk;
  }
};

struct Export {
  std::string qubo_path;
  std::string format = "json";
  std::string out;

  void add(CLI::App& app, std::function<void()> select) {
    auto* c = app.add_subcommand("export", "write a QUBO for external solvers");
    c->add_option("--qubo", qubo_path, "QUBO as JSON or coordinate list")->required()->check(CLI::ExistingFile);
    c->add_option("--format", format, "json, coo or ising")
        ->check(CLI::IsMember({"json", "coo", "ising"}));
    c->add_option("--out", out, "output path (default: stdout)");
    c->callback(std::move(select));
  }

  int run(std::ostream& o) {
    const auto q = load_qubo(qubo_path);
    if (format == "coo") {
      emit(qubo::to_coordinate_list(q), out, o);
    } else if (format == "ising") {
      emit(json::parse(qubo::ising_to_json(qubo::to_ising(q))), out, o);
    } else {
      emit(qubo::to_json(q) + "\n", out, o);
    }
    return kOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"QUBO feature selection"};
  app.name(args.empty() ? "qfs" : fs::path(args[0]).filename().string());
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenSynth gen_synth;
  Discretize discretize;
  Mi mi;
  Build build;
  Solve solve_cmd;
  Select select;
  Sweep sweep;
  VerifyProp verify;
  Eval eval_cmd;
  Export export_cmd;

  std::function<int()> action;
  auto bind = [&](auto& cmd) {
    cmd.add(app, [&action, &cmd, &out] { action = [&cmd, &out] { return cmd.run(out); }; });
  };
  bind(gen_synth);
  bind(discretize);
  bind(mi);
  bind(build);
  bind(solve_cmd);
  bind(select);
  bind(sweep);
  bind(verify);
  bind(eval_cmd);
  bind(export_cmd);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    return action();
  } catch (const selection::UnreachableK& e) {
    err << "error: " << e.what() << '\n';
    if (e.below) err << "  below: alpha=" << e.below->alpha << " k'=" << e.below->k << '\n';
    if (e.above) err << "  above: alpha=" << e.above->alpha << " k'=" << e.above->k << '\n';
    return kUnreachableK;
  } catch (const selection::NonMonotoneTrace& e) {
    err << "error: " << e.what() << '\n';
    return kNonMonotone;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace qfs::cli
