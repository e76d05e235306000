#include "divmbest/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "divmbest/generators.hpp"
#include "divmbest/instance_io.hpp"
#include "divmbest/joint_solver.hpp"
#include "divmbest/maxflow.hpp"
#include "divmbest/mincut_reduction.hpp"
#include "divmbest/oracle.hpp"
#include "divmbest/report.hpp"

namespace divmbest {

namespace {

constexpr std::uint64_t kFallbackSeed = 20240917;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DIVMBEST_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_input, "DIVMBEST_SEED is not an unsigned integer");
    }
  }
  return kFallbackSeed;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input:
    case ErrorCode::parse:
      return kExitInvalid;
    case ErrorCode::not_submodular:
      return kExitNotSubmodular;
    case ErrorCode::not_concave:
      return kExitNotConcave;
    case ErrorCode::budget_exceeded:
      return kExitBudget;
    case ErrorCode::state:
      return kExitState;
  }
  return kExitFailure;
}

// Diversity flags shared by several subcommands.
struct MeasureFlags {
  std::string kind;
  int M = 0;
  double p = 1.0;
  std::vector<double> values;
  std::optional<double> lambda;

  void attach(CLI::App* app, bool with_lambda = true) {
    app->add_option("--measure", kind, "hamming | linear | power | custom")
        ->check(CLI::IsMember({"hamming", "linear", "power", "custom"}));
    app->add_option("--M", M, "number of labelings")->check(CLI::PositiveNumber);
    app->add_option("--p", p, "exponent of the power measure");
    app->add_option("--values", values, "custom Δ(0..M)");
    if (with_lambda) app->add_option("--lambda", lambda, "diversity weight (> 0)");
  }

  // Flags override whatever the instance file embeds.
  std::optional<DiversitySpec> spec(const std::optional<DiversitySpec>& embedded) const {
    std::optional<DiversitySpec> out = embedded;
    if (!kind.empty()) {
      DiversitySpec s;
      if (kind == "hamming") s.kind = DiversityKind::hamming;
      if (kind == "linear") s.kind = DiversityKind::linear;
      if (kind == "power") s.kind = DiversityKind::power;
      if (kind == "custom") s.kind = DiversityKind::custom;
      s.M = M > 0 ? M : (embedded ? embedded->M : 0);
      s.p = p;
      s.values = values;
      if (s.kind == DiversityKind::custom) {
        if (values.empty()) throw Error(ErrorCode::invalid_input, "--values is required for custom");
        s.M = static_cast<int>(values.size()) - 1;
      }
      out = s;
    } else if (M > 0 && out) {
      out->M = M;
    } else if (M > 0) {
      DiversitySpec s;
      s.M = M;
      out = s;
    }
    if (out && out->M < 1) throw Error(ErrorCode::invalid_input, "--M is required");
    return out;
  }

  DiversityMeasure measure(const std::optional<DiversitySpec>& embedded) const {
    const auto s = spec(embedded);
    if (!s) throw Error(ErrorCode::invalid_input, "no diversity measure given (use --measure/--M)");
    return s->measure();
  }

  double require_lambda(std::optional<double> embedded) const {
    if (lambda) return *lambda;
    if (embedded) return *embedded;
    throw Error(ErrorCode::invalid_input, "--lambda is required");
  }
};

std::string join_reals(std::span<const double> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ' ';
    s += format_real(values[i]);
  }
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void ensure_submodular(const InstanceFile& file) {
  if (!file.submodularity.is_submodular) {
    throw Error(ErrorCode::not_submodular,
                "edge " + std::to_string(*file.submodularity.worst_edge) + " has margin " +
                    format_real(file.submodularity.worst_margin));
  }
}

// ---------------------------------------------------------------- gamma

int cmd_gamma(const MeasureFlags& flags, bool fixed, double scale, std::ostream& out) {
  const DiversityMeasure d = flags.measure(std::nullopt);
  const GammaSchedule schedule = gamma_schedule(d, flags.require_lambda(std::nullopt));
  if (fixed) {
    const auto g = schedule.fixed_gammas(scale);
    for (std::size_t i = 0; i < g.size(); ++i) out << (i ? " " : "") << g[i];
    out << '\n';
  } else {
    out << join_reals(schedule.gammas) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- check

int cmd_check(const std::string& path, const MeasureFlags& flags, std::ostream& out) {
  const InstanceFile file = read_instance(std::filesystem::path(path));
  const auto& cert = file.submodularity;
  out << "nodes " << file.model.node_count() << " edges " << file.model.edges().size() << '\n';
  if (cert.is_submodular) {
    out << "submodular yes worst_margin " << format_real(cert.worst_margin) << '\n';
  } else {
    out << "submodular no edge " << *cert.worst_edge << " margin "
        << format_real(cert.worst_margin) << '\n';
  }
  int code = cert.is_submodular ? kExitOk : kExitNotSubmodular;

  if (const auto spec = flags.spec(file.diversity)) {
    const DiversityMeasure d = spec->measure();
    const ConcavityCertificate c = check_concave(d);
    if (c.is_concave) {
      out << "concave yes\n";
    } else {
      out << "concave no pair " << c.violating_pair->first << ' ' << c.violating_pair->second
          << '\n';
      if (code == kExitOk) code = kExitNotConcave;
    }
  }
  return code;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string instance;
  std::string strategy = "independent";
  int workers = 1;
  std::string out_path;
  std::string report_path;
  std::string pgm_prefix;
  std::string truth_path;
  bool verify = false;
};

int cmd_solve(const SolveArgs& a, const MeasureFlags& flags, std::ostream& out,
              std::ostream& err) {
  const InstanceFile file = read_instance(std::filesystem::path(a.instance));
  ensure_submodular(file);
  const DiversityMeasure measure = flags.measure(file.diversity);
  const double lambda = flags.require_lambda(file.lambda);

  std::vector<Strategy> strategies;
  if (a.strategy == "all") {
    strategies = {Strategy::independent, Strategy::sequential, Strategy::parallel};
  } else {
    strategies = {parse_strategy(a.strategy)};
  }
  std::optional<Labeling> truth;
  if (!a.truth_path.empty()) {
    const auto t = read_labelings(std::filesystem::path(a.truth_path));
    if (t.size() != 1) throw Error(ErrorCode::invalid_input, "ground truth must hold one labeling");
    truth = t.front();
  }

  RunReport report;
  report.instance = a.instance;
  report.node_count = static_cast<std::size_t>(file.model.node_count());
  report.edge_count = file.model.edges().size();
  report.measure = describe(measure);
  report.M = measure.M();
  report.lambda = lambda;

  std::optional<LabelingTuple> first;
  bool ok = true;
  for (Strategy s : strategies) {
    const DiverseSolution sol = solve_joint(file.model, measure, lambda, {s, a.workers});
    report.gammas = sol.schedule.gammas;
    report.runs.push_back(summarize(file.model, measure, lambda, sol, truth));
    if (!first) {
      first = sol.tuple;
    } else if (*first != sol.tuple) {
      err << "strategy " << to_string(s) << " disagrees with " << to_string(strategies.front())
          << '\n';
      ok = false;
    }
    if (a.verify) {
      const VerificationReport v = verify_solution(file.model, measure, lambda, sol);
      if (!v.all_ok()) {
        err << "verification failed for strategy " << to_string(s) << '\n';
        ok = false;
      }
    }
  }

  if (a.out_path.empty()) {
    write_labelings(out, *first);
  } else {
    std::ofstream f(a.out_path);
    if (!f) throw Error(ErrorCode::invalid_input, "cannot write " + a.out_path);
    write_labelings(f, *first);
  }
  if (!a.report_path.empty()) {
    std::ofstream f(a.report_path);
    if (!f) throw Error(ErrorCode::invalid_input, "cannot write " + a.report_path);
    f << to_json(report);
  }
  if (!a.pgm_prefix.empty()) {
    if (!file.grid) throw Error(ErrorCode::invalid_input, "PGM output needs grid dimensions");
    for (std::size_t m = 0; m < first->size(); ++m) {
      std::ofstream f(a.pgm_prefix + "_" + std::to_string(m + 1) + ".pgm");
      write_pgm(f, (*first)[m], *file.grid);
    }
  }
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  int rows = 8;
  int cols = 8;
  double noise = 0.3;
  double potts = 0.5;
  std::string contrast = "exponential";
  std::string shape = "disk";
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string truth_path;
};

void emit_instance(const InstanceFile& file, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    write_instance(out, file);
  } else {
    write_instance(std::filesystem::path(path), file);
  }
}

void emit_truth(const Labeling& truth, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::invalid_input, "cannot write " + path);
  const Labeling one[] = {truth};
  write_labelings(f, one);
}

int cmd_generate(bool scribble, const GenerateArgs& a, const MeasureFlags& flags,
                 std::ostream& out) {
  if (a.rows < 1 || a.cols < 1) throw Error(ErrorCode::invalid_input, "rows and cols must be >= 1");
  const std::uint64_t seed = a.seed.value_or(default_seed());
  InstanceFile file;
  file.diversity = flags.spec(std::nullopt);
  file.lambda = flags.lambda;
  file.grid = GridDims{a.rows, a.cols};
  Labeling truth;
  if (scribble) {
    ScribbleInstance inst =
        generate_scribble_toy(a.rows, a.cols, parse_shape(a.shape), seed, a.noise, a.potts);
    file.model = std::move(inst.model);
    truth = std::move(inst.ground_truth);
  } else {
    GridInstance inst =
        generate_grid(a.rows, a.cols, a.noise, a.potts, parse_contrast(a.contrast), seed);
    file.model = std::move(inst.model);
    truth = std::move(inst.ground_truth);
  }
  emit_instance(file, a.out_path, out);
  emit_truth(truth, a.truth_path);
  return kExitOk;
}

// ---------------------------------------------------------------- dimacs

int cmd_export_dimacs(const std::string& path, int level, const MeasureFlags& flags,
                      const std::string& out_path, std::ostream& out) {
  const InstanceFile file = read_instance(std::filesystem::path(path));
  ensure_submodular(file);
  std::vector<Cost> gamma(static_cast<std::size_t>(file.model.node_count()), 0);
  if (level > 0) {
    const DiversityMeasure d = flags.measure(file.diversity);
    if (level > d.M()) throw Error(ErrorCode::invalid_input, "--level exceeds M");
    const auto g = gamma_schedule(d, flags.require_lambda(file.lambda))
                       .fixed_gammas(file.model.scale());
    std::fill(gamma.begin(), gamma.end(), g[static_cast<std::size_t>(level - 1)]);
  }
  const ReductionMap map = build_reduction(file.model, gamma);
  if (out_path.empty()) {
    map.network.write_dimacs(out);
  } else {
    std::ofstream f(out_path);
    if (!f) throw Error(ErrorCode::invalid_input, "cannot write " + out_path);
    map.network.write_dimacs(f);
  }
  return kExitOk;
}

int cmd_maxflow(const std::string& path, bool maximal, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open " + path);
  FlowNetwork net = FlowNetwork::read_dimacs(in);
  const CutResult cut = net.solve();
  const CutResult chosen = maximal ? net.extremal_cut(CutSide::maximal_source_side) : cut;
  out << "flow " << chosen.flow_value << '\n';
  std::string row(chosen.side.size(), '0');
  for (std::size_t v = 0; v < chosen.side.size(); ++v) {
    row[v] = chosen.side[v] == kSinkSide ? '1' : '0';
  }
  out << "sink_side " << row << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- oracle-verify

struct VerifyArgs {
  int count = 500;
  std::optional<std::uint64_t> seed;
  int max_nodes = 5;
  int max_M = 3;
  bool quiet = false;
};

DiversityMeasure suite_measure(std::mt19937_64& rng, int M) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      return DiversityMeasure::hamming(M);
    case 1:
      return DiversityMeasure::power(M, 1.0);
    default:
      return DiversityMeasure::power(M, 2.0);
  }
}

DiversitySpec spec_of(const DiversityMeasure& d) {
  DiversitySpec s;
  s.kind = d.kind();
  s.M = d.M();
  s.p = d.exponent();
  if (d.kind() == DiversityKind::custom) s.values.assign(d.values().begin(), d.values().end());
  return s;
}

int cmd_oracle_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.max_nodes < 1 || a.max_nodes > 6 || a.max_M < 1 || a.max_M > 4) {
    throw Error(ErrorCode::invalid_input, "suite limits: 1 <= max-nodes <= 6, 1 <= max-M <= 4");
  }
  const std::uint64_t seed = a.seed.value_or(default_seed());
  constexpr double kLambdas[] = {0.1, 1.0, 10.0};
  int failures = 0;
  int greedy_strict = 0;
  for (int i = 0; i < a.count; ++i) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
    const int n = std::uniform_int_distribution<int>(1, a.max_nodes)(rng);
    const int M = std::uniform_int_distribution<int>(1, a.max_M)(rng);
    const double lambda = kLambdas[std::uniform_int_distribution<int>(0, 2)(rng)];
    const DiversityMeasure d = suite_measure(rng, M);
    const EnergyModel model = random_submodular_model(rng, n);

    const auto table = gamma_schedule(d, lambda).fixed_weighted_diversity(model.scale());
    const oracle::JointOptimum opt = oracle::brute_force_joint(model, table, M);

    std::vector<std::string> problems;
    for (Strategy s : {Strategy::independent, Strategy::sequential, Strategy::parallel}) {
      const DiverseSolution sol = solve_joint(model, d, lambda, {s, M});
      if (sol.joint_objective_fixed != opt.objective) {
        problems.push_back(std::string(to_string(s)) + " objective " +
                           std::to_string(sol.joint_objective_fixed) + " != optimum " +
                           std::to_string(opt.objective));
      }
      if (!is_nested(sol.tuple)) problems.push_back(std::string(to_string(s)) + " not nested");
    }
    if (d.kind() == DiversityKind::hamming) {
      const auto greedy = oracle::divmbest_greedy(model, lambda, M);
      const Cost g = joint_objective_fixed(model, table, greedy.tuple);
      if (g < opt.objective) problems.push_back("greedy beats the exhaustive optimum");
      if (g > opt.objective) ++greedy_strict;
    }

    if (!problems.empty()) {
      ++failures;
      err << "FAIL instance " << i << " (seed " << seed + static_cast<std::uint64_t>(i)
          << ", reproduce with --seed " << seed + static_cast<std::uint64_t>(i)
          << " --count 1)\n";
      for (const auto& p : problems) err << "  " << p << '\n';
      InstanceFile file;
      file.model = model;
      file.diversity = spec_of(d);
      file.lambda = lambda;
      write_instance(err, file);
    }
  }
  if (!a.quiet) {
    out << "instances " << a.count << " seed " << seed << " failures " << failures
        << " greedy_strictly_worse " << greedy_strict << '\n';
  }
  return failures == 0 ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  int rows = 128;
  int cols = 128;
  std::vector<int> Ms{2, 6, 10};
  std::vector<double> lambdas;
  std::string measure = "hamming";
  double p = 2.0;
  int warmup = 1;
  int repeats = 3;
  int workers = 0;
  double noise = 0.4;
  double potts = 0.3;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::vector<std::string> methods{"divmbest", "independent", "sequential", "parallel"};
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.lambdas.empty()) throw Error(ErrorCode::invalid_input, "--lambda grid is required");
  if (a.repeats < 1 || a.warmup < 0) throw Error(ErrorCode::invalid_input, "bad repeat counts");
  const std::uint64_t seed = a.seed.value_or(default_seed());
  const GridInstance grid =
      generate_grid(a.rows, a.cols, a.noise, a.potts, ContrastModel::exponential, seed);
  const EnergyModel& model = grid.model;

  std::ostringstream samples;
  std::ostringstream table;
  samples << "method\tM\tlambda\trepeat\tseconds\n";
  table << "method\tM\tlambda\tworkers\tobjective\tbest_accuracy\tbest_iou\tmean_seconds\t"
           "min_seconds\tmax_seconds\n";

  for (int M : a.Ms) {
    const DiversityMeasure d =
        a.measure == "hamming" ? DiversityMeasure::hamming(M) : DiversityMeasure::power(M, a.p);
    for (double lambda : a.lambdas) {
      const auto wd = gamma_schedule(d, lambda).fixed_weighted_diversity(model.scale());
      for (const std::string& method : a.methods) {
        const int workers = a.workers > 0 ? a.workers : M;
        LabelingTuple tuple;
        auto run_once = [&] {
          if (method == "divmbest") {
            tuple = oracle::divmbest_greedy(model, lambda, M).tuple;
          } else {
            const Strategy s = parse_strategy(method);
            tuple = solve_joint(model, d, lambda, {s, workers}).tuple;
          }
        };
        for (int w = 0; w < a.warmup; ++w) run_once();
        std::vector<double> times;
        for (int r = 0; r < a.repeats; ++r) {
          const auto start = std::chrono::steady_clock::now();
          run_once();
          times.push_back(seconds_since(start));
          samples << method << '\t' << M << '\t' << format_real(lambda) << '\t' << r << '\t'
                  << format_real(times.back()) << '\n';
        }
        double mean = 0.0;
        for (double t : times) mean += t;
        mean /= static_cast<double>(times.size());
        const BestOfM best = best_of_m(tuple, grid.ground_truth);
        const Cost objective = joint_objective_fixed(model, wd, tuple);
        table << method << '\t' << M << '\t' << format_real(lambda) << '\t'
              << (method == "parallel" ? workers : 1) << '\t'
              << format_real(model.real(objective)) << '\t' << format_real(best.accuracy) << '\t'
              << format_real(best.iou) << '\t' << format_real(mean) << '\t'
              << format_real(*std::min_element(times.begin(), times.end())) << '\t'
              << format_real(*std::max_element(times.begin(), times.end())) << '\n';
      }
    }
  }

  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    std::ofstream(std::filesystem::path(a.out_dir) / "bench_table.tsv") << table.str();
    std::ofstream(std::filesystem::path(a.out_dir) / "bench_samples.tsv") << samples.str();
  }
  out << "# grid " << a.rows << "x" << a.cols << " seed " << seed << '\n' << table.str();
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact diverse M-best labelings for submodular binary energies", "divmbest"};
  app.require_subcommand(1);

  MeasureFlags gamma_flags;
  bool gamma_fixed = false;
  double gamma_scale = kDefaultScale;
  auto* gamma = app.add_subcommand("gamma", "print the per-level perturbation schedule");
  gamma_flags.attach(gamma);
  gamma->add_flag("--fixed", gamma_fixed, "print fixed-point integers");
  gamma->add_option("--scale", gamma_scale, "fixed-point scale");

  std::string check_path;
  MeasureFlags check_flags;
  auto* check = app.add_subcommand("check", "certify submodularity and concavity");
  check->add_option("--instance", check_path)->required();
  check_flags.attach(check, false);

  SolveArgs solve_args;
  MeasureFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "compute M diverse labelings");
  solve->add_option("--instance", solve_args.instance)->required();
  solve->add_option("--strategy", solve_args.strategy, "independent | sequential | parallel | all")
      ->check(CLI::IsMember({"independent", "sequential", "parallel", "all"}));
  solve->add_option("--workers", solve_args.workers)->check(CLI::PositiveNumber);
  solve->add_option("--out", solve_args.out_path, "labeling file (stdout if omitted)");
  solve->add_option("--report", solve_args.report_path, "JSON run report");
  solve->add_option("--pgm-prefix", solve_args.pgm_prefix, "write <prefix>_<m>.pgm per labeling");
  solve->add_option("--truth", solve_args.truth_path, "ground-truth labeling file");
  solve->add_flag("--verify", solve_args.verify, "re-solve every level from scratch");
  solve_flags.attach(solve);

  GenerateArgs gen_args;
  MeasureFlags gen_flags;
  auto* generate = app.add_subcommand("generate", "write a synthetic instance");
  generate->require_subcommand(1);
  auto* gen_grid = generate->add_subcommand("grid", "two-region grid with Potts smoothing");
  auto* gen_scribble = generate->add_subcommand("scribble", "planted shape with hard scribbles");
  for (auto* sub : {gen_grid, gen_scribble}) {
    sub->add_option("--rows", gen_args.rows);
    sub->add_option("--cols", gen_args.cols);
    sub->add_option("--noise", gen_args.noise);
    sub->add_option("--potts", gen_args.potts);
    sub->add_option("--seed", gen_args.seed);
    sub->add_option("--out", gen_args.out_path);
    sub->add_option("--truth", gen_args.truth_path, "write the planted labeling here");
    gen_flags.attach(sub);
  }
  gen_grid->add_option("--contrast", gen_args.contrast)
      ->check(CLI::IsMember({"none", "exponential"}));
  gen_scribble->add_option("--shape", gen_args.shape)
      ->check(CLI::IsMember({"disk", "square", "blobs"}));

  std::string dimacs_instance;
  std::string dimacs_out;
  int dimacs_level = 0;
  MeasureFlags dimacs_flags;
  auto* export_dimacs = app.add_subcommand("export-dimacs", "write one level's network");
  export_dimacs->add_option("--instance", dimacs_instance)->required();
  export_dimacs->add_option("--out", dimacs_out);
  export_dimacs->add_option("--level", dimacs_level, "level m (0 = unperturbed)");
  dimacs_flags.attach(export_dimacs);

  std::string maxflow_path;
  bool maxflow_maximal = false;
  auto* maxflow = app.add_subcommand("maxflow", "solve a DIMACS max-flow file");
  maxflow->add_option("--dimacs", maxflow_path)->required();
  maxflow->add_flag("--maximal-source", maxflow_maximal, "report the maximal source side");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("oracle-verify", "compare the solver against brute force");
  verify->add_option("--count", verify_args.count)->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", verify_args.seed);
  verify->add_option("--max-nodes", verify_args.max_nodes);
  verify->add_option("--max-M", verify_args.max_M);
  verify->add_flag("--quiet", verify_args.quiet);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "time strategies against the greedy baseline");
  bench->add_option("--rows", bench_args.rows);
  bench->add_option("--cols", bench_args.cols);
  bench->add_option("--M", bench_args.Ms);
  bench->add_option("--lambda", bench_args.lambdas, "λ grid")->required();
  bench->add_option("--measure", bench_args.measure)->check(CLI::IsMember({"hamming", "power"}));
  bench->add_option("--p", bench_args.p);
  bench->add_option("--warmup", bench_args.warmup);
  bench->add_option("--repeats", bench_args.repeats);
  bench->add_option("--workers", bench_args.workers, "parallel workers (0 = M)");
  bench->add_option("--noise", bench_args.noise);
  bench->add_option("--potts", bench_args.potts);
  bench->add_option("--seed", bench_args.seed);
  bench->add_option("--out-dir", bench_args.out_dir);
  bench->add_option("--methods", bench_args.methods)
      ->check(CLI::IsMember({"divmbest", "independent", "sequential", "parallel"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (gamma->parsed()) return cmd_gamma(gamma_flags, gamma_fixed, gamma_scale, out);
    if (check->parsed()) return cmd_check(check_path, check_flags, out);
    if (solve->parsed()) return cmd_solve(solve_args, solve_flags, out, err);
    if (gen_grid->parsed()) return cmd_generate(false, gen_args, gen_flags, out);
    if (gen_scribble->parsed()) return cmd_generate(true, gen_args, gen_flags, out);
    if (export_dimacs->parsed()) {
      return cmd_export_dimacs(dimacs_instance, dimacs_level, dimacs_flags, dimacs_out, out);
    }
    if (maxflow->parsed()) return cmd_maxflow(maxflow_path, maxflow_maximal, out);
    if (verify->parsed()) return cmd_oracle_verify(verify_args, out, err);
    if (bench->parsed()) return cmd_bench(bench_args, out);
  } catch (const Error& e) {
    err << "error[" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitInvalid;
}

}  // namespace divmbest
