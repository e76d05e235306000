// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "divmbest/cli.hpp"
#include "divmbest/generators.hpp"
#include "divmbest/instance_io.hpp"
#include "divmbest/joint_solver.hpp"
#include "divmbest/mincut_reduction.hpp"
#include "divmbest/oracle.hpp"
#include "support.hpp"

using namespace divmbest;
using namespace divmbest::testing;

namespace {

constexpr double kLambdas[] = {0.1, 1.0, 10.0};

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("criterion %d %s: %s (%s; %.2fs)\n", id, o.pass ? "PASS" : "FAIL", title.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

// Small randomized suite reused by several criteria.
struct SuiteCase {
  EnergyModel model;
  DiversityMeasure measure;
  double lambda;
};

std::vector<SuiteCase> small_suite(int count) {
  std::vector<SuiteCase> out;
  auto rng = rng_for(1000);
  for (int i = 0; i < count; ++i) {
    const int n = 1 + i % 5;
    const int M = 1 + (i / 5) % 3;
    const double lambda = kLambdas[(i / 15) % 3];
    const double p = (i / 45) % 3 == 0 ? 0.0 : ((i / 45) % 3 == 1 ? 1.0 : 2.0);
    out.push_back({random_submodular_model(rng, n),
                   p == 0.0 ? DiversityMeasure::hamming(M) : DiversityMeasure::power(M, p), lambda});
  }
  return out;
}

std::string describe_case(int i, const SuiteCase& c) {
  InstanceFile f;
  f.model = c.model;
  f.lambda = c.lambda;
  DiversitySpec s;
  s.kind = c.measure.kind();
  s.M = c.measure.M();
  s.p = c.measure.exponent();
  f.diversity = s;
  std::ostringstream out;
  out << "case " << i << "\n";
  write_instance(out, f);
  return out.str();
}

Cost map_value(const EnergyModel& m) {
  const auto t = oracle::tabulate(m);
  return *std::min_element(t.begin(), t.end());
}

std::vector<Cost> weighted(const SuiteCase& c) {
  return gamma_schedule(c.measure, c.lambda).fixed_weighted_diversity(c.model.scale());
}

std::vector<Cost> submodular_table(std::mt19937_64& rng, int n) {
  auto table = oracle::tabulate(random_submodular_model(rng, n));
  std::uniform_int_distribution<int> w(0, 3);
  const oracle::Mask scope = static_cast<oracle::Mask>(rng() & ((1u << n) - 1));
  const Cost weight = Cost{w(rng)} * 1'000'000;
  for (oracle::Mask y = 0; y < table.size(); ++y) {
    const int k = std::popcount(y & scope);
    table[y] -= weight * k * k;
  }
  return table;
}

void print_bench_table() {
  const GridInstance grid = generate_grid(128, 128, 0.4, 0.3, ContrastModel::exponential, 2024);
  std::printf("benchmark (report only): 128x128 grid, Hamming, lambda 0.05, median of 3 runs\n");
  std::printf("  %-12s %8s %8s %8s\n", "method", "M=2", "M=6", "M=10");
  for (const std::string method : {"divmbest", "sequential", "parallel"}) {
    std::printf("  %-12s", method.c_str());
    for (int M : {2, 6, 10}) {
      std::vector<double> times;
      for (int r = 0; r < 3; ++r) {
        const auto start = std::chrono::steady_clock::now();
        if (method == "divmbest") {
          oracle::divmbest_greedy(grid.model, 0.05, M);
        } else {
          solve_joint(grid.model, DiversityMeasure::hamming(M), 0.05,
                      {parse_strategy(method), M});
        }
        times.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      }
      std::sort(times.begin(), times.end());
      std::printf(" %7.3fs", times[1]);
    }
    std::printf("\n");
  }
}

}  // namespace

int main() {
  const auto suite = small_suite(540);

  report(1, "joint optimum equals exhaustive optimum", [&] {
    Outcome o;
    for (std::size_t i = 0; i < suite.size(); ++i) {
      const auto& c = suite[i];
      const auto opt = oracle::brute_force_joint(c.model, weighted(c), c.measure.M());
      const auto sol = solve_joint(c.model, c.measure, c.lambda);
      if (sol.joint_objective_fixed != opt.objective) {
        o.fail("objective mismatch\n" + describe_case(static_cast<int>(i), c));
      }
    }
    if (o.pass) o.detail = std::to_string(suite.size()) + " instances, zero tolerance";
    return o;
  });

  report(2, "outputs nested, highest minimizers nested, repair is a no-op", [&] {
    Outcome o;
    for (std::size_t i = 0; i < suite.size(); ++i) {
      const auto& c = suite[i];
      const auto sol = solve_joint(c.model, c.measure, c.lambda);
      if (!is_nested(sol.tuple)) o.fail("not nested\n" + describe_case(static_cast<int>(i), c));
      if (repair_nestedness(sol.tuple) != sol.tuple) o.fail("repair changed the tuple");
      // Per-level highest minimizers computed one by one, from scratch.
      const auto g = gamma_schedule(c.measure, c.lambda).fixed_gammas(c.model.scale());
      LabelingTuple levels;
      for (Cost gm : g) {
        const std::vector<Cost> gamma(static_cast<std::size_t>(c.model.node_count()), gm);
        levels.push_back(minimize(c.model, gamma, Extremal::highest).labeling);
      }
      if (!is_nested(levels) || levels != sol.tuple) o.fail("highest minimizers not nested");
    }
    if (o.pass) o.detail = std::to_string(suite.size()) + " instances";
    return o;
  });

  report(3, "strategies produce bitwise-identical tuples", [] {
    Outcome o;
    auto rng = rng_for(3000);
    int count = 0;
    for (int i = 0; i < 220; ++i) {
      const int rows = 1 + static_cast<int>(rng() % 32);
      const int cols = 1 + static_cast<int>(rng() % 32);
      const int M = 1 + i % 10;
      const DiversityMeasure d = i % 3 == 0   ? DiversityMeasure::hamming(M)
                                 : i % 3 == 1 ? DiversityMeasure::power(M, 1.0)
                                              : DiversityMeasure::power(M, 2.0);
      const double lambda = kLambdas[i % 3];
      const EnergyModel m = random_grid_model(rng, rows, cols);
      const auto ref = solve_joint(m, d, lambda, {Strategy::independent, 1});
      if (solve_joint(m, d, lambda, {Strategy::sequential, 1}).tuple != ref.tuple) {
        o.fail("sequential differs on instance " + std::to_string(i));
      }
      for (int p : {1, 2, M}) {
        if (solve_joint(m, d, lambda, {Strategy::parallel, p}).tuple != ref.tuple) {
          o.fail("parallel(" + std::to_string(p) + ") differs on instance " + std::to_string(i));
        }
      }
      ++count;
    }
    if (o.pass) o.detail = std::to_string(count) + " grids up to 32x32, M <= 10, p in {1,2,M}";
    return o;
  });

  report(4, "Hamming schedule is lambda(M-2m+1); middle level is MAP", [] {
    Outcome o;
    for (double lambda : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      for (int M = 2; M <= 10; ++M) {
        std::ostringstream out, err;
        const int code = run_cli({"gamma", "--measure", "hamming", "--M", std::to_string(M),
                                  "--lambda", format_real(lambda)},
                                 out, err);
        std::string expected;
        for (int m = 1; m <= M; ++m) {
          expected += (m > 1 ? " " : "") + format_real(lambda * (M - 2 * m + 1));
        }
        if (code != 0 || out.str() != expected + "\n") {
          o.fail("gamma output '" + out.str() + "' != '" + expected + "'");
        }
        const auto g = gamma_schedule(DiversityMeasure::hamming(M), lambda).fixed_gammas(kDefaultScale);
        const Cost gap = to_fixed(2 * lambda, kDefaultScale);
        for (int m = 1; m <= M; ++m) {
          if (-g[m - 1] != g[M - m]) o.fail("asymmetric schedule");
          if (m < M && g[m - 1] - g[m] != gap) o.fail("non-uniform gap");
        }
      }
    }
    auto rng = rng_for(4000);
    int checked = 0;
    for (int i = 0; i < 120; ++i) {
      const int M = 1 + 2 * (i % 5);
      const EnergyModel m = random_submodular_model(rng, 1 + i % 10);
      const auto sol = solve_joint(m, DiversityMeasure::hamming(M), kLambdas[i % 3]);
      if (m.evaluate_fixed(sol.tuple[static_cast<std::size_t>((M - 1) / 2)]) != map_value(m)) {
        o.fail("middle labeling is not MAP on instance " + std::to_string(i));
      }
      ++checked;
    }
    if (o.pass) o.detail = "M in 2..10, 5 lambdas; MAP check on " + std::to_string(checked) + " instances";
    return o;
  });

  report(5, "linear measure yields at most 3 distinct labelings", [] {
    Outcome o;
    auto rng = rng_for(5000);
    int count = 0;
    for (int i = 0; i < 300; ++i) {
      const int M = 1 + i % 12;
      const EnergyModel m = i % 2 ? random_grid_model(rng, 1 + i % 9, 1 + i % 7)
                                  : random_submodular_model(rng, 1 + i % 8);
      const auto sol = solve_joint(m, DiversityMeasure::power(M, 1.0), kLambdas[i % 3],
                                   {Strategy::sequential, 1});
      std::set<std::vector<std::uint8_t>> distinct;
      for (const auto& y : sol.tuple) distinct.insert({y.bits().begin(), y.bits().end()});
      if (distinct.size() > 3) o.fail("instance " + std::to_string(i) + " has " +
                                      std::to_string(distinct.size()) + " distinct labelings");
      ++count;
    }
    if (o.pass) o.detail = std::to_string(count) + " instances, M <= 12";
    return o;
  });

  report(6, "max-flow equals exhaustive min-cut; warm start equals cold solve", [] {
    Outcome o;
    auto rng = rng_for(6000);
    for (int i = 0; i < 1000; ++i) {
      const NetSpec spec = random_net(rng, 10);
      FlowNetwork net = spec.build();
      if (net.solve().flow_value != brute_cut(spec).value) {
        o.fail("flow mismatch on network " + std::to_string(i));
      }
    }
    for (int i = 0; i < 500; ++i) {
      const NetSpec spec = random_net(rng, 10);
      FlowNetwork warm = spec.build();
      warm.solve();
      NetSpec next = spec;
      std::vector<TerminalDelta> delta(static_cast<std::size_t>(spec.n));
      std::uniform_int_distribution<int> cap(0, 6);
      for (int v = 0; v < spec.n; ++v) {
        if (rng() & 1u) continue;
        next.source[v] = cap(rng);
        next.sink[v] = cap(rng);
        delta[v] = {next.source[v] - spec.source[v], next.sink[v] - spec.sink[v]};
      }
      warm.reparameterize(delta);
      const Cost w = warm.solve().flow_value;
      FlowNetwork cold = next.build();
      const Cost c = cold.solve().flow_value;
      const bool same = w == c &&
          warm.extremal_cut(CutSide::minimal_source_side).side ==
              cold.extremal_cut(CutSide::minimal_source_side).side &&
          warm.extremal_cut(CutSide::maximal_source_side).side ==
              cold.extremal_cut(CutSide::maximal_source_side).side;
      if (!same) o.fail("warm/cold mismatch on pair " + std::to_string(i));
    }
    if (o.pass) o.detail = "1000 networks, 500 reparameterization pairs";
    return o;
  });

  report(7, "join property, level decoupling and multilabel optimum", [&] {
    Outcome o;
    auto rng = rng_for(7000);
    for (int i = 0; i < 240; ++i) {
      const int n = 1 + i % 4;
      const int M = 1 + (i / 4) % 3;
      const oracle::SubmodularOracle e(n, submodular_table(rng, n));
      // Antitone F: minimum of antitone modular functions.
      std::vector<Cost> f(std::size_t{1} << n, std::numeric_limits<Cost>::max());
      for (int piece = 0; piece < 1 + i % 3; ++piece) {
        std::vector<Cost> coef(static_cast<std::size_t>(n));
        for (auto& x : coef) x = Cost(rng() % 4) * 1'000'000;
        for (oracle::Mask y = 0; y < f.size(); ++y) {
          Cost val = 0;
          for (int v = 0; v < n; ++v)
            if ((y >> v) & 1u) val -= coef[static_cast<std::size_t>(v)];
          f[y] = std::min(f[y], val);
        }
      }
      if (!oracle::check_join_property(e, f)) o.fail("join property fails on family " + std::to_string(i));
      const auto d = i % 2 ? DiversityMeasure::hamming(M) : DiversityMeasure::power(M, 1.0);
      const auto g = gamma_schedule(d, kLambdas[i % 3]).fixed_gammas(kDefaultScale);
      std::vector<std::vector<Cost>> levels;
      for (std::size_t m = 0; m < g.size(); ++m) {
        std::vector<Cost> level(e.table().begin(), e.table().end());
        for (oracle::Mask y = 0; y < level.size(); ++y) {
          level[y] += g[m] * std::popcount(y);
        }
        levels.push_back(std::move(level));
      }
      const auto dec = oracle::check_level_decoupling(levels, n);
      if (!dec.preconditions_hold || !dec.decouples || !dec.highest_nested) {
        o.fail("decoupling fails on family " + std::to_string(i));
      }
    }
    for (std::size_t i = 0; i < suite.size(); ++i) {
      const auto& c = suite[i];
      const auto table = weighted(c);
      if (oracle::brute_force_multilabel(c.model, table, c.measure.M()).objective !=
          oracle::brute_force_joint(c.model, table, c.measure.M()).objective) {
        o.fail("multilabel optimum differs\n" + describe_case(static_cast<int>(i), c));
      }
    }
    if (o.pass) o.detail = "240 families (n <= 4, M <= 3); " + std::to_string(suite.size()) + " shared instances";
    return o;
  });

  report(8, "exact tuples never lose to greedy DivMBest; fixture is strict", [&] {
    Outcome o;
    int compared = 0;
    auto check = [&](const EnergyModel& m, int M, double lambda, const std::string& what) {
      const auto d = DiversityMeasure::hamming(M);
      const auto table = gamma_schedule(d, lambda).fixed_weighted_diversity(m.scale());
      const auto sol = solve_joint(m, d, lambda);
      const auto greedy = oracle::divmbest_greedy(m, lambda, M);
      if (sol.joint_objective_fixed > joint_objective_fixed(m, table, greedy.tuple)) {
        o.fail("greedy better on " + what);
      }
      ++compared;
    };
    for (std::size_t i = 0; i < suite.size(); ++i) {
      check(suite[i].model, std::max(suite[i].measure.M(), 2), suite[i].lambda,
            "suite case " + std::to_string(i));
    }
    auto rng = rng_for(8000);
    for (int i = 0; i < 100; ++i) {
      check(random_grid_model(rng, 1 + i % 12, 1 + i % 9), 1 + i % 10, kLambdas[i % 3],
            "grid " + std::to_string(i));
    }
    const InstanceFile fx =
        read_instance(std::filesystem::path(DIVMBEST_FIXTURES) / "divmbest_strict.txt");
    const auto d = fx.diversity->measure();
    const auto table = gamma_schedule(d, *fx.lambda).fixed_weighted_diversity(fx.model.scale());
    const Cost exact = solve_joint(fx.model, d, *fx.lambda).joint_objective_fixed;
    const Cost greedy =
        joint_objective_fixed(fx.model, table, oracle::divmbest_greedy(fx.model, *fx.lambda, d.M()).tuple);
    if (!(exact < greedy)) o.fail("fixture is not strict");
    if (o.pass) {
      o.detail = std::to_string(compared) + " instances; fixture " + format_real(fx.model.real(exact)) +
                 " < " + format_real(fx.model.real(greedy));
    }
    return o;
  });

  report(9, "reformulation and total-energy identities are exact", [] {
    Outcome o;
    auto rng = rng_for(9000);
    int models = 0;
    for (int i = 0; i < 600; ++i) {
      const int n = 1 + i % 6;
      const EnergyModel m = random_submodular_model(rng, n);
      const Reformulation r = reformulate(m);
      for (oracle::Mask y = 0; y < (oracle::Mask{1} << n); ++y) {
        const Labeling lab = oracle::to_labeling(y, n);
        Cost halves = r.constant_halves;
        for (int v = 0; v < n; ++v) halves += r.a_halves[static_cast<std::size_t>(v)] * lab[static_cast<std::size_t>(v)];
        for (std::size_t e = 0; e < m.edges().size(); ++e) {
          const auto& t = m.edges()[e];
          halves += r.theta_halves[e] * (lab[static_cast<std::size_t>(t.u)] != lab[static_cast<std::size_t>(t.v)]);
        }
        if (halves != 2 * m.evaluate_fixed(lab)) o.fail("reformulation identity fails on model " + std::to_string(i));
      }
      // Every nested tuple is a zero-count vector in {0..M}^n.
      const int M = 1 + i % 3;
      std::vector<int> zeros(static_cast<std::size_t>(n), 0);
      for (;;) {
        const LabelingTuple t = oracle::decode_zero_counts(zeros, M);
        Cost direct = 0;
        for (const auto& y : t) direct += m.evaluate_fixed(y);
        if (oracle::multilabel_energy_halves(r, m.edges(), zeros, M) != 2 * direct) {
          o.fail("total-energy identity fails on model " + std::to_string(i));
        }
        std::size_t k = 0;
        while (k < zeros.size() && zeros[k] == M) zeros[k++] = 0;
        if (k == zeros.size()) break;
        ++zeros[k];
      }
      ++models;
    }
    if (o.pass) o.detail = std::to_string(models) + " models, |V| <= 6, exhaustive";
    return o;
  });

  print_bench_table();
  std::printf("%s\n", failures == 0 ? "all criteria PASS" : "some criteria FAIL");
  return failures == 0 ? 0 : 1;
}
