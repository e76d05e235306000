#include "divmbest/joint_solver.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <string>
#include <thread>

#include "divmbest/mincut_reduction.hpp"

namespace divmbest {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_levels(const EnergyModel& model, std::span<const std::vector<Cost>> level_gammas) {
  if (level_gammas.empty()) throw Error(ErrorCode::invalid_input, "M must be at least 1");
  for (const auto& g : level_gammas) {
    if (g.size() != static_cast<std::size_t>(model.node_count())) {
      throw Error(ErrorCode::invalid_input, "level perturbation has wrong node count");
    }
  }
  const auto cert = check_submodular(model);
  if (!cert.is_submodular) {
    throw Error(ErrorCode::not_submodular,
                "energy is not submodular (edge " + std::to_string(*cert.worst_edge) + ")");
  }
}

// Solves levels [first, last) on one network, warm-starting between them.
void solve_group(const EnergyModel& model, std::span<const std::vector<Cost>> level_gammas,
                 std::size_t first, std::size_t last, bool fix_nodes, LevelSolution& out) {
  const auto n = static_cast<std::size_t>(model.node_count());
  const auto start = Clock::now();
  ReductionMap map = build_reduction(model, level_gammas[first]);
  for (std::size_t m = first; m < last; ++m) {
    const auto level_start = m == first ? start : Clock::now();
    if (m > first) {
      const auto& prev = level_gammas[m - 1];
      const auto& cur = level_gammas[m];
      for (std::size_t v = 0; v < n; ++v) {
        // γ sits on the source arc: it is the extra cost of label 1.
        map.network.reparameterize(static_cast<NodeId>(v), {cur[v] - prev[v], 0});
      }
      map.gamma = cur;
      if (fix_nodes) {
        const Labeling& below = out.tuple[m - 1];
        for (std::size_t v = 0; v < n; ++v) {
          if (below[v]) map.network.fix_node(static_cast<NodeId>(v), 1);
        }
      }
    }
    out.free_nodes[m] = n - map.network.fixed_count();
    map.network.solve();
    Minimizer y = read_minimizer(map, Extremal::highest);
    out.perturbed_energies[m] = y.energy_fixed;
    out.tuple[m] = std::move(y.labeling);
    out.level_seconds[m] = seconds_since(level_start);
  }
}

}  // namespace

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::independent:
      return "independent";
    case Strategy::sequential:
      return "sequential";
    case Strategy::parallel:
      return "parallel";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "independent") return Strategy::independent;
  if (name == "sequential") return Strategy::sequential;
  if (name == "parallel") return Strategy::parallel;
  throw Error(ErrorCode::invalid_input, "unknown strategy '" + std::string(name) + "'");
}

LevelSolution solve_levels(const EnergyModel& model,
                           std::span<const std::vector<Cost>> level_gammas,
                           const SolveOptions& options) {
  check_levels(model, level_gammas);
  const std::size_t M = level_gammas.size();
  LevelSolution out;
  out.tuple.resize(M);
  out.perturbed_energies.resize(M);
  out.level_seconds.resize(M);
  out.free_nodes.resize(M);
  const auto start = Clock::now();

  switch (options.strategy) {
    case Strategy::independent:
      for (std::size_t m = 0; m < M; ++m) solve_group(model, level_gammas, m, m + 1, false, out);
      break;
    case Strategy::sequential: {
      for (std::size_t m = 1; m < M; ++m) {
        for (std::size_t v = 0; v < level_gammas[m].size(); ++v) {
          if (level_gammas[m][v] > level_gammas[m - 1][v]) {
            throw Error(ErrorCode::invalid_input,
                        "sequential strategy needs non-increasing perturbations per node");
          }
        }
      }
      solve_group(model, level_gammas, 0, M, true, out);
      break;
    }
    case Strategy::parallel: {
      if (options.workers < 1) throw Error(ErrorCode::invalid_input, "workers must be >= 1");
      const std::size_t p = std::min<std::size_t>(static_cast<std::size_t>(options.workers), M);
      out.workers = static_cast<int>(p);
      std::vector<std::exception_ptr> errors(p);
      {
        std::vector<std::jthread> pool;
        pool.reserve(p);
        for (std::size_t g = 0; g < p; ++g) {
          const std::size_t first = g * M / p;
          const std::size_t last = (g + 1) * M / p;
          // Each worker writes only to its own level slots.
          pool.emplace_back([&, g, first, last] {
            try {
              solve_group(model, level_gammas, first, last, false, out);
            } catch (...) {
              errors[g] = std::current_exception();
            }
          });
        }
      }
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
      break;
    }
  }
  out.total_seconds = seconds_since(start);
  return out;
}

Cost joint_objective_fixed(const EnergyModel& model, std::span<const Cost> weighted_diversity,
                           std::span<const Labeling> tuple) {
  if (weighted_diversity.size() != tuple.size() + 1) {
    throw Error(ErrorCode::invalid_input, "diversity table must have M+1 entries");
  }
  Cost total = 0;
  for (const auto& y : tuple) total += model.evaluate_fixed(y);
  for (int zeros : zero_counts(tuple)) {
    total -= weighted_diversity[static_cast<std::size_t>(zeros)];
  }
  return total;
}

DiverseSolution solve_with_schedule(const EnergyModel& model, const GammaSchedule& schedule,
                                    const SolveOptions& options) {
  const auto n = static_cast<std::size_t>(model.node_count());
  const auto fixed = schedule.fixed_gammas(model.scale());
  std::vector<std::vector<Cost>> levels;
  levels.reserve(fixed.size());
  for (Cost g : fixed) levels.emplace_back(n, g);

  LevelSolution level = solve_levels(model, levels, options);

  DiverseSolution sol;
  sol.schedule = schedule;
  sol.strategy = options.strategy;
  sol.workers = level.workers;
  sol.level_seconds = std::move(level.level_seconds);
  sol.free_nodes = std::move(level.free_nodes);
  sol.total_seconds = level.total_seconds;
  sol.tuple = std::move(level.tuple);

  double energy_sum = 0.0;
  for (const auto& y : sol.tuple) {
    sol.energies.push_back(model.evaluate(y));
    sol.energies_fixed.push_back(model.evaluate_fixed(y));
    energy_sum += sol.energies.back();
  }
  // λΔ(k) = λΔ(0) + Σ_{m ≤ k} γ^m.
  std::vector<double> weighted(1, schedule.base);
  for (double g : schedule.gammas) weighted.push_back(weighted.back() + g);
  double weighted_total = 0.0;
  for (int zeros : zero_counts(sol.tuple)) weighted_total += weighted[static_cast<std::size_t>(zeros)];
  sol.diversity_value = weighted_total / schedule.lambda;
  sol.joint_objective = energy_sum - weighted_total;
  sol.joint_objective_fixed =
      joint_objective_fixed(model, schedule.fixed_weighted_diversity(model.scale()), sol.tuple);
  return sol;
}

DiverseSolution solve_joint(const EnergyModel& model, const DiversityMeasure& measure,
                            double lambda, const SolveOptions& options) {
  const GammaSchedule schedule = gamma_schedule(measure, lambda);
  DiverseSolution sol = solve_with_schedule(model, schedule, options);
  // Report Δ from the measure itself rather than the prefix sums.
  sol.diversity_value = diversity_of_tuple(measure, sol.tuple);
  return sol;
}

DiverseSolution solve_independent(const EnergyModel& model, const GammaSchedule& schedule) {
  return solve_with_schedule(model, schedule, {Strategy::independent, 1});
}

DiverseSolution solve_sequential(const EnergyModel& model, const GammaSchedule& schedule) {
  return solve_with_schedule(model, schedule, {Strategy::sequential, 1});
}

DiverseSolution solve_parallel(const EnergyModel& model, const GammaSchedule& schedule,
                               int workers) {
  return solve_with_schedule(model, schedule, {Strategy::parallel, workers});
}

LabelingTuple repair_nestedness(LabelingTuple tuple) {
  for (std::size_t m = 1; m < tuple.size(); ++m) {
    tuple[m] = join(tuple[m], tuple[m - 1]);
  }
  return tuple;
}

bool VerificationReport::all_ok() const {
  return nested && objective_consistent &&
         std::all_of(per_level_optimal.begin(), per_level_optimal.end(),
                     [](bool ok) { return ok; });
}

VerificationReport verify_solution(const EnergyModel& model, const DiversityMeasure& measure,
                                   double lambda, const DiverseSolution& solution) {
  VerificationReport report;
  const GammaSchedule schedule = gamma_schedule(measure, lambda);
  if (static_cast<int>(solution.tuple.size()) != schedule.M) {
    throw Error(ErrorCode::invalid_input, "solution size does not match the measure's M");
  }
  double energy_sum = 0.0;
  for (const auto& y : solution.tuple) energy_sum += model.evaluate(y);
  report.joint_objective = energy_sum - lambda * diversity_of_tuple(measure, solution.tuple);
  report.joint_objective_fixed = joint_objective_fixed(
      model, schedule.fixed_weighted_diversity(model.scale()), solution.tuple);
  report.objective_consistent = report.joint_objective_fixed == solution.joint_objective_fixed;
  report.nested = is_nested(solution.tuple);

  const auto n = static_cast<std::size_t>(model.node_count());
  const auto fixed = schedule.fixed_gammas(model.scale());
  for (std::size_t m = 0; m < fixed.size(); ++m) {
    const std::vector<Cost> gamma(n, fixed[m]);
    const Minimizer fresh = minimize(model, gamma, Extremal::highest);
    const Labeling& y = solution.tuple[m];
    const Cost energy = model.evaluate_fixed(y) + fixed[m] * static_cast<Cost>(y.count_ones());
    report.per_level_optimal.push_back(energy == fresh.energy_fixed);
  }
  return report;
}

}  // namespace divmbest
