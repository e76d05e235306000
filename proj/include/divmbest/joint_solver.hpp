#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "divmbest/diversity.hpp"
#include "divmbest/energy_model.hpp"

namespace divmbest {

enum class Strategy { independent, sequential, parallel };

std::string_view to_string(Strategy strategy);
Strategy parse_strategy(std::string_view name);

struct SolveOptions {
  Strategy strategy = Strategy::independent;
  /// Worker count for Strategy::parallel; clamped to M.
  int workers = 1;
};

/// Result of solving the M perturbed problems min E(y) + Σ_v γ^m_v y_v.
struct LevelSolution {
  LabelingTuple tuple;
  /// E^{γ^m}(y^m) in fixed point.
  std::vector<Cost> perturbed_energies;
  std::vector<double> level_seconds;
  /// Unfixed nodes at each level (all nodes unless sequential).
  std::vector<std::size_t> free_nodes;
  double total_seconds = 0.0;
  int workers = 1;
};

/// Solves every level for its highest minimizer. level_gammas[m][v] is the
/// fixed-point perturbation of node v at level m; this is also the hook for
/// node-dependent diversity. The sequential strategy requires per-node
/// non-increasing perturbations across levels.
LevelSolution solve_levels(const EnergyModel& model,
                           std::span<const std::vector<Cost>> level_gammas,
                           const SolveOptions& options);

struct DiverseSolution {
  LabelingTuple tuple;
  std::vector<double> energies;
  std::vector<Cost> energies_fixed;
  double diversity_value = 0.0;
  /// Σ_m E(y^m) − λΔ^M({y}).
  double joint_objective = 0.0;
  /// The same objective against the fixed-point weighted diversity table.
  Cost joint_objective_fixed = 0;
  GammaSchedule schedule;
  Strategy strategy = Strategy::independent;
  int workers = 1;
  std::vector<double> level_seconds;
  std::vector<std::size_t> free_nodes;
  double total_seconds = 0.0;
};

/// Exact joint M-best-diverse labelings for a submodular model and a concave
/// node-wise diversity: each y^m is the highest minimizer of
/// E(y) + Σ_v γ^m y_v, and the resulting tuple is nested.
DiverseSolution solve_joint(const EnergyModel& model, const DiversityMeasure& measure,
                            double lambda, const SolveOptions& options = {});
DiverseSolution solve_with_schedule(const EnergyModel& model, const GammaSchedule& schedule,
                                    const SolveOptions& options = {});
DiverseSolution solve_independent(const EnergyModel& model, const GammaSchedule& schedule);
/// Warm-started single network; nodes labeled 1 at level m−1 are fixed to 1.
DiverseSolution solve_sequential(const EnergyModel& model, const GammaSchedule& schedule);
/// Contiguous groups of levels, one worker per group, warm-started inside a group.
DiverseSolution solve_parallel(const EnergyModel& model, const GammaSchedule& schedule,
                               int workers);

/// Σ_m E_fixed(y^m) − Σ_v table[m⁰_v].
Cost joint_objective_fixed(const EnergyModel& model, std::span<const Cost> weighted_diversity,
                           std::span<const Labeling> tuple);

/// Replaces y^{m+1} by y^{m+1} ∨ y^m for m = 1..M−1. If every y^m minimizes
/// its level objective, so does every element of the result.
LabelingTuple repair_nestedness(LabelingTuple tuple);

struct VerificationReport {
  double joint_objective = 0.0;
  Cost joint_objective_fixed = 0;
  bool nested = false;
  std::vector<bool> per_level_optimal;
  /// Stored objective matches the recomputed one.
  bool objective_consistent = false;

  bool all_ok() const;
};

/// Recomputes everything from the labelings; each level is re-solved from scratch.
VerificationReport verify_solution(const EnergyModel& model, const DiversityMeasure& measure,
                                   double lambda, const DiverseSolution& solution);

}  // namespace divmbest
