#pragma once

#include <optional>
#include <string>
#include <vector>

#include "divmbest/joint_solver.hpp"
#include "divmbest/metrics.hpp"

namespace divmbest {

struct LevelMetrics {
  std::vector<double> accuracy;
  std::vector<double> iou;
  BestOfM best;
};

/// Everything except timing is recomputed from the labelings.
struct StrategyReport {
  Strategy strategy = Strategy::independent;
  int workers = 1;
  double joint_objective = 0.0;
  Cost joint_objective_fixed = 0;
  std::vector<double> energies;
  double diversity_value = 0.0;
  bool nested = false;
  std::vector<double> level_seconds;
  double total_seconds = 0.0;
  std::vector<std::size_t> free_nodes;
  std::size_t peak_free_nodes = 0;
  std::optional<LevelMetrics> metrics;
};

struct RunReport {
  std::string instance;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::string measure;
  int M = 0;
  double lambda = 0.0;
  std::vector<double> gammas;
  std::vector<StrategyReport> runs;
};

StrategyReport summarize(const EnergyModel& model, const DiversityMeasure& measure, double lambda,
                         const DiverseSolution& solution,
                         const std::optional<Labeling>& truth = std::nullopt);

std::string describe(const DiversityMeasure& measure);

/// Pretty-printed JSON.
std::string to_json(const RunReport& report);

}  // namespace divmbest
