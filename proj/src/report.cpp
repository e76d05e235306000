#include "divmbest/report.hpp"

#include <algorithm>
#include <json.hpp>

#include "divmbest/instance_io.hpp"

namespace divmbest {

StrategyReport summarize(const EnergyModel& model, const DiversityMeasure& measure, double lambda,
                         const DiverseSolution& solution, const std::optional<Labeling>& truth) {
  StrategyReport r;
  r.strategy = solution.strategy;
  r.workers = solution.workers;
  r.level_seconds = solution.level_seconds;
  r.total_seconds = solution.total_seconds;
  r.free_nodes = solution.free_nodes;
  if (!r.free_nodes.empty()) r.peak_free_nodes = *std::max_element(r.free_nodes.begin(), r.free_nodes.end());

  const auto& tuple = solution.tuple;
  for (const auto& y : tuple) r.energies.push_back(model.evaluate(y));
  r.diversity_value = diversity_of_tuple(measure, tuple);
  double total = 0.0;
  for (double e : r.energies) total += e;
  r.joint_objective = total - lambda * r.diversity_value;
  r.joint_objective_fixed = joint_objective_fixed(
      model, gamma_schedule(measure, lambda).fixed_weighted_diversity(model.scale()), tuple);
  r.nested = is_nested(tuple);

  if (truth) {
    LevelMetrics m;
    for (const auto& y : tuple) {
      m.accuracy.push_back(pixel_accuracy(y, *truth));
      m.iou.push_back(intersection_over_union(y, *truth));
    }
    m.best = best_of_m(tuple, *truth);
    r.metrics = std::move(m);
  }
  return r;
}

std::string describe(const DiversityMeasure& measure) {
  switch (measure.kind()) {
    case DiversityKind::hamming:
      return "hamming";
    case DiversityKind::linear:
      return "linear";
    case DiversityKind::power:
      return "power:" + format_real(measure.exponent());
    case DiversityKind::custom:
      return "custom";
  }
  return "unknown";
}

std::string to_json(const RunReport& report) {
  using nlohmann::json;
  json j;
  j["instance"] = report.instance;
  j["nodes"] = report.node_count;
  j["edges"] = report.edge_count;
  j["measure"] = report.measure;
  j["M"] = report.M;
  j["lambda"] = report.lambda;
  j["gammas"] = report.gammas;
  j["runs"] = json::array();
  for (const auto& r : report.runs) {
    json run;
    run["strategy"] = std::string(to_string(r.strategy));
    run["workers"] = r.workers;
    run["joint_objective"] = r.joint_objective;
    run["joint_objective_fixed"] = r.joint_objective_fixed;
    run["energies"] = r.energies;
    run["diversity"] = r.diversity_value;
    run["nested"] = r.nested;
    run["level_seconds"] = r.level_seconds;
    run["total_seconds"] = r.total_seconds;
    run["free_nodes"] = r.free_nodes;
    run["peak_free_nodes"] = r.peak_free_nodes;
    if (r.metrics) {
      run["metrics"] = {{"accuracy", r.metrics->accuracy},
                        {"iou", r.metrics->iou},
                        {"best_index", r.metrics->best.index},
                        {"best_accuracy", r.metrics->best.accuracy},
                        {"best_iou", r.metrics->best.iou}};
    }
    j["runs"].push_back(std::move(run));
  }
  return j.dump(2) + "\n";
}

}  // namespace divmbest
