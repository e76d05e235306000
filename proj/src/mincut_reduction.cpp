#include "divmbest/mincut_reduction.hpp"

#include <algorithm>
#include <string>

namespace divmbest {

Cost ReductionMap::perturbed_energy(const Labeling& y) const {
  Cost energy = model.get().evaluate_fixed(y);
  for (std::size_t v = 0; v < y.size(); ++v) energy += y[v] ? gamma[v] : 0;
  return energy;
}

std::vector<Cost> fixed_gamma(const EnergyModel& model, std::span<const double> gamma) {
  std::vector<Cost> out;
  out.reserve(gamma.size());
  for (double g : gamma) out.push_back(model.fixed(g));
  return out;
}

ReductionMap build_reduction(const EnergyModel& model, std::span<const Cost> gamma) {
  const auto n = static_cast<std::size_t>(model.node_count());
  if (gamma.size() != n) {
    throw Error(ErrorCode::invalid_input, "gamma must have one entry per node");
  }
  const auto cert = check_submodular(model);
  if (!cert.is_submodular) {
    throw Error(ErrorCode::not_submodular,
                "energy is not submodular (edge " + std::to_string(*cert.worst_edge) +
                    " has margin " + std::to_string(cert.worst_margin) + ")");
  }

  ReductionMap map{model, std::vector<Cost>(gamma.begin(), gamma.end()),
                   FlowNetwork(model.node_count()), 0};

  // cost0[v] / cost1[v]: accumulated cost of giving v label 0 / 1.
  std::vector<Cost> cost0(model.fixed_unary0().begin(), model.fixed_unary0().end());
  std::vector<Cost> cost1(model.fixed_unary1().begin(), model.fixed_unary1().end());
  for (std::size_t v = 0; v < n; ++v) cost1[v] += gamma[v];

  // θ(yu,yv) = A + (C − A) yu + (D − C) yv + margin · [yu = 0, yv = 1].
  for (const auto& e : model.fixed_edges()) {
    const Cost a = e.table[0][0];
    const Cost c = e.table[1][0];
    const Cost d = e.table[1][1];
    map.constant += a;
    cost1[static_cast<std::size_t>(e.u)] += c - a;
    cost1[static_cast<std::size_t>(e.v)] += d - c;
    // Label 0 = source side, label 1 = sink side: u→v is cut exactly on (0,1).
    map.network.add_arc_pair(e.u, e.v, e.margin(), 0);
  }

  // Sink-side nodes cut their source arc (cost of label 1) and vice versa.
  for (std::size_t v = 0; v < n; ++v) {
    const Cost shared = std::min(cost0[v], cost1[v]);
    map.constant += shared;
    map.network.add_terminal(static_cast<NodeId>(v), cost1[v] - shared, cost0[v] - shared);
  }
  return map;
}

Minimizer read_minimizer(const ReductionMap& map, Extremal which) {
  // Highest labeling = most sink-side nodes = minimal source side.
  const auto side = which == Extremal::highest ? CutSide::minimal_source_side
                                               : CutSide::maximal_source_side;
  const CutResult cut = map.network.extremal_cut(side);
  Minimizer result;
  result.labeling = Labeling(cut.side);
  result.energy_fixed = cut.flow_value + map.constant;
  double energy = map.model.get().evaluate(result.labeling);
  for (std::size_t v = 0; v < cut.side.size(); ++v) {
    if (cut.side[v]) energy += map.model.get().real(map.gamma[v]);
  }
  result.energy = energy;
  return result;
}

Minimizer minimize(const EnergyModel& model, std::span<const Cost> gamma, Extremal which) {
  ReductionMap map = build_reduction(model, gamma);
  map.network.solve();
  return read_minimizer(map, which);
}

}  // namespace divmbest
