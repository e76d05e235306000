#pragma once

#include <functional>
#include <span>
#include <vector>

#include "divmbest/energy_model.hpp"
#include "divmbest/maxflow.hpp"

namespace divmbest {

enum class Extremal { lowest, highest };

/// Network whose cuts encode E^γ(y) = E(y) + Σ_v γ_v y_v:
///   cut_capacity(y) + constant == E^γ(y) for every labeling y.
struct ReductionMap {
  std::reference_wrapper<const EnergyModel> model;
  std::vector<Cost> gamma;
  FlowNetwork network;
  Cost constant = 0;

  Cost perturbed_energy(const Labeling& y) const;
};

/// Standard per-term construction: unaries on terminal arcs, each pairwise
/// term split into terminal arcs plus one arc u→v of capacity equal to its
/// submodularity margin. Throws Error(not_submodular).
ReductionMap build_reduction(const EnergyModel& model, std::span<const Cost> gamma);

/// Fixed-point γ from real γ using the model's scale.
std::vector<Cost> fixed_gamma(const EnergyModel& model, std::span<const double> gamma);

struct Minimizer {
  Labeling labeling;
  /// E(y) + Σ γ_v y_v in fixed point.
  Cost energy_fixed = 0;
  /// The same quantity from the model's real costs.
  double energy = 0.0;
};

/// Exact minimizer of E^γ; `highest` is the coordinate-wise greatest element
/// of the minimizer lattice, `lowest` the least.
Minimizer minimize(const EnergyModel& model, std::span<const Cost> gamma, Extremal which);

/// Reads the labeling off an extremal cut of a solved reduction.
Minimizer read_minimizer(const ReductionMap& map, Extremal which);

}  // namespace divmbest
