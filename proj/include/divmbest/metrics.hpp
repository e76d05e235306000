#pragma once

#include <span>

#include "divmbest/energy_model.hpp"

namespace divmbest {

/// Fraction of nodes where y agrees with the reference.
double pixel_accuracy(const Labeling& y, const Labeling& truth);

/// Intersection over union of the label-1 sets; 1 when both are empty.
double intersection_over_union(const Labeling& y, const Labeling& truth);

struct BestOfM {
  std::size_t index = 0;
  double accuracy = 0.0;
  double iou = 0.0;
};

/// The tuple member with the highest pixel accuracy (IoU breaks ties).
BestOfM best_of_m(std::span<const Labeling> tuple, const Labeling& truth);

}  // namespace divmbest
