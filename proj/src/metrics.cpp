#include "divmbest/metrics.hpp"

namespace divmbest {

namespace {
void check_sizes(const Labeling& y, const Labeling& truth) {
  if (y.size() != truth.size() || y.size() == 0) {
    throw Error(ErrorCode::invalid_input, "labeling and reference differ in size");
  }
}
}  // namespace

double pixel_accuracy(const Labeling& y, const Labeling& truth) {
  check_sizes(y, truth);
  std::size_t agree = 0;
  for (std::size_t v = 0; v < y.size(); ++v) agree += y[v] == truth[v];
  return static_cast<double>(agree) / static_cast<double>(y.size());
}

double intersection_over_union(const Labeling& y, const Labeling& truth) {
  check_sizes(y, truth);
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t v = 0; v < y.size(); ++v) {
    inter += y[v] && truth[v];
    uni += y[v] || truth[v];
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

BestOfM best_of_m(std::span<const Labeling> tuple, const Labeling& truth) {
  if (tuple.empty()) throw Error(ErrorCode::invalid_input, "empty tuple");
  BestOfM best;
  best.accuracy = -1.0;
  for (std::size_t m = 0; m < tuple.size(); ++m) {
    const double acc = pixel_accuracy(tuple[m], truth);
    const double iou = intersection_over_union(tuple[m], truth);
    if (acc > best.accuracy || (acc == best.accuracy && iou > best.iou)) best = {m, acc, iou};
  }
  return best;
}

}  // namespace divmbest
