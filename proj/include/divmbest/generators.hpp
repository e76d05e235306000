#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "divmbest/energy_model.hpp"

namespace divmbest {

/// Small random submodular model. Roughly half the draws use small integer
/// costs so that ties (and therefore non-unique minimizers) are common.
EnergyModel random_submodular_model(std::mt19937_64& rng, int node_count,
                                    double edge_probability = 0.6);

/// Random 4-connected grid with random (submodular) edge tables; used by the
/// strategy-equivalence suites.
EnergyModel random_grid_model(std::mt19937_64& rng, int rows, int cols);

enum class ContrastModel { none, exponential };

ContrastModel parse_contrast(std::string_view name);

struct GridInstance {
  EnergyModel model;
  int rows = 0;
  int cols = 0;
  std::vector<double> intensity;
  /// The planted two-region labeling the image was drawn from.
  Labeling ground_truth;
};

/// 4-connected grid over a synthetic two-region image. Unaries are squared
/// distances to the two region means; pairwise terms are Potts with strength
/// potts_strength, optionally scaled by exp(−β (I_u − I_v)²).
GridInstance generate_grid(int rows, int cols, double unary_noise, double potts_strength,
                           ContrastModel contrast, std::uint64_t seed);

enum class BlobShape { disk, square, blobs };

BlobShape parse_shape(std::string_view name);

struct ScribbleInstance {
  EnergyModel model;
  Labeling ground_truth;
  /// -1 for unscribbled pixels, otherwise the scribbled label.
  std::vector<std::int8_t> scribbles;
  int rows = 0;
  int cols = 0;
};

/// Cost added against the scribbled label.
inline constexpr double kScribbleCost = 1e3;

/// Planted foreground shape, noisy unaries θ(0) = I, θ(1) = 1 − I with
/// I = truth + noise, contrast-sensitive Potts of strength potts_strength, and
/// hard scribbles on a few pixels of each region.
ScribbleInstance generate_scribble_toy(int rows, int cols, BlobShape shape, std::uint64_t seed,
                                       double noise = 0.3, double potts_strength = 0.2);

}  // namespace divmbest
