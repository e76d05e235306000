#include "divmbest/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace divmbest {

namespace {

double draw_cost(std::mt19937_64& rng, bool integral) {
  if (integral) return static_cast<double>(std::uniform_int_distribution<int>(-3, 3)(rng));
  // Three decimals keep files short and values exact at the default scale.
  return std::round(std::uniform_real_distribution<double>(-5.0, 5.0)(rng) * 1000.0) / 1000.0;
}

PairwiseTerm random_edge(std::mt19937_64& rng, NodeId u, NodeId v, bool integral) {
  PairwiseTerm e{u, v, draw_cost(rng, integral), draw_cost(rng, integral),
                 draw_cost(rng, integral), draw_cost(rng, integral)};
  const double margin = e.cost01 + e.cost10 - e.cost00 - e.cost11;
  if (margin < 0) {
    // Lift the off-diagonal entries until the edge is submodular.
    e.cost01 -= margin;
    if (std::bernoulli_distribution(0.5)(rng)) {
      const double extra = integral ? 1.0 : 0.5;
      e.cost10 += extra;
    }
  }
  return e;
}

}  // namespace

EnergyModel random_submodular_model(std::mt19937_64& rng, int node_count,
                                    double edge_probability) {
  const bool integral = std::bernoulli_distribution(0.5)(rng);
  std::vector<UnaryTerm> unary;
  for (int v = 0; v < node_count; ++v) {
    unary.push_back({draw_cost(rng, integral), draw_cost(rng, integral)});
  }
  std::vector<PairwiseTerm> edges;
  std::bernoulli_distribution has_edge(edge_probability);
  for (int u = 0; u < node_count; ++u) {
    for (int v = u + 1; v < node_count; ++v) {
      if (has_edge(rng)) edges.push_back(random_edge(rng, u, v, integral));
    }
  }
  return EnergyModel(node_count, std::move(unary), std::move(edges));
}

EnergyModel random_grid_model(std::mt19937_64& rng, int rows, int cols) {
  const bool integral = std::bernoulli_distribution(0.5)(rng);
  const int n = rows * cols;
  std::vector<UnaryTerm> unary;
  for (int v = 0; v < n; ++v) unary.push_back({draw_cost(rng, integral), draw_cost(rng, integral)});
  std::vector<PairwiseTerm> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) edges.push_back(random_edge(rng, v, v + 1, integral));
      if (r + 1 < rows) edges.push_back(random_edge(rng, v, v + cols, integral));
    }
  }
  return EnergyModel(n, std::move(unary), std::move(edges));
}

ContrastModel parse_contrast(std::string_view name) {
  if (name == "none") return ContrastModel::none;
  if (name == "exponential") return ContrastModel::exponential;
  throw Error(ErrorCode::invalid_input, "unknown contrast model '" + std::string(name) + "'");
}

BlobShape parse_shape(std::string_view name) {
  if (name == "disk") return BlobShape::disk;
  if (name == "square") return BlobShape::square;
  if (name == "blobs") return BlobShape::blobs;
  throw Error(ErrorCode::invalid_input, "unknown shape '" + std::string(name) + "'");
}

namespace {

std::vector<PairwiseTerm> potts_grid(int rows, int cols, const std::vector<double>& intensity,
                                     double strength, ContrastModel contrast) {
  double mean_sq = 0.0;
  int pairs = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) {
        mean_sq += std::pow(intensity[v] - intensity[v + 1], 2);
        ++pairs;
      }
      if (r + 1 < rows) {
        mean_sq += std::pow(intensity[v] - intensity[v + cols], 2);
        ++pairs;
      }
    }
  }
  mean_sq = pairs > 0 ? mean_sq / pairs : 0.0;
  const double beta = mean_sq > 0.0 ? 1.0 / (2.0 * mean_sq) : 0.0;
  auto weight = [&](int u, int v) {
    double w = strength;
    if (contrast == ContrastModel::exponential) {
      w *= std::exp(-beta * std::pow(intensity[u] - intensity[v], 2));
    }
    return std::round(w * 1e6) / 1e6;
  };
  std::vector<PairwiseTerm> edges;
  if (strength == 0.0) return edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) {
        const double w = weight(v, v + 1);
        edges.push_back({v, v + 1, 0.0, w, w, 0.0});
      }
      if (r + 1 < rows) {
        const double w = weight(v, v + cols);
        edges.push_back({v, v + cols, 0.0, w, w, 0.0});
      }
    }
  }
  return edges;
}

std::vector<std::uint8_t> plant_shape(int rows, int cols, BlobShape shape, std::mt19937_64& rng) {
  std::vector<std::uint8_t> truth(static_cast<std::size_t>(rows * cols), 0);
  const double extent = std::min(rows, cols);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto paint_disk = [&](double cr, double cc, double radius) {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        if (std::hypot(r - cr, c - cc) <= radius) truth[static_cast<std::size_t>(r * cols + c)] = 1;
      }
    }
  };
  const double cr = rows * (0.3 + 0.4 * unit(rng));
  const double cc = cols * (0.3 + 0.4 * unit(rng));
  const double radius = std::max(0.5, extent * (0.15 + 0.15 * unit(rng)));
  switch (shape) {
    case BlobShape::disk:
      paint_disk(cr, cc, radius);
      break;
    case BlobShape::square:
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
          if (std::abs(r - cr) <= radius && std::abs(c - cc) <= radius) {
            truth[static_cast<std::size_t>(r * cols + c)] = 1;
          }
        }
      }
      break;
    case BlobShape::blobs: {
      const int count = 2 + static_cast<int>(unit(rng) * 2.0);
      for (int k = 0; k < count; ++k) {
        paint_disk(rows * unit(rng), cols * unit(rng),
                   std::max(0.5, extent * (0.1 + 0.12 * unit(rng))));
      }
      break;
    }
  }
  return truth;
}

}  // namespace

GridInstance generate_grid(int rows, int cols, double unary_noise, double potts_strength,
                           ContrastModel contrast, std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::invalid_input, "grid needs rows, cols >= 1");
  std::mt19937_64 rng(seed);
  const auto truth = plant_shape(rows, cols, BlobShape::blobs, rng);
  std::normal_distribution<double> noise(0.0, 1.0);
  GridInstance out;
  out.rows = rows;
  out.cols = cols;
  out.ground_truth = Labeling(truth);
  std::vector<UnaryTerm> unary;
  for (std::size_t v = 0; v < truth.size(); ++v) {
    const double base = truth[v] ? 0.8 : 0.2;
    const double i = std::round((base + unary_noise * noise(rng)) * 1e6) / 1e6;
    out.intensity.push_back(i);
    unary.push_back({std::round(4.0 * (i - 0.2) * (i - 0.2) * 1e6) / 1e6,
                     std::round(4.0 * (i - 0.8) * (i - 0.8) * 1e6) / 1e6});
  }
  auto edges = potts_grid(rows, cols, out.intensity, potts_strength, contrast);
  out.model = EnergyModel(rows * cols, std::move(unary), std::move(edges));
  return out;
}

ScribbleInstance generate_scribble_toy(int rows, int cols, BlobShape shape, std::uint64_t seed,
                                       double noise, double potts_strength) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::invalid_input, "grid needs rows, cols >= 1");
  std::mt19937_64 rng(seed);
  ScribbleInstance out;
  out.rows = rows;
  out.cols = cols;
  const auto truth = plant_shape(rows, cols, shape, rng);
  out.ground_truth = Labeling(truth);

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> intensity;
  std::vector<UnaryTerm> unary;
  for (std::uint8_t t : truth) {
    const double i = std::round((t + noise * gauss(rng)) * 1e6) / 1e6;
    intensity.push_back(i);
    unary.push_back({i, 1.0 - i});
  }

  // A few scribbled pixels per region.
  out.scribbles.assign(truth.size(), -1);
  std::vector<std::size_t> fg;
  std::vector<std::size_t> bg;
  for (std::size_t v = 0; v < truth.size(); ++v) (truth[v] ? fg : bg).push_back(v);
  const std::size_t per_region = std::max<std::size_t>(1, truth.size() / 50);
  for (auto* region : {&fg, &bg}) {
    std::shuffle(region->begin(), region->end(), rng);
    for (std::size_t k = 0; k < std::min(per_region, region->size()); ++k) {
      const std::size_t v = (*region)[k];
      out.scribbles[v] = static_cast<std::int8_t>(truth[v]);
      if (truth[v]) {
        unary[v].cost0 += kScribbleCost;
      } else {
        unary[v].cost1 += kScribbleCost;
      }
    }
  }
  auto edges = potts_grid(rows, cols, intensity, potts_strength, ContrastModel::exponential);
  out.model = EnergyModel(rows * cols, std::move(unary), std::move(edges));
  return out;
}

}  // namespace divmbest
