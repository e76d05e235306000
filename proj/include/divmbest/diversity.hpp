#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "divmbest/common.hpp"
#include "divmbest/energy_model.hpp"

namespace divmbest {

enum class DiversityKind { hamming, linear, power, custom };

/// Node-wise permutation-invariant diversity Δ(m), m = number of zeros among
/// the M labels of a node. The same Δ is used at every node.
class DiversityMeasure {
 public:
  /// Δ(m) = m (M − m): the sum of pairwise Hamming distances.
  static DiversityMeasure hamming(int M);
  /// Δ(m) = −|2m − M|^p, p ≥ 1. p == 1 is tagged linear.
  static DiversityMeasure power(int M, double p);
  /// Explicit table Δ(0..M); concavity is checked, not assumed.
  static DiversityMeasure custom(std::vector<double> values, double epsilon = 1.0 / kDefaultScale);

  int M() const { return static_cast<int>(values_.size()) - 1; }
  std::span<const double> values() const { return values_; }
  double operator()(int zeros) const { return values_.at(static_cast<std::size_t>(zeros)); }
  DiversityKind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  bool concave_certified() const { return concave_; }

 private:
  DiversityMeasure(std::vector<double> values, DiversityKind kind, double exponent,
                   bool concave)
      : values_(std::move(values)), kind_(kind), exponent_(exponent), concave_(concave) {}

  std::vector<double> values_;
  DiversityKind kind_ = DiversityKind::custom;
  double exponent_ = 0.0;
  bool concave_ = false;
};

struct ConcavityCertificate {
  bool is_concave = true;
  /// First (i, j), i < j, with Δ(i) − Δ(i−1) < Δ(j) − Δ(j−1) − ε.
  std::optional<std::pair<int, int>> violating_pair;
};

ConcavityCertificate check_concave(std::span<const double> values,
                                   double epsilon = 1.0 / kDefaultScale);
ConcavityCertificate check_concave(const DiversityMeasure& d,
                                   double epsilon = 1.0 / kDefaultScale);

/// Per-level unary perturbations γ^m = λ (Δ(m) − Δ(m−1)), m = 1..M.
struct GammaSchedule {
  int M = 0;
  double lambda = 0.0;
  /// λ Δ(0); the constant of the prefix-sum decomposition of λΔ.
  double base = 0.0;
  std::vector<double> gammas;

  /// round(S γ^m); monotone whenever gammas are.
  std::vector<Cost> fixed_gammas(double scale) const;
  /// Fixed-point λΔ(m) for m = 0..M, defined as round(S λΔ(0)) plus prefix
  /// sums of fixed_gammas. Solvers and oracles score tuples against this table.
  std::vector<Cost> fixed_weighted_diversity(double scale) const;
};

/// Throws Error(not_concave) for a non-concave measure and
/// Error(invalid_input) for λ ≤ 0.
GammaSchedule gamma_schedule(const DiversityMeasure& d, double lambda);

/// Per-node zero counts m⁰_v of a tuple.
std::vector<int> zero_counts(std::span<const Labeling> tuple);

/// Δ^M({y}) = Σ_v Δ(m⁰_v).
double diversity_of_tuple(const DiversityMeasure& d, std::span<const Labeling> tuple);

}  // namespace divmbest
