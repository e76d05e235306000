#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "divmbest/common.hpp"

namespace divmbest {

/// Binary labeling y : V -> {0,1}.
class Labeling {
 public:
  Labeling() = default;
  explicit Labeling(std::size_t node_count, std::uint8_t fill = 0)
      : bits_(node_count, fill) {}
  explicit Labeling(std::vector<std::uint8_t> bits);

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t v) const { return bits_[v]; }
  void set(std::size_t v, std::uint8_t label) { bits_[v] = label ? 1 : 0; }
  std::size_t count_ones() const;
  std::span<const std::uint8_t> bits() const { return bits_; }

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Coordinate-wise maximum (y ∨ y').
Labeling join(const Labeling& a, const Labeling& b);
/// Coordinate-wise minimum (y ∧ y').
Labeling meet(const Labeling& a, const Labeling& b);
/// a ≤ b coordinate-wise.
bool precedes(const Labeling& a, const Labeling& b);

/// Ordered M-tuple of labelings over one node set.
using LabelingTuple = std::vector<Labeling>;

/// True iff y^i_v ≤ y^j_v for every node and every i ≤ j.
bool is_nested(std::span<const Labeling> tuple);

struct UnaryTerm {
  double cost0 = 0.0;
  double cost1 = 0.0;
};

struct PairwiseTerm {
  NodeId u = 0;
  NodeId v = 0;
  double cost00 = 0.0;
  double cost01 = 0.0;
  double cost10 = 0.0;
  double cost11 = 0.0;

  double at(std::uint8_t yu, std::uint8_t yv) const {
    return yu ? (yv ? cost11 : cost10) : (yv ? cost01 : cost00);
  }
};

/// Fixed-point image of a PairwiseTerm; each entry is rounded independently.
struct FixedPairwise {
  NodeId u = 0;
  NodeId v = 0;
  Cost table[2][2] = {{0, 0}, {0, 0}};

  /// θ(0,1) + θ(1,0) − θ(0,0) − θ(1,1); non-negative iff the edge is submodular.
  Cost margin() const {
    return table[0][1] + table[1][0] - table[0][0] - table[1][1];
  }
};

/// Binary pairwise energy E(y) = Σ_v θ_v(y_v) + Σ_uv θ_uv(y_u, y_v).
///
/// Costs are kept as given (reals) and mirrored into fixed-point integers at
/// construction; every solver works on the fixed-point mirror. Edges must have
/// u < v with endpoints in range; no pair may appear twice.
class EnergyModel {
 public:
  EnergyModel() = default;
  EnergyModel(NodeId node_count, std::vector<UnaryTerm> unary,
              std::vector<PairwiseTerm> edges, double scale = kDefaultScale);

  NodeId node_count() const { return node_count_; }
  double scale() const { return scale_; }
  std::span<const UnaryTerm> unary() const { return unary_; }
  std::span<const PairwiseTerm> edges() const { return edges_; }

  std::span<const Cost> fixed_unary0() const { return unary0_; }
  std::span<const Cost> fixed_unary1() const { return unary1_; }
  std::span<const FixedPairwise> fixed_edges() const { return fixed_edges_; }

  Cost fixed(double value) const { return to_fixed(value, scale_); }
  double real(Cost value) const { return to_real(value, scale_); }

  /// Exact sum of the stored real costs.
  double evaluate(const Labeling& y) const;
  /// Sum of the fixed-point costs; the quantity every solver minimizes.
  Cost evaluate_fixed(const Labeling& y) const;

 private:
  void check_labeling(const Labeling& y) const;

  NodeId node_count_ = 0;
  double scale_ = kDefaultScale;
  std::vector<UnaryTerm> unary_;
  std::vector<PairwiseTerm> edges_;
  std::vector<Cost> unary0_;
  std::vector<Cost> unary1_;
  std::vector<FixedPairwise> fixed_edges_;
};

struct SubmodularityCertificate {
  bool is_submodular = true;
  std::optional<std::size_t> worst_edge;
  /// Smallest margin over edges, in real units (+inf without edges).
  double worst_margin = std::numeric_limits<double>::infinity();
};

SubmodularityCertificate check_submodular(const EnergyModel& model);

/// E(y) = constant + Σ_v a_v y_v + Σ_uv theta_uv |y_u − y_v|.
///
/// Per edge with table (A, B, C, D) = (θ00, θ01, θ10, θ11):
///   θ(y_u, y_v) = A + β_u y_u + β_v y_v + T |y_u − y_v|
///   T   = (B + C − A − D) / 2
///   β_u = (C − A − B + D) / 2
///   β_v = (B − A − C + D) / 2
/// so a_v = θ_v(1) − θ_v(0) plus the β corrections of incident edges, and
/// constant = Σ_v θ_v(0) + Σ_uv A. The halves are kept exact by storing the
/// fixed-point values in units of 1/(2S).
struct Reformulation {
  double constant = 0.0;
  std::vector<double> a;
  std::vector<double> theta;

  Cost constant_halves = 0;
  std::vector<Cost> a_halves;
  std::vector<Cost> theta_halves;
};

/// Throws Error(not_submodular) if any edge has a negative margin.
Reformulation reformulate(const EnergyModel& model);

}  // namespace divmbest
