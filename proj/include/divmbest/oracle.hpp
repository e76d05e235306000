#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "divmbest/energy_model.hpp"

/// Reference implementations the solvers are checked against. Everything in
/// here enumerates; nothing calls into the max-flow path except the greedy
/// baseline, which is a competitor rather than an oracle.
namespace divmbest::oracle {

/// Bit v of a mask is the label of node v.
using Mask = std::uint32_t;

/// Naive table of E over all 2^n labelings, recomputed from the model's raw
/// costs with its own rounding.
std::vector<Cost> tabulate(const EnergyModel& model);

bool is_submodular_table(int n, std::span<const Cost> table);
/// x ≤ y ⇒ F(x) ≥ F(y).
bool is_antitone_table(int n, std::span<const Cost> table);

Labeling to_labeling(Mask mask, int n);
Mask to_mask(const Labeling& y);

/// Set function on {0,1}^n stored as a full table; submodularity is verified
/// exhaustively at construction.
class SubmodularOracle {
 public:
  SubmodularOracle(int n, std::vector<Cost> table);

  int node_count() const { return n_; }
  Cost operator()(Mask y) const { return table_[y]; }
  std::span<const Cost> table() const { return table_; }

 private:
  int n_;
  std::vector<Cost> table_;
};

struct GreedyResult {
  LabelingTuple tuple;
  /// Optimal value of step m: E(y) − λ Σ_{i<m} hamming(y, y^i), fixed point.
  std::vector<Cost> step_objectives;
};

/// DivMBest with pairwise Hamming diversity. Each step is a single min-cut
/// because the penalty is unary once earlier labelings are fixed.
GreedyResult divmbest_greedy(const EnergyModel& model, double lambda, int M);

struct BruteForceOptions {
  std::uint64_t budget = std::uint64_t{1} << 20;
  bool collect_all = false;
  bool nested_only = false;
};

struct JointOptimum {
  Cost objective = 0;
  LabelingTuple tuple;
  /// Every optimal tuple, when collect_all is set.
  std::vector<LabelingTuple> optimal_tuples;
  std::uint64_t tuples_examined = 0;
};

/// Exact minimum of Σ_m E(y^m) − Σ_v D[m⁰_v] over all (2^n)^M tuples, where D
/// is the weighted diversity table (M+1 entries). Throws
/// Error(budget_exceeded) when the enumeration would exceed the budget.
JointOptimum brute_force_joint(int n, std::span<const Cost> energy_table,
                               std::span<const Cost> weighted_diversity, int M,
                               const BruteForceOptions& options = {});
JointOptimum brute_force_joint(const EnergyModel& model,
                               std::span<const Cost> weighted_diversity, int M,
                               const BruteForceOptions& options = {});

/// Per-node zero counts of a tuple.
std::vector<int> encode_zero_counts(std::span<const Labeling> tuple);
/// y^m_v = [m > m⁰_v] for m = 1..M: the nested tuple with the given zero counts.
LabelingTuple decode_zero_counts(std::span<const int> zeros, int M);

/// Σ_v a_v (M − m⁰_v) + Σ_uv Θ_uv |m⁰_u − m⁰_v| + M·constant, in half units.
Cost multilabel_energy_halves(const Reformulation& r, std::span<const PairwiseTerm> edges,
                              std::span<const int> zeros, int M);

struct MultilabelOptimum {
  Cost objective = 0;
  std::vector<int> zeros;
  LabelingTuple tuple;
};

/// Exhaustive minimum over m⁰ ∈ {0..M}^n of the convex multilabel form
/// Σ_v (a_v (M − m⁰_v) − D[m⁰_v]) + Σ_uv Θ_uv |m⁰_u − m⁰_v| + M·constant.
MultilabelOptimum brute_force_multilabel(const EnergyModel& model,
                                         std::span<const Cost> weighted_diversity, int M,
                                         std::uint64_t budget = std::uint64_t{1} << 20);

/// For every minimizer x of E and every minimizer y of E+F, checks that
/// y ∨ x minimizes E+F and x ≤ y ∨ x. F must be antitone
/// (Error(invalid_input) otherwise).
bool check_join_property(const SubmodularOracle& energy, std::span<const Cost> antitone);

struct DecouplingReport {
  /// Every E_m submodular and every E_m − E_{m−1} antitone.
  bool preconditions_hold = false;
  /// min over nested tuples of Σ E_m(y^m) equals Σ_m min E_m.
  bool decouples = false;
  /// The highest minimizers of the E_m form a nested tuple.
  bool highest_nested = false;
  Cost nested_optimum = 0;
  Cost decoupled_sum = 0;
};

DecouplingReport check_level_decoupling(std::span<const std::vector<Cost>> levels, int n);

}  // namespace divmbest::oracle
