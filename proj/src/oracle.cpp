#include "divmbest/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "divmbest/mincut_reduction.hpp"

namespace divmbest::oracle {

namespace {

constexpr int kMaxTableNodes = 20;

void check_table(int n, std::span<const Cost> table) {
  if (n < 0 || n > kMaxTableNodes) {
    throw Error(ErrorCode::budget_exceeded, "table oracles support at most 20 nodes");
  }
  if (table.size() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::invalid_input, "table must have 2^n entries");
  }
}

int bit(Mask mask, int v) { return static_cast<int>((mask >> v) & 1U); }

std::uint64_t checked_power(std::uint64_t base, int exponent, std::uint64_t budget,
                            const char* what) {
  std::uint64_t total = 1;
  for (int i = 0; i < exponent; ++i) {
    if (total > budget / base) {
      throw Error(ErrorCode::budget_exceeded,
                  std::string(what) + ": " + std::to_string(base) + "^" +
                      std::to_string(exponent) + " candidates exceed the budget of " +
                      std::to_string(budget));
    }
    total *= base;
  }
  return total;
}

}  // namespace

std::vector<Cost> tabulate(const EnergyModel& model) {
  const int n = model.node_count();
  if (n > kMaxTableNodes) {
    throw Error(ErrorCode::budget_exceeded, "tabulation supports at most 20 nodes");
  }
  const double s = model.scale();
  std::vector<Cost> table(std::size_t{1} << n, 0);
  for (Mask y = 0; y < table.size(); ++y) {
    Cost e = 0;
    for (int v = 0; v < n; ++v) {
      const auto& t = model.unary()[static_cast<std::size_t>(v)];
      e += std::llround((bit(y, v) ? t.cost1 : t.cost0) * s);
    }
    for (const auto& p : model.edges()) {
      const double c = bit(y, p.u) ? (bit(y, p.v) ? p.cost11 : p.cost10)
                                   : (bit(y, p.v) ? p.cost01 : p.cost00);
      e += std::llround(c * s);
    }
    table[y] = e;
  }
  return table;
}

bool is_submodular_table(int n, std::span<const Cost> table) {
  check_table(n, table);
  const Mask size = static_cast<Mask>(table.size());
  for (Mask x = 0; x < size; ++x) {
    for (Mask y = x + 1; y < size; ++y) {
      if (table[x | y] + table[x & y] > table[x] + table[y]) return false;
    }
  }
  return true;
}

bool is_antitone_table(int n, std::span<const Cost> table) {
  check_table(n, table);
  // Checking single-bit raises covers every x ≤ y by transitivity.
  for (Mask x = 0; x < table.size(); ++x) {
    for (int v = 0; v < n; ++v) {
      if (!bit(x, v) && table[x | (Mask{1} << v)] > table[x]) return false;
    }
  }
  return true;
}

Labeling to_labeling(Mask mask, int n) {
  Labeling y(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) y.set(static_cast<std::size_t>(v), static_cast<std::uint8_t>(bit(mask, v)));
  return y;
}

Mask to_mask(const Labeling& y) {
  Mask mask = 0;
  for (std::size_t v = 0; v < y.size(); ++v) {
    if (y[v]) mask |= Mask{1} << v;
  }
  return mask;
}

SubmodularOracle::SubmodularOracle(int n, std::vector<Cost> table)
    : n_(n), table_(std::move(table)) {
  if (!is_submodular_table(n_, table_)) {
    throw Error(ErrorCode::not_submodular, "set function is not submodular");
  }
}

GreedyResult divmbest_greedy(const EnergyModel& model, double lambda, int M) {
  if (M < 1) throw Error(ErrorCode::invalid_input, "M must be at least 1");
  if (!(lambda > 0.0)) throw Error(ErrorCode::invalid_input, "lambda must be positive");
  const auto n = static_cast<std::size_t>(model.node_count());
  const Cost step = model.fixed(lambda);
  GreedyResult result;
  std::vector<Cost> zeros(n, 0);
  std::vector<Cost> ones(n, 0);
  for (int m = 0; m < M; ++m) {
    // Label 0 earns λ per earlier 1, label 1 earns λ per earlier 0.
    std::vector<Cost> gamma(n);
    Cost constant = 0;
    for (std::size_t v = 0; v < n; ++v) {
      gamma[v] = -step * (zeros[v] - ones[v]);
      constant -= step * ones[v];
    }
    Minimizer y = minimize(model, gamma, Extremal::highest);
    result.step_objectives.push_back(y.energy_fixed + constant);
    for (std::size_t v = 0; v < n; ++v) {
      (y.labeling[v] ? ones[v] : zeros[v]) += 1;
    }
    result.tuple.push_back(std::move(y.labeling));
  }
  return result;
}

JointOptimum brute_force_joint(int n, std::span<const Cost> energy_table,
                               std::span<const Cost> weighted_diversity, int M,
                               const BruteForceOptions& options) {
  check_table(n, energy_table);
  if (M < 1) throw Error(ErrorCode::invalid_input, "M must be at least 1");
  if (weighted_diversity.size() != static_cast<std::size_t>(M) + 1) {
    throw Error(ErrorCode::invalid_input, "diversity table must have M+1 entries");
  }
  const std::uint64_t labelings = std::uint64_t{1} << n;
  const std::uint64_t total = checked_power(labelings, M, options.budget, "brute_force_joint");

  JointOptimum best;
  best.objective = std::numeric_limits<Cost>::max();
  std::vector<Mask> masks(static_cast<std::size_t>(M), 0);
  std::vector<Mask> best_masks;
  std::vector<std::vector<Mask>> all_best;
  for (std::uint64_t index = 0; index < total; ++index) {
    std::uint64_t rest = index;
    for (auto& mask : masks) {
      mask = static_cast<Mask>(rest % labelings);
      rest /= labelings;
    }
    if (options.nested_only) {
      bool nested = true;
      for (std::size_t m = 1; m < masks.size() && nested; ++m) {
        nested = (masks[m - 1] & ~masks[m]) == 0;
      }
      if (!nested) continue;
    }
    ++best.tuples_examined;
    Cost objective = 0;
    for (Mask mask : masks) objective += energy_table[mask];
    for (int v = 0; v < n; ++v) {
      int zeros = 0;
      for (Mask mask : masks) zeros += 1 - bit(mask, v);
      objective -= weighted_diversity[static_cast<std::size_t>(zeros)];
    }
    if (objective < best.objective) {
      best.objective = objective;
      best_masks = masks;
      all_best.clear();
    }
    if (options.collect_all && objective == best.objective) all_best.push_back(masks);
  }
  for (Mask mask : best_masks) best.tuple.push_back(to_labeling(mask, n));
  for (const auto& tuple : all_best) {
    LabelingTuple t;
    for (Mask mask : tuple) t.push_back(to_labeling(mask, n));
    best.optimal_tuples.push_back(std::move(t));
  }
  return best;
}

JointOptimum brute_force_joint(const EnergyModel& model,
                               std::span<const Cost> weighted_diversity, int M,
                               const BruteForceOptions& options) {
  const int n = model.node_count();
  // Guard before tabulating so an oversized request fails on size alone.
  if (n > kMaxTableNodes) {
    throw Error(ErrorCode::budget_exceeded, "brute_force_joint: too many nodes");
  }
  checked_power(std::uint64_t{1} << n, M, options.budget, "brute_force_joint");
  const auto table = tabulate(model);
  return brute_force_joint(n, table, weighted_diversity, M, options);
}

std::vector<int> encode_zero_counts(std::span<const Labeling> tuple) {
  if (tuple.empty()) return {};
  std::vector<int> zeros(tuple.front().size(), 0);
  for (const auto& y : tuple) {
    for (std::size_t v = 0; v < zeros.size(); ++v) zeros[v] += y[v] == 0;
  }
  return zeros;
}

LabelingTuple decode_zero_counts(std::span<const int> zeros, int M) {
  LabelingTuple tuple;
  for (int m = 1; m <= M; ++m) {
    Labeling y(zeros.size());
    for (std::size_t v = 0; v < zeros.size(); ++v) {
      if (zeros[v] < 0 || zeros[v] > M) {
        throw Error(ErrorCode::invalid_input, "zero count out of range");
      }
      y.set(v, m > zeros[v] ? 1 : 0);
    }
    tuple.push_back(std::move(y));
  }
  return tuple;
}

Cost multilabel_energy_halves(const Reformulation& r, std::span<const PairwiseTerm> edges,
                              std::span<const int> zeros, int M) {
  Cost total = static_cast<Cost>(M) * r.constant_halves;
  for (std::size_t v = 0; v < zeros.size(); ++v) {
    total += r.a_halves[v] * (M - zeros[v]);
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const int du = zeros[static_cast<std::size_t>(edges[e].u)];
    const int dv = zeros[static_cast<std::size_t>(edges[e].v)];
    total += r.theta_halves[e] * (du > dv ? du - dv : dv - du);
  }
  return total;
}

MultilabelOptimum brute_force_multilabel(const EnergyModel& model,
                                         std::span<const Cost> weighted_diversity, int M,
                                         std::uint64_t budget) {
  if (M < 1) throw Error(ErrorCode::invalid_input, "M must be at least 1");
  if (weighted_diversity.size() != static_cast<std::size_t>(M) + 1) {
    throw Error(ErrorCode::invalid_input, "diversity table must have M+1 entries");
  }
  const int n = model.node_count();
  const std::uint64_t total =
      checked_power(static_cast<std::uint64_t>(M) + 1, n, budget, "brute_force_multilabel");
  const Reformulation r = reformulate(model);

  MultilabelOptimum best;
  best.objective = std::numeric_limits<Cost>::max();
  std::vector<int> zeros(static_cast<std::size_t>(n), 0);
  for (std::uint64_t index = 0; index < total; ++index) {
    std::uint64_t rest = index;
    for (auto& z : zeros) {
      z = static_cast<int>(rest % (static_cast<std::uint64_t>(M) + 1));
      rest /= static_cast<std::uint64_t>(M) + 1;
    }
    Cost halves = multilabel_energy_halves(r, model.edges(), zeros, M);
    for (int z : zeros) halves -= 2 * weighted_diversity[static_cast<std::size_t>(z)];
    if (halves % 2 != 0) {
      throw Error(ErrorCode::state, "multilabel objective is not integral in fixed point");
    }
    const Cost objective = halves / 2;
    if (objective < best.objective) {
      best.objective = objective;
      best.zeros = zeros;
    }
  }
  best.tuple = decode_zero_counts(best.zeros, M);
  return best;
}

bool check_join_property(const SubmodularOracle& energy, std::span<const Cost> antitone) {
  const int n = energy.node_count();
  if (!is_antitone_table(n, antitone)) {
    throw Error(ErrorCode::invalid_input, "check_join_property needs an antitone F");
  }
  const auto table = energy.table();
  std::vector<Cost> sum(table.size());
  for (std::size_t y = 0; y < table.size(); ++y) sum[y] = table[y] + antitone[y];
  const Cost min_e = *std::min_element(table.begin(), table.end());
  const Cost min_sum = *std::min_element(sum.begin(), sum.end());
  for (Mask x = 0; x < table.size(); ++x) {
    if (table[x] != min_e) continue;
    for (Mask y = 0; y < sum.size(); ++y) {
      if (sum[y] != min_sum) continue;
      const Mask joined = x | y;
      if (sum[joined] != min_sum) return false;
      if ((x & ~joined) != 0) return false;
    }
  }
  return true;
}

DecouplingReport check_level_decoupling(std::span<const std::vector<Cost>> levels, int n) {
  DecouplingReport report;
  if (levels.empty()) throw Error(ErrorCode::invalid_input, "need at least one level");
  for (const auto& table : levels) check_table(n, table);

  report.preconditions_hold = true;
  for (std::size_t m = 0; m < levels.size(); ++m) {
    if (!is_submodular_table(n, levels[m])) report.preconditions_hold = false;
    if (m > 0) {
      std::vector<Cost> diff(levels[m].size());
      for (std::size_t y = 0; y < diff.size(); ++y) diff[y] = levels[m][y] - levels[m - 1][y];
      if (!is_antitone_table(n, diff)) report.preconditions_hold = false;
    }
  }
  if (!report.preconditions_hold) return report;

  // Σ_m min E_m and the highest minimizer (join of all minimizers) per level.
  std::vector<Mask> highest;
  for (const auto& table : levels) {
    const Cost best = *std::min_element(table.begin(), table.end());
    report.decoupled_sum += best;
    Mask top = 0;
    for (Mask y = 0; y < table.size(); ++y) {
      if (table[y] == best) top |= y;
    }
    highest.push_back(top);
  }
  report.highest_nested = true;
  for (std::size_t m = 1; m < highest.size(); ++m) {
    if ((highest[m - 1] & ~highest[m]) != 0) report.highest_nested = false;
  }

  // Minimum over nested chains y^1 ≤ … ≤ y^M by depth-first enumeration.
  const Mask full = static_cast<Mask>((std::size_t{1} << n) - 1);
  Cost nested_best = std::numeric_limits<Cost>::max();
  auto visit = [&](auto&& self, std::size_t m, Mask lower, Cost acc) -> void {
    if (m == levels.size()) {
      nested_best = std::min(nested_best, acc);
      return;
    }
    // Supersets of `lower`: iterate over subsets of the free bits.
    const Mask free_bits = full & ~lower;
    for (Mask sub = free_bits;; sub = (sub - 1) & free_bits) {
      const Mask y = lower | sub;
      self(self, m + 1, y, acc + levels[m][y]);
      if (sub == 0) break;
    }
  };
  visit(visit, 0, 0, 0);
  report.nested_optimum = nested_best;
  report.decouples = report.nested_optimum == report.decoupled_sum;
  return report;
}

}  // namespace divmbest::oracle
