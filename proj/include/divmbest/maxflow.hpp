#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <span>
#include <vector>

#include "divmbest/common.hpp"

namespace divmbest {

/// Project-wide cut convention: label 1 ⇔ sink side, label 0 ⇔ source side.
/// The highest labeling of a minimizer lattice is therefore the cut with the
/// minimal source side, and the lowest labeling the cut with the maximal one.
inline constexpr std::uint8_t kSourceSide = 0;
inline constexpr std::uint8_t kSinkSide = 1;

/// Capacity used to force a node onto one side. Totals of finite capacities
/// must stay below it.
inline constexpr Cost kInfiniteCapacity = Cost{1} << 60;

enum class CutSide { minimal_source_side, maximal_source_side };

struct CutResult {
  Cost flow_value = 0;
  /// Per node: kSourceSide or kSinkSide. Doubles as a labeling.
  std::vector<std::uint8_t> side;
};

/// Terminal capacity change for one node.
struct TerminalDelta {
  Cost source = 0;
  Cost sink = 0;
};

/// s-t network with integer capacities, solved by augmenting paths over two
/// search trees (Boykov–Kolmogorov).
///
/// Terminal arcs are stored as one signed residual per node
/// (positive: residual s→v, negative: residual v→t); the part both terminal
/// arcs share is moved into the flow value. This makes capacity updates on an
/// already solved network well defined even when they would invalidate the
/// current flow: the shared part is re-balanced and solving resumes from the
/// remaining residual graph.
class FlowNetwork {
 public:
  FlowNetwork() = default;
  explicit FlowNetwork(NodeId node_count);

  NodeId node_count() const { return static_cast<NodeId>(nodes_.size()); }
  std::size_t arc_pair_count() const { return arc_tail_.size(); }

  /// Adds capacity to the terminal arcs of v. Both values must be ≥ 0.
  void add_terminal(NodeId v, Cost cap_source, Cost cap_sink);
  /// Adds the arc pair u→v (cap_uv) and v→u (cap_vu); returns its index.
  std::size_t add_arc_pair(NodeId u, NodeId v, Cost cap_uv, Cost cap_vu);

  /// Max-flow; returns the cut with the minimal source side.
  CutResult solve();
  bool solved() const { return solved_; }
  Cost flow_value() const { return flow_; }

  /// Extremal minimum cut of the solved network. Throws Error(state) if the
  /// network changed since the last solve.
  CutResult extremal_cut(CutSide which) const;

  /// Shifts terminal capacities by the given (possibly negative) amounts.
  /// The current flow is kept; the next solve continues from it.
  void reparameterize(std::span<const TerminalDelta> delta);
  void reparameterize(NodeId v, TerminalDelta delta);

  /// Forces v to label `label` (kSourceSide/kSinkSide) in every minimum cut.
  void fix_node(NodeId v, std::uint8_t label);
  bool is_fixed(NodeId v) const { return fixed_[static_cast<std::size_t>(v)] != kUnfixed; }
  std::size_t fixed_count() const;

  /// Capacity of the cut given by per-node sides, using the nominal
  /// capacities (sum of everything added so far).
  Cost cut_capacity(std::span<const std::uint8_t> side) const;

  /// DIMACS max-flow text. Source is node n+1, sink n+2.
  void write_dimacs(std::ostream& out) const;
  static FlowNetwork read_dimacs(std::istream& in);

 private:
  static constexpr std::int32_t kNone = -1;
  static constexpr std::int32_t kTerminal = -2;
  static constexpr std::int32_t kOrphan = -3;
  static constexpr std::uint8_t kUnfixed = 2;

  struct Node {
    Cost tr_cap = 0;
    std::int32_t parent = kNone;
    std::int32_t ts = 0;
    std::int32_t dist = 0;
    bool in_sink_tree = false;
    bool active = false;
  };

  void check_node(NodeId v) const;
  void shift_terminal(NodeId v, Cost d_source, Cost d_sink);
  void track_finite(Cost amount);
  void build_adjacency();
  void init_trees();
  void set_active(NodeId v);
  NodeId next_active();
  void augment(std::int32_t middle_arc);
  void process_source_orphan(NodeId v);
  void process_sink_orphan(NodeId v);
  void invalidate() { solved_ = false; }

  std::int32_t arc_head(std::int32_t a) const { return arc_head_[static_cast<std::size_t>(a)]; }
  Cost& rcap(std::int32_t a) { return rcap_[static_cast<std::size_t>(a)]; }
  Cost rcap(std::int32_t a) const { return rcap_[static_cast<std::size_t>(a)]; }
  static std::int32_t sister(std::int32_t a) { return a ^ 1; }

  std::vector<Node> nodes_;
  // Nominal capacities, kept for cut evaluation and export.
  std::vector<Cost> nominal_source_;
  std::vector<Cost> nominal_sink_;
  std::vector<std::uint8_t> fixed_;
  std::vector<NodeId> arc_tail_;   // per pair
  std::vector<Cost> arc_cap_;      // per directed arc (2 per pair), nominal
  std::vector<NodeId> arc_head_;   // per directed arc
  std::vector<Cost> rcap_;         // per directed arc, residual
  // CSR adjacency: outgoing directed arcs of node v in ascending arc index.
  std::vector<std::int32_t> adj_offset_;
  std::vector<std::int32_t> adj_arcs_;
  bool adjacency_ready_ = false;

  Cost flow_ = 0;
  // Capacity of direct s→t arcs (DIMACS import only).
  Cost direct_ = 0;
  Cost finite_total_ = 0;
  bool solved_ = false;

  // Search state.
  std::deque<NodeId> active_;
  std::deque<NodeId> orphans_;
  std::int32_t time_ = 0;
};

}  // namespace divmbest
