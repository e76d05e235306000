#include "divmbest/maxflow.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace divmbest {

namespace {

constexpr std::int32_t kInfiniteDist = std::numeric_limits<std::int32_t>::max();

}  // namespace

FlowNetwork::FlowNetwork(NodeId node_count) {
  if (node_count < 0) throw Error(ErrorCode::invalid_input, "negative node count");
  const auto n = static_cast<std::size_t>(node_count);
  nodes_.resize(n);
  nominal_source_.assign(n, 0);
  nominal_sink_.assign(n, 0);
  fixed_.assign(n, kUnfixed);
}

void FlowNetwork::check_node(NodeId v) const {
  if (v < 0 || v >= node_count()) {
    throw Error(ErrorCode::invalid_input, "node " + std::to_string(v) + " out of range");
  }
}

void FlowNetwork::track_finite(Cost amount) {
  finite_total_ += amount;
  if (finite_total_ >= kInfiniteCapacity / 2) {
    throw Error(ErrorCode::invalid_input, "total capacity exceeds the fixed-point range");
  }
}

void FlowNetwork::shift_terminal(NodeId v, Cost d_source, Cost d_sink) {
  auto& node = nodes_[static_cast<std::size_t>(v)];
  const Cost rs = std::max<Cost>(node.tr_cap, 0) + d_source;
  const Cost rt = std::max<Cost>(-node.tr_cap, 0) + d_sink;
  flow_ += std::min(rs, rt);
  node.tr_cap = rs - rt;
}

void FlowNetwork::add_terminal(NodeId v, Cost cap_source, Cost cap_sink) {
  check_node(v);
  if (cap_source < 0 || cap_sink < 0) {
    throw Error(ErrorCode::invalid_input, "terminal capacities must be non-negative");
  }
  track_finite(cap_source + cap_sink);
  nominal_source_[static_cast<std::size_t>(v)] += cap_source;
  nominal_sink_[static_cast<std::size_t>(v)] += cap_sink;
  shift_terminal(v, cap_source, cap_sink);
  invalidate();
}

std::size_t FlowNetwork::add_arc_pair(NodeId u, NodeId v, Cost cap_uv, Cost cap_vu) {
  check_node(u);
  check_node(v);
  if (u == v) throw Error(ErrorCode::invalid_input, "self-loop arc");
  if (cap_uv < 0 || cap_vu < 0) {
    throw Error(ErrorCode::invalid_input, "arc capacities must be non-negative");
  }
  track_finite(cap_uv + cap_vu);
  arc_tail_.push_back(u);
  arc_head_.push_back(v);
  arc_head_.push_back(u);
  arc_cap_.push_back(cap_uv);
  arc_cap_.push_back(cap_vu);
  rcap_.push_back(cap_uv);
  rcap_.push_back(cap_vu);
  adjacency_ready_ = false;
  invalidate();
  return arc_tail_.size() - 1;
}

void FlowNetwork::reparameterize(NodeId v, TerminalDelta delta) {
  check_node(v);
  if (delta.source == 0 && delta.sink == 0) return;
  track_finite((delta.source < 0 ? -delta.source : delta.source) +
               (delta.sink < 0 ? -delta.sink : delta.sink));
  nominal_source_[static_cast<std::size_t>(v)] += delta.source;
  nominal_sink_[static_cast<std::size_t>(v)] += delta.sink;
  shift_terminal(v, delta.source, delta.sink);
  invalidate();
}

void FlowNetwork::reparameterize(std::span<const TerminalDelta> delta) {
  if (delta.size() != nodes_.size()) {
    throw Error(ErrorCode::invalid_input, "delta size does not match node count");
  }
  for (std::size_t v = 0; v < delta.size(); ++v) {
    reparameterize(static_cast<NodeId>(v), delta[v]);
  }
}

void FlowNetwork::fix_node(NodeId v, std::uint8_t label) {
  check_node(v);
  const auto idx = static_cast<std::size_t>(v);
  const std::uint8_t side = label ? kSinkSide : kSourceSide;
  if (fixed_[idx] == side) return;
  if (fixed_[idx] != kUnfixed) {
    throw Error(ErrorCode::invalid_input,
                "node " + std::to_string(v) + " is already fixed to the other label");
  }
  fixed_[idx] = side;
  if (side == kSinkSide) {
    nominal_sink_[idx] += kInfiniteCapacity;
    shift_terminal(v, 0, kInfiniteCapacity);
  } else {
    nominal_source_[idx] += kInfiniteCapacity;
    shift_terminal(v, kInfiniteCapacity, 0);
  }
  invalidate();
}

std::size_t FlowNetwork::fixed_count() const {
  return static_cast<std::size_t>(
      std::count_if(fixed_.begin(), fixed_.end(), [](auto f) { return f != kUnfixed; }));
}

Cost FlowNetwork::cut_capacity(std::span<const std::uint8_t> side) const {
  if (side.size() != nodes_.size()) {
    throw Error(ErrorCode::invalid_input, "cut size does not match node count");
  }
  Cost total = direct_;
  for (std::size_t v = 0; v < side.size(); ++v) {
    total += side[v] == kSinkSide ? nominal_source_[v] : nominal_sink_[v];
  }
  for (std::size_t a = 0; a < arc_head_.size(); ++a) {
    const auto tail = static_cast<std::size_t>(arc_head_[a ^ 1]);
    const auto head = static_cast<std::size_t>(arc_head_[a]);
    if (side[tail] == kSourceSide && side[head] == kSinkSide) total += arc_cap_[a];
  }
  return total;
}

void FlowNetwork::build_adjacency() {
  if (adjacency_ready_) return;
  const std::size_t n = nodes_.size();
  adj_offset_.assign(n + 1, 0);
  for (std::size_t a = 0; a < arc_head_.size(); ++a) {
    ++adj_offset_[static_cast<std::size_t>(arc_head_[a ^ 1]) + 1];
  }
  for (std::size_t v = 0; v < n; ++v) adj_offset_[v + 1] += adj_offset_[v];
  adj_arcs_.resize(arc_head_.size());
  std::vector<std::int32_t> fill(adj_offset_.begin(), adj_offset_.end() - 1);
  for (std::size_t a = 0; a < arc_head_.size(); ++a) {
    const auto tail = static_cast<std::size_t>(arc_head_[a ^ 1]);
    adj_arcs_[static_cast<std::size_t>(fill[tail]++)] = static_cast<std::int32_t>(a);
  }
  adjacency_ready_ = true;
}

void FlowNetwork::set_active(NodeId v) {
  auto& node = nodes_[static_cast<std::size_t>(v)];
  if (!node.active) {
    node.active = true;
    active_.push_back(v);
  }
}

NodeId FlowNetwork::next_active() {
  while (!active_.empty()) {
    const NodeId v = active_.front();
    active_.pop_front();
    auto& node = nodes_[static_cast<std::size_t>(v)];
    node.active = false;
    if (node.parent != kNone) return v;
  }
  return -1;
}

void FlowNetwork::init_trees() {
  active_.clear();
  orphans_.clear();
  time_ = 0;
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    auto& node = nodes_[v];
    node.active = false;
    node.ts = 0;
    if (node.tr_cap > 0) {
      node.in_sink_tree = false;
      node.parent = kTerminal;
      node.dist = 1;
      set_active(static_cast<NodeId>(v));
    } else if (node.tr_cap < 0) {
      node.in_sink_tree = true;
      node.parent = kTerminal;
      node.dist = 1;
      set_active(static_cast<NodeId>(v));
    } else {
      node.parent = kNone;
    }
  }
}

void FlowNetwork::augment(std::int32_t middle) {
  // Bottleneck along source tree, middle arc, sink tree.
  Cost bottleneck = rcap(middle);
  NodeId i = arc_head(sister(middle));
  for (;;) {
    const std::int32_t a = nodes_[static_cast<std::size_t>(i)].parent;
    if (a == kTerminal) break;
    bottleneck = std::min(bottleneck, rcap(sister(a)));
    i = arc_head(a);
  }
  bottleneck = std::min(bottleneck, nodes_[static_cast<std::size_t>(i)].tr_cap);
  i = arc_head(middle);
  for (;;) {
    const std::int32_t a = nodes_[static_cast<std::size_t>(i)].parent;
    if (a == kTerminal) break;
    bottleneck = std::min(bottleneck, rcap(a));
    i = arc_head(a);
  }
  bottleneck = std::min(bottleneck, -nodes_[static_cast<std::size_t>(i)].tr_cap);

  auto orphan_front = [this](NodeId v) {
    nodes_[static_cast<std::size_t>(v)].parent = kOrphan;
    orphans_.push_front(v);
  };

  rcap(sister(middle)) += bottleneck;
  rcap(middle) -= bottleneck;

  i = arc_head(sister(middle));
  for (;;) {
    const std::int32_t a = nodes_[static_cast<std::size_t>(i)].parent;
    if (a == kTerminal) break;
    rcap(a) += bottleneck;
    rcap(sister(a)) -= bottleneck;
    if (rcap(sister(a)) == 0) orphan_front(i);
    i = arc_head(a);
  }
  nodes_[static_cast<std::size_t>(i)].tr_cap -= bottleneck;
  if (nodes_[static_cast<std::size_t>(i)].tr_cap == 0) orphan_front(i);

  i = arc_head(middle);
  for (;;) {
    const std::int32_t a = nodes_[static_cast<std::size_t>(i)].parent;
    if (a == kTerminal) break;
    rcap(sister(a)) += bottleneck;
    rcap(a) -= bottleneck;
    if (rcap(a) == 0) orphan_front(i);
    i = arc_head(a);
  }
  nodes_[static_cast<std::size_t>(i)].tr_cap += bottleneck;
  if (nodes_[static_cast<std::size_t>(i)].tr_cap == 0) orphan_front(i);

  flow_ += bottleneck;
}

void FlowNetwork::process_source_orphan(NodeId i) {
  const auto iu = static_cast<std::size_t>(i);
  std::int32_t best_arc = kNone;
  std::int32_t best_dist = kInfiniteDist;

  for (auto k = adj_offset_[iu]; k < adj_offset_[iu + 1]; ++k) {
    const std::int32_t a0 = adj_arcs_[static_cast<std::size_t>(k)];
    if (rcap(sister(a0)) == 0) continue;
    NodeId j = arc_head(a0);
    auto* nj = &nodes_[static_cast<std::size_t>(j)];
    if (nj->in_sink_tree || nj->parent == kNone) continue;

    // Walk to the root to confirm j still hangs off the source.
    std::int32_t d = 0;
    for (;;) {
      if (nj->ts == time_) {
        d += nj->dist;
        break;
      }
      const std::int32_t a = nj->parent;
      ++d;
      if (a == kTerminal) {
        nj->ts = time_;
        nj->dist = 1;
        break;
      }
      if (a == kOrphan) {
        d = kInfiniteDist;
        break;
      }
      j = arc_head(a);
      nj = &nodes_[static_cast<std::size_t>(j)];
    }
    if (d < kInfiniteDist) {
      if (d < best_dist) {
        best_arc = a0;
        best_dist = d;
      }
      for (NodeId k2 = arc_head(a0); nodes_[static_cast<std::size_t>(k2)].ts != time_;
           k2 = arc_head(nodes_[static_cast<std::size_t>(k2)].parent)) {
        nodes_[static_cast<std::size_t>(k2)].ts = time_;
        nodes_[static_cast<std::size_t>(k2)].dist = d--;
      }
    }
  }

  auto& node = nodes_[iu];
  if (best_arc != kNone) {
    node.parent = best_arc;
    node.ts = time_;
    node.dist = best_dist + 1;
    return;
  }
  node.parent = kNone;
  for (auto k = adj_offset_[iu]; k < adj_offset_[iu + 1]; ++k) {
    const std::int32_t a0 = adj_arcs_[static_cast<std::size_t>(k)];
    const NodeId j = arc_head(a0);
    auto& nj = nodes_[static_cast<std::size_t>(j)];
    const std::int32_t a = nj.parent;
    if (nj.in_sink_tree || a == kNone) continue;
    if (rcap(sister(a0)) > 0) set_active(j);
    if (a != kTerminal && a != kOrphan && arc_head(a) == i) {
      nj.parent = kOrphan;
      orphans_.push_back(j);
    }
  }
}

void FlowNetwork::process_sink_orphan(NodeId i) {
  const auto iu = static_cast<std::size_t>(i);
  std::int32_t best_arc = kNone;
  std::int32_t best_dist = kInfiniteDist;

  for (auto k = adj_offset_[iu]; k < adj_offset_[iu + 1]; ++k) {
    const std::int32_t a0 = adj_arcs_[static_cast<std::size_t>(k)];
    if (rcap(a0) == 0) continue;
    NodeId j = arc_head(a0);
    auto* nj = &nodes_[static_cast<std::size_t>(j)];
    if (!nj->in_sink_tree || nj->parent == kNone) continue;

    std::int32_t d = 0;
    for (;;) {
      if (nj->ts == time_) {
        d += nj->dist;
        break;
      }
      const std::int32_t a = nj->parent;
      ++d;
      if (a == kTerminal) {
        nj->ts = time_;
        nj->dist = 1;
        break;
      }
      if (a == kOrphan) {
        d = kInfiniteDist;
        break;
      }
      j = arc_head(a);
      nj = &nodes_[static_cast<std::size_t>(j)];
    }
    if (d < kInfiniteDist) {
      if (d < best_dist) {
        best_arc = a0;
        best_dist = d;
      }
      for (NodeId k2 = arc_head(a0); nodes_[static_cast<std::size_t>(k2)].ts != time_;
           k2 = arc_head(nodes_[static_cast<std::size_t>(k2)].parent)) {
        nodes_[static_cast<std::size_t>(k2)].ts = time_;
        nodes_[static_cast<std::size_t>(k2)].dist = d--;
      }
    }
  }

  auto& node = nodes_[iu];
  if (best_arc != kNone) {
    node.parent = best_arc;
    node.ts = time_;
    node.dist = best_dist + 1;
    return;
  }
  node.parent = kNone;
  for (auto k = adj_offset_[iu]; k < adj_offset_[iu + 1]; ++k) {
    const std::int32_t a0 = adj_arcs_[static_cast<std::size_t>(k)];
    const NodeId j = arc_head(a0);
    auto& nj = nodes_[static_cast<std::size_t>(j)];
    const std::int32_t a = nj.parent;
    if (!nj.in_sink_tree || a == kNone) continue;
    if (rcap(a0) > 0) set_active(j);
    if (a != kTerminal && a != kOrphan && arc_head(a) == i) {
      nj.parent = kOrphan;
      orphans_.push_back(j);
    }
  }
}

CutResult FlowNetwork::solve() {
  build_adjacency();
  init_trees();

  NodeId current = -1;
  for (;;) {
    NodeId i = -1;
    if (current >= 0) {
      nodes_[static_cast<std::size_t>(current)].active = false;
      if (nodes_[static_cast<std::size_t>(current)].parent != kNone) i = current;
    }
    if (i < 0) {
      i = next_active();
      if (i < 0) break;
    }

    const auto iu = static_cast<std::size_t>(i);
    std::int32_t middle = kNone;
    if (!nodes_[iu].in_sink_tree) {
      for (auto k = adj_offset_[iu]; k < adj_offset_[iu + 1]; ++k) {
        const std::int32_t a = adj_arcs_[static_cast<std::size_t>(k)];
        if (rcap(a) == 0) continue;
        const NodeId j = arc_head(a);
        auto& nj = nodes_[static_cast<std::size_t>(j)];
        if (nj.parent == kNone) {
          nj.in_sink_tree = false;
          nj.parent = sister(a);
          nj.ts = nodes_[iu].ts;
          nj.dist = nodes_[iu].dist + 1;
          set_active(j);
        } else if (nj.in_sink_tree) {
          middle = a;
          break;
        } else if (nj.ts <= nodes_[iu].ts && nj.dist > nodes_[iu].dist) {
          nj.parent = sister(a);
          nj.ts = nodes_[iu].ts;
          nj.dist = nodes_[iu].dist + 1;
        }
      }
    } else {
      for (auto k = adj_offset_[iu]; k < adj_offset_[iu + 1]; ++k) {
        const std::int32_t a = adj_arcs_[static_cast<std::size_t>(k)];
        if (rcap(sister(a)) == 0) continue;
        const NodeId j = arc_head(a);
        auto& nj = nodes_[static_cast<std::size_t>(j)];
        if (nj.parent == kNone) {
          nj.in_sink_tree = true;
          nj.parent = sister(a);
          nj.ts = nodes_[iu].ts;
          nj.dist = nodes_[iu].dist + 1;
          set_active(j);
        } else if (!nj.in_sink_tree) {
          middle = sister(a);
          break;
        } else if (nj.ts <= nodes_[iu].ts && nj.dist > nodes_[iu].dist) {
          nj.parent = sister(a);
          nj.ts = nodes_[iu].ts;
          nj.dist = nodes_[iu].dist + 1;
        }
      }
    }

    ++time_;

    if (middle != kNone) {
      // Keep growing from i next round; it is marked active but not queued.
      nodes_[iu].active = true;
      current = i;
      augment(middle);
      while (!orphans_.empty()) {
        const NodeId orphan = orphans_.front();
        orphans_.pop_front();
        if (nodes_[static_cast<std::size_t>(orphan)].in_sink_tree) {
          process_sink_orphan(orphan);
        } else {
          process_source_orphan(orphan);
        }
      }
    } else {
      current = -1;
    }
  }

  solved_ = true;
  return extremal_cut(CutSide::minimal_source_side);
}

CutResult FlowNetwork::extremal_cut(CutSide which) const {
  if (!solved_) {
    throw Error(ErrorCode::state, "extremal_cut requires a solved network");
  }
  const std::size_t n = nodes_.size();
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<NodeId> queue;
  queue.reserve(n);
  const bool from_source = which == CutSide::minimal_source_side;
  for (std::size_t v = 0; v < n; ++v) {
    const Cost t = nodes_[v].tr_cap;
    if (from_source ? t > 0 : t < 0) {
      visited[v] = 1;
      queue.push_back(static_cast<NodeId>(v));
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = static_cast<std::size_t>(queue[head]);
    for (auto k = adj_offset_[v]; k < adj_offset_[v + 1]; ++k) {
      const std::int32_t a = adj_arcs_[static_cast<std::size_t>(k)];
      const auto j = static_cast<std::size_t>(arc_head(a));
      if (visited[j]) continue;
      // Forward residual when growing from s, reverse residual toward t.
      if (from_source ? rcap(a) > 0 : rcap(sister(a)) > 0) {
        visited[j] = 1;
        queue.push_back(static_cast<NodeId>(j));
      }
    }
  }
  CutResult cut;
  cut.flow_value = flow_;
  cut.side.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (from_source) {
      cut.side[v] = visited[v] ? kSourceSide : kSinkSide;
    } else {
      cut.side[v] = visited[v] ? kSinkSide : kSourceSide;
    }
  }
  return cut;
}

void FlowNetwork::write_dimacs(std::ostream& out) const {
  const std::size_t n = nodes_.size();
  std::size_t arcs = direct_ != 0 ? 1 : 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (nominal_source_[v] < 0 || nominal_sink_[v] < 0) {
      throw Error(ErrorCode::state,
                  "cannot export a network with negative nominal terminal capacity");
    }
    arcs += (nominal_source_[v] > 0) + (nominal_sink_[v] > 0);
  }
  for (Cost c : arc_cap_) arcs += c > 0;
  const std::size_t s = n + 1;
  const std::size_t t = n + 2;
  out << "c divmbest flow network\n";
  out << "p max " << n + 2 << ' ' << arcs << '\n';
  out << "n " << s << " s\n";
  out << "n " << t << " t\n";
  if (direct_ != 0) out << "a " << s << ' ' << t << ' ' << direct_ << '\n';
  for (std::size_t v = 0; v < n; ++v) {
    if (nominal_source_[v] > 0) out << "a " << s << ' ' << v + 1 << ' ' << nominal_source_[v] << '\n';
    if (nominal_sink_[v] > 0) out << "a " << v + 1 << ' ' << t << ' ' << nominal_sink_[v] << '\n';
  }
  for (std::size_t a = 0; a < arc_cap_.size(); ++a) {
    if (arc_cap_[a] <= 0) continue;
    out << "a " << arc_head_[a ^ 1] + 1 << ' ' << arc_head_[a] + 1 << ' ' << arc_cap_[a] << '\n';
  }
}

FlowNetwork FlowNetwork::read_dimacs(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  long long total_nodes = -1;
  long long source = -1;
  long long sink = -1;
  struct Arc {
    long long u, v;
    Cost cap;
  };
  std::vector<Arc> arcs;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::parse, "dimacs line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream fields(line);
    char tag = 0;
    fields >> tag;
    if (tag == 'p') {
      std::string kind;
      long long m = 0;
      if (!(fields >> kind >> total_nodes >> m) || kind != "max") fail("bad problem line");
    } else if (tag == 'n') {
      long long id = 0;
      char which = 0;
      if (!(fields >> id >> which)) fail("bad node line");
      if (which == 's') {
        source = id;
      } else if (which == 't') {
        sink = id;
      } else {
        fail("unknown node designator");
      }
    } else if (tag == 'a') {
      Arc a{};
      if (!(fields >> a.u >> a.v >> a.cap) || a.cap < 0) fail("bad arc line");
      arcs.push_back(a);
    } else {
      fail("unknown line type");
    }
  }
  if (total_nodes < 2 || source < 1 || sink < 1 || source == sink) {
    throw Error(ErrorCode::parse, "dimacs input lacks a problem line or terminals");
  }
  // Non-terminal ids map to 0..n-1 in ascending order.
  std::map<long long, NodeId> index;
  for (long long id = 1; id <= total_nodes; ++id) {
    if (id != source && id != sink) {
      index.emplace(id, static_cast<NodeId>(index.size()));
    }
  }
  FlowNetwork net(static_cast<NodeId>(index.size()));
  for (const auto& a : arcs) {
    if (a.u < 1 || a.u > total_nodes || a.v < 1 || a.v > total_nodes) {
      throw Error(ErrorCode::parse, "dimacs arc endpoint out of range");
    }
    if (a.u == source && a.v == sink) {
      net.direct_ += a.cap;
      net.flow_ += a.cap;
    } else if (a.u == source && a.v != source) {
      net.add_terminal(index.at(a.v), a.cap, 0);
    } else if (a.v == sink && a.u != sink) {
      net.add_terminal(index.at(a.u), 0, a.cap);
    } else if (a.u == sink || a.v == source || a.u == a.v) {
      // Arcs into s or out of t never cross an s-t cut.
      continue;
    } else {
      net.add_arc_pair(index.at(a.u), index.at(a.v), a.cap, 0);
    }
  }
  return net;
}

}  // namespace divmbest
