#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "divmbest/maxflow.hpp"

namespace divmbest::testing {

inline std::mt19937_64 rng_for(std::uint64_t salt) { return std::mt19937_64(0x5eed0000ULL + salt); }

struct ArcSpec {
  NodeId u, v;
  Cost uv, vu;
};

/// Network description kept alongside the FlowNetwork so the brute-force cut
/// never reads solver state.
struct NetSpec {
  int n = 0;
  std::vector<Cost> source, sink;
  std::vector<ArcSpec> arcs;

  FlowNetwork build() const {
    FlowNetwork net(n);
    for (int v = 0; v < n; ++v) net.add_terminal(v, source[v], sink[v]);
    for (const auto& a : arcs) net.add_arc_pair(a.u, a.v, a.uv, a.vu);
    return net;
  }
};

// Small integer capacities with plenty of zeros, so ties are frequent.
inline NetSpec random_net(std::mt19937_64& rng, int max_nodes = 10) {
  NetSpec s;
  s.n = std::uniform_int_distribution<int>(1, max_nodes)(rng);
  std::uniform_int_distribution<int> cap(0, 6);
  std::bernoulli_distribution zero(0.35);
  auto draw = [&] { return zero(rng) ? Cost{0} : Cost{cap(rng)}; };
  for (int v = 0; v < s.n; ++v) {
    s.source.push_back(draw());
    s.sink.push_back(draw());
  }
  std::bernoulli_distribution edge(0.35);
  for (int u = 0; u < s.n; ++u)
    for (int v = u + 1; v < s.n; ++v)
      if (edge(rng)) s.arcs.push_back({u, v, draw(), draw()});
  return s;
}

struct BruteCut {
  Cost value = 0;
  std::vector<std::uint32_t> optimal;  // bit v set: v on the sink side
};

inline Cost cut_value(const NetSpec& s, std::uint32_t mask) {
  auto sink_side = [&](int v) { return (mask >> v) & 1u; };
  Cost c = 0;
  for (int v = 0; v < s.n; ++v) c += sink_side(v) ? s.source[v] : s.sink[v];
  for (const auto& a : s.arcs) {
    if (!sink_side(a.u) && sink_side(a.v)) c += a.uv;
    if (sink_side(a.u) && !sink_side(a.v)) c += a.vu;
  }
  return c;
}

inline BruteCut brute_cut(const NetSpec& s) {
  BruteCut out;
  out.value = -1;
  for (std::uint32_t mask = 0; mask < (1u << s.n); ++mask) {
    const Cost c = cut_value(s, mask);
    if (out.value < 0 || c < out.value) {
      out.value = c;
      out.optimal.clear();
    }
    if (c == out.value) out.optimal.push_back(mask);
  }
  return out;
}

inline std::uint32_t mask_of(const std::vector<std::uint8_t>& side) {
  std::uint32_t m = 0;
  for (std::size_t v = 0; v < side.size(); ++v)
    if (side[v] == kSinkSide) m |= 1u << v;
  return m;
}

// Minimal source side ⇔ union of the optimal sink sets.
inline std::uint32_t largest_sink_set(const BruteCut& b) {
  std::uint32_t m = 0;
  for (auto x : b.optimal) m |= x;
  return m;
}

inline std::uint32_t smallest_sink_set(const BruteCut& b) {
  std::uint32_t m = ~0u;
  for (auto x : b.optimal) m &= x;
  return m;
}

}  // namespace divmbest::testing
