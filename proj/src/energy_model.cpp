#include "divmbest/energy_model.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace divmbest {

Labeling::Labeling(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t Labeling::count_ones() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

namespace {

void require_same_size(const Labeling& a, const Labeling& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::invalid_input, "labelings differ in node count");
  }
}

}  // namespace

Labeling join(const Labeling& a, const Labeling& b) {
  require_same_size(a, b);
  Labeling out(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) out.set(v, a[v] | b[v]);
  return out;
}

Labeling meet(const Labeling& a, const Labeling& b) {
  require_same_size(a, b);
  Labeling out(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) out.set(v, a[v] & b[v]);
  return out;
}

bool precedes(const Labeling& a, const Labeling& b) {
  require_same_size(a, b);
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v] > b[v]) return false;
  }
  return true;
}

bool is_nested(std::span<const Labeling> tuple) {
  // Consecutive comparison suffices: ≤ is transitive.
  for (std::size_t m = 1; m < tuple.size(); ++m) {
    if (!precedes(tuple[m - 1], tuple[m])) return false;
  }
  return true;
}

EnergyModel::EnergyModel(NodeId node_count, std::vector<UnaryTerm> unary,
                         std::vector<PairwiseTerm> edges, double scale)
    : node_count_(node_count),
      scale_(scale),
      unary_(std::move(unary)),
      edges_(std::move(edges)) {
  if (node_count_ <= 0) {
    throw Error(ErrorCode::invalid_input, "node_count must be positive");
  }
  if (!(scale_ > 0.0)) {
    throw Error(ErrorCode::invalid_input, "fixed-point scale must be positive");
  }
  if (unary_.size() != static_cast<std::size_t>(node_count_)) {
    throw Error(ErrorCode::invalid_input,
                "expected " + std::to_string(node_count_) + " unary terms, got " +
                    std::to_string(unary_.size()));
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (edge.u < 0 || edge.v >= node_count_ || edge.v < 0 || edge.u >= node_count_) {
      throw Error(ErrorCode::invalid_input,
                  "edge " + std::to_string(e) + " has an endpoint out of range");
    }
    if (edge.u == edge.v) {
      throw Error(ErrorCode::invalid_input,
                  "edge " + std::to_string(e) + " is a self-loop");
    }
    if (edge.u > edge.v) {
      throw Error(ErrorCode::invalid_input,
                  "edge " + std::to_string(e) + " must satisfy u < v");
    }
    if (!seen.emplace(edge.u, edge.v).second) {
      throw Error(ErrorCode::invalid_input,
                  "duplicate edge (" + std::to_string(edge.u) + ", " +
                      std::to_string(edge.v) + ")");
    }
  }

  unary0_.reserve(unary_.size());
  unary1_.reserve(unary_.size());
  for (const auto& t : unary_) {
    unary0_.push_back(fixed(t.cost0));
    unary1_.push_back(fixed(t.cost1));
  }
  fixed_edges_.reserve(edges_.size());
  for (const auto& e : edges_) {
    FixedPairwise f;
    f.u = e.u;
    f.v = e.v;
    f.table[0][0] = fixed(e.cost00);
    f.table[0][1] = fixed(e.cost01);
    f.table[1][0] = fixed(e.cost10);
    f.table[1][1] = fixed(e.cost11);
    fixed_edges_.push_back(f);
  }
}

void EnergyModel::check_labeling(const Labeling& y) const {
  if (y.size() != static_cast<std::size_t>(node_count_)) {
    throw Error(ErrorCode::invalid_input,
                "labeling has " + std::to_string(y.size()) + " nodes, model has " +
                    std::to_string(node_count_));
  }
}

double EnergyModel::evaluate(const Labeling& y) const {
  check_labeling(y);
  double energy = 0.0;
  for (std::size_t v = 0; v < unary_.size(); ++v) {
    energy += y[v] ? unary_[v].cost1 : unary_[v].cost0;
  }
  for (const auto& e : edges_) {
    energy += e.at(y[static_cast<std::size_t>(e.u)], y[static_cast<std::size_t>(e.v)]);
  }
  return energy;
}

Cost EnergyModel::evaluate_fixed(const Labeling& y) const {
  check_labeling(y);
  Cost energy = 0;
  for (std::size_t v = 0; v < unary0_.size(); ++v) {
    energy += y[v] ? unary1_[v] : unary0_[v];
  }
  for (const auto& e : fixed_edges_) {
    energy += e.table[y[static_cast<std::size_t>(e.u)]][y[static_cast<std::size_t>(e.v)]];
  }
  return energy;
}

SubmodularityCertificate check_submodular(const EnergyModel& model) {
  SubmodularityCertificate cert;
  const auto edges = model.fixed_edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double margin = model.real(edges[e].margin());
    if (margin < cert.worst_margin) {
      cert.worst_margin = margin;
      cert.worst_edge = e;
    }
    if (edges[e].margin() < 0) cert.is_submodular = false;
  }
  return cert;
}

Reformulation reformulate(const EnergyModel& model) {
  const auto cert = check_submodular(model);
  if (!cert.is_submodular) {
    throw Error(ErrorCode::not_submodular,
                "reformulation requires a submodular model (edge " +
                    std::to_string(*cert.worst_edge) + " has negative margin)");
  }
  const auto n = static_cast<std::size_t>(model.node_count());
  Reformulation r;
  r.a_halves.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    r.constant_halves += 2 * model.fixed_unary0()[v];
    r.a_halves[v] = 2 * (model.fixed_unary1()[v] - model.fixed_unary0()[v]);
  }
  for (const auto& e : model.fixed_edges()) {
    const Cost a = e.table[0][0];
    const Cost b = e.table[0][1];
    const Cost c = e.table[1][0];
    const Cost d = e.table[1][1];
    r.constant_halves += 2 * a;
    r.a_halves[static_cast<std::size_t>(e.u)] += c - a - b + d;
    r.a_halves[static_cast<std::size_t>(e.v)] += b - a - c + d;
    r.theta_halves.push_back(b + c - a - d);
  }

  const double half_unit = 2.0 * model.scale();
  r.constant = static_cast<double>(r.constant_halves) / half_unit;
  for (Cost a : r.a_halves) r.a.push_back(static_cast<double>(a) / half_unit);
  for (Cost t : r.theta_halves) r.theta.push_back(static_cast<double>(t) / half_unit);
  return r;
}

}  // namespace divmbest
