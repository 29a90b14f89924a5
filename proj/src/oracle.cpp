#include "stsp/oracle.hpp"

#include <algorithm>

#include "stsp/error.hpp"

namespace stsp {

DistanceClosure::DistanceClosure(const Instance& inst)
    : bound_(static_cast<std::size_t>(inst.node_id_bound())),
      dist_(bound_ * bound_, kInfinity),
      next_(bound_ * bound_, -1),
      head_of_(static_cast<std::size_t>(inst.arc_id_bound()), -1) {
  for (const Node& n : inst.nodes()) dist_[idx(n.id, n.id)] = 0.0;
  for (const Arc& a : inst.arcs()) {
    head_of_[static_cast<std::size_t>(a.id)] = a.head;
    if (a.cost < dist_[idx(a.tail, a.head)]) {
      dist_[idx(a.tail, a.head)] = a.cost;
      next_[idx(a.tail, a.head)] = a.id;
    }
  }
  const auto& nodes = inst.nodes();
  for (const Node& via : nodes)
    for (const Node& from : nodes) {
      const double d_fv = dist_[idx(from.id, via.id)];
      if (d_fv == kInfinity) continue;
      for (const Node& to : nodes) {
        const double cand = d_fv + dist_[idx(via.id, to.id)];
        if (cand < dist_[idx(from.id, to.id)]) {
          dist_[idx(from.id, to.id)] = cand;
          next_[idx(from.id, to.id)] = next_[idx(from.id, via.id)];
        }
      }
    }
}

std::size_t DistanceClosure::idx(NodeId from, NodeId to) const {
  if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= bound_ || static_cast<std::size_t>(to) >= bound_)
    throw InvalidArgument("node id out of range");
  return static_cast<std::size_t>(from) * bound_ + static_cast<std::size_t>(to);
}

double DistanceClosure::dist(NodeId from, NodeId to) const { return dist_[idx(from, to)]; }

ArcId DistanceClosure::next_arc(NodeId from, NodeId to) const { return next_[idx(from, to)]; }

std::vector<ArcId> DistanceClosure::path(NodeId from, NodeId to) const {
  std::vector<ArcId> arcs;
  if (dist(from, to) == kInfinity) return arcs;
  for (NodeId at = from; at != to;) {
    const ArcId k = next_arc(at, to);
    arcs.push_back(k);
    at = head_of_[static_cast<std::size_t>(k)];
  }
  return arcs;
}

OracleResult optimal_cost(const Instance& inst) {
  const std::vector<NodeId> terms = inst.terminals();
  if (terms.empty()) return {0.0, make_route(inst, {})};

  const DistanceClosure closure(inst);
  for (NodeId t : terms)
    if (closure.dist(kDepot, t) == kInfinity || closure.dist(t, kDepot) == kInfinity)
      throw InfeasibleError("terminal " + std::to_string(t) + " is not strongly connected with the depot");

  // best[mask][j]: cheapest depot walk through the terminals in mask ending at terms[j].
  const std::size_t m = terms.size();
  if (m > 20) throw InvalidArgument("too many terminals for the exact oracle");
  const std::size_t full = (std::size_t{1} << m) - 1;
  std::vector<double> best((full + 1) * m, kInfinity);
  std::vector<int> prev((full + 1) * m, -1);
  auto cell = [m](std::size_t mask, std::size_t j) { return mask * m + j; };

  for (std::size_t j = 0; j < m; ++j) best[cell(std::size_t{1} << j, j)] = closure.dist(kDepot, terms[j]);
  for (std::size_t mask = 1; mask <= full; ++mask)
    for (std::size_t j = 0; j < m; ++j) {
      const double here = best[cell(mask, j)];
      if (!(mask >> j & 1) || here == kInfinity) continue;
      for (std::size_t k = 0; k < m; ++k) {
        if (mask >> k & 1) continue;
        const std::size_t next = mask | (std::size_t{1} << k);
        const double cand = here + closure.dist(terms[j], terms[k]);
        if (cand < best[cell(next, k)]) {
          best[cell(next, k)] = cand;
          prev[cell(next, k)] = static_cast<int>(j);
        }
      }
    }

  double total = kInfinity;
  std::size_t last = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const double cand = best[cell(full, j)] + closure.dist(terms[j], kDepot);
    if (cand < total) {
      total = cand;
      last = j;
    }
  }

  std::vector<NodeId> tour;
  for (std::size_t mask = full, j = last;;) {
    tour.push_back(terms[j]);
    const int p = prev[cell(mask, j)];
    mask &= ~(std::size_t{1} << j);
    if (p < 0) break;
    j = static_cast<std::size_t>(p);
  }
  std::reverse(tour.begin(), tour.end());

  std::vector<ArcId> arcs;
  NodeId at = kDepot;
  tour.push_back(kDepot);
  for (NodeId stop : tour) {
    const auto leg = closure.path(at, stop);
    arcs.insert(arcs.end(), leg.begin(), leg.end());
    at = stop;
  }
  Route route = make_route(inst, std::move(arcs));
  return {route.cost, std::move(route)};
}

std::optional<double> enumerate_walk_optimum(const Instance& inst, int max_len) {
  const std::vector<NodeId> terms = inst.terminals();
  if (terms.empty()) return 0.0;
  if (max_len < 1) return std::nullopt;
  if (terms.size() > 20) throw InvalidArgument("too many terminals to enumerate");

  const std::size_t bound = static_cast<std::size_t>(inst.node_id_bound());
  std::vector<int> bit(bound, -1);
  for (std::size_t j = 0; j < terms.size(); ++j) bit[static_cast<std::size_t>(terms[j])] = static_cast<int>(j);
  const std::size_t masks = std::size_t{1} << terms.size();
  const std::size_t full = masks - 1;

  // layer[node * masks + mask]: cheapest walk of exactly L arcs from the depot.
  std::vector<double> layer(bound * masks, kInfinity), next_layer(bound * masks);
  layer[static_cast<std::size_t>(kDepot) * masks] = 0.0;
  std::optional<double> best;
  for (int len = 1; len <= max_len; ++len) {
    std::fill(next_layer.begin(), next_layer.end(), kInfinity);
    for (const Arc& a : inst.arcs()) {
      const auto tail = static_cast<std::size_t>(a.tail), head = static_cast<std::size_t>(a.head);
      const std::size_t add = bit[head] >= 0 ? std::size_t{1} << bit[head] : 0;
      for (std::size_t mask = 0; mask < masks; ++mask) {
        const double here = layer[tail * masks + mask];
        if (here == kInfinity) continue;
        double& slot = next_layer[head * masks + (mask | add)];
        slot = std::min(slot, here + a.cost);
      }
    }
    layer.swap(next_layer);
    const double closed = layer[static_cast<std::size_t>(kDepot) * masks + full];
    if (closed != kInfinity && (!best || closed < *best)) best = closed;
  }
  return best;
}

}  // namespace stsp
