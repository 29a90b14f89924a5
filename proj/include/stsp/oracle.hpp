#ifndef STSP_ORACLE_HPP
#define STSP_ORACLE_HPP

#include <limits>
#include <optional>
#include <vector>

#include "stsp/instance.hpp"
#include "stsp/route.hpp"

namespace stsp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// All-pairs shortest walk costs with first-arc successors (Floyd-Warshall).
class DistanceClosure {
 public:
  explicit DistanceClosure(const Instance& inst);

  /// kInfinity when `to` is unreachable.
  double dist(NodeId from, NodeId to) const;
  /// First arc of a shortest path, -1 when from == to or unreachable.
  ArcId next_arc(NodeId from, NodeId to) const;
  /// Arc sequence realizing dist(from, to).
  std::vector<ArcId> path(NodeId from, NodeId to) const;

 private:
  std::size_t idx(NodeId from, NodeId to) const;

  std::size_t bound_;
  std::vector<double> dist_;
  std::vector<ArcId> next_;
  std::vector<NodeId> head_of_;  // arc id -> head
};

inline DistanceClosure metric_closure(const Instance& inst) { return DistanceClosure(inst); }

struct OracleResult {
  double cost;
  Route route;
};

/// Minimum-cost closed walk from the depot covering every terminal.
/// Terminal tour by subset dynamic programming over the metric closure, then
/// each leg expanded into arcs. Throws InfeasibleError naming the first
/// terminal not strongly connected with the depot.
OracleResult optimal_cost(const Instance& inst);

/// Minimum cost over every closed depot walk of at most `max_len` arcs that
/// covers the terminal set, by layered dynamic programming over
/// (walk length, node, visited terminals). Empty when no such walk exists.
std::optional<double> enumerate_walk_optimum(const Instance& inst, int max_len);

}  // namespace stsp

#endif  // STSP_ORACLE_HPP
