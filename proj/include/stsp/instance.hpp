#ifndef STSP_INSTANCE_HPP
#define STSP_INSTANCE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stsp {

using NodeId = int;
using ArcId = int;

inline constexpr NodeId kDepot = 0;

enum class NodeKind { depot, terminal, steiner };

struct Node {
  NodeId id;
  double x;
  double y;
  NodeKind kind;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Arc {
  ArcId id;
  NodeId tail;
  NodeId head;
  double cost;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Directed STSP instance: depot 0, terminal set, optional steiner nodes.
///
/// Node and arc ids are stable labels, not positions. A reduced instance keeps
/// the ids of the original, so ids may be sparse. Nodes are kept sorted by id;
/// arcs keep their insertion order.
class Instance {
 public:
  Instance() = default;

  /// Validates every invariant and throws ParseError naming the offending
  /// field: depot present and not a terminal, unique node ids, valid arc
  /// endpoints, no self-loops, no duplicate (tail, head), positive costs.
  Instance(std::vector<Node> nodes, std::vector<Arc> arcs);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_arcs() const { return arcs_.size(); }

  /// Terminal ids in ascending order.
  std::vector<NodeId> terminals() const;

  bool has_node(NodeId id) const;
  bool has_arc(ArcId id) const;
  const Node& node(NodeId id) const;
  const Arc& arc(ArcId id) const;

  bool is_terminal(NodeId id) const;
  /// Depot or terminal: the nodes a route must touch.
  bool is_required(NodeId id) const;

  /// One past the largest node id; sizes id-indexed tables.
  NodeId node_id_bound() const;
  ArcId arc_id_bound() const;

  double total_cost() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t node_pos(NodeId id) const;

  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::int32_t> node_lookup_;  // id -> position in nodes_, -1 if absent
  std::vector<std::int32_t> arc_lookup_;   // id -> position in arcs_, -1 if absent
};

/// Incoming and outgoing arc ids per node id, each list in ascending arc id.
class AdjacencyIndex {
 public:
  explicit AdjacencyIndex(const Instance& inst);

  std::span<const ArcId> out_arcs(NodeId node) const;
  std::span<const ArcId> in_arcs(NodeId node) const;

 private:
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
};

inline AdjacencyIndex build_adjacency(const Instance& inst) { return AdjacencyIndex(inst); }

enum class Direction { forward, backward };

/// Node-id-indexed flags of nodes reachable from `source` along arcs
/// (forward) or against them (backward).
std::vector<bool> reachable(const Instance& inst, NodeId source, Direction dir);

/// Terminals that are unreachable from the depot or cannot reach it.
std::vector<NodeId> disconnected_terminals(const Instance& inst);

std::string save_instance(const Instance& inst);
Instance load_instance(std::string_view text);

std::string_view to_string(NodeKind kind);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

}  // namespace stsp

#endif  // STSP_INSTANCE_HPP
