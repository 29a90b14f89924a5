#include "stsp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "stsp/error.hpp"

namespace stsp {

namespace {

std::string node_field(NodeId id) { return "node " + std::to_string(id); }
std::string arc_field(ArcId id) { return "arc " + std::to_string(id); }

}  // namespace

Instance::Instance(std::vector<Node> nodes, std::vector<Arc> arcs)
    : nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });

  NodeId max_node = -1;
  for (const Node& n : nodes_) {
    if (n.id < 0) throw ParseError(node_field(n.id) + ": negative id");
    max_node = std::max(max_node, n.id);
  }
  node_lookup_.assign(static_cast<std::size_t>(max_node + 1), -1);
  for (std::size_t p = 0; p < nodes_.size(); ++p) {
    auto& slot = node_lookup_[static_cast<std::size_t>(nodes_[p].id)];
    if (slot != -1) throw ParseError(node_field(nodes_[p].id) + ": duplicate node id");
    slot = static_cast<std::int32_t>(p);
  }
  if (!has_node(kDepot)) throw ParseError("depot missing");
  for (const Node& n : nodes_) {
    if (n.id == kDepot && n.kind != NodeKind::depot)
      throw ParseError("node 0: depot must have kind depot");
    if (n.id != kDepot && n.kind == NodeKind::depot)
      throw ParseError(node_field(n.id) + ": only node 0 may be the depot");
  }

  ArcId max_arc = -1;
  for (const Arc& a : arcs_) {
    if (a.id < 0) throw ParseError(arc_field(a.id) + ": negative id");
    max_arc = std::max(max_arc, a.id);
  }
  arc_lookup_.assign(static_cast<std::size_t>(max_arc + 1), -1);
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t p = 0; p < arcs_.size(); ++p) {
    const Arc& a = arcs_[p];
    auto& slot = arc_lookup_[static_cast<std::size_t>(a.id)];
    if (slot != -1) throw ParseError(arc_field(a.id) + ": duplicate arc id");
    slot = static_cast<std::int32_t>(p);
    if (!has_node(a.tail)) throw ParseError(arc_field(a.id) + ": unknown tail " + std::to_string(a.tail));
    if (!has_node(a.head)) throw ParseError(arc_field(a.id) + ": unknown head " + std::to_string(a.head));
    if (a.tail == a.head) throw ParseError(arc_field(a.id) + ": self-loop");
    if (!(a.cost > 0.0)) throw ParseError(arc_field(a.id) + ": nonpositive cost");
    if (!pairs.emplace(a.tail, a.head).second)
      throw ParseError(arc_field(a.id) + ": duplicate arc " + std::to_string(a.tail) + "->" +
                       std::to_string(a.head));
  }
}

std::vector<NodeId> Instance::terminals() const {
  std::vector<NodeId> out;
  for (const Node& n : nodes_)
    if (n.kind == NodeKind::terminal) out.push_back(n.id);
  return out;
}

bool Instance::has_node(NodeId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < node_lookup_.size() &&
         node_lookup_[static_cast<std::size_t>(id)] != -1;
}

bool Instance::has_arc(ArcId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < arc_lookup_.size() &&
         arc_lookup_[static_cast<std::size_t>(id)] != -1;
}

std::size_t Instance::node_pos(NodeId id) const {
  if (!has_node(id)) throw InvalidArgument("no node " + std::to_string(id));
  return static_cast<std::size_t>(node_lookup_[static_cast<std::size_t>(id)]);
}

const Node& Instance::node(NodeId id) const { return nodes_[node_pos(id)]; }

const Arc& Instance::arc(ArcId id) const {
  if (!has_arc(id)) throw InvalidArgument("no arc " + std::to_string(id));
  return arcs_[static_cast<std::size_t>(arc_lookup_[static_cast<std::size_t>(id)])];
}

bool Instance::is_terminal(NodeId id) const {
  return has_node(id) && node(id).kind == NodeKind::terminal;
}

bool Instance::is_required(NodeId id) const { return id == kDepot || is_terminal(id); }

NodeId Instance::node_id_bound() const { return static_cast<NodeId>(node_lookup_.size()); }
ArcId Instance::arc_id_bound() const { return static_cast<ArcId>(arc_lookup_.size()); }

double Instance::total_cost() const {
  double total = 0.0;
  for (const Arc& a : arcs_) total += a.cost;
  return total;
}

AdjacencyIndex::AdjacencyIndex(const Instance& inst)
    : out_(static_cast<std::size_t>(inst.node_id_bound())),
      in_(static_cast<std::size_t>(inst.node_id_bound())) {
  std::vector<const Arc*> sorted;
  for (const Arc& a : inst.arcs()) sorted.push_back(&a);
  std::sort(sorted.begin(), sorted.end(), [](const Arc* a, const Arc* b) { return a->id < b->id; });
  for (const Arc* a : sorted) {
    out_[static_cast<std::size_t>(a->tail)].push_back(a->id);
    in_[static_cast<std::size_t>(a->head)].push_back(a->id);
  }
}

std::span<const ArcId> AdjacencyIndex::out_arcs(NodeId node) const {
  if (node < 0 || static_cast<std::size_t>(node) >= out_.size()) return {};
  return out_[static_cast<std::size_t>(node)];
}

std::span<const ArcId> AdjacencyIndex::in_arcs(NodeId node) const {
  if (node < 0 || static_cast<std::size_t>(node) >= in_.size()) return {};
  return in_[static_cast<std::size_t>(node)];
}

std::vector<bool> reachable(const Instance& inst, NodeId source, Direction dir) {
  const AdjacencyIndex adj(inst);
  std::vector<bool> seen(static_cast<std::size_t>(inst.node_id_bound()), false);
  if (!inst.has_node(source)) return seen;
  std::deque<NodeId> queue{source};
  seen[static_cast<std::size_t>(source)] = true;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    const auto arcs = dir == Direction::forward ? adj.out_arcs(u) : adj.in_arcs(u);
    for (ArcId k : arcs) {
      const Arc& a = inst.arc(k);
      const NodeId v = dir == Direction::forward ? a.head : a.tail;
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

std::vector<NodeId> disconnected_terminals(const Instance& inst) {
  const auto fwd = reachable(inst, kDepot, Direction::forward);
  const auto bwd = reachable(inst, kDepot, Direction::backward);
  std::vector<NodeId> out;
  for (NodeId t : inst.terminals())
    if (!fwd[static_cast<std::size_t>(t)] || !bwd[static_cast<std::size_t>(t)]) out.push_back(t);
  return out;
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::depot:
      return "depot";
    case NodeKind::terminal:
      return "terminal";
    case NodeKind::steiner:
      return "steiner";
  }
  return "steiner";
}

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, end);
}

std::string save_instance(const Instance& inst) {
  std::ostringstream os;
  os << "stsp 1\n";
  os << "nodes " << inst.num_nodes() << '\n';
  for (const Node& n : inst.nodes())
    os << "node " << n.id << ' ' << format_number(n.x) << ' ' << format_number(n.y) << ' '
       << to_string(n.kind) << '\n';
  for (const Arc& a : inst.arcs())
    os << "arc " << a.id << ' ' << a.tail << ' ' << a.head << ' ' << format_number(a.cost) << '\n';
  return os.str();
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_field(std::string_view tok, const std::string& what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(what + ": cannot parse '" + std::string(tok) + "'");
  return value;
}

NodeKind parse_kind(std::string_view tok, const std::string& what) {
  if (tok == "depot") return NodeKind::depot;
  if (tok == "terminal") return NodeKind::terminal;
  if (tok == "steiner") return NodeKind::steiner;
  throw ParseError(what + ": unknown kind '" + std::string(tok) + "'");
}

}  // namespace

Instance load_instance(std::string_view text) {
  std::vector<Node> nodes;
  std::vector<Arc> arcs;
  bool header = false;
  std::optional<std::size_t> declared_nodes;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);

    if (!header) {
      if (tok.size() != 2 || tok[0] != "stsp" || tok[1] != "1")
        throw ParseError(where + ": header: expected 'stsp 1'");
      header = true;
    } else if (tok[0] == "nodes") {
      if (tok.size() != 2) throw ParseError(where + ": nodes: expected 'nodes <count>'");
      declared_nodes = parse_field<std::size_t>(tok[1], where + ": nodes");
    } else if (tok[0] == "node") {
      if (tok.size() != 5) throw ParseError(where + ": node: expected 'node <id> <x> <y> <kind>'");
      nodes.push_back({parse_field<NodeId>(tok[1], where + ": node id"),
                       parse_field<double>(tok[2], where + ": node x"),
                       parse_field<double>(tok[3], where + ": node y"),
                       parse_kind(tok[4], where + ": node kind")});
    } else if (tok[0] == "arc") {
      if (tok.size() != 5) throw ParseError(where + ": arc: expected 'arc <id> <tail> <head> <cost>'");
      arcs.push_back({parse_field<ArcId>(tok[1], where + ": arc id"),
                      parse_field<NodeId>(tok[2], where + ": arc tail"),
                      parse_field<NodeId>(tok[3], where + ": arc head"),
                      parse_field<double>(tok[4], where + ": arc cost")});
    } else {
      throw ParseError(where + ": unknown line '" + std::string(tok[0]) + "'");
    }
  }
  if (!header) throw ParseError("header: missing 'stsp 1'");
  if (!declared_nodes) throw ParseError("nodes: missing node count");
  if (*declared_nodes != nodes.size())
    throw ParseError("nodes: declared " + std::to_string(*declared_nodes) + " but found " +
                     std::to_string(nodes.size()));
  return Instance(std::move(nodes), std::move(arcs));
}

}  // namespace stsp
