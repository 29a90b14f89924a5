#include "stsp/pmra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "stsp/error.hpp"

namespace stsp {

Threshold compute_threshold(std::span<const double> costs) {
  if (costs.empty()) throw InvalidArgument("cannot compute a threshold over no arcs");
  const double mean = std::accumulate(costs.begin(), costs.end(), 0.0) / static_cast<double>(costs.size());
  return {mean, mean + 0.1 * mean};
}

namespace {

Instance with_arcs(const Instance& inst, std::vector<Arc> arcs) {
  return Instance(inst.nodes(), std::move(arcs));
}

}  // namespace

Instance prune_steiner_nodes(const Instance& inst, std::vector<RemovedNode>* removed) {
  std::vector<Node> nodes = inst.nodes();
  std::vector<Arc> arcs = inst.arcs();
  for (;;) {
    const std::size_t bound = static_cast<std::size_t>(inst.node_id_bound());
    std::vector<int> indeg(bound, 0), outdeg(bound, 0);
    for (const Arc& a : arcs) {
      ++outdeg[static_cast<std::size_t>(a.tail)];
      ++indeg[static_cast<std::size_t>(a.head)];
    }
    std::vector<bool> drop(bound, false);
    bool any = false;
    for (const Node& n : nodes) {
      if (n.kind != NodeKind::steiner) continue;
      const auto i = static_cast<std::size_t>(n.id);
      if (indeg[i] == 0 || outdeg[i] == 0) drop[i] = any = true;
    }
    if (!any) break;

    std::vector<Arc> kept;
    std::vector<RemovedNode> round;
    for (const Node& n : nodes)
      if (drop[static_cast<std::size_t>(n.id)]) round.push_back({n.id, {}});
    for (const Arc& a : arcs) {
      const bool t = drop[static_cast<std::size_t>(a.tail)];
      const bool h = drop[static_cast<std::size_t>(a.head)];
      if (!t && !h) {
        kept.push_back(a);
        continue;
      }
      // An arc between two dropped nodes is credited to its tail.
      const NodeId owner = t ? a.tail : a.head;
      auto it = std::find_if(round.begin(), round.end(),
                             [owner](const RemovedNode& r) { return r.node == owner; });
      it->arcs.push_back(a.id);
    }
    arcs = std::move(kept);
    std::erase_if(nodes, [&](const Node& n) { return drop[static_cast<std::size_t>(n.id)]; });
    if (removed) removed->insert(removed->end(), round.begin(), round.end());
  }
  return Instance(std::move(nodes), std::move(arcs));
}

Reduction reduce(const Instance& inst) {
  PmraReport report;
  report.arcs_before = inst.num_arcs();

  // Step 1: keep arcs touching the depot or a terminal.
  std::vector<Arc> step1;
  for (const Arc& a : inst.arcs()) {
    if (inst.is_required(a.tail) || inst.is_required(a.head))
      step1.push_back(a);
    else
      report.removed_step1.push_back(a.id);
  }
  Instance after_step1 = with_arcs(inst, step1);
  if (const auto cut = disconnected_terminals(after_step1); !cut.empty())
    throw InfeasibleError("instance infeasible under PMRA step 1: terminal " +
                          std::to_string(cut.front()) + " disconnected from the depot");

  if (step1.empty()) {
    report.arcs_after = 0;
    return {std::move(after_step1), std::move(report)};
  }

  // Step 2.
  std::vector<double> costs;
  for (const Arc& a : step1) costs.push_back(a.cost);
  const Threshold th = compute_threshold(costs);
  report.mean_cost = th.mean;
  report.threshold = th.alpha;

  // Step 3.
  std::vector<int> degree(static_cast<std::size_t>(inst.node_id_bound()), 0);
  for (const Arc& a : step1) {
    ++degree[static_cast<std::size_t>(a.tail)];
    ++degree[static_cast<std::size_t>(a.head)];
  }
  std::vector<std::size_t> order(step1.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (step1[a].cost != step1[b].cost) return step1[a].cost > step1[b].cost;
    return step1[a].id < step1[b].id;
  });
  std::vector<bool> removed(step1.size(), false);
  for (std::size_t p : order) {
    const Arc& a = step1[p];
    if (a.cost < th.alpha) break;
    if (inst.is_required(a.tail) && inst.is_required(a.head)) continue;
    auto& dt = degree[static_cast<std::size_t>(a.tail)];
    auto& dh = degree[static_cast<std::size_t>(a.head)];
    if (dt <= 1 || dh <= 1) continue;
    --dt;
    --dh;
    removed[p] = true;
    report.removed_step3.push_back(a.id);
  }
  std::sort(report.removed_step3.begin(), report.removed_step3.end());
  std::vector<Arc> step3;
  for (std::size_t p = 0; p < step1.size(); ++p)
    if (!removed[p]) step3.push_back(step1[p]);

  // Step 4.
  Instance reduced = prune_steiner_nodes(with_arcs(inst, std::move(step3)), &report.removed_nodes_step4);

  if (!disconnected_terminals(reduced).empty()) {
    report.removed_step3.clear();
    report.removed_nodes_step4.clear();
    report.feasibility_fallback = true;
    reduced = std::move(after_step1);
  }
  report.arcs_after = reduced.num_arcs();
  return {std::move(reduced), std::move(report)};
}

namespace {

template <typename Range>
void put_ids(std::ostream& os, const Range& ids) {
  for (const auto id : ids) os << ' ' << id;
}

}  // namespace

std::string format_report(const PmraReport& r) {
  std::ostringstream os;
  os << "mean_cost " << format_number(r.mean_cost) << '\n';
  os << "threshold " << format_number(r.threshold) << '\n';
  os << "arcs_before " << r.arcs_before << '\n';
  os << "arcs_after " << r.arcs_after << '\n';
  os << "removed_step1";
  put_ids(os, r.removed_step1);
  os << "\nremoved_step3";
  put_ids(os, r.removed_step3);
  os << "\nremoved_nodes_step4";
  for (const RemovedNode& n : r.removed_nodes_step4) {
    os << ' ' << n.node << ':';
    for (std::size_t i = 0; i < n.arcs.size(); ++i) os << (i ? "," : "") << n.arcs[i];
  }
  os << "\nfeasibility_fallback " << (r.feasibility_fallback ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace stsp
