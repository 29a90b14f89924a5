#include "stsp/decoder.hpp"

#include <algorithm>
#include <set>

#include "stsp/error.hpp"

namespace stsp {

Route make_route(const Instance& inst, std::vector<ArcId> arcs) {
  Route r;
  std::set<NodeId> seen;
  for (ArcId k : arcs) {
    const Arc& a = inst.arc(k);
    r.cost += a.cost;
    if (inst.is_terminal(a.tail)) seen.insert(a.tail);
    if (inst.is_terminal(a.head)) seen.insert(a.head);
  }
  r.arcs = std::move(arcs);
  r.visited_terminals.assign(seen.begin(), seen.end());
  return r;
}

std::vector<std::string> validate_route(const Route& route, const Instance& inst) {
  std::vector<std::string> issues;
  for (std::size_t s = 0; s < route.arcs.size(); ++s)
    if (!inst.has_arc(route.arcs[s]))
      issues.push_back("unknown arc " + std::to_string(route.arcs[s]) + " at step " + std::to_string(s + 1));
  if (!issues.empty()) return issues;

  std::set<NodeId> visited;
  double cost = 0.0;
  for (std::size_t s = 0; s < route.arcs.size(); ++s) {
    const Arc& a = inst.arc(route.arcs[s]);
    cost += a.cost;
    visited.insert(a.tail);
    visited.insert(a.head);
    if (s > 0 && inst.arc(route.arcs[s - 1]).head != a.tail)
      issues.push_back("discontinuity at step " + std::to_string(s + 1));
  }
  if (!route.arcs.empty()) {
    if (inst.arc(route.arcs.front()).tail != kDepot) issues.push_back("route does not start at the depot");
    if (inst.arc(route.arcs.back()).head != kDepot) issues.push_back("route does not end at the depot");
  }
  for (NodeId t : inst.terminals())
    if (!visited.contains(t)) issues.push_back("terminal " + std::to_string(t) + " unvisited");
  if (cost != route.cost)
    issues.push_back("cost mismatch: stored " + format_number(route.cost) + ", actual " + format_number(cost));
  return issues;
}

DecodeReport decode(std::span<const std::uint8_t> asg, const ConstrainedModel& model, const Instance& inst) {
  const auto& layout = model.time_indexing();
  if (!layout) throw InvalidArgument("model is not time-indexed");
  DecodeReport report;
  if (asg.size() < model.num_variables()) {
    report.violations.push_back("assignment covers " + std::to_string(asg.size()) + " of " +
                                std::to_string(model.num_variables()) + " decision variables");
    return report;
  }

  std::vector<ArcId> walk;
  NodeId at = kDepot;
  bool returned = false;  // the walk is at the depot and may stop here
  for (int t = 1; t <= layout->horizon; ++t) {
    std::vector<ArcId> active;
    for (std::size_t p = 0; p < layout->arcs.size(); ++p)
      if (asg[static_cast<std::size_t>(layout->var(p, t))]) active.push_back(layout->arcs[p]);
    const std::string when = " in period " + std::to_string(t);

    if (active.size() > 1) {
      report.violations.push_back("multiple arcs in one period" + when);
      continue;
    }
    if (active.empty()) {
      if (t == 1) report.violations.push_back("no arc at period 1");
      else if (at != kDepot) report.violations.push_back("walk interrupted away from the depot" + when);
      continue;
    }
    const Arc& a = inst.arc(active.front());
    if (a.tail != at) {
      report.violations.push_back("discontinuity" + when + ": arc " + std::to_string(a.id) + " leaves node " +
                                  std::to_string(a.tail) + " but the walk is at node " + std::to_string(at));
    }
    walk.push_back(a.id);
    at = a.head;
    returned = at == kDepot;
  }
  if (!walk.empty() && !returned) report.violations.push_back("walk does not return to the depot");

  Route route = make_route(inst, std::move(walk));
  for (NodeId t : inst.terminals())
    if (!std::binary_search(route.visited_terminals.begin(), route.visited_terminals.end(), t))
      report.violations.push_back("terminal " + std::to_string(t) + " unvisited");

  if (report.violations.empty()) {
    report.true_cost = route.cost;
    report.route = std::move(route);
  }
  return report;
}

DecodeReport decode(std::span<const std::uint8_t> asg, const Qubo& q, const ConstrainedModel& model,
                    const Instance& inst) {
  DecodeReport report = decode(asg, model, inst);
  if (asg.size() < q.num_variables()) {
    report.route.reset();
    report.violations.push_back("assignment does not cover the QUBO variables");
    return report;
  }
  report.energy = energy(q, asg);
  double objective = 0.0;
  for (std::size_t v = 0; v < model.num_variables(); ++v)
    if (asg[v]) objective += model.objective()[v];
  report.penalty_part = report.energy - objective;
  return report;
}

Assignment encode_route(const Route& route, const ConstrainedModel& model) {
  const auto& layout = model.time_indexing();
  if (!layout) throw InvalidArgument("model is not time-indexed");
  if (route.arcs.size() > static_cast<std::size_t>(layout->horizon))
    throw InvalidArgument("route has " + std::to_string(route.arcs.size()) + " arcs but the horizon is " +
                          std::to_string(layout->horizon));
  Assignment asg(model.num_variables(), 0);
  for (std::size_t s = 0; s < route.arcs.size(); ++s) {
    const auto it = std::find(layout->arcs.begin(), layout->arcs.end(), route.arcs[s]);
    if (it == layout->arcs.end()) throw InvalidArgument("arc " + std::to_string(route.arcs[s]) + " is not in the model");
    const auto p = static_cast<std::size_t>(it - layout->arcs.begin());
    asg[static_cast<std::size_t>(layout->var(p, static_cast<int>(s) + 1))] = 1;
  }
  return asg;
}

}  // namespace stsp
