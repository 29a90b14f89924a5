#ifndef STSP_ROUTE_HPP
#define STSP_ROUTE_HPP

#include <vector>

#include "stsp/instance.hpp"

namespace stsp {

/// Closed walk depot -> ... -> depot as a sequence of arc ids.
struct Route {
  std::vector<ArcId> arcs;
  double cost = 0.0;
  std::vector<NodeId> visited_terminals;  ///< ascending

  friend bool operator==(const Route&, const Route&) = default;
};

/// Route over `arcs` with cost and visited terminals filled in from `inst`.
Route make_route(const Instance& inst, std::vector<ArcId> arcs);

}  // namespace stsp

#endif  // STSP_ROUTE_HPP
