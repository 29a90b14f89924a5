#ifndef STSP_TESTS_FIXTURES_HPP
#define STSP_TESTS_FIXTURES_HPP

#include <vector>

#include "stsp/instance.hpp"

namespace stsp::testing {

/// Depot 0, terminal 1, steiner 2.
/// Arcs 0:0->1 (25), 1:1->0 (30), 2:0->2 (20), 3:2->1 (20), 4:1->2 (22), 5:2->0 (21).
inline Instance t1() {
  std::vector<Node> nodes{{0, 10.0, 10.0, NodeKind::depot},
                          {1, 50.0, 60.0, NodeKind::terminal},
                          {2, 80.0, 20.0, NodeKind::steiner}};
  std::vector<Arc> arcs{{0, 0, 1, 25}, {1, 1, 0, 30}, {2, 0, 2, 20},
                        {3, 2, 1, 20}, {4, 1, 2, 22}, {5, 2, 0, 21}};
  return Instance(std::move(nodes), std::move(arcs));
}

/// T1 plus steiner node 3 with arcs 6:2->3 (40) and 7:3->2 (45).
inline Instance t2() {
  const Instance base = t1();
  std::vector<Node> nodes = base.nodes();
  nodes.push_back({3, 30.0, 90.0, NodeKind::steiner});
  std::vector<Arc> arcs = base.arcs();
  arcs.push_back({6, 2, 3, 40});
  arcs.push_back({7, 3, 2, 45});
  return Instance(std::move(nodes), std::move(arcs));
}

}  // namespace stsp::testing

#endif  // STSP_TESTS_FIXTURES_HPP
