#include "stsp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "stsp/error.hpp"
#include "stsp/rng.hpp"

namespace stsp {

Instance generate_instance(int n, std::uint64_t seed, const GeneratorConfig& config) {
  if (n < 2) throw InvalidArgument("invalid size: need at least 2 non-depot nodes, got " + std::to_string(n));
  if (!(config.density >= 0.0 && config.density <= 1.0))
    throw InvalidArgument("density must lie in [0, 1]");

  Rng rng(seed);
  const int total = n + 1;
  const int num_terminals = terminal_count(n);

  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(total));
  for (NodeId id = 0; id < total; ++id) {
    const double x = 100.0 * rng.uniform01();
    const double y = 100.0 * rng.uniform01();
    const NodeKind kind = id == kDepot              ? NodeKind::depot
                          : id <= num_terminals     ? NodeKind::terminal
                                                    : NodeKind::steiner;
    nodes.push_back({id, x, y, kind});
  }

  std::vector<NodeId> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), 0);
  for (int i = total - 1; i > 0; --i)
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(rng.uniform_int(0, i))]);

  const auto n_sz = static_cast<std::size_t>(total);
  std::vector<bool> present(n_sz * n_sz, false);
  for (int i = 0; i < total; ++i) {
    const NodeId a = order[static_cast<std::size_t>(i)];
    const NodeId b = order[static_cast<std::size_t>((i + 1) % total)];
    present[static_cast<std::size_t>(a) * n_sz + static_cast<std::size_t>(b)] = true;
  }
  // One draw per ordered pair keeps the stream layout independent of density.
  for (NodeId i = 0; i < total; ++i)
    for (NodeId j = 0; j < total; ++j) {
      if (i == j) continue;
      if (rng.uniform01() < config.density)
        present[static_cast<std::size_t>(i) * n_sz + static_cast<std::size_t>(j)] = true;
    }

  std::vector<Arc> arcs;
  for (NodeId i = 0; i < total; ++i)
    for (NodeId j = 0; j < total; ++j) {
      if (!present[static_cast<std::size_t>(i) * n_sz + static_cast<std::size_t>(j)]) continue;
      double cost;
      if (config.cost_mode == CostMode::uniform) {
        cost = static_cast<double>(rng.uniform_int(kMinCost, kMaxCost));
      } else {
        const Node& a = nodes[static_cast<std::size_t>(i)];
        const Node& b = nodes[static_cast<std::size_t>(j)];
        cost = std::max(1.0, std::round(std::hypot(a.x - b.x, a.y - b.y)));
      }
      arcs.push_back({static_cast<ArcId>(arcs.size()), i, j, cost});
    }

  return Instance(std::move(nodes), std::move(arcs));
}

}  // namespace stsp
