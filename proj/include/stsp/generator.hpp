#ifndef STSP_GENERATOR_HPP
#define STSP_GENERATOR_HPP

#include <cstdint>

#include "stsp/instance.hpp"

namespace stsp {

enum class CostMode {
  uniform,    ///< integer cost drawn uniformly from [20, 50]
  euclidean,  ///< rounded Euclidean distance between the endpoints (min 1)
};

struct GeneratorConfig {
  /// Probability of each ordered pair outside the Hamiltonian backbone.
  double density = 0.3;
  CostMode cost_mode = CostMode::uniform;
};

inline constexpr int kMinCost = 20;
inline constexpr int kMaxCost = 50;

/// Random instance with `n` non-depot nodes placed in the 100x100 square.
///
/// Nodes 1..floor(0.7 n) are terminals, the rest steiner. The arc set is a
/// random Hamiltonian cycle over all n + 1 nodes (so the graph is strongly
/// connected) plus every other ordered pair with probability `density`.
/// Arc ids follow (tail, head) order. Output depends only on the arguments.
Instance generate_instance(int n, std::uint64_t seed, const GeneratorConfig& config = {});

/// floor(0.7 n), computed in integers.
inline int terminal_count(int n) { return (7 * n) / 10; }

}  // namespace stsp

#endif  // STSP_GENERATOR_HPP
