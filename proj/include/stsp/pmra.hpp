#ifndef STSP_PMRA_HPP
#define STSP_PMRA_HPP

#include <span>
#include <string>
#include <vector>

#include "stsp/instance.hpp"

namespace stsp {

struct Threshold {
  double mean;
  double alpha;  ///< mean + 0.1 * mean
};

/// Mean arc cost and removal threshold. Throws InvalidArgument if empty.
Threshold compute_threshold(std::span<const double> costs);

struct RemovedNode {
  NodeId node;
  std::vector<ArcId> arcs;

  friend bool operator==(const RemovedNode&, const RemovedNode&) = default;
};

struct PmraReport {
  double mean_cost = 0.0;
  double threshold = 0.0;
  std::vector<ArcId> removed_step1;
  std::vector<ArcId> removed_step3;
  std::vector<RemovedNode> removed_nodes_step4;
  std::size_t arcs_before = 0;
  std::size_t arcs_after = 0;
  /// Steps 3-4 were undone because they cut a terminal off from the depot.
  bool feasibility_fallback = false;
};

struct Reduction {
  Instance instance;
  PmraReport report;
};

/// Arc reduction in four steps:
///  1. drop arcs with neither endpoint in the terminal set or the depot;
///  2. threshold = 1.1 x mean cost of the survivors;
///  3. in descending cost order (ties by id), drop arcs with cost >= threshold
///     unless both endpoints are required or an endpoint would lose its last
///     incident arc;
///  4. repeatedly drop steiner nodes lacking incoming or outgoing arcs.
/// If a terminal ends up disconnected from the depot, steps 3-4 are undone.
///
/// Throws InfeasibleError when step 1 alone disconnects a terminal.
Reduction reduce(const Instance& inst);

/// Step 4 on its own: returns the instance without dead-end steiner nodes.
Instance prune_steiner_nodes(const Instance& inst, std::vector<RemovedNode>* removed = nullptr);

/// Key-value text block, one `key value...` line per field.
std::string format_report(const PmraReport& report);

}  // namespace stsp

#endif  // STSP_PMRA_HPP
