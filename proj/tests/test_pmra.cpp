#include <algorithm>
#include <set>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "stsp/error.hpp"
#include "stsp/generator.hpp"
#include "stsp/oracle.hpp"
#include "stsp/pmra.hpp"

using namespace stsp;

TEST_CASE("threshold is 1.1 times the mean") {
  const std::vector<double> a{20, 30, 40};
  CHECK(compute_threshold(a).mean == 30.0);
  CHECK(compute_threshold(a).alpha == doctest::Approx(33.0));
  const std::vector<double> b{50};
  CHECK(compute_threshold(b).mean == 50.0);
  CHECK(compute_threshold(b).alpha == doctest::Approx(55.0));
  const std::vector<double> c{25, 30, 20, 20, 22, 21};
  CHECK(compute_threshold(c).mean == 23.0);
  CHECK(compute_threshold(c).alpha == doctest::Approx(25.3));
  CHECK(compute_threshold(c).alpha == 23.0 + 0.1 * 23.0);
  CHECK_THROWS_AS(compute_threshold(std::vector<double>{}), InvalidArgument);
}

TEST_CASE("T1 is left unchanged") {
  // 1->0 (30) is the only arc above 25.3 and both its endpoints are required.
  const auto [reduced, report] = reduce(testing::t1());
  CHECK(reduced == testing::t1());
  CHECK(report.mean_cost == 23.0);
  CHECK(report.threshold == doctest::Approx(25.3));
  CHECK(report.removed_step1.empty());
  CHECK(report.removed_step3.empty());
  CHECK(report.removed_nodes_step4.empty());
  CHECK(report.arcs_before == 6);
  CHECK(report.arcs_after == 6);
  CHECK_FALSE(report.feasibility_fallback);
}

TEST_CASE("T2 reduces to T1") {
  const auto [reduced, report] = reduce(testing::t2());
  CHECK(report.removed_step1 == std::vector<ArcId>{6, 7});
  CHECK(report.removed_step3.empty());
  REQUIRE(report.removed_nodes_step4.size() == 1);
  CHECK(report.removed_nodes_step4[0].node == 3);
  CHECK(report.removed_nodes_step4[0].arcs.empty());
  CHECK(reduced == testing::t1());
  CHECK(report.arcs_after == 6);
}

TEST_CASE("all-terminal instance with flat costs is the identity") {
  std::vector<Node> nodes{{0, 0, 0, NodeKind::depot}, {1, 1, 0, NodeKind::terminal}, {2, 0, 1, NodeKind::terminal}};
  std::vector<Arc> arcs{{0, 0, 1, 30}, {1, 1, 2, 31}, {2, 2, 0, 32}, {3, 1, 0, 30}};
  const Instance inst(nodes, arcs);
  const auto [reduced, report] = reduce(inst);
  CHECK(reduced == inst);
  CHECK(report.arcs_after == report.arcs_before);
}

TEST_CASE("step 3 removes expensive steiner arcs but never the last one") {
  // The guard counts in + out, so steiner 2 may lose both in-arcs while
  // keeping 2 -> 0; step 4 then drops it.
  std::vector<Node> nodes{{0, 0, 0, NodeKind::depot},
                          {1, 0, 0, NodeKind::terminal},
                          {2, 0, 0, NodeKind::steiner}};
  std::vector<Arc> arcs{{0, 0, 1, 20}, {1, 1, 0, 20}, {2, 0, 2, 50}, {3, 1, 2, 49}, {4, 2, 0, 21}};
  const auto [reduced, report] = reduce(Instance(nodes, arcs));
  // mean 32, alpha 35.2
  CHECK(report.removed_step3 == std::vector<ArcId>{2, 3});
  REQUIRE(report.removed_nodes_step4.size() == 1);
  CHECK(report.removed_nodes_step4[0].node == 2);
  CHECK(report.removed_nodes_step4[0].arcs == std::vector<ArcId>{4});
  CHECK(reduced.num_arcs() == 2);
  CHECK_FALSE(reduced.has_node(2));
  CHECK(report.arcs_after == report.arcs_before - 3);
}

TEST_CASE("isolation guard keeps a pendant arc") {
  // Steiner 2 only has the expensive arc 2 -> 0.
  std::vector<Node> nodes{{0, 0, 0, NodeKind::depot},
                          {1, 0, 0, NodeKind::terminal},
                          {2, 0, 0, NodeKind::steiner}};
  std::vector<Arc> arcs{{0, 0, 1, 20}, {1, 1, 0, 20}, {2, 2, 0, 50}};
  const auto [reduced, report] = reduce(Instance(nodes, arcs));
  CHECK(report.removed_step3.empty());
  // Step 4 still removes 2 because it has no incoming arc.
  REQUIRE(report.removed_nodes_step4.size() == 1);
  CHECK(report.removed_nodes_step4[0].arcs == std::vector<ArcId>{2});
}

TEST_CASE("fallback restores connectivity") {
  // The only way back from terminal 1 is through steiner 2 via expensive arcs.
  std::vector<Node> nodes{{0, 0, 0, NodeKind::depot},
                          {1, 0, 0, NodeKind::terminal},
                          {2, 0, 0, NodeKind::steiner}};
  std::vector<Arc> arcs{{0, 0, 1, 20}, {1, 1, 2, 50}, {2, 2, 0, 50}, {3, 0, 2, 20}, {4, 2, 1, 20}};
  const Instance inst(nodes, arcs);
  const auto [reduced, report] = reduce(inst);
  CHECK(report.feasibility_fallback);
  CHECK(report.removed_step3.empty());
  CHECK(report.removed_nodes_step4.empty());
  CHECK(disconnected_terminals(reduced).empty());
  CHECK(reduced == inst);
}

TEST_CASE("step 1 disconnection is a hard error") {
  // Terminal 1 is reachable only via the steiner chain 2 -> 3.
  std::vector<Node> nodes{{0, 0, 0, NodeKind::depot},
                          {1, 0, 0, NodeKind::terminal},
                          {2, 0, 0, NodeKind::steiner},
                          {3, 0, 0, NodeKind::steiner}};
  std::vector<Arc> arcs{{0, 0, 2, 20}, {1, 2, 3, 20}, {2, 3, 1, 20}, {3, 1, 0, 20}};
  CHECK_THROWS_WITH_AS(reduce(Instance(nodes, arcs)), doctest::Contains("instance infeasible under PMRA step 1"),
                       InfeasibleError);
}

TEST_CASE("reduction invariants on random instances") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int n = 3 + static_cast<int>(seed % 8);
    const Instance inst = generate_instance(n, seed, {static_cast<double>(seed % 5) / 4.0});
    Reduction red;
    try {
      red = reduce(inst);
    } catch (const InfeasibleError&) {
      continue;
    }
    ++checked;
    CAPTURE(seed);
    const PmraReport& r = red.report;
    CHECK(r.threshold == r.mean_cost + 0.1 * r.mean_cost);

    std::set<ArcId> removed(r.removed_step1.begin(), r.removed_step1.end());
    std::size_t total = r.removed_step1.size() + r.removed_step3.size();
    removed.insert(r.removed_step3.begin(), r.removed_step3.end());
    for (const RemovedNode& rn : r.removed_nodes_step4) {
      total += rn.arcs.size();
      removed.insert(rn.arcs.begin(), rn.arcs.end());
      CHECK(inst.node(rn.node).kind == NodeKind::steiner);
    }
    CHECK(removed.size() == total);  // disjoint
    CHECK(r.arcs_before == inst.num_arcs());
    CHECK(r.arcs_after == r.arcs_before - total);
    CHECK(red.instance.num_arcs() == r.arcs_after);

    for (const Arc& a : red.instance.arcs()) {
      CHECK(inst.has_arc(a.id));
      CHECK(inst.arc(a.id) == a);
      CHECK_FALSE(removed.contains(a.id));
    }
    CHECK(red.instance.has_node(kDepot));
    CHECK(red.instance.terminals() == inst.terminals());
    CHECK(disconnected_terminals(red.instance).empty());

    // Reduced optimum can only get worse.
    CHECK(optimal_cost(red.instance).cost >= optimal_cost(inst).cost);

    if (!r.feasibility_fallback) {
      std::vector<RemovedNode> again;
      CHECK(prune_steiner_nodes(red.instance, &again) == red.instance);
      CHECK(again.empty());
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("report text") {
  const std::string text = format_report(reduce(testing::t2()).report);
  CHECK(text ==
        "mean_cost 23\nthreshold 25.3\narcs_before 8\narcs_after 6\nremoved_step1 6 7\nremoved_step3\n"
        "removed_nodes_step4 3:\nfeasibility_fallback false\n");
}
