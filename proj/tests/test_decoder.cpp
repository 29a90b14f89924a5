#include <algorithm>
#include <string>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "stsp/decoder.hpp"
#include "stsp/error.hpp"
#include "stsp/generator.hpp"
#include "stsp/oracle.hpp"

using namespace stsp;

namespace {

bool mentions(const std::vector<std::string>& issues, const std::string& text) {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const std::string& s) { return s.find(text) != std::string::npos; });
}

}  // namespace

TEST_CASE("decoding the optimal T1 walk") {
  const Instance inst = testing::t1();
  const ConstrainedModel m = build_model(inst);
  Assignment x(m.num_variables(), 0);
  x[static_cast<std::size_t>(m.time_indexing()->var(0, 1))] = 1;
  x[static_cast<std::size_t>(m.time_indexing()->var(1, 2))] = 1;
  const DecodeReport rep = decode(x, m, inst);
  REQUIRE(rep.feasible());
  CHECK(rep.violations.empty());
  CHECK(rep.true_cost == 55);
  CHECK(rep.route->arcs == std::vector<ArcId>{0, 1});
  CHECK(rep.route->visited_terminals == std::vector<NodeId>{1});
  CHECK(evaluate_assignment(m, x).violations.empty());
}

TEST_CASE("decoder violations") {
  const Instance inst = testing::t1();
  const ConstrainedModel m = build_model(inst);
  const auto& layout = *m.time_indexing();

  const DecodeReport zero = decode(Assignment(m.num_variables(), 0), m, inst);
  CHECK_FALSE(zero.feasible());
  CHECK(mentions(zero.violations, "no arc at period 1"));
  CHECK(mentions(zero.violations, "terminal 1 unvisited"));

  Assignment two(m.num_variables(), 0);
  two[static_cast<std::size_t>(layout.var(0, 1))] = 1;
  two[static_cast<std::size_t>(layout.var(2, 1))] = 1;
  CHECK(mentions(decode(two, m, inst).violations, "multiple arcs in one period in period 1"));

  Assignment open(m.num_variables(), 0);
  open[static_cast<std::size_t>(layout.var(0, 1))] = 1;
  const DecodeReport stuck = decode(open, m, inst);
  CHECK(mentions(stuck.violations, "walk interrupted away from the depot in period 2"));
  CHECK(mentions(stuck.violations, "walk does not return to the depot"));

  Assignment jump(m.num_variables(), 0);
  jump[static_cast<std::size_t>(layout.var(0, 1))] = 1;
  jump[static_cast<std::size_t>(layout.var(5, 2))] = 1;
  CHECK(mentions(decode(jump, m, inst).violations, "discontinuity in period 2"));

  CHECK(mentions(decode(Assignment(3, 0), m, inst).violations, "assignment covers 3 of 36"));
}

TEST_CASE("idle periods at the depot are allowed") {
  const Instance inst = testing::t1();
  const ConstrainedModel m = build_model(inst);
  Assignment x(m.num_variables(), 0);
  x[static_cast<std::size_t>(m.time_indexing()->var(0, 1))] = 1;
  x[static_cast<std::size_t>(m.time_indexing()->var(1, 2))] = 1;
  x[static_cast<std::size_t>(m.time_indexing()->var(2, 4))] = 1;
  x[static_cast<std::size_t>(m.time_indexing()->var(5, 5))] = 1;
  const DecodeReport rep = decode(x, m, inst);
  REQUIRE(rep.feasible());
  CHECK(rep.true_cost == 96);
}

TEST_CASE("energy and penalty part") {
  const Instance inst = testing::t1();
  const ConstrainedModel m = build_model(inst);
  const Qubo q = to_qubo(m);
  const Route route = make_route(inst, {0, 1});
  Assignment x = encode_route(route, m);
  x.resize(q.num_variables(), 0);
  // Every eq5 surplus of the optimal walk is zero, so all-zero slacks fit.
  const DecodeReport rep = decode(x, q, m, inst);
  REQUIRE(rep.feasible());
  CHECK(rep.energy == 55);
  CHECK(rep.penalty_part == 0);

  const DecodeReport bad = decode(Assignment(q.num_variables(), 0), q, m, inst);
  CHECK(bad.penalty_part > 0);
  CHECK(bad.energy == energy(q, Assignment(q.num_variables(), 0)));
  CHECK_FALSE(decode(Assignment(m.num_variables(), 0), q, m, inst).feasible());
}

TEST_CASE("route validation") {
  const Instance inst = testing::t1();
  CHECK(validate_route(make_route(inst, {0, 1}), inst).empty());
  CHECK(validate_route(make_route(inst, {2, 3, 1}), inst).empty());
  CHECK(validate_route(make_route(inst, {2, 5}), inst) == std::vector<std::string>{"terminal 1 unvisited"});
  CHECK(mentions(validate_route(make_route(inst, {0, 5}), inst), "discontinuity at step 2"));
  Route wrong = make_route(inst, {0, 1});
  wrong.cost = 54;
  CHECK(mentions(validate_route(wrong, inst), "cost mismatch"));
  Route unknown{{0, 9}, 0, {}};
  CHECK(mentions(validate_route(unknown, inst), "unknown arc 9 at step 2"));
  CHECK(mentions(validate_route(make_route(inst, {3, 1}), inst), "route does not start at the depot"));
}

TEST_CASE("encode and decode round trip") {
  const Instance inst = testing::t1();
  const ConstrainedModel m = build_model(inst);
  const Route route = make_route(inst, {2, 3, 4, 3, 1});
  const DecodeReport rep = decode(encode_route(route, m), m, inst);
  REQUIRE(rep.feasible());
  CHECK(*rep.route == route);

  CHECK_THROWS_AS(encode_route(make_route(inst, {0, 1, 0, 1, 0, 1, 0, 1}), m), InvalidArgument);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance g = generate_instance(3 + static_cast<int>(seed % 4), seed);
    const ConstrainedModel gm = build_model(g);
    const OracleResult opt = optimal_cost(g);
    const Assignment y = encode_route(opt.route, gm);
    CHECK(evaluate_assignment(gm, y).violations.empty());
    const DecodeReport r = decode(y, gm, g);
    REQUIRE(r.feasible());
    CHECK(r.true_cost == opt.cost);
    CHECK(r.route->arcs == opt.route.arcs);
  }
}
