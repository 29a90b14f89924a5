#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "doctest.h"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"
#include "stsp/error.hpp"
#include "stsp/generator.hpp"
#include "stsp/qubo.hpp"

using namespace stsp;
using testing::all_assignments;

namespace {

ConstrainedModel two_var_model(Relation rel) {
  ConstrainedModel m;
  m.add_variable("x1");
  m.add_variable("x2");
  m.add_constraint({{{0, 1}, {1, 1}}, rel, 1, "c"});
  return m;
}

}  // namespace

TEST_CASE("slack weights cover the range exactly") {
  CHECK(slack_weights(0).empty());
  CHECK(slack_weights(-3).empty());
  CHECK(slack_weights(1) == std::vector<double>{1});
  CHECK(slack_weights(2) == std::vector<double>{1, 1});
  CHECK(slack_weights(5) == std::vector<double>{1, 2, 2});
  CHECK(slack_weights(7) == std::vector<double>{1, 2, 4});
  CHECK(slack_weights(35) == std::vector<double>{1, 2, 4, 8, 16, 4});
  for (int r = 1; r < 70; ++r) {
    const auto w = slack_weights(r);
    CHECK(std::accumulate(w.begin(), w.end(), 0.0) == r);
    CHECK(w.size() == static_cast<std::size_t>(std::floor(std::log2(r))) + 1);
  }
}

TEST_CASE("equality penalty expansion") {
  const Qubo q = to_qubo(two_var_model(Relation::equal), PenaltySpec::fixed(10));
  CHECK(q.linear == std::vector<double>{-10, -10});
  CHECK(q.quadratic == std::vector<QuadTerm>{{0, 1, 20}});
  CHECK(q.offset == 10);
  CHECK(q.penalty == 10);
  CHECK(energy(q, Assignment{0, 0}) == 10);
  CHECK(energy(q, Assignment{1, 0}) == 0);
  CHECK(energy(q, Assignment{0, 1}) == 0);
  CHECK(energy(q, Assignment{1, 1}) == 10);
}

TEST_CASE("inequality gets one slack bit") {
  const Qubo q = to_qubo(two_var_model(Relation::greater_equal), PenaltySpec::fixed(10));
  REQUIRE(q.num_variables() == 3);
  CHECK(q.labels[2] == "s_c_0");
  CHECK(q.origin[2] == VarOrigin::slack);
  CHECK(q.num_decision() == 2);
  std::vector<Assignment> zero;
  for (const auto& x : all_assignments(3))
    if (energy(q, x) == 0) zero.push_back(x);
  CHECK(zero == std::vector<Assignment>{{1, 0, 0}, {0, 1, 0}, {1, 1, 1}});
}

TEST_CASE("conversion errors") {
  CHECK_THROWS_AS(to_qubo(two_var_model(Relation::less_equal)), InvalidArgument);
  CHECK_THROWS_AS(to_qubo(two_var_model(Relation::equal), PenaltySpec::fixed(0)), InvalidArgument);
  CHECK_THROWS_AS(to_qubo(two_var_model(Relation::equal), PenaltySpec::fixed(-1)), InvalidArgument);
}

TEST_CASE("automatic penalty is twice the objective bound") {
  CHECK(to_qubo(build_model(testing::t1())).penalty == 2 * 138);
  ConstrainedModel m = two_var_model(Relation::equal);
  CHECK(to_qubo(m).penalty == 1);  // no objective at all
}

TEST_CASE("energy evaluation") {
  Qubo single;
  single.labels = {"x"};
  single.origin = {VarOrigin::decision};
  single.linear = {-1};
  CHECK(energy(single, Assignment{1}) == -1);
  CHECK(energy(single, Assignment{0}) == 0);
  CHECK_THROWS_AS(energy(single, Assignment{}), InvalidArgument);

  const Qubo q = to_qubo(build_model(testing::t1()));
  CHECK(energy(q, Assignment(q.num_variables(), 0)) == q.offset);
}

TEST_CASE("energy equals penalized objective on small random models") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const ConstrainedModel m = testing::random_small_model(rng, 2 + trial % 4, 1 + trial % 3);
    const Qubo q = to_qubo(m, PenaltySpec::fixed(7));
    if (q.num_variables() > 14) continue;
    const std::size_t nd = m.num_variables();
    std::vector<double> best(std::size_t{1} << nd, std::numeric_limits<double>::infinity());
    for (const auto& x : all_assignments(q.num_variables())) {
      std::size_t key = 0;
      for (std::size_t i = 0; i < nd; ++i) key |= std::size_t{x[i]} << i;
      best[key] = std::min(best[key], energy(q, x));
    }
    for (const auto& y : all_assignments(nd)) {
      std::size_t key = 0;
      for (std::size_t i = 0; i < nd; ++i) key |= std::size_t{y[i]} << i;
      CHECK(best[key] == testing::penalized_objective(m, y, 7));
    }
  }
}

TEST_CASE("export and parse") {
  Qubo single;
  single.labels = {"x"};
  single.origin = {VarOrigin::decision};
  single.linear = {-1};
  single.penalty = 1;
  CHECK(export_qubo(single) == "qubo 1 1 0 1\n0 0 -1\n");

  const Qubo eq = to_qubo(two_var_model(Relation::equal), PenaltySpec::fixed(10));
  CHECK(export_qubo(eq) == "qubo 2 3 10 10\n0 0 -10\n0 1 20\n1 1 -10\n");
  CHECK(export_varmap(eq) == "0 x1 decision\n1 x2 decision\n");

  const Qubo q = to_qubo(build_model(testing::t1()));
  const std::string text = export_qubo(q);
  CHECK(text == export_qubo(q));
  const auto lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  CHECK(lines - 1 == q.num_nonzero_linear() + q.quadratic.size());
  CHECK(parse_qubo(text, export_varmap(q)) == q);

  const Qubo bare = parse_qubo(text);
  CHECK(bare.labels[0] == "x0");
  CHECK(bare.linear == q.linear);
  CHECK(bare.quadratic == q.quadratic);

  CHECK_THROWS_AS(parse_qubo("qubo 2 1 0 1\n0 5 1\n"), ParseError);
  CHECK_THROWS_AS(parse_qubo("qubo 2 2 0 1\n0 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_qubo("0 0 1\n"), ParseError);
}

TEST_CASE("round trip on generated instances") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Qubo q = to_qubo(build_model(generate_instance(3 + static_cast<int>(seed % 3), seed)));
    CHECK(parse_qubo(export_qubo(q), export_varmap(q)) == q);
    CHECK(q.num_decision() == q.num_variables() - static_cast<std::size_t>(std::count(
                                  q.origin.begin(), q.origin.end(), VarOrigin::slack)));
    for (const QuadTerm& t : q.quadratic) {
      CHECK(t.i < t.j);
      CHECK(t.coeff != 0);
    }
  }
}
