#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "multipeak/errors.hpp"
#include "multipeak/solvers.hpp"

using namespace multipeak;

TEST_CASE("two players at the gap parameters reach the closed form") {
  auto result = structured_no_value(2, Rational(2, 3), Rational(1, 2),
                                       Rational(0));
  CHECK(result.value == Rational(17, 9));
  REQUIRE(result.closed_form.has_value());
  CHECK(result.closed_form->value == Rational(17, 9));
  CHECK(result.closed_form->saturation_feasible);
  CHECK(result.value == result.closed_form->value);
  // k* = 1 and k* = 2 tie at 17/9; the sweep keeps the smaller.
  REQUIRE(result.per_kstar.size() == 3);
  CHECK(result.per_kstar[0].second == Rational(16, 9));
  CHECK(result.per_kstar[1].second == Rational(17, 9));
  CHECK(result.per_kstar[2].second == Rational(17, 9));
  REQUIRE(result.profile.kstar.has_value());
  CHECK(*result.profile.kstar == 1);
  // The witnessing profile satisfies its own constraints.
  REQUIRE(result.profile.checked.has_value());
  CHECK(result.profile.checked->passed());
}

TEST_CASE("infeasible saturation: the structured optimum beats the closed form") {
  // alpha = 1/2, beta = 1: x_sat = 3/2 exceeds the feasible prefix 1, and the
  // best structured profile is two far players at mass 1 each.
  auto result = structured_no_value(2, Rational(1, 2), Rational(1), Rational(0));
  CHECK(result.value == Rational(3, 2));
  REQUIRE(result.closed_form.has_value());
  CHECK(result.closed_form->value == Rational(23, 16));
  CHECK_FALSE(result.closed_form->saturation_feasible);
  CHECK(result.value > result.closed_form->value);
}

TEST_CASE("profile entries sum within the mass budget") {
  auto result = structured_no_value(3, Rational(1, 2), Rational(1, 2),
                                       Rational(1, 10));
  Rational mass = 0;
  for (const auto& e : result.profile.entries) mass += e.x + e.y;
  CHECK(mass <= Rational(3));
  CHECK(result.profile.checked->passed());
  CHECK(result.per_kstar.size() == 4);
  // Reported optimum matches the best column of the k* table.
  Rational best = result.per_kstar[0].second;
  for (const auto& [kstar, value] : result.per_kstar) {
    if (value > best) best = value;
  }
  CHECK(result.value == best);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(structured_no_value(0, Rational(1), Rational(0), Rational(0)),
                  ValidationError);
  CHECK_THROWS_AS(structured_no_value(2, Rational(0), Rational(0), Rational(0)),
                  ValidationError);
  CHECK_THROWS_AS(structured_no_value(2, Rational(1), Rational(-1), Rational(0)),
                  ValidationError);
  CHECK_THROWS_AS(grid_no_value(0, 1.0, 0.0, 0.0), ValidationError);
}

TEST_CASE("grid sweep confirms the structured optimum for two players") {
  for (const auto& [alpha, beta] : {std::pair{Rational(2, 3), Rational(1, 2)},
                                    std::pair{Rational(1, 2), Rational(3, 5)},
                                    std::pair{Rational(3, 4), Rational(2, 3)}}) {
    auto exact = structured_no_value(2, alpha, beta, Rational(0));
    const double grid = grid_no_value(2, to_double(alpha), to_double(beta),
                                         0.0, 200);
    // The grid search is a feasible-point lower bound with O(1/resolution)
    // slack; agreement within 1e-2 both ways pins the exact value.
    CHECK(std::abs(to_double(exact.value) - grid) <= 1e-2);
  }
}

TEST_CASE("grid sweep tracks a three-player optimum") {
  auto exact = structured_no_value(3, Rational(3, 5), Rational(1, 2),
                                      Rational(0));
  const double grid = grid_no_value(3, 0.6, 0.5, 0.0, 40);
  CHECK(std::abs(to_double(exact.value) - grid) <= 3e-2);
}

TEST_CASE("epsilon loosens the prefix caps monotonically") {
  auto tight = structured_no_value(2, Rational(1, 2), Rational(1), Rational(0));
  auto loose = structured_no_value(2, Rational(1, 2), Rational(1),
                                      Rational(1, 4));
  CHECK(loose.value >= tight.value);
}
