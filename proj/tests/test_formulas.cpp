#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "multipeak/errors.hpp"
#include "multipeak/formulas.hpp"

using namespace multipeak;

TEST_CASE("per-player peak value and totals") {
  // k = 2, s = 2, a = 1/3, b = 1: per player 1 - (1 - 1/3·3)(1 - 1/3) = 1.
  CHECK(yes_value_formula(2, 2, Rational(1, 3), Rational(1)) == Rational(2));
  // k = 1, s = 4, a = 1/8, b = 1 reproduces the frozen single-peak value.
  CHECK(yes_value_formula(1, 4, Rational(1, 8), Rational(1)) == Rational(57, 64));
  // Saturated peak term: a(2s - b) >= 1 gives value k exactly.
  CHECK(yes_value_formula(3, 5, Rational(1, 2), Rational(1)) == Rational(3));
}

TEST_CASE("far value at the canonical slopes") {
  CHECK(cpp_far_value(6, Rational(1, 12)) == Rational(3, 4));   // a = 1/(2s)
  CHECK(cpp_far_value(6, Rational(1, 6)) == Rational(1));       // a = 1/s
  CHECK(cpp_far_value(6, Rational(1, 24)) == Rational(7, 16));  // a = 1/(4s)
}

TEST_CASE("normalized value branches and their glue") {
  const Rational alpha(1, 2), beta(1, 2);
  // Far branch at x + y = 1: 1 - (1 - 1/2)^2 = 3/4.
  CHECK(normalized_value(Rational(1, 2), Rational(1, 2), alpha, beta) ==
        Rational(3, 4));
  // Close branch needs x - y > beta strictly.
  CHECK(normalized_value(Rational(3, 4), Rational(1, 4), alpha, beta) ==
        normalized_value(Rational(1, 4), Rational(3, 4), alpha, beta));
  // x = 1, y = 0: close, 1 - (1 - 1/2·3/2)(1 - 1/2·1/2) = 1 - (1/4)(3/4) = 13/16.
  CHECK(normalized_value(Rational(1), Rational(0), alpha, beta) ==
        Rational(13, 16));
  // Same total mass, close beats far by (alpha·delta)^2 with delta = x-y-beta.
  const Rational close = normalized_value(Rational(1), Rational(0), alpha, beta);
  const Rational far = normalized_value(Rational(1, 2), Rational(1, 2), alpha, beta);
  const Rational delta = Rational(1) - Rational(0) - beta;
  CHECK(close - far == (alpha * delta) * (alpha * delta));
  // Double overload tracks the exact one.
  CHECK(normalized_value(1.0, 0.0, 0.5, 0.5) == doctest::Approx(13.0 / 16));
}

TEST_CASE("normalized value is monotone in both coordinates") {
  const Rational alpha(2, 5), beta(1, 3);
  Rational prev(-1);
  for (int xi = 0; xi <= 12; ++xi) {
    const Rational v = normalized_value(make_rational(xi, 6), Rational(1, 7), alpha, beta);
    CHECK(v >= prev);
    prev = v;
  }
  prev = Rational(-1);
  for (int yi = 0; yi <= 12; ++yi) {
    const Rational v = normalized_value(Rational(5, 6), make_rational(yi, 6), alpha, beta);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("NO bound at k = 50, alpha = 1/2") {
  auto bound = no_bound_formula(50, Rational(1, 2), Rational(0));
  CHECK(to_double(bound.value) == doctest::Approx(41.8959).epsilon(1e-4));
  CHECK(bound.kstar >= 24);
  CHECK(bound.kstar <= 26);
  REQUIRE(bound.per_kstar.size() == 50);
  // Expanded form: 51 - 25·((49/50)^25)^2 at k* = 25, matching the cap.
  const Rational q25 = rational_pow(Rational(49, 50), 25);
  const auto& at25 = bound.per_kstar[24];
  CHECK(at25.kstar == 25);
  REQUIRE(at25.expanded.has_value());
  CHECK(*at25.expanded == Rational(51) - 25 * q25 * q25);
  CHECK(at25.expanded_matches);
  CHECK(at25.capped == *at25.expanded);
  // Every entry where the cap is inactive agrees with the expanded algebra.
  for (const auto& entry : bound.per_kstar) {
    if (entry.expanded.has_value()) CHECK(entry.expanded_matches);
  }
  CHECK(bound.per_player(50) == bound.value / 50);
}

TEST_CASE("NO bound input validation") {
  CHECK_THROWS_AS(no_bound_formula(1, Rational(1, 2), Rational(0)), ValidationError);
  CHECK_THROWS_AS(no_bound_formula(4, Rational(0), Rational(0)), ValidationError);
  CHECK_THROWS_AS(no_bound_formula(4, Rational(1, 2), Rational(-1)), ValidationError);
}

TEST_CASE("two-player closed form at the gap parameters") {
  // alpha = 2/3, beta = 1/2: x_sat = (1 + 1/3)/(4/3) = 1, value 2 - 1/9 = 17/9.
  auto at_gap = no_value_two_players(Rational(2, 3), Rational(1, 2));
  CHECK(at_gap.value == Rational(17, 9));
  CHECK(at_gap.x_sat == Rational(1));
  CHECK(at_gap.regime == BetaRegime::Verified);
  CHECK(at_gap.saturation_feasible);

  // alpha = 1/2, beta = 1: x_sat = 3/2, value 2 - (1 - 1/4)^2 = 23/16; the
  // saturated profile needs prefix mass 3/2 > 1, infeasible at eps = 0.
  auto infeasible = no_value_two_players(Rational(1, 2), Rational(1));
  CHECK(infeasible.value == Rational(23, 16));
  CHECK(infeasible.x_sat == Rational(3, 2));
  CHECK_FALSE(infeasible.saturation_feasible);
}

TEST_CASE("two-player beta regimes") {
  const Rational eps(1, 10);
  // beta >= 1/2 + 2 eps = 7/10 -> verified.
  CHECK(no_value_two_players(Rational(1, 2), Rational(7, 10), eps).regime ==
        BetaRegime::Verified);
  // beta in [1/4 + eps, 1/2 + 2 eps) = [7/20, 7/10) -> unverified.
  CHECK(no_value_two_players(Rational(1, 2), Rational(1, 2), eps).regime ==
        BetaRegime::Unverified);
  // Below 1/4 + eps -> out of range.
  CHECK(no_value_two_players(Rational(1, 2), Rational(1, 4), eps).regime ==
        BetaRegime::OutOfRange);
}

TEST_CASE("gap targets parse and evaluate") {
  CHECK(gap_target_from_string("17/18") == GapTarget::SeventeenEighteenths);
  CHECK(gap_target_from_string("1-1/(2e)") == GapTarget::OneMinusHalfInvE);
  CHECK(gap_target_from_string("3/4") == GapTarget::ThreeQuarters);
  CHECK(gap_target_from_string("7/8") == GapTarget::SevenEighths);
  CHECK(gap_target_from_string("1-1/e") == GapTarget::OneMinusInvE);
  CHECK_THROWS_AS(gap_target_from_string("1/2"), ValidationError);

  CHECK(gap_target_value(GapTarget::SeventeenEighteenths) ==
        doctest::Approx(17.0 / 18));
  CHECK(gap_target_value(GapTarget::OneMinusHalfInvE) ==
        doctest::Approx(1.0 - 0.5 / std::exp(1.0)));
  CHECK(gap_target_rational(GapTarget::SeventeenEighteenths).value() ==
        Rational(17, 18));
  CHECK_FALSE(gap_target_rational(GapTarget::OneMinusInvE).has_value());
}

TEST_CASE("gap ratio report") {
  auto report = gap_ratio(Rational(2), Rational(17, 9),
                          GapTarget::SeventeenEighteenths);
  CHECK(report.ratio == Rational(17, 18));
  CHECK(report.deviation == doctest::Approx(0.0));
  CHECK(report.yes_value == Rational(2));
  CHECK(report.no_bound == Rational(17, 9));
  CHECK_THROWS_AS(gap_ratio(Rational(0), Rational(1), GapTarget::ThreeQuarters),
                  ValidationError);
}
