#include <doctest.h>

#include "helpers.hpp"
#include "multipeak/errors.hpp"
#include "multipeak/instance.hpp"
#include "multipeak/solvers.hpp"

using namespace multipeak;
using testutil::set_of;

namespace {

AuctionInstance tiny_welfare() {
  // m = 4, two players with disjoint peaks, a = 1/4, b = 1.
  WellStructuredCollection col;
  col.m = 4;
  col.k = 2;
  col.s = 2;
  col.b = Rational(1);
  col.groups = {{set_of(4, {0, 1})}, {set_of(4, {2, 3})}};
  return build_welfare_instance(col, Rational(1, 4), Rational(1));
}

AuctionInstance shared_cpp(const Rational& a, const Rational& b,
                           std::size_t cardinality) {
  WellStructuredCollection col;
  col.m = 4;
  col.k = 2;
  col.s = 2;
  col.b = b;
  col.groups = {{set_of(4, {0, 1})}, {set_of(4, {0, 1})}};
  return build_cpp_instance(col, a, b, cardinality);
}

}  // namespace

TEST_CASE("price vector validation and totals") {
  PriceVector p{{Rational(1, 2), Rational(0), Rational(3, 4)}};
  CHECK_NOTHROW(p.validate(3));
  CHECK_THROWS_AS(p.validate(4), ValidationError);
  PriceVector negative{{Rational(-1, 2)}};
  CHECK_THROWS_AS(negative.validate(1), ValidationError);
  CHECK(p.total(set_of(3, {0, 2})) == Rational(5, 4));
  CHECK(p.total(ItemSet(3)) == Rational(0));
}

TEST_CASE("welfare brute force finds the hand-checked optimum") {
  auto inst = tiny_welfare();
  auto result = brute_force_welfare(inst);
  // Each player on the own peak: 2·(1 - (1 - 3/4)(1 - 1/4)) = 13/8; every
  // other assignment was enumerated by hand below that.
  CHECK(result.value == Rational(13, 8));
  CHECK(result.solver == "brute_force_welfare");
  CHECK(result.nodes == 16);  // 2^4 assignments
  REQUIRE(result.allocation.has_value());
  CHECK(result.allocation->bundles[0] == set_of(4, {0, 1}));
  CHECK(result.allocation->bundles[1] == set_of(4, {2, 3}));
}

TEST_CASE("welfare ties break to the lexicographically least assignment") {
  // Two identical players over m = 2; giving {0} to player 0 and {1} to
  // player 1 ties with the swap. Item-0-most-significant lex order prefers
  // assignment (0,1).
  WellStructuredCollection col;
  col.m = 2;
  col.k = 2;
  col.s = 1;
  col.b = Rational(0);
  col.groups = {{set_of(2, {0})}, {set_of(2, {0})}};
  auto inst = build_welfare_instance(col, Rational(1), Rational(0));
  auto result = brute_force_welfare(inst);
  CHECK(result.value == Rational(2));
  CHECK(result.allocation->bundles[0] == set_of(2, {0}));
  CHECK(result.allocation->bundles[1] == set_of(2, {1}));
}

TEST_CASE("max-min brute force balances the tiny instance") {
  WellStructuredCollection col;
  col.m = 4;
  col.k = 2;
  col.s = 2;
  col.b = Rational(1);
  col.groups = {{set_of(4, {0, 1})}, {set_of(4, {2, 3})}};
  auto inst = build_maxmin_instance(col, Rational(1, 4), Rational(1));
  auto result = brute_force_maxmin(inst);
  CHECK(result.value == Rational(13, 16));  // both on their peaks
  CHECK(result.solver == "brute_force_maxmin");
  REQUIRE(result.allocation.has_value());
  CHECK(result.allocation->bundles[0] == set_of(4, {0, 1}));
}

TEST_CASE("worker count never changes the result") {
  WellStructuredCollection col;
  col.m = 12;
  col.k = 2;
  col.s = 6;
  col.b = Rational(1);
  col.groups = {{set_of(12, {0, 1, 2, 3, 4, 5})}, {set_of(12, {6, 7, 8, 9, 10, 11})}};
  auto inst = build_welfare_instance(col, Rational(1, 12), Rational(1));
  auto serial = brute_force_welfare(inst, kDefaultEnumerationGuard, 1);
  auto parallel = brute_force_welfare(inst, kDefaultEnumerationGuard, 4);
  CHECK(serial.value == parallel.value);
  REQUIRE(parallel.allocation.has_value());
  CHECK(serial.allocation->bundles[0] == parallel.allocation->bundles[0]);
  CHECK(serial.allocation->bundles[1] == parallel.allocation->bundles[1]);
  CHECK(serial.nodes == parallel.nodes);
}

TEST_CASE("enumeration guard throws with the sizes attached") {
  auto inst = tiny_welfare();
  try {
    brute_force_welfare(inst, 10);
    FAIL("guard did not fire");
  } catch (const GuardExceededError& err) {
    // The size estimate saturates once it exceeds the guard, so it is a
    // lower bound on the true space, strictly above the limit.
    CHECK(err.needed() > err.limit());
    CHECK(err.limit() == 10);
  }
}

TEST_CASE("cpp brute force scans all subsets of the cardinality") {
  auto inst = shared_cpp(Rational(1, 4), Rational(0), 2);
  auto result = brute_force_cpp(inst);
  // Both players close on {0,1}: value 1 each.
  CHECK(result.value == Rational(2));
  CHECK(result.nodes == 6);  // C(4,2)
  REQUIRE(result.chosen_set.has_value());
  CHECK(*result.chosen_set == set_of(4, {0, 1}));
  CHECK_FALSE(result.allocation.has_value());
}

TEST_CASE("cpp ties break to the lexicographically least subset") {
  // Empty family, a = 1/2: every 2-subset is worth 1 - (1 - 1)^2 = 1.
  WellStructuredCollection col;
  col.m = 4;
  col.k = 1;
  col.s = 4;
  col.b = Rational(0);
  col.groups = {{}};
  auto inst = build_cpp_instance(col, Rational(1, 2), Rational(0), 2);
  auto result = brute_force_cpp(inst);
  CHECK(result.value == Rational(1));
  CHECK(*result.chosen_set == set_of(4, {0, 1}));
}

TEST_CASE("cpp guard counts combinations") {
  auto inst = shared_cpp(Rational(1, 4), Rational(0), 2);
  CHECK_THROWS_AS(brute_force_cpp(inst, 5), GuardExceededError);
}

TEST_CASE("objective mismatches are rejected") {
  auto welfare = tiny_welfare();
  CHECK_THROWS_AS(brute_force_cpp(welfare), ValidationError);
  auto cpp = shared_cpp(Rational(1, 4), Rational(0), 2);
  CHECK_THROWS_AS(brute_force_welfare(cpp), ValidationError);
  CHECK_THROWS_AS(brute_force_maxmin(cpp), ValidationError);
  CHECK_THROWS_AS(greedy_welfare(cpp), ValidationError);
  CHECK_THROWS_AS(greedy_cpp(welfare), ValidationError);
}

TEST_CASE("greedy welfare stays within half of optimal") {
  auto inst = tiny_welfare();
  auto exact = brute_force_welfare(inst);
  auto greedy = greedy_welfare(inst);
  CHECK(greedy.solver == "greedy_welfare");
  CHECK(2 * greedy.value >= exact.value);
  CHECK(greedy.value <= exact.value);
  REQUIRE(greedy.allocation.has_value());
  CHECK_NOTHROW(greedy.allocation->validate_for(inst));
  // This instance actually fools the greedy: it ends at 3/2 < 13/8.
  CHECK(greedy.value == Rational(3, 2));
}

TEST_CASE("greedy cpp matches the exhaustive optimum here") {
  auto inst = shared_cpp(Rational(1, 4), Rational(0), 2);
  auto exact = brute_force_cpp(inst);
  auto greedy = greedy_cpp(inst);
  CHECK(greedy.solver == "greedy_cpp");
  REQUIRE(greedy.chosen_set.has_value());
  CHECK(greedy.chosen_set->count() == 2);
  CHECK(greedy.value == exact.value);  // submodular greedy is optimal here
}

TEST_CASE("empty-family players never block the solvers") {
  WellStructuredCollection col;
  col.m = 4;
  col.k = 2;
  col.s = 2;
  col.b = Rational(1);
  col.groups = {{set_of(4, {0, 1})}, {}};
  auto inst = build_welfare_instance(col, Rational(1, 4), Rational(1));
  auto result = brute_force_welfare(inst);
  CHECK(result.value > 0);
  CHECK_NOTHROW(result.allocation->validate_for(inst));
}
