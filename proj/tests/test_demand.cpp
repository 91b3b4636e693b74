#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "multipeak/errors.hpp"
#include "multipeak/rng.hpp"
#include "multipeak/solvers.hpp"

using namespace multipeak;
using testutil::set_of;

namespace {

MultiPeakValuation demand_example() {
  // m = 4, one peak {0,1}, a = 1/4, b = 0.
  PeakFamily fam;
  fam.peaks.push_back(set_of(4, {0, 1}));
  fam.b = Rational(0);
  return MultiPeakValuation(4, fam, Rational(1, 4));
}

// Exhaustive reference: try all 2^m bundles through the public eval.
DemandResult exhaustive_demand(const MultiPeakValuation& v, const PriceVector& p) {
  const std::size_t m = v.ground_size();
  DemandResult best;
  best.bundle = ItemSet(m);
  best.utility = Rational(0);  // empty bundle
  bool first = true;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    ItemSet s(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::size_t{1} << i)) s.add(i);
    }
    const Rational value = v.eval(s);
    const Rational utility = value - p.total(s);
    const bool better =
        first || utility > best.utility ||
        (utility == best.utility && s.count() < best.bundle.count()) ||
        (utility == best.utility && s.count() == best.bundle.count() &&
         ItemSet::lex_less(s, best.bundle));
    if (better) {
      best.bundle = s;
      best.utility = utility;
      best.value = value;
      best.price = p.total(s);
      first = false;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("free items: take the peak, not the whole ground set") {
  auto v = demand_example();
  PriceVector zero{{Rational(0), Rational(0), Rational(0), Rational(0)}};
  auto result = demand_query(v, zero);
  CHECK(result.utility == Rational(1));
  CHECK(result.value == Rational(1));
  CHECK(result.price == Rational(0));
  // Both {0,1} and the full set reach value 1; the smaller bundle wins.
  CHECK(result.bundle == set_of(4, {0, 1}));
}

TEST_CASE("prices push the demand off the peak") {
  auto v = demand_example();
  PriceVector p{{Rational(3, 5), Rational(3, 5), Rational(1, 10), Rational(1, 10)}};
  auto result = demand_query(v, p);
  CHECK(result.bundle == set_of(4, {2, 3}));
  CHECK(result.utility == Rational(11, 20));  // 3/4 - 1/5
  CHECK(result.value == Rational(3, 4));
  CHECK(result.price == Rational(1, 5));
}

TEST_CASE("unaffordable items leave the empty bundle") {
  auto v = demand_example();
  PriceVector p{{Rational(2), Rational(2), Rational(2), Rational(2)}};
  auto result = demand_query(v, p);
  CHECK(result.bundle.empty());
  CHECK(result.utility == Rational(0));
}

TEST_CASE("price vector shape is validated") {
  auto v = demand_example();
  PriceVector wrong{{Rational(1)}};
  CHECK_THROWS_AS(demand_query(v, wrong), ValidationError);
  PriceVector negative{{Rational(-1), Rational(0), Rational(0), Rational(0)}};
  CHECK_THROWS_AS(demand_query(v, negative), ValidationError);
}

TEST_CASE("matches the exhaustive reference on random rational prices") {
  auto v = demand_example();
  PeakFamily two;
  two.peaks.push_back(set_of(6, {0, 1, 2}));
  two.peaks.push_back(set_of(6, {3, 4, 5}));
  two.b = Rational(1);
  MultiPeakValuation w(6, two, Rational(1, 6));
  PeakFamily supported;
  supported.peaks.push_back(set_of(6, {0, 1, 2}));
  supported.b = Rational(1, 2);
  MultiPeakValuation u(6, supported, Rational(1, 5), set_of(6, {0, 1, 2, 4, 5}));

  SplitMix64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    for (const auto& val : {v, w, u}) {
      PriceVector p;
      for (std::size_t i = 0; i < val.ground_size(); ++i) {
        // Denominators up to 8, numerators up to 12: plenty of exact ties.
        const long num = static_cast<long>(rng.next_below(13));
        const long den = 1 + static_cast<long>(rng.next_below(8));
        p.prices.push_back(Rational(num) / Rational(den));
      }
      auto fast = demand_query(val, p);
      auto slow = exhaustive_demand(val, p);
      REQUIRE(fast.utility == slow.utility);
      REQUIRE(fast.bundle == slow.bundle);
      REQUIRE(fast.value == slow.value);
      REQUIRE(fast.price == slow.price);
    }
  }
}
