#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multipeak/formulas.hpp"
#include "multipeak/instance.hpp"
#include "multipeak/itemset.hpp"
#include "multipeak/rational.hpp"
#include "multipeak/valuation.hpp"

namespace multipeak {

struct PriceVector {
  std::vector<Rational> prices;

  /// Throws ValidationError on length mismatch or a negative price.
  void validate(std::size_t m) const;
  Rational total(const ItemSet& set) const;
};

struct SolveResult {
  Rational value;
  std::optional<Allocation> allocation;  // welfare / max-min
  std::optional<ItemSet> chosen_set;     // cpp
  std::uint64_t nodes = 0;
  double wall_ms = 0.0;
  std::string solver;
};

inline constexpr std::uint64_t kDefaultEnumerationGuard = 100000000;

/// Exact optimum of Σᵢ vᵢ(Sᵢ) over all item→player assignment vectors
/// (full assignments are WLOG by monotonicity). Ties break to the
/// lexicographically-least assignment vector, item 0 most significant.
/// Throws GuardExceededError when k^m > guard.
SolveResult brute_force_welfare(const AuctionInstance& inst,
                                std::uint64_t guard = kDefaultEnumerationGuard,
                                unsigned workers = 0);

/// Exact optimum of minᵢ vᵢ(Sᵢ); same enumeration, guard and tie rule.
SolveResult brute_force_maxmin(const AuctionInstance& inst,
                               std::uint64_t guard = kDefaultEnumerationGuard,
                               unsigned workers = 0);

/// Exact optimum of Σᵢ vᵢ(S) over |S| = cardinality; ties break to the
/// lexicographically-least subset. Throws GuardExceededError when
/// C(m, cardinality) > guard.
SolveResult brute_force_cpp(const AuctionInstance& inst,
                            std::uint64_t guard = kDefaultEnumerationGuard);

/// Items in index order, each to the player with the best marginal
/// (ties → lowest player). At least half the optimal welfare.
SolveResult greedy_welfare(const AuctionInstance& inst);

/// Cardinality-constrained greedy: best marginal item each of s steps
/// (ties → lowest item). At least (1 − 1/e) of the optimal value.
SolveResult greedy_cpp(const AuctionInstance& inst);

struct DemandResult {
  ItemSet bundle;
  Rational utility;  // value − price, exact
  Rational value;
  Rational price;
  std::uint64_t candidates = 0;
};

/// Exact utility maximizer arg max eval(S) − p(S) in polynomial time.
/// Candidates: per peak A, the cheapest x inside A plus cheapest y outside
/// (x − y > b, so the bundle is close to A); plus the cheapest n items of the
/// support for every n (dominating every far bundle). Every candidate is
/// valued through the public eval, so the enumeration can only miss an
/// optimum, never overstate one; the test suite checks exhaustive equality.
/// Ties → smaller bundle, then lexicographic order.
DemandResult demand_query(const MultiPeakValuation& v, const PriceVector& p);

struct StructuredNoValue {
  Rational value;
  NormalizedProfile profile;  // witnessing profile, kstar / y_star filled
  std::vector<std::pair<std::size_t, Rational>> per_kstar;
  std::optional<TwoPlayerNoValue> closed_form;  // echoed for k = 2
};

/// Maximizes Σᵢ normalized_value(xᵢ, yᵢ) over the structured profiles:
/// k* leading players with yᵢ = 0 (i < k*) and x waterfilled against the
/// prefix caps min((1 − q^i + ε)k − Σ_{j<i} xⱼ, x_sat), player k* allowed
/// extra mass y_{k*} (optimized exactly over the piecewise-quadratic
/// one-variable objective), trailing players sharing the residual equally.
/// Exact rational arithmetic throughout.
StructuredNoValue structured_no_value(std::size_t k, const Rational& alpha,
                                     const Rational& beta, const Rational& eps);

/// Independent numerical check of the structured optimizer: exhaustive grid
/// sweep over sorted x's and y's at `resolution` steps per unit mass (the
/// last y takes the full remainder — pointwise monotone in y, so exhausting
/// the budget is never worse), followed by coordinate-descent refinement.
/// Heuristic oracle: a lower bound on the true optimum up to grid error.
double grid_no_value(std::size_t k, double alpha, double beta, double eps,
                        std::size_t resolution = 200);

}  // namespace multipeak
