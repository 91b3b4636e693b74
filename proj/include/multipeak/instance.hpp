#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "multipeak/disjointness.hpp"
#include "multipeak/itemset.hpp"
#include "multipeak/rational.hpp"
#include "multipeak/valuation.hpp"

namespace multipeak {

enum class Objective { Welfare, MaxMin, Cpp };
std::string to_string(Objective objective);
Objective objective_from_string(const std::string& name);

struct Provenance {
  std::string source;  // free-form description of the generating collection
  std::size_t k = 0;
  std::size_t s = 0;
  Rational a;
  Rational b;
  Rational alpha;    // a·s
  Rational beta;     // b/s
  Rational epsilon;  // effective ε of the generating set system
};

struct AuctionInstance {
  std::size_t m = 0;
  std::vector<MultiPeakValuation> valuations;
  Objective objective = Objective::Welfare;
  std::size_t cpp_cardinality = 0;  // CPP only
  Provenance provenance;

  std::size_t players() const { return valuations.size(); }
};

/// One bundle per player; must be pairwise disjoint subsets of the ground set.
struct Allocation {
  std::vector<ItemSet> bundles;

  /// Throws ValidationError on player-count/universe mismatch or overlap.
  void validate_for(const AuctionInstance& inst) const;
};

struct InstanceOptions {
  // Give each valuation support equal to the union of that player's peaks
  // (items outside contribute nothing). Used by cover-style constructions.
  bool restrict_support = false;
  Rational epsilon;    // effective ε recorded in provenance
  std::string source;  // free-form provenance tag
};

/// Per-player multi-peak valuation over the collection's groups.
/// Rejects (with a witness pair) any group whose pairwise intersections
/// exceed b, since that breaks the at-most-one-close-peak guarantee.
AuctionInstance build_welfare_instance(const WellStructuredCollection& col,
                                       const Rational& a, const Rational& b,
                                       InstanceOptions opts = {});

/// Same valuations as welfare, max-min objective.
AuctionInstance build_maxmin_instance(const WellStructuredCollection& col,
                                      const Rational& a, const Rational& b,
                                      InstanceOptions opts = {});

/// Public-project objective: one set of exactly `cardinality` items shared by
/// all players. The collection is expected to come from SharedFirst mode.
AuctionInstance build_cpp_instance(const WellStructuredCollection& col,
                                   const Rational& a, const Rational& b,
                                   std::size_t cardinality,
                                   InstanceOptions opts = {});

// Parameter defaults used by the instance constructions.
inline Rational default_a(std::size_t s) { return Rational(1, 2 * static_cast<long>(s)); }
inline Rational communication_b(std::size_t k, std::size_t s, const Rational& eps) {
  return (1 + eps) * Rational(static_cast<long>(s)) / Rational(static_cast<long>(k));
}
inline Rational cover_b(std::size_t s, const Rational& eps) {
  return eps * Rational(static_cast<long>(s));
}

/// Per-player peak-relative coordinates: x = |S∩A|/s of the closest peak A,
/// y = |S\A|/s, rows sorted by descending x.
struct NormalizedProfile {
  struct Entry {
    Rational x;
    Rational y;
    std::size_t player = 0;
    std::optional<std::size_t> peak;  // peak index; empty if the family is empty
  };
  struct ConstraintReport {
    bool sorted_ok = true;
    bool budget_ok = true;
    bool prefix_ok = true;
    std::string detail;
    bool passed() const { return sorted_ok && budget_ok && prefix_ok; }
  };

  std::vector<Entry> entries;
  Rational alpha;
  Rational beta;
  Rational epsilon;
  std::optional<std::size_t> kstar;  // filled by the structured optimizer
  std::optional<Rational> y_star;
  std::optional<ConstraintReport> checked;

  /// x₁ ≥ ⋯ ≥ x_k; Σ(xᵢ+yᵢ) ≤ k; Σ_{i≤ℓ} xᵢ ≤ (1 − (1−1/k)^ℓ + ε)k for all ℓ.
  ConstraintReport check_constraints() const;
};

/// Closest peak per player (max |S∩A| − |S\A|, ties → lowest index); also
/// runs check_constraints and stores the report on the profile.
NormalizedProfile normalized_profile_from_allocation(const AuctionInstance& inst,
                                                     const Allocation& alloc);

}  // namespace multipeak
