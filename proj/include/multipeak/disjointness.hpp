#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multipeak/itemset.hpp"
#include "multipeak/rational.hpp"
#include "multipeak/setsystem.hpp"

namespace multipeak {

enum class DisjointnessCase { Yes, No, Unknown };

std::string to_string(DisjointnessCase c);
DisjointnessCase disjointness_case_from_string(const std::string& s);

/// k players, each holding a t-bit string. YES promises a column where every
/// player has a 1; NO promises every column has at most one 1.
struct DisjointnessInstance {
  std::size_t k = 0;
  std::size_t t = 0;
  DisjointnessCase tag = DisjointnessCase::Unknown;
  std::uint64_t seed = 0;
  /// strings[i][j] ∈ {0,1}: player i's bit for column j.
  std::vector<std::vector<std::uint8_t>> strings;

  bool column_all_ones(std::size_t j) const;
  std::size_t column_sum(std::size_t j) const;
  /// Checks the promise matching the tag; Unknown always passes.
  bool promise_holds() const;
};

/// YES: iid bits at the given density, then one uniformly chosen column is
/// forced to all-ones. NO: each column independently gets a single 1 at a
/// uniform player with probability `density`, otherwise stays empty.
DisjointnessInstance make_disjointness(std::size_t k, std::size_t t,
                                       DisjointnessCase tag,
                                       std::uint64_t seed,
                                       const Rational& density = Rational(1, 2));

enum class CollectionMode {
  /// Player i draws from the blocks indexed i: C_i^j ∈ group i iff bit j set.
  PerPlayer,
  /// Every player draws from the first block: C_0^j ∈ group i iff bit j set.
  /// Used by the single-bundle pricing construction, where all players must
  /// value the same candidate sets.
  SharedFirst,
};

std::string to_string(CollectionMode mode);

/// k groups of s-sets over m = k·s items with within-group intersections
/// meant to stay at or below b.
struct WellStructuredCollection {
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t s = 0;
  Rational b;
  std::vector<std::vector<ItemSet>> groups;

  struct ValidationReport {
    bool universe_ok = true;
    bool set_sizes_ok = true;
    bool group_sizes_equal = true;
    bool intersections_ok = true;
    std::size_t max_intersection = 0;
    std::optional<std::string> witness;
    bool passed() const {
      return universe_ok && set_sizes_ok && group_sizes_equal && intersections_ok;
    }
    std::string describe() const;
  };

  /// Checks universe size, uniform set size s, equal group sizes and
  /// within-group pairwise intersections at most b.
  ValidationReport validate() const;
};

/// Reads the bit strings against a partition family. The closeness threshold
/// is b = (1 + epsilon)·s/k with the family's stored epsilon unless an
/// override (for example an empirically measured slack) is supplied.
WellStructuredCollection collection_from_disjointness(
    const PartitionFamily& fam, const DisjointnessInstance& inst,
    CollectionMode mode,
    const std::optional<Rational>& epsilon_override = std::nullopt);

}  // namespace multipeak
