#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multipeak/disjointness.hpp"
#include "multipeak/itemset.hpp"
#include "multipeak/rational.hpp"

namespace multipeak {

/// Externally supplied cover structure: groups of s-sets over a universe
/// where every element is covered by the same number of sets and any two
/// sets overlap in at most `intersection_bound` items. A YES-style system
/// hides one disjoint set per group covering the whole universe.
struct CoverSystem {
  std::size_t universe_size = 0;
  std::size_t s = 0;  // set size
  std::size_t g = 0;  // sets per group
  std::size_t d = 0;  // element degree
  Rational intersection_bound;
  std::vector<std::vector<ItemSet>> groups;
};

struct CoverValidationReport {
  bool set_sizes_ok = true;
  bool group_sizes_ok = true;
  bool degrees_ok = true;
  bool intersections_ok = true;
  std::size_t max_intersection = 0;
  std::optional<std::string> first_issue;
  /// One disjoint set per group covering the universe, when the exhaustive
  /// search was feasible and found one.
  std::optional<std::vector<std::size_t>> cover_witness;
  bool witness_search_skipped = false;
  bool passed() const {
    return set_sizes_ok && group_sizes_ok && degrees_ok && intersections_ok;
  }
  std::string describe() const;
};

/// Structural validation plus an exhaustive one-set-per-group cover search.
/// The witness search enumerates g^(#groups) selections and is skipped (with
/// a notice in the report) when that exceeds `witness_guard`.
CoverValidationReport validate_cover_system(const CoverSystem& cover,
                                            std::uint64_t witness_guard = 1000000);

/// Reinterprets the cover groups as a collection for the instance builders;
/// b is the cover's intersection bound.
WellStructuredCollection collection_from_cover(const CoverSystem& cover);

}  // namespace multipeak
