#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multipeak/itemset.hpp"
#include "multipeak/rational.hpp"

namespace multipeak {

/// t partitions of a ground set of m = k·s items into k blocks of s items
/// each. The ground set is arranged as s disjoint k-tuples (tuple r holds
/// items r·k ... r·k+k-1) and every partition assigns each tuple's items to
/// the k blocks by an independent random bijection, so any two blocks from
/// different partitions intersect in about s/k items.
struct PartitionFamily {
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t t = 0;
  std::uint64_t seed = 0;
  /// Target slack: pairwise intersections are meant to stay below
  /// (1 + epsilon)·s/k. Stored for the verifiers and downstream builders.
  Rational epsilon;
  /// blocks[j][i] is block i of partition j.
  std::vector<std::vector<ItemSet>> blocks;

  std::size_t universe() const { return k * s; }
  Rational pairwise_bound() const {
    return (1 + epsilon) * Rational(static_cast<long>(s)) /
           Rational(static_cast<long>(k));
  }
};

/// Deterministic in all arguments: the shuffle for (tuple r, partition j)
/// draws from a stream keyed by (seed, j, r), so outputs are reproducible
/// bit for bit across platforms.
PartitionFamily generate_partition_family(std::size_t k, std::size_t s,
                                          std::size_t t, Rational epsilon,
                                          std::uint64_t seed);

struct PairwiseReport {
  std::size_t max_intersection = 0;
  // Witness blocks (partition, block) x 2 for the maximum.
  std::size_t arg_j = 0, arg_i = 0, arg_j2 = 0, arg_i2 = 0;
  Rational bound;           // (1 + epsilon)·s/k at the family's epsilon
  bool within_bound = true;
  /// Smallest slack that would make every pair fit: max(0, k·maxI/s - 1).
  Rational effective_epsilon;
  std::uint64_t pairs_checked = 0;
  /// Mean intersection over cross-partition pairs; its expectation is s/k.
  double cross_mean = 0.0;
  double expected_mean = 0.0;
  double sigma_mean = 0.0;  // idealized (independent-pair) std dev of the mean
  bool mean_within_3_sigma = true;
  /// Same-partition blocks must be exactly disjoint.
  bool same_partition_disjoint = true;
  std::string describe() const;
};

/// Sweeps every unordered pair of distinct blocks (identical (j,i) pairs are
/// not compared with themselves). Reports empirical maxima rather than
/// failing hard; callers decide which slack to feed downstream.
PairwiseReport verify_pairwise(const PartitionFamily& fam);

struct UnionBoundEntry {
  std::size_t ell = 0;
  std::size_t max_union = 0;
  Rational bound_items;       // (1 - (1-1/k)^ell + epsilon)·k·s
  Rational effective_epsilon; // max(0, maxU/(ks) - (1 - (1-1/k)^ell))
  bool within_bound = true;
  bool exhaustive = false;
  std::uint64_t tuples_checked = 0;
};

struct UnionBoundReport {
  std::vector<UnionBoundEntry> per_ell;
  /// Largest per-ell effective epsilon over mixed-partition tuples.
  Rational effective_epsilon;
  bool within_bound = true;
  /// ell = k blocks of a single partition always union to the whole ground
  /// set; that extreme needs epsilon >= (1-1/k)^k and is reported separately
  /// instead of polluting the mixed-tuple slack.
  Rational same_partition_epsilon_at_k;
  std::string describe() const;
};

/// For each ell = 1..ell_max, bounds |C_{i_1}^{j_1} ∪ ... ∪ C_{i_ell}^{j_ell}|
/// over tuples with distinct block indices i and not-all-equal partitions j.
/// Exhaustive when the tuple count is at most max_exhaustive, sampled
/// otherwise (deterministically, from the given seed).
UnionBoundReport verify_union_bounds(const PartitionFamily& fam,
                                     std::size_t ell_max,
                                     std::uint64_t samples = 100000,
                                     std::uint64_t seed = 11,
                                     std::uint64_t max_exhaustive = 1000000);

/// Slack the instance builders should assume: the larger of the pairwise and
/// mixed-tuple union slacks.
Rational effective_epsilon(const PairwiseReport& pairwise,
                           const UnionBoundReport& unions);

}  // namespace multipeak
