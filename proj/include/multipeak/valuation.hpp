#pragma once

#include <optional>
#include <string>
#include <vector>

#include "multipeak/itemset.hpp"
#include "multipeak/rational.hpp"

namespace multipeak {

/// A collection of peak sets sharing one closeness threshold b (in items).
/// The families used by the instance builders keep pairwise intersections
/// at most b, which makes closeness to a peak unique; validate() checks it.
struct PeakFamily {
  std::vector<ItemSet> peaks;
  Rational b;

  struct IntersectionWitness {
    std::size_t first = 0;
    std::size_t second = 0;
    std::size_t intersection = 0;
  };

  /// Largest |A ∩ A'| over distinct peak pairs, with a witnessing pair.
  std::optional<IntersectionWitness> max_pairwise_intersection() const;

  /// True when every distinct pair intersects in at most b items.
  bool is_pairwise_bounded() const;
};

/// Set function over {0,...,m-1}: near a peak A the value rewards items
/// inside A twice and discounts outsiders, far from every peak it depends on
/// cardinality alone. With a pairwise-bounded family the two branches agree
/// whenever a set sits exactly at the closeness threshold, which is what
/// makes the function well defined, monotone and submodular.
class MultiPeakValuation {
 public:
  /// Throws ValidationError for structurally broken input (peak indices
  /// outside the ground set, peak not inside the support, a <= 0, b < 0).
  /// Semantic problems (family not pairwise bounded, duplicate peaks) are
  /// reported by validate() instead so that verification code can probe
  /// deliberately broken families.
  MultiPeakValuation(std::size_t m, PeakFamily family, Rational a,
                     std::optional<ItemSet> support = std::nullopt);

  std::size_t ground_size() const { return m_; }
  const PeakFamily& family() const { return family_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return family_.b; }
  const std::optional<ItemSet>& support() const { return support_; }

  struct Validation {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
  };
  Validation validate() const;

  /// True when closeness(S ∩ support, A) exceeds b. A is given by its index
  /// into family().peaks.
  bool close_to(const ItemSet& s, std::size_t peak_index) const;

  /// Index of the unique peak the set is close to, if any. Throws
  /// FamilyIntegrityError when two peaks qualify (the family was not
  /// pairwise bounded).
  std::optional<std::size_t> close_peak(const ItemSet& s) const;

  /// Exact value. When the support is present the set is first restricted
  /// to it. Close sets get the peak branch of the first close peak in
  /// family order; on well-formed families that peak is unique.
  Rational eval(const ItemSet& s) const;

  /// eval(S ∪ {item}) - eval(S). Rejects item ∈ S.
  Rational marginal(const ItemSet& s, std::size_t item) const;

  /// Peak branch at |S' ∩ A| = in_count, |S' \ A| = out_count:
  ///   1 - (1 - a(2·in - b))+ · (1 - a(2·out + b))+
  Rational peak_branch(std::size_t in_count, std::size_t out_count) const;

  /// Far branch at |S'| = n:  1 - (1 - a·n)+².
  Rational far_branch(std::size_t n) const;

  bool operator==(const MultiPeakValuation& other) const;

 private:
  Rational peak_branch_direct(std::size_t in_count, std::size_t out_count) const;
  Rational far_branch_direct(std::size_t n) const;

  std::size_t m_;
  PeakFamily family_;
  Rational a_;
  std::optional<ItemSet> support_;

  // Smallest integer closeness that counts as close: strict_ceiling(b).
  long close_threshold_;

  // Branch values memoized up front for small ground sets so that the
  // enumeration-heavy callers never touch rational arithmetic for repeated
  // (in, out) pairs. Immutable after construction; safe to share across
  // threads.
  std::vector<Rational> far_table_;            // index n
  std::vector<std::vector<Rational>> peak_table_;  // [in][out]
};

}  // namespace multipeak
