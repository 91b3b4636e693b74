#include "multipeak/valuation.hpp"

#include <algorithm>

#include "multipeak/errors.hpp"

namespace multipeak {

namespace {
// Ground sets above this size skip the branch-value tables; nothing
// enumeration-heavy runs at that scale.
constexpr std::size_t kTableLimit = 64;
}  // namespace

std::optional<PeakFamily::IntersectionWitness>
PeakFamily::max_pairwise_intersection() const {
  std::optional<IntersectionWitness> best;
  for (std::size_t i = 0; i + 1 < peaks.size(); ++i) {
    for (std::size_t j = i + 1; j < peaks.size(); ++j) {
      const std::size_t inter = peaks[i].intersect_count(peaks[j]);
      if (!best || inter > best->intersection) {
        best = IntersectionWitness{i, j, inter};
      }
    }
  }
  return best;
}

bool PeakFamily::is_pairwise_bounded() const {
  const auto witness = max_pairwise_intersection();
  if (!witness) return true;
  return Rational(static_cast<long>(witness->intersection)) <= b;
}

MultiPeakValuation::MultiPeakValuation(std::size_t m, PeakFamily family,
                                       Rational a,
                                       std::optional<ItemSet> support)
    : m_(m), family_(std::move(family)), a_(std::move(a)),
      support_(std::move(support)), close_threshold_(0) {
  if (m_ == 0) throw ValidationError("ground set must be nonempty");
  if (a_ <= 0) throw ValidationError("slope a must be positive");
  if (family_.b < 0) throw ValidationError("closeness threshold b must be nonnegative");
  if (support_ && support_->universe() != m_) {
    throw ValidationError("support universe does not match ground set");
  }
  for (std::size_t p = 0; p < family_.peaks.size(); ++p) {
    const ItemSet& peak = family_.peaks[p];
    if (peak.universe() != m_) {
      throw ValidationError("peak " + std::to_string(p) +
                            " lives on a different ground set");
    }
    if (peak.empty()) {
      throw ValidationError("peak " + std::to_string(p) + " is empty");
    }
    if (support_ && !peak.is_subset_of(*support_)) {
      throw ValidationError("peak " + std::to_string(p) +
                            " is not contained in the support");
    }
  }

  close_threshold_ = strict_ceiling(family_.b);

  if (m_ <= kTableLimit) {
    far_table_.reserve(m_ + 1);
    for (std::size_t n = 0; n <= m_; ++n) {
      far_table_.push_back(far_branch_direct(n));
    }
    std::size_t max_peak = 0;
    for (const ItemSet& peak : family_.peaks) {
      max_peak = std::max(max_peak, peak.count());
    }
    if (!family_.peaks.empty()) {
      peak_table_.resize(max_peak + 1);
      for (std::size_t in = 0; in <= max_peak; ++in) {
        peak_table_[in].reserve(m_ + 1);
        for (std::size_t out = 0; out <= m_; ++out) {
          peak_table_[in].push_back(peak_branch_direct(in, out));
        }
      }
    }
  }
}

MultiPeakValuation::Validation MultiPeakValuation::validate() const {
  Validation v;
  for (std::size_t i = 0; i + 1 < family_.peaks.size(); ++i) {
    for (std::size_t j = i + 1; j < family_.peaks.size(); ++j) {
      if (family_.peaks[i] == family_.peaks[j]) {
        v.errors.push_back("duplicate peaks " + std::to_string(i) + " and " +
                           std::to_string(j));
      }
    }
  }
  if (const auto witness = family_.max_pairwise_intersection()) {
    if (Rational(static_cast<long>(witness->intersection)) > family_.b) {
      v.errors.push_back(
          "peaks " + std::to_string(witness->first) + " and " +
          std::to_string(witness->second) + " intersect in " +
          std::to_string(witness->intersection) + " items, above b = " +
          format_rational(family_.b));
    }
  }
  if (a_ >= 1) {
    v.warnings.push_back("a = " + format_rational(a_) +
                         " saturates single items; values stay well defined "
                         "but every singleton already has value 1");
  }
  return v;
}

Rational MultiPeakValuation::peak_branch_direct(std::size_t in_count,
                                                std::size_t out_count) const {
  const Rational in_term =
      clamp_nonneg(1 - a_ * (2 * Rational(static_cast<long>(in_count)) - family_.b));
  const Rational out_term =
      clamp_nonneg(1 - a_ * (2 * Rational(static_cast<long>(out_count)) + family_.b));
  return 1 - in_term * out_term;
}

Rational MultiPeakValuation::far_branch_direct(std::size_t n) const {
  const Rational lin = clamp_nonneg(1 - a_ * Rational(static_cast<long>(n)));
  return 1 - lin * lin;
}

Rational MultiPeakValuation::peak_branch(std::size_t in_count,
                                         std::size_t out_count) const {
  if (in_count < peak_table_.size() && out_count < peak_table_[in_count].size()) {
    return peak_table_[in_count][out_count];
  }
  return peak_branch_direct(in_count, out_count);
}

Rational MultiPeakValuation::far_branch(std::size_t n) const {
  if (n < far_table_.size()) return far_table_[n];
  return far_branch_direct(n);
}

bool MultiPeakValuation::close_to(const ItemSet& s, std::size_t peak_index) const {
  const ItemSet& peak = family_.peaks.at(peak_index);
  const std::size_t restricted =
      support_ ? s.intersect_count(*support_) : s.count();
  const long in = static_cast<long>(s.intersect_count(peak));
  const long close = 2 * in - static_cast<long>(restricted);
  return close >= close_threshold_;
}

std::optional<std::size_t> MultiPeakValuation::close_peak(const ItemSet& s) const {
  std::optional<std::size_t> found;
  const std::size_t restricted =
      support_ ? s.intersect_count(*support_) : s.count();
  for (std::size_t p = 0; p < family_.peaks.size(); ++p) {
    const long in = static_cast<long>(s.intersect_count(family_.peaks[p]));
    if (2 * in - static_cast<long>(restricted) >= close_threshold_) {
      if (found) {
        throw FamilyIntegrityError(
            "set is close to peaks " + std::to_string(*found) + " and " +
            std::to_string(p) + "; the family is not pairwise bounded by b");
      }
      found = p;
    }
  }
  return found;
}

Rational MultiPeakValuation::eval(const ItemSet& s) const {
  if (s.universe() != m_) {
    throw ValidationError("set evaluated over the wrong ground set");
  }
  const std::size_t n = support_ ? s.intersect_count(*support_) : s.count();
  for (const ItemSet& peak : family_.peaks) {
    const std::size_t in = s.intersect_count(peak);
    if (2 * static_cast<long>(in) - static_cast<long>(n) >= close_threshold_) {
      return peak_branch(in, n - in);
    }
  }
  return far_branch(n);
}

Rational MultiPeakValuation::marginal(const ItemSet& s, std::size_t item) const {
  if (s.contains(item)) {
    throw ValidationError("marginal item already belongs to the set");
  }
  ItemSet grown = s;
  grown.add(item);
  return eval(grown) - eval(s);
}

bool MultiPeakValuation::operator==(const MultiPeakValuation& other) const {
  return m_ == other.m_ && a_ == other.a_ && family_.b == other.family_.b &&
         family_.peaks == other.family_.peaks && support_ == other.support_;
}

}  // namespace multipeak
