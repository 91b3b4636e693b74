#pragma once

#include <optional>
#include <span>
#include <vector>

#include "multipeak/errors.hpp"
#include "multipeak/rational.hpp"
#include "multipeak/valuation.hpp"

namespace multipeak {

/// Point of the solid cube [0,1]^m used by the relaxation checks.
struct FractionalPoint {
  std::vector<double> coords;

  static FractionalPoint indicator(const ItemSet& s);
  /// Throws ValidationError if any coordinate leaves [0,1].
  void check_unit_cube() const;
};

namespace detail {

template <typename T>
T scalar_from(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else {
    return to_double(q);
  }
}

template <typename T>
T clamp_pos(const T& v) {
  return v > T(0) ? v : T(0);
}

/// Sum of coordinates over `mask`, or over all coordinates of the
/// valuation's effective ground set (the support when present).
template <typename T>
T coord_sum(const MultiPeakValuation& v, std::span<const T> x,
            const ItemSet* mask) {
  T total(0);
  if (mask != nullptr) {
    mask->for_each([&](std::size_t i) { total += x[i]; });
  } else if (v.support()) {
    v.support()->for_each([&](std::size_t i) { total += x[i]; });
  } else {
    for (const T& c : x) total += c;
  }
  return total;
}

template <typename T>
void check_dimension(const MultiPeakValuation& v, std::span<const T> x) {
  if (x.size() != v.ground_size()) {
    throw ValidationError("point dimension does not match the ground set");
  }
}

}  // namespace detail

/// Multilinear-style extension of the far branch:
///   1 - (1 - a Σ x_i)+², summed over the support when present.
template <typename T>
T continuous_base(const MultiPeakValuation& v, std::span<const T> x) {
  detail::check_dimension(v, x);
  const T a = detail::scalar_from<T>(v.a());
  const T raw = T(1) - a * detail::coord_sum(v, x, nullptr);
  const T lin = detail::clamp_pos(raw);
  return T(1) - lin * lin;
}

/// Extension of the peak branch for peak A (by family index):
///   1 - (1 - a(2 Σ_{i∈A} x_i - b))+ · (1 - a(2 Σ_{i∉A} x_i + b))+
/// where "outside" means the effective ground set minus A.
template <typename T>
T continuous_peak(const MultiPeakValuation& v, std::size_t peak_index,
                  std::span<const T> x) {
  detail::check_dimension(v, x);
  if (peak_index >= v.family().peaks.size()) {
    throw ValidationError("peak index outside the family");
  }
  const ItemSet& peak = v.family().peaks[peak_index];
  const T a = detail::scalar_from<T>(v.a());
  const T b = detail::scalar_from<T>(v.b());
  const T inside = detail::coord_sum(v, x, &peak);
  const T total = detail::coord_sum(v, x, nullptr);
  const T outside = total - inside;
  const T in_raw = T(1) - a * (T(2) * inside - b);
  const T out_raw = T(1) - a * (T(2) * outside + b);
  const T in_term = detail::clamp_pos(in_raw);
  const T out_term = detail::clamp_pos(out_raw);
  return T(1) - in_term * out_term;
}

/// Membership in the open region where the peak branch applies:
///   Σ_{i∈A} x_i - Σ_{i∉A} x_i > b.
template <typename T>
bool in_peak_region(const MultiPeakValuation& v, std::size_t peak_index,
                    std::span<const T> x) {
  detail::check_dimension(v, x);
  if (peak_index >= v.family().peaks.size()) {
    throw ValidationError("peak index outside the family");
  }
  const ItemSet& peak = v.family().peaks[peak_index];
  const T inside = detail::coord_sum(v, x, &peak);
  const T outside = detail::coord_sum(v, x, nullptr) - inside;
  return inside - outside > detail::scalar_from<T>(v.b());
}

/// Piecewise evaluation: the peak branch inside the unique region containing
/// x, the base branch elsewhere. Throws FamilyIntegrityError if two regions
/// claim the point.
template <typename T>
T glued_eval(const MultiPeakValuation& v, std::span<const T> x) {
  detail::check_dimension(v, x);
  std::optional<std::size_t> region;
  for (std::size_t p = 0; p < v.family().peaks.size(); ++p) {
    if (in_peak_region(v, p, x)) {
      if (region) {
        throw FamilyIntegrityError(
            "point lies in the regions of peaks " + std::to_string(*region) +
            " and " + std::to_string(p));
      }
      region = p;
    }
  }
  if (region) return continuous_peak(v, *region, x);
  return continuous_base(v, x);
}

/// Convenience overloads for the double-typed cube points.
double continuous_base(const MultiPeakValuation& v, const FractionalPoint& x);
double continuous_peak(const MultiPeakValuation& v, std::size_t peak_index,
                       const FractionalPoint& x);
bool in_peak_region(const MultiPeakValuation& v, std::size_t peak_index,
                    const FractionalPoint& x);
double glued_eval(const MultiPeakValuation& v, const FractionalPoint& x);

}  // namespace multipeak
