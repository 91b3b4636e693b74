#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "multipeak/itemset.hpp"
#include "multipeak/rational.hpp"
#include "multipeak/valuation.hpp"

namespace multipeak {

/// Any exact set function; lets the sweeps run against deliberately broken
/// evaluators as well as real valuations.
using SetFunction = std::function<Rational(const ItemSet&)>;

/// Ground sets up to this size are swept exhaustively; larger ones sampled.
constexpr std::size_t kExhaustiveLimit = 14;

struct MonotoneReport {
  bool passed = true;
  bool exhaustive = false;
  std::uint64_t cases_checked = 0;
  std::optional<ItemSet> violating_set;
  std::optional<std::size_t> violating_item;
  std::string describe() const;
};

MonotoneReport check_monotone(const SetFunction& f, std::size_t m,
                              std::uint64_t samples = 20000,
                              std::uint64_t seed = 1);
MonotoneReport check_monotone(const MultiPeakValuation& v,
                              std::uint64_t samples = 20000,
                              std::uint64_t seed = 1);

struct SubmodularReport {
  bool passed = true;
  bool exhaustive = false;
  std::uint64_t cases_checked = 0;
  std::optional<ItemSet> violating_set;
  std::optional<std::size_t> violating_first;
  std::optional<std::size_t> violating_second;
  std::string describe() const;
};

/// Marginal form: f(S+i+j) + f(S) <= f(S+i) + f(S+j) for i, j outside S.
SubmodularReport check_submodular(const SetFunction& f, std::size_t m,
                                  std::uint64_t samples = 20000,
                                  std::uint64_t seed = 2);
SubmodularReport check_submodular(const MultiPeakValuation& v,
                                  std::uint64_t samples = 20000,
                                  std::uint64_t seed = 2);

struct UniquenessReport {
  bool passed = true;
  std::uint64_t trials = 0;
  std::optional<ItemSet> violating_set;
  std::optional<std::size_t> first_peak;
  std::optional<std::size_t> second_peak;
  std::string describe() const;
};

/// Searches for a set close to two peaks at once: random sets plus biased
/// draws concentrated on unions of peak pairs, where any violation lives.
UniquenessReport check_close_peak_unique(const MultiPeakValuation& v,
                                         std::uint64_t trials = 20000,
                                         std::uint64_t seed = 3);

struct BoundaryOptions {
  int trials = 64;
  double tol_value = 1e-9;
  double tol_gradient = 1e-4;
  double step = 1e-5;  // central-difference step
  std::uint64_t seed = 4;
  /// Diagnostic knob: shifts b inside the region's branch only, to confirm
  /// the detector notices a mismatched gluing. Production callers leave 0.
  double b_skew = 0.0;
};

struct BoundaryReport {
  bool passed = true;
  int points_checked = 0;
  double max_value_deviation = 0.0;
  double max_gradient_deviation = 0.0;
  std::string note;
  std::string describe() const;
};

/// Samples points on the hyperplane where the peak region opens
/// (Σ_inside - Σ_outside = b) and checks that the peak branch and the base
/// branch agree there in value and in finite-difference gradient.
BoundaryReport boundary_agreement_check(const MultiPeakValuation& v,
                                        std::size_t peak_index,
                                        const BoundaryOptions& opt = {});

}  // namespace multipeak
