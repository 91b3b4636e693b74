#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "multipeak/rational.hpp"

namespace multipeak {

/// Guaranteed total welfare when every player takes their matching peak:
/// k · (1 − (1 − a(2s − b))₊ · (1 − ab)₊), exact.
Rational yes_value_formula(std::size_t k, std::size_t s, const Rational& a,
                           const Rational& b);

/// Value collected from any size-s set by a player none of whose peaks is
/// close: 1 − (1 − as)₊².
Rational cpp_far_value(std::size_t s, const Rational& a);

struct NoBoundEntry {
  std::size_t kstar = 0;
  Rational capped;              // always valid
  std::optional<Rational> expanded;  // 2αk + 1 − α²k²(q^k* − ε)²/(k−k*); k* < k only
  Rational y_star;              // per-trailing-player budget; 0 at k* = k
  bool expanded_matches = true; // capped == expanded whenever 0 ≤ αy* ≤ 1
};

/// Upper bound on optimal welfare of a NO instance, maximized over the
/// number k* of near-saturated players.
struct NoBoundResult {
  Rational value;   // max over k* of the capped form (authoritative)
  std::size_t kstar = 0;
  Rational y_star;
  std::optional<Rational> expanded_at_argmax;
  std::vector<NoBoundEntry> per_kstar;
  Rational per_player(std::size_t k) const { return value / static_cast<long>(k); }
  std::string describe() const;
};

/// Evaluates, for k* = 1..k, the capped form
///   2αk(1 − q^k* + ε) + 1 + (k − k*)(1 − (1 − αy*)₊²),
/// q = 1 − 1/k, y* = k(q^k* − ε)/(k − k*), with the k* = k limit dropping the
/// trailing term. Exact rationals throughout. Requires k ≥ 2, α > 0, ε ≥ 0.
NoBoundResult no_bound_formula(std::size_t k, const Rational& alpha,
                               const Rational& eps);

enum class BetaRegime {
  Verified,    // β ≥ 1/2 + 2ε: the closed form's supporting argument applies
  Unverified,  // β ∈ [1/4 + ε, 1/2 + 2ε): stated regime, unproven here
  OutOfRange,  // β < 1/4 + ε
};
std::string to_string(BetaRegime regime);

struct TwoPlayerNoValue {
  Rational value;  // 2 − (1 − α(2 − x_sat))₊²
  Rational x_sat;  // (1 + αβ)/(2α): smallest x saturating a close player
  BetaRegime regime = BetaRegime::Verified;
  // x_sat ≤ (1 + 2ε): the saturated point satisfies the prefix constraint,
  // so the structured optimum attains exactly this value.
  bool saturation_feasible = true;
  std::string describe() const;
};

/// Two-player closed-form optimum: one player saturated at x_sat of its own
/// peak, the other taking the remaining 2 − x_sat far mass. Requires α > 0,
/// β ≥ 0, ε ≥ 0.
TwoPlayerNoValue no_value_two_players(const Rational& alpha, const Rational& beta,
                                      const Rational& eps = Rational(0));

/// Per-player value in peak-relative coordinates: x of the own peak, y of
/// everything else. Close branch when x − y > β, far branch otherwise; the
/// two glue continuously at x − y = β.
Rational normalized_value(const Rational& x, const Rational& y,
                          const Rational& alpha, const Rational& beta);
double normalized_value(double x, double y, double alpha, double beta);

enum class GapTarget {
  SeventeenEighteenths,  // 17/18
  OneMinusHalfInvE,      // 1 − 1/(2e)
  ThreeQuarters,         // 3/4
  SevenEighths,          // 7/8
  OneMinusInvE,          // 1 − 1/e
};
std::string to_string(GapTarget target);
GapTarget gap_target_from_string(const std::string& name);
double gap_target_value(GapTarget target);
/// Exact value for the rational targets; empty for the 1/e-family.
std::optional<Rational> gap_target_rational(GapTarget target);

struct GapReport {
  Rational yes_value;
  Rational no_bound;
  Rational ratio;  // no_bound / yes_value
  GapTarget target = GapTarget::SeventeenEighteenths;
  double target_value = 0.0;
  double deviation = 0.0;  // |ratio − target| in double precision
  std::string parameters;  // echo of the generating parameters, free-form
  Rational epsilon;        // effective ε the bound was evaluated at
  std::string describe() const;
};

GapReport gap_ratio(const Rational& yes, const Rational& no_bound, GapTarget target);

}  // namespace multipeak
