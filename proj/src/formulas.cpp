#include "multipeak/formulas.hpp"

#include <cmath>
#include <sstream>

#include "multipeak/errors.hpp"

namespace multipeak {

Rational yes_value_formula(std::size_t k, std::size_t s, const Rational& a,
                           const Rational& b) {
  if (k == 0 || s == 0) throw ValidationError("yes_value_formula needs k, s >= 1");
  Rational two_s_minus_b = Rational(2 * static_cast<long>(s)) - b;
  Rational inner = clamp_nonneg(1 - a * two_s_minus_b) * clamp_nonneg(1 - a * b);
  return Rational(static_cast<long>(k)) * (1 - inner);
}

Rational cpp_far_value(std::size_t s, const Rational& a) {
  Rational slack = clamp_nonneg(1 - a * Rational(static_cast<long>(s)));
  return 1 - slack * slack;
}

std::string NoBoundResult::describe() const {
  std::ostringstream out;
  out << "no-bound " << format_rational(value) << " (~" << to_double(value)
      << ") at k*=" << kstar << ", y*=" << to_double(y_star);
  if (expanded_at_argmax) {
    out << ", expanded form " << to_double(*expanded_at_argmax);
  }
  return out.str();
}

NoBoundResult no_bound_formula(std::size_t k, const Rational& alpha,
                               const Rational& eps) {
  if (k < 2) throw ValidationError("no_bound_formula needs k >= 2");
  if (alpha <= 0) throw ValidationError("no_bound_formula needs alpha > 0");
  if (eps < 0) throw ValidationError("no_bound_formula needs eps >= 0");
  const Rational kq(static_cast<long>(k));
  const Rational q = 1 - Rational(1, static_cast<long>(k));

  NoBoundResult result;
  result.per_kstar.reserve(k);
  Rational q_pow = 1;  // q^k*
  for (std::size_t kstar = 1; kstar <= k; ++kstar) {
    q_pow *= q;
    NoBoundEntry entry;
    entry.kstar = kstar;
    Rational prefix = 2 * alpha * kq * (1 - q_pow + eps) + 1;
    if (kstar < k) {
      Rational tail_players(static_cast<long>(k - kstar));
      entry.y_star = kq * (q_pow - eps) / tail_players;
      Rational slack = clamp_nonneg(1 - alpha * entry.y_star);
      entry.capped = prefix + tail_players * (1 - slack * slack);
      Rational diff = q_pow - eps;
      entry.expanded = 2 * alpha * kq + 1 - alpha * alpha * kq * kq * diff * diff / tail_players;
      Rational ay = alpha * entry.y_star;
      entry.expanded_matches = !(ay >= 0 && ay <= 1) || entry.capped == *entry.expanded;
    } else {
      entry.y_star = 0;
      entry.capped = prefix;
    }
    if (result.per_kstar.empty() || entry.capped > result.value) {
      result.value = entry.capped;
      result.kstar = kstar;
      result.y_star = entry.y_star;
      result.expanded_at_argmax = entry.expanded;
    }
    result.per_kstar.push_back(std::move(entry));
  }
  return result;
}

std::string to_string(BetaRegime regime) {
  switch (regime) {
    case BetaRegime::Verified: return "verified";
    case BetaRegime::Unverified: return "unverified";
    case BetaRegime::OutOfRange: return "out_of_range";
  }
  return "?";
}

std::string TwoPlayerNoValue::describe() const {
  std::ostringstream out;
  out << "two-player no-value " << format_rational(value) << " (~" << to_double(value)
      << "), x_sat=" << format_rational(x_sat) << ", beta regime " << to_string(regime)
      << (saturation_feasible ? "" : ", saturation infeasible");
  return out.str();
}

TwoPlayerNoValue no_value_two_players(const Rational& alpha, const Rational& beta,
                                      const Rational& eps) {
  if (alpha <= 0) throw ValidationError("no_value_two_players needs alpha > 0");
  if (beta < 0 || eps < 0) throw ValidationError("no_value_two_players needs beta, eps >= 0");
  TwoPlayerNoValue out;
  out.x_sat = (1 + alpha * beta) / (2 * alpha);
  Rational slack = clamp_nonneg(1 - alpha * (2 - out.x_sat));
  out.value = 2 - slack * slack;
  if (beta >= Rational(1, 2) + 2 * eps) {
    out.regime = BetaRegime::Verified;
  } else if (beta >= Rational(1, 4) + eps) {
    out.regime = BetaRegime::Unverified;
  } else {
    out.regime = BetaRegime::OutOfRange;
  }
  out.saturation_feasible = out.x_sat <= 1 + 2 * eps;
  return out;
}

Rational normalized_value(const Rational& x, const Rational& y,
                          const Rational& alpha, const Rational& beta) {
  if (x - y > beta) {
    return 1 - clamp_nonneg(1 - alpha * (2 * x - beta)) *
                   clamp_nonneg(1 - alpha * (2 * y + beta));
  }
  Rational slack = clamp_nonneg(1 - alpha * (x + y));
  return 1 - slack * slack;
}

double normalized_value(double x, double y, double alpha, double beta) {
  auto pos = [](double v) { return v > 0.0 ? v : 0.0; };
  if (x - y > beta) {
    return 1.0 - pos(1.0 - alpha * (2.0 * x - beta)) * pos(1.0 - alpha * (2.0 * y + beta));
  }
  double slack = pos(1.0 - alpha * (x + y));
  return 1.0 - slack * slack;
}

std::string to_string(GapTarget target) {
  switch (target) {
    case GapTarget::SeventeenEighteenths: return "17/18";
    case GapTarget::OneMinusHalfInvE: return "1-1/(2e)";
    case GapTarget::ThreeQuarters: return "3/4";
    case GapTarget::SevenEighths: return "7/8";
    case GapTarget::OneMinusInvE: return "1-1/e";
  }
  return "?";
}

GapTarget gap_target_from_string(const std::string& name) {
  if (name == "17/18") return GapTarget::SeventeenEighteenths;
  if (name == "1-1/(2e)") return GapTarget::OneMinusHalfInvE;
  if (name == "3/4") return GapTarget::ThreeQuarters;
  if (name == "7/8") return GapTarget::SevenEighths;
  if (name == "1-1/e") return GapTarget::OneMinusInvE;
  throw ValidationError("unknown gap target: " + name);
}

double gap_target_value(GapTarget target) {
  switch (target) {
    case GapTarget::SeventeenEighteenths: return 17.0 / 18.0;
    case GapTarget::OneMinusHalfInvE: return 1.0 - 0.5 * std::exp(-1.0);
    case GapTarget::ThreeQuarters: return 0.75;
    case GapTarget::SevenEighths: return 0.875;
    case GapTarget::OneMinusInvE: return 1.0 - std::exp(-1.0);
  }
  return 0.0;
}

std::optional<Rational> gap_target_rational(GapTarget target) {
  switch (target) {
    case GapTarget::SeventeenEighteenths: return Rational(17, 18);
    case GapTarget::ThreeQuarters: return Rational(3, 4);
    case GapTarget::SevenEighths: return Rational(7, 8);
    default: return std::nullopt;
  }
}

std::string GapReport::describe() const {
  std::ostringstream out;
  out << "gap ratio " << format_rational(ratio) << " (~" << to_double(ratio)
      << ") vs target " << to_string(target) << " = " << target_value
      << ", deviation " << deviation;
  return out.str();
}

GapReport gap_ratio(const Rational& yes, const Rational& no_bound, GapTarget target) {
  if (yes <= 0) throw ValidationError("gap_ratio needs yes_value > 0");
  GapReport report;
  report.yes_value = yes;
  report.no_bound = no_bound;
  report.ratio = no_bound / yes;
  report.target = target;
  report.target_value = gap_target_value(target);
  report.deviation = std::abs(to_double(report.ratio) - report.target_value);
  return report;
}

}  // namespace multipeak
