#include "multipeak/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace multipeak {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  const auto bad = [&]() -> std::invalid_argument {
    return std::invalid_argument("malformed rational: '" + text + "'");
  };

  if (auto slash = text.find('/'); slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) throw bad();
    Rational q{mpz_class(num), mpz_class(den)};
    if (q.get_den() == 0) throw bad();
    q.canonicalize();
    return q;
  }

  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string head = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (head.empty() || head == "-" || head == "+") head += "0";
    if (!is_integer_token(head) || frac.empty() || !is_integer_token(frac) ||
        frac[0] == '-' || frac[0] == '+') {
      throw bad();
    }
    const bool negative = head[0] == '-';
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class whole(head);
    mpz_class num = whole * scale + (negative ? -mpz_class(frac) : mpz_class(frac));
    Rational q(num, scale);
    q.canonicalize();
    return q;
  }

  if (!is_integer_token(text)) throw bad();
  return Rational(mpz_class(text));
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational rational_pow(const Rational& base, unsigned long exp) {
  Rational result(1);
  Rational acc = base;
  while (exp > 0) {
    if (exp & 1u) result *= acc;
    exp >>= 1u;
    if (exp > 0) acc *= acc;
  }
  return result;
}

long strict_ceiling(const Rational& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  fl += 1;
  if (!fl.fits_slong_p()) throw std::overflow_error("strict_ceiling out of range");
  return fl.get_si();
}

long strict_floor(const Rational& q) {
  mpz_class cl;
  mpz_cdiv_q(cl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  cl -= 1;
  if (!cl.fits_slong_p()) throw std::overflow_error("strict_floor out of range");
  return cl.get_si();
}

}  // namespace multipeak
