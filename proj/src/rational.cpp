#include "stein/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace stein {

Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational fractional_part(const Rational& x) { return x - Rational(floor(x)); }

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

Integer binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

Rational pow(const Rational& base, unsigned long exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

double to_double(const Rational& x) { return x.get_d(); }

std::string to_fraction_string(const Rational& x) { return x.get_str(); }

std::string to_decimal_string(const Rational& x, int digits) {
  Integer num = x.get_num();
  const Integer& den = x.get_den();
  std::string out;
  if (num < 0) {
    out.push_back('-');
    num = -num;
  }
  Integer whole, rem;
  mpz_fdiv_qr(whole.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(),
              den.get_mpz_t());

  // A terminating expansion exists iff den has only factors 2 and 5.
  Integer reduced = den;
  unsigned long twos = mpz_remove(reduced.get_mpz_t(), reduced.get_mpz_t(),
                                  Integer(2).get_mpz_t());
  unsigned long fives = mpz_remove(reduced.get_mpz_t(), reduced.get_mpz_t(),
                                   Integer(5).get_mpz_t());
  const bool terminating = reduced == 1;
  const unsigned long needed = std::max(twos, fives);

  if (terminating && needed <= 4096) {
    out += whole.get_str();
    if (rem == 0) return out;
    out.push_back('.');
    for (unsigned long i = 0; i < needed && rem != 0; ++i) {
      rem *= 10;
      Integer digit;
      mpz_fdiv_qr(digit.get_mpz_t(), rem.get_mpz_t(), rem.get_mpz_t(),
                  den.get_mpz_t());
      out += digit.get_str();
    }
    return out;
  }

  // Round half up at `digits` places.
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Integer scaled = (rem * scale * 2 + den) / (den * 2);
  if (scaled >= scale) {
    whole += 1;
    scaled -= scale;
  }
  std::string frac = scaled.get_str();
  out += whole.get_str();
  out.push_back('.');
  out += std::string(static_cast<size_t>(digits) - frac.size(), '0') + frac;
  out += "...";
  return out;
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  const auto slash = text.find('/');
  std::string_view num_text = text.substr(0, slash);
  std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1")
                                      : text.substr(slash + 1);
  if (!is_integer_literal(num_text) || !is_integer_literal(den_text) ||
      den_text[0] == '-' || den_text[0] == '+') {
    throw std::invalid_argument("not a rational of the form a/b: '" +
                                std::string(text) + "'");
  }
  if (num_text[0] == '+') num_text.remove_prefix(1);
  Integer num{std::string(num_text)};
  Integer den{std::string(den_text)};
  if (den == 0) {
    throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace stein
