#include "catkit/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "catkit/errors.hpp"

namespace catkit {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

mpz_class parse_digits(const std::string& s, const std::string& context) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("invalid rational \"" + context + "\"");
  }
  return mpz_class(s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw ParseError("empty rational");

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = (s[0] == '-');
    s.erase(0, 1);
  }

  const auto slash = s.find('/');
  const auto dot = s.find('.');
  Rational q;
  if (slash != std::string::npos && dot != std::string::npos) {
    throw ParseError("invalid rational \"" + text + "\"");
  } else if (slash != std::string::npos) {
    mpz_class num = parse_digits(s.substr(0, slash), text);
    mpz_class den = parse_digits(s.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in \"" + text + "\"");
    q = Rational(num, den);
  } else if (dot != std::string::npos) {
    std::string int_part = s.substr(0, dot);
    std::string frac_part = s.substr(dot + 1);
    if (frac_part.empty()) throw ParseError("invalid rational \"" + text + "\"");
    if (int_part.empty()) int_part = "0";
    mpz_class ip = parse_digits(int_part, text);
    mpz_class fp = parse_digits(frac_part, text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    q = Rational(ip * scale + fp, scale);
  } else {
    q = Rational(parse_digits(s, text));
  }
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string to_fraction_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_human_string(const Rational& q) {
  mpz_class d = q.get_den();
  unsigned long twos = 0;
  unsigned long fives = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return to_fraction_string(q);
  const unsigned long k = std::max(twos, fives);
  if (k == 0) return q.get_num().get_str();

  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, k);
  mpz_class scaled = q.get_num() * scale / q.get_den();
  const bool neg = scaled < 0;
  std::string digits = mpz_class(abs(scaled)).get_str();
  if (digits.size() < k + 1) digits.insert(0, k + 1 - digits.size(), '0');
  digits.insert(digits.size() - k, ".");
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  return neg ? "-" + digits : digits;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw Error("cannot convert non-finite double to rational");
  return Rational(v);
}

Rational ceil_rational(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return Rational(c);
}

double log_to_double(const Rational& q) {
  if (q == 0) return -std::numeric_limits<double>::infinity();
  if (q < 0) throw Error("log of negative rational");
  signed long en = 0;
  signed long ed = 0;
  const double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
  const double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
  constexpr double kLog2 = 0.6931471805599453094172321;
  return std::log(mn) - std::log(md) + (static_cast<double>(en) - ed) * kLog2;
}

}  // namespace catkit
