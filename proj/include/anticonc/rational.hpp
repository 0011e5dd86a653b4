#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "anticonc/errors.hpp"

namespace anticonc {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p", "p/q", and plain decimals such as "-0.125". The result is exact.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw input_error("empty rational literal");

  auto check_int = [&](const std::string& part) {
    std::size_t i = (part.size() > 0 && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) throw input_error("bad rational literal '" + s + "'");
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw input_error("bad rational literal '" + s + "'");
  };
  auto strip_plus = [](std::string part) {
    if (!part.empty() && part[0] == '+') part.erase(part.begin());
    return part;
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    BigInt n(strip_plus(num)), d(strip_plus(den));
    if (d == 0) throw input_error("zero denominator in '" + s + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    check_int(whole);
    if (!frac.empty()) check_int(frac);
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) throw input_error("bad rational literal '" + s + "'");
    BigInt w(strip_plus(whole));
    BigInt f = frac.empty() ? BigInt(0) : BigInt(frac);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    BigInt w_abs = abs(w);
    Rational r(w_abs * scale + f, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }
  check_int(s);
  return Rational(BigInt(strip_plus(s)));
}

// Always "num/den", including integers ("2/1").
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

// Exact value of a finite double.
inline Rational from_double(double x) {
  if (!std::isfinite(x)) throw domain_error("non-finite double");
  Rational r(x);
  r.canonicalize();
  return r;
}

inline BigInt floor_of(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline BigInt ceil_of(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Rational pow_of(const Rational& base, unsigned exponent) {
  Rational out(1);
  Rational b = base;
  while (exponent) {
    if (exponent & 1u) out *= b;
    b *= b;
    exponent >>= 1;
  }
  return out;
}

inline BigInt lcm_of(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline Rational abs_of(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace anticonc
