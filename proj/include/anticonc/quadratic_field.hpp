#pragma once

#include <cmath>
#include <compare>
#include <string>

#include "anticonc/rational.hpp"

namespace anticonc {

// Exact element a + b*sqrt(D) of the real quadratic field Q(sqrt(D)), D > 1 squarefree.
// Ordering is exact: the sign is decided by comparing a^2 with D*b^2.
template <long D>
class quadratic_number {
  static_assert(D > 1, "radicand must exceed 1");

 public:
  quadratic_number() = default;
  quadratic_number(long a) : a_(a), b_(0) {}  // NOLINT(google-explicit-constructor)
  quadratic_number(Rational a) : a_(std::move(a)), b_(0) {}  // NOLINT(google-explicit-constructor)
  quadratic_number(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static quadratic_number root() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }

  int sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    Rational lhs = a_ * a_, rhs = b_ * b_ * D;
    int c = cmp(lhs, rhs);
    return c == 0 ? 0 : (c > 0 ? sa : sb);
  }

  quadratic_number conjugate() const { return {a_, Rational(-b_)}; }
  Rational field_norm() const { return a_ * a_ - b_ * b_ * D; }

  quadratic_number operator-() const { return {Rational(-a_), Rational(-b_)}; }
  quadratic_number& operator+=(const quadratic_number& o) { a_ += o.a_; b_ += o.b_; return *this; }
  quadratic_number& operator-=(const quadratic_number& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  quadratic_number& operator*=(const quadratic_number& o) {
    Rational a = a_ * o.a_ + b_ * o.b_ * D;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  quadratic_number& operator/=(const quadratic_number& o) {
    Rational n = o.field_norm();
    if (n == 0) throw domain_error("division by zero in quadratic field");
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
  }

  friend quadratic_number operator+(quadratic_number x, const quadratic_number& y) { return x += y; }
  friend quadratic_number operator-(quadratic_number x, const quadratic_number& y) { return x -= y; }
  friend quadratic_number operator*(quadratic_number x, const quadratic_number& y) { return x *= y; }
  friend quadratic_number operator/(quadratic_number x, const quadratic_number& y) { return x /= y; }

  friend bool operator==(const quadratic_number& x, const quadratic_number& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const quadratic_number& x, const quadratic_number& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  double approx() const { return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(D)); }

 private:
  Rational a_{0};
  Rational b_{0};
};

template <long D>
quadratic_number<D> abs_of(const quadratic_number<D>& x) {
  return x.sign() < 0 ? -x : x;
}

template <long D>
double to_double(const quadratic_number<D>& x) {
  return x.approx();
}

template <long D>
std::string to_string(const quadratic_number<D>& x) {
  return to_string(x.rational_part()) + "+" + to_string(x.radical_part()) + "*sqrt(" +
         std::to_string(D) + ")";
}

using q_sqrt2 = quadratic_number<2>;
using q_sqrt3 = quadratic_number<3>;

}  // namespace anticonc
