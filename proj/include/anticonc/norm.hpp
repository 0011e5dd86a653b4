#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "anticonc/errors.hpp"
#include "anticonc/rational.hpp"

namespace anticonc {

template <class F>
using point = std::vector<F>;

enum class norm_kind { l2, l1, linf, lp };

// A norm on R^d. Lp is supported for integer p >= 1 so that every comparison
// ||x - y|| < 1 reduces to the exact comparison sum |x_i - y_i|^p < 1.
struct norm_spec {
  norm_kind kind = norm_kind::l2;
  std::size_t dimension = 2;
  unsigned p = 2;

  norm_spec() = default;
  norm_spec(norm_kind k, std::size_t dim, unsigned power = 2) : kind(k), dimension(dim), p(power) {
    if (dimension < 1) throw input_error("norm dimension must be >= 1");
    if (kind == norm_kind::lp) {
      if (p < 1) throw domain_error("lp exponent must be >= 1");
      if (p == 1) kind = norm_kind::l1;
      else if (p == 2) kind = norm_kind::l2;
    }
    if (kind == norm_kind::l2) p = 2;
    if (kind == norm_kind::l1) p = 1;
  }

  static norm_spec l2(std::size_t d) { return {norm_kind::l2, d}; }
  static norm_spec l1(std::size_t d) { return {norm_kind::l1, d}; }
  static norm_spec linf(std::size_t d) { return {norm_kind::linf, d}; }
  static norm_spec lp(std::size_t d, unsigned power) { return {norm_kind::lp, d, power}; }

  bool is_hilbert() const { return kind == norm_kind::l2; }

  // Distances are handled as ||v||^q with this q, which keeps them rational.
  unsigned exponent() const {
    switch (kind) {
      case norm_kind::l2: return 2;
      case norm_kind::lp: return p;
      default: return 1;
    }
  }

  // c_S: sqrt(3)/4 for Euclidean norms, 1/8 otherwise.
  double near_line_radius() const { return is_hilbert() ? std::sqrt(3.0) / 4.0 : 0.125; }
  // c_S^q, rational in every case (3/16 for L2).
  Rational near_line_radius_power() const {
    return is_hilbert() ? Rational(3, 16) : pow_of(Rational(1, 8), exponent());
  }

  std::string name() const {
    switch (kind) {
      case norm_kind::l2: return "l2";
      case norm_kind::l1: return "l1";
      case norm_kind::linf: return "linf";
      case norm_kind::lp: return "l" + std::to_string(p);
    }
    return "?";
  }

  friend bool operator==(const norm_spec&, const norm_spec&) = default;
};

template <class F>
void require_dimension(const norm_spec& norm, const point<F>& x) {
  if (x.size() != norm.dimension)
    throw input_error("point of dimension " + std::to_string(x.size()) + " under a norm of dimension " +
                      std::to_string(norm.dimension));
}

// ||v||^q for q = norm.exponent().
template <class F>
F norm_power(const norm_spec& norm, const point<F>& v) {
  require_dimension(norm, v);
  F acc(0);
  for (const auto& c : v) {
    F a = abs_of(c);
    switch (norm.kind) {
      case norm_kind::l2: acc += a * a; break;
      case norm_kind::l1: acc += a; break;
      case norm_kind::linf: if (acc < a) acc = a; break;
      case norm_kind::lp: {
        F term(1);
        for (unsigned i = 0; i < norm.p; ++i) term *= a;
        acc += term;
        break;
      }
    }
  }
  return acc;
}

template <class F>
point<F> operator-(const point<F>& x, const point<F>& y) {
  if (x.size() != y.size()) throw input_error("dimension mismatch");
  point<F> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

template <class F>
point<F> operator+(const point<F>& x, const point<F>& y) {
  if (x.size() != y.size()) throw input_error("dimension mismatch");
  point<F> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

template <class F>
F dot(const point<F>& x, const point<F>& y) {
  if (x.size() != y.size()) throw input_error("dimension mismatch");
  F acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

// ||x - y||, carried exactly as its q-th power. Comparisons with 1 are exact.
template <class F>
struct distance_value {
  F power;
  unsigned exponent;
  double approx;

  bool less_than_one() const { return power < F(1); }
};

template <class F>
distance_value<F> distance(const norm_spec& norm, const point<F>& x, const point<F>& y) {
  require_dimension(norm, x);
  require_dimension(norm, y);
  F pw = norm_power(norm, x - y);
  unsigned q = norm.exponent();
  double approx = std::pow(to_double(pw), 1.0 / q);
  return {pw, q, approx};
}

// The strict-distance predicate ||x - y|| < 1 for a norm.
template <class F>
struct norm_metric {
  norm_spec norm;
  bool close(const point<F>& x, const point<F>& y) const { return norm_power(norm, x - y) < F(1); }
};

// Euclidean metric on coordinates given in units of sqrt(scale_sq): ||x - y|| < 1
// iff scale_sq * |x - y|^2 < 1. Lets configurations with irrational radii stay exact.
template <class F>
struct scaled_l2_metric {
  F scale_sq;
  bool close(const point<F>& x, const point<F>& y) const {
    point<F> d = x - y;
    return scale_sq * dot(d, d) < F(1);
  }
};

}  // namespace anticonc
