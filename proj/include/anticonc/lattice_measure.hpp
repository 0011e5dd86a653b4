#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "anticonc/caps.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/rational.hpp"

namespace anticonc {

// Probability measure on the half-integer lattice (1/2)Z. Atom i sits at
// (offset_index + i) / 2. Weights are exact, sum to one, and the first and last
// stored weights are nonzero (interior zeros are allowed).
class lattice_measure {
 public:
  lattice_measure() : offset_index_(0), weights_{Rational(1)} {}

  lattice_measure(long offset_index, std::vector<Rational> weights)
      : offset_index_(offset_index), weights_(std::move(weights)) {
    Rational total(0);
    for (const auto& w : weights_) {
      if (w < 0) throw domain_error("negative lattice weight");
      total += w;
    }
    if (total != 1) throw domain_error("lattice weights must sum to 1, got " + to_string(total));
    auto first = std::find_if(weights_.begin(), weights_.end(), [](const Rational& w) { return w != 0; });
    auto last = std::find_if(weights_.rbegin(), weights_.rend(), [](const Rational& w) { return w != 0; });
    long lead = first - weights_.begin();
    long trail = last - weights_.rbegin();
    weights_.erase(weights_.end() - trail, weights_.end());
    weights_.erase(weights_.begin(), weights_.begin() + lead);
    offset_index_ += lead;
  }

  static lattice_measure point_mass(long index = 0) { return {index, {Rational(1)}}; }

  long offset_index() const { return offset_index_; }
  long last_index() const { return offset_index_ + static_cast<long>(weights_.size()) - 1; }
  std::size_t size() const { return weights_.size(); }
  const std::vector<Rational>& weights() const { return weights_; }

  // Location of the atom with lattice index `index`, i.e. index / 2.
  static Rational location(long index) { return make_rational(index, 2); }

  Rational weight_at(long index) const {
    if (index < offset_index_ || index > last_index()) return Rational(0);
    return weights_[static_cast<std::size_t>(index - offset_index_)];
  }

  Rational moment(unsigned power, bool absolute) const {
    Rational out(0);
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      Rational x = location(offset_index_ + static_cast<long>(i));
      if (absolute) x = abs_of(x);
      out += weights_[i] * pow_of(x, power);
    }
    return out;
  }
  Rational second_moment() const { return moment(2, false); }
  Rational third_abs_moment() const { return moment(3, true); }

  friend bool operator==(const lattice_measure&, const lattice_measure&) = default;

 private:
  long offset_index_;
  std::vector<Rational> weights_;
};

// Parameters of the extremal measure nu*_alpha: k = floor(1/alpha) and the mixing
// weight p with p/k + (1-p)/(k+1) = alpha.
struct extremal_spec {
  Rational alpha;
  long k;
  Rational p;
};

inline void require_alpha(const Rational& alpha) {
  if (alpha <= 0 || alpha > 1)
    throw domain_error("alpha must lie in (0,1], got " + to_string(alpha));
}

inline extremal_spec make_extremal_spec(const Rational& alpha) {
  require_alpha(alpha);
  BigInt k_big = floor_of(Rational(1) / alpha);
  if (!k_big.fits_slong_p()) throw domain_error("alpha too small: 1/alpha does not fit a long");
  long k = k_big.get_si();
  Rational p = Rational(k) * (alpha * (k + 1) - 1);
  return {alpha, k, p};
}

// p * uniform({1..k} - (k+1)/2) + (1-p) * uniform({1..k+1} - (k+2)/2).
inline lattice_measure nu_star(const Rational& alpha) {
  extremal_spec spec = make_extremal_spec(alpha);
  const long k = spec.k;
  std::vector<Rational> weights(static_cast<std::size_t>(2 * k + 1), Rational(0));
  // uniform on k points: lattice indices -(k-1), -(k-1)+2, ..., k-1
  Rational narrow = spec.p / k;
  for (long j = 1; j <= k; ++j) weights[static_cast<std::size_t>(2 * j - k - 1 + k)] += narrow;
  Rational wide = (Rational(1) - spec.p) / (k + 1);
  for (long j = 1; j <= k + 1; ++j) weights[static_cast<std::size_t>(2 * j - k - 2 + k)] += wide;
  return {-k, std::move(weights)};
}

// Closed-form variance of nu*_alpha: (1/12) K (1+K) (3 - alpha - 2 alpha K), K = floor(1/alpha).
inline Rational v_star(const Rational& alpha) {
  extremal_spec spec = make_extremal_spec(alpha);
  Rational kk(spec.k);
  return kk * (kk + 1) * (Rational(3) - alpha - 2 * alpha * kk) / 12;
}

inline Rational third_abs_moment(const Rational& alpha) { return nu_star(alpha).third_abs_moment(); }

namespace detail {

// Integer numerators over a shared denominator; used to keep long convolution chains
// free of per-step gcd normalisation.
struct scaled_weights {
  long offset_index = 0;
  std::vector<BigInt> numerators;
  BigInt denominator = 1;
};

inline scaled_weights to_scaled(const lattice_measure& m) {
  BigInt den = 1;
  for (const auto& w : m.weights()) den = lcm_of(den, w.get_den());
  scaled_weights out;
  out.offset_index = m.offset_index();
  out.denominator = den;
  out.numerators.reserve(m.size());
  for (const auto& w : m.weights()) out.numerators.push_back(w.get_num() * (den / w.get_den()));
  return out;
}

inline scaled_weights convolve_scaled(const scaled_weights& a, const scaled_weights& b) {
  scaled_weights out;
  out.offset_index = a.offset_index + b.offset_index;
  out.denominator = a.denominator * b.denominator;
  out.numerators.assign(a.numerators.size() + b.numerators.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.numerators.size(); ++i) {
    if (a.numerators[i] == 0) continue;
    for (std::size_t j = 0; j < b.numerators.size(); ++j)
      if (b.numerators[j] != 0) out.numerators[i + j] += a.numerators[i] * b.numerators[j];
  }
  return out;
}

inline lattice_measure from_scaled(const scaled_weights& s) {
  std::vector<Rational> weights;
  weights.reserve(s.numerators.size());
  for (const auto& n : s.numerators) {
    Rational w(n, s.denominator);
    w.canonicalize();
    weights.push_back(std::move(w));
  }
  return {s.offset_index, std::move(weights)};
}

}  // namespace detail

inline lattice_measure convolve(const lattice_measure& a, const lattice_measure& b) {
  return detail::from_scaled(detail::convolve_scaled(detail::to_scaled(a), detail::to_scaled(b)));
}

// Exact law of Y_1 + ... + Y_n with Y_i ~ nu*_{alpha_i} independent.
inline lattice_measure extremal_sum(std::span<const Rational> alphas,
                                    const resource_caps& caps = default_caps()) {
  if (alphas.empty()) throw domain_error("alpha list must be nonempty");
  std::size_t support = 1;
  for (const auto& a : alphas) {
    support += 2 * static_cast<std::size_t>(make_extremal_spec(a).k);
    if (support > caps.lattice_points) throw resource_error("extremal sum exceeds lattice point cap");
  }
  detail::scaled_weights acc = detail::to_scaled(nu_star(alphas[0]));
  for (std::size_t i = 1; i < alphas.size(); ++i)
    acc = detail::convolve_scaled(acc, detail::to_scaled(nu_star(alphas[i])));
  return detail::from_scaled(acc);
}

// Mass of {0, 1/2} under the extremal sum; both atoms are counted.
inline Rational t_value(std::span<const Rational> alphas, const resource_caps& caps = default_caps()) {
  lattice_measure sum = extremal_sum(alphas, caps);
  return sum.weight_at(0) + sum.weight_at(1);
}

inline Rational t_value(std::initializer_list<Rational> alphas) {
  std::vector<Rational> v(alphas);
  return t_value(std::span<const Rational>(v));
}

// Largest mass of a window of span < 1: one atom or two adjacent half-lattice atoms.
inline Rational concentration_1d(const lattice_measure& m) {
  const auto& w = m.weights();
  Rational best(0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    Rational window = w[i];
    if (i + 1 < w.size()) window += w[i + 1];
    if (window > best) best = window;
  }
  return best;
}

struct variance_profile {
  std::vector<Rational> per_term;
  std::vector<Rational> partial_sums;
  Rational total{0};

  // V*_t with 1-based t; V*_0 = 0.
  Rational prefix(std::size_t t) const { return t == 0 ? Rational(0) : partial_sums.at(t - 1); }
};

inline variance_profile make_variance_profile(std::span<const Rational> alphas) {
  variance_profile out;
  out.per_term.reserve(alphas.size());
  out.partial_sums.reserve(alphas.size());
  for (const auto& a : alphas) {
    out.per_term.push_back(v_star(a));
    out.total += out.per_term.back();
    out.partial_sums.push_back(out.total);
  }
  return out;
}

enum class lattice_parity { integer, half_integer };

struct shape_report {
  bool symmetric = true;
  bool unimodal = true;
  bool log_concave = true;
  std::size_t support_points = 0;

  // The unimodality / log-concavity verdict; symmetry is reported alongside.
  bool holds() const { return unimodal && log_concave; }
};

inline shape_report check_unimodal_logconcave(const lattice_measure& m, lattice_parity parity) {
  const long want = parity == lattice_parity::integer ? 0 : 1;
  auto matches = [&](long idx) { return ((idx % 2) + 2) % 2 == want; };

  long lo = m.offset_index(), hi = m.last_index();
  while (lo <= hi && (!matches(lo) || m.weight_at(lo) == 0)) ++lo;
  while (hi >= lo && (!matches(hi) || m.weight_at(hi) == 0)) --hi;

  shape_report report;
  if (lo > hi) return report;

  std::vector<Rational> seq;
  for (long idx = lo; idx <= hi; idx += 2) seq.push_back(m.weight_at(idx));
  report.support_points = seq.size();

  for (long idx = lo; idx <= hi; idx += 2)
    if (m.weight_at(idx) != m.weight_at(-idx)) report.symmetric = false;

  // unimodal: nondecreasing up to the first maximum, nonincreasing afterwards
  std::size_t peak = static_cast<std::size_t>(std::max_element(seq.begin(), seq.end()) - seq.begin());
  for (std::size_t i = 1; i <= peak; ++i)
    if (seq[i] < seq[i - 1]) report.unimodal = false;
  for (std::size_t i = peak + 1; i < seq.size(); ++i)
    if (seq[i] > seq[i - 1]) report.unimodal = false;

  for (std::size_t i = 1; i + 1 < seq.size(); ++i)
    if (seq[i] * seq[i] < seq[i - 1] * seq[i + 1]) report.log_concave = false;
  return report;
}

// Floating-point twin of the exact convolution for long factor chains. Each output
// cell is accumulated with Neumaier compensated summation.
struct float_lattice_measure {
  long offset_index = 0;
  std::vector<double> weights{1.0};

  double weight_at(long index) const {
    if (index < offset_index || index >= offset_index + static_cast<long>(weights.size())) return 0.0;
    return weights[static_cast<std::size_t>(index - offset_index)];
  }
};

inline float_lattice_measure to_float(const lattice_measure& m) {
  float_lattice_measure out;
  out.offset_index = m.offset_index();
  out.weights.clear();
  for (const auto& w : m.weights()) out.weights.push_back(to_double(w));
  return out;
}

inline float_lattice_measure convolve(const float_lattice_measure& a, const float_lattice_measure& b) {
  float_lattice_measure out;
  out.offset_index = a.offset_index + b.offset_index;
  const std::size_t n = a.weights.size() + b.weights.size() - 1;
  std::vector<double> sum(n, 0.0), comp(n, 0.0);
  for (std::size_t i = 0; i < a.weights.size(); ++i) {
    for (std::size_t j = 0; j < b.weights.size(); ++j) {
      double term = a.weights[i] * b.weights[j];
      double& s = sum[i + j];
      double t = s + term;
      if (std::abs(s) >= std::abs(term)) comp[i + j] += (s - t) + term;
      else comp[i + j] += (term - t) + s;
      s = t;
    }
  }
  out.weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.weights[k] = sum[k] + comp[k];
  return out;
}

inline float_lattice_measure extremal_sum_float(std::span<const Rational> alphas) {
  if (alphas.empty()) throw domain_error("alpha list must be nonempty");
  float_lattice_measure acc = to_float(nu_star(alphas[0]));
  for (std::size_t i = 1; i < alphas.size(); ++i) acc = convolve(acc, to_float(nu_star(alphas[i])));
  return acc;
}

inline double t_value_float(std::span<const Rational> alphas) {
  float_lattice_measure sum = extremal_sum_float(alphas);
  return sum.weight_at(0) + sum.weight_at(1);
}

// t computed exactly when the factor count is within caps.exact_factors, otherwise on
// the compensated floating-point path. `exact` records which path produced `value`.
struct t_evaluation {
  double value = 0.0;
  bool exact = false;
  std::optional<Rational> exact_value;
};

inline t_evaluation evaluate_t(std::span<const Rational> alphas, const resource_caps& caps = default_caps()) {
  t_evaluation out;
  if (alphas.size() <= caps.exact_factors) {
    out.exact_value = t_value(alphas, caps);
    out.value = to_double(*out.exact_value);
    out.exact = true;
  } else {
    out.value = t_value_float(alphas);
  }
  return out;
}

}  // namespace anticonc
