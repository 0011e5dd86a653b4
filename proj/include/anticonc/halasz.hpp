#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <set>
#include <vector>

#include "anticonc/caps.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/geometry.hpp"
#include "anticonc/rational.hpp"

namespace anticonc {

// Numerical Halasz quantities for planar Euclidean summands. D is a numerical upper
// bound on the true infimum (grid plus one golden-section pass); mu is exact over the
// candidate centres it inspects.
struct halasz_diagnostics {
  double D = 0.0;
  double mu = 0.0;
  double angle = 0.0;                             // direction e = (cos angle, sin angle)
  std::array<double, 2> best_direction{1.0, 0.0};
  std::vector<double> per_measure_D;              // D_i at the best direction
  std::vector<std::array<double, 2>> shifts;      // a_i realising inf_a E min(<X_i - a, e>^2, 1)
  std::size_t centers_checked = 0;

  // c_H * mu / n * D^{-1}: the planar Halasz bound for the given constant.
  double bound(double c_h) const {
    const double n = static_cast<double>(per_measure_D.size());
    if (D <= 0.0) return std::numeric_limits<double>::infinity();
    return c_h * mu / n / D;
  }

  // Indices with D_i > c^2 eps, the ones the line L + a_i may fail to capture.
  std::vector<std::size_t> exceptional_indices(double c, double eps) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < per_measure_D.size(); ++i)
      if (per_measure_D[i] > c * c * eps) out.push_back(i);
    return out;
  }
};

namespace detail {

struct float_atoms {
  std::vector<std::array<double, 2>> points;
  std::vector<double> weights;
};

inline float_atoms to_float_atoms(const vector_measure<Rational>& m) {
  float_atoms out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.points.push_back({to_double(m.points()[i][0]), to_double(m.points()[i][1])});
    out.weights.push_back(to_double(m.weights()[i]));
  }
  return out;
}

inline double truncated_second_moment(const float_atoms& a, double c, double s) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    double proj = a.points[k][0] * c + a.points[k][1] * s;
    acc += a.weights[k] * std::min(proj * proj, 1.0);
  }
  return acc;
}

// Global minimiser over s of sum_k w_k min((p_k - s)^2, 1). Between consecutive
// breakpoints p_k +- 1 the set of points within distance 1 is fixed and the objective
// is a quadratic, minimised at the clamped weighted mean of that set.
inline double best_offset(const std::vector<double>& p, const std::vector<double>& w) {
  std::vector<double> cuts;
  for (double x : p) {
    cuts.push_back(x - 1.0);
    cuts.push_back(x + 1.0);
  }
  std::sort(cuts.begin(), cuts.end());
  auto objective = [&](double s) {
    double acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) acc += w[k] * std::min((p[k] - s) * (p[k] - s), 1.0);
    return acc;
  };
  double best_s = p.empty() ? 0.0 : p.front();
  double best = objective(best_s);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    if (hi <= lo) continue;
    double mid = 0.5 * (lo + hi), mass = 0.0, moment = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
      if (std::abs(p[k] - mid) < 1.0) {
        mass += w[k];
        moment += w[k] * p[k];
      }
    double s = mass > 0.0 ? std::clamp(moment / mass, lo, hi) : mid;
    double value = objective(s);
    if (value < best) {
      best = value;
      best_s = s;
    }
  }
  return best_s;
}

}  // namespace detail

// Halasz diagnostics of X_1, ..., X_n (L2, d = 2). Each X_i is symmetrised exactly,
// D(e) = sum_i E min(<X_i*, e>^2, 1) is minimised over `direction_samples` angles in
// [0, pi) and then refined locally, and mu is the largest sum_i P(|X_i* - y| < 1) over
// at most `center_samples` candidate centres y drawn from the symmetrised supports.
inline halasz_diagnostics compute_halasz(const std::vector<vector_measure<Rational>>& measures,
                                         std::size_t direction_samples, std::size_t center_samples,
                                         const resource_caps& caps = default_caps()) {
  if (measures.empty()) throw input_error("halasz diagnostics need at least one measure");
  if (direction_samples == 0 || center_samples == 0) throw input_error("sample counts must be positive");
  for (const auto& m : measures)
    if (m.norm().kind != norm_kind::l2 || m.norm().dimension != 2)
      throw unsupported_error("halasz diagnostics support only the Euclidean plane");

  std::vector<vector_measure<Rational>> symmetrised;
  for (const auto& m : measures) {
    std::vector<point<Rational>> negated;
    for (const auto& x : m.points()) negated.push_back({Rational(-x[0]), Rational(-x[1])});
    vector_measure<Rational> minus(m.norm(), negated, m.weights());
    symmetrised.push_back(product_sum_measure<Rational>({m, minus}, caps));
  }
  std::vector<detail::float_atoms> atoms;
  for (const auto& s : symmetrised) atoms.push_back(detail::to_float_atoms(s));

  auto total_at = [&](double theta) {
    double c = std::cos(theta), s = std::sin(theta), acc = 0.0;
    for (const auto& a : atoms) acc += detail::truncated_second_moment(a, c, s);
    return acc;
  };

  halasz_diagnostics out;
  const double step = std::numbers::pi / static_cast<double>(direction_samples);
  double best_theta = 0.0, best = total_at(0.0);
  for (std::size_t j = 1; j < direction_samples; ++j) {
    double theta = step * static_cast<double>(j);
    double value = total_at(theta);
    if (value < best) {
      best = value;
      best_theta = theta;
    }
  }
  // golden-section pass on the bracket around the best grid angle
  {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_theta - step, hi = best_theta + step;
    double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
    double f1 = total_at(x1), f2 = total_at(x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - ratio * (hi - lo);
        f1 = total_at(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + ratio * (hi - lo);
        f2 = total_at(x2);
      }
    }
    double theta = 0.5 * (lo + hi), value = total_at(theta);
    if (value < best) {
      best = value;
      best_theta = theta;
    }
  }
  out.D = best;
  out.angle = best_theta;
  const double ec = std::cos(best_theta), es = std::sin(best_theta);
  out.best_direction = {ec, es};

  for (std::size_t i = 0; i < measures.size(); ++i) {
    out.per_measure_D.push_back(detail::truncated_second_moment(atoms[i], ec, es));
    detail::float_atoms raw = detail::to_float_atoms(measures[i]);
    std::vector<double> proj;
    for (const auto& x : raw.points) proj.push_back(x[0] * ec + x[1] * es);
    double s = detail::best_offset(proj, raw.weights);
    out.shifts.push_back({s * ec, s * es});
  }

  // candidate centres: the origin, then the union of symmetrised supports, strided
  const point<Rational> origin{Rational(0), Rational(0)};
  std::set<point<Rational>> pool;
  for (const auto& s : symmetrised)
    for (const auto& x : s.points())
      if (x != origin) pool.insert(x);
  std::vector<point<Rational>> centres{origin};
  if (center_samples > 1 && !pool.empty()) {
    std::vector<point<Rational>> rest(pool.begin(), pool.end());
    const std::size_t stride = (rest.size() + center_samples - 2) / (center_samples - 1);
    for (std::size_t c = 0; c < rest.size(); c += stride) centres.push_back(rest[c]);
  }
  Rational best_mu(0);
  for (std::size_t c = 0; c < centres.size(); ++c) {
    ++out.centers_checked;
    Rational acc(0);
    for (const auto& s : symmetrised)
      for (std::size_t k = 0; k < s.size(); ++k) {
        point<Rational> diff = s.points()[k] - centres[c];
        if (dot(diff, diff) < 1) acc += s.weights()[k];
      }
    best_mu = std::max(best_mu, acc);
  }
  out.mu = to_double(best_mu);
  return out;
}

}  // namespace anticonc
