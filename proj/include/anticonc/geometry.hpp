#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "anticonc/caps.hpp"
#include "anticonc/clique.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/graph.hpp"
#include "anticonc/norm.hpp"
#include "anticonc/rational.hpp"

namespace anticonc {

// A sequence of points; duplicates are kept and told apart by index.
template <class F = Rational>
struct point_config {
  norm_spec norm;
  std::vector<point<F>> points;

  point_config() = default;
  point_config(norm_spec n, std::vector<point<F>> pts) : norm(n), points(std::move(pts)) {
    for (const auto& x : points) require_dimension(norm, x);
  }

  std::size_t size() const { return points.size(); }
};

// Finitely supported probability measure. Coincident atoms are merged and atoms are
// kept in lexicographic order of their points.
template <class F = Rational>
class vector_measure {
 public:
  vector_measure() = default;

  vector_measure(norm_spec norm, const std::vector<point<F>>& points, const std::vector<Rational>& weights)
      : norm_(norm) {
    if (points.size() != weights.size()) throw input_error("point and weight counts differ");
    if (points.empty()) throw input_error("measure needs at least one atom");
    std::map<point<F>, Rational> merged;
    Rational total(0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      require_dimension(norm_, points[i]);
      if (weights[i] < 0) throw domain_error("negative atom weight");
      total += weights[i];
      if (weights[i] != 0) merged[points[i]] += weights[i];
    }
    if (total != 1) throw domain_error("atom weights must sum to 1, got " + to_string(total));
    for (auto& [p, w] : merged) {
      points_.push_back(p);
      weights_.push_back(w);
    }
  }

  static vector_measure uniform(norm_spec norm, const std::vector<point<F>>& points) {
    std::vector<Rational> w(points.size(), Rational(1, static_cast<long>(points.size())));
    return vector_measure(norm, points, w);
  }

  static vector_measure point_mass(norm_spec norm, point<F> at) { return vector_measure(norm, {std::move(at)}, {Rational(1)}); }

  const norm_spec& norm() const { return norm_; }
  const std::vector<point<F>>& points() const { return points_; }
  const std::vector<Rational>& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }

  Rational weight_of(const point<F>& x) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), x);
    return (it != points_.end() && *it == x) ? weights_[static_cast<std::size_t>(it - points_.begin())] : Rational(0);
  }

  friend bool operator==(const vector_measure&, const vector_measure&) = default;

 private:
  norm_spec norm_;
  std::vector<point<F>> points_;
  std::vector<Rational> weights_;
};

// A line {b + t v} with a supporting functional f for v/||v||.
// f(x) = <functional, x> / scale, and scale is carried as scale^q (q = norm exponent)
// so that every comparison |f(x) - f(y)| >= c is decided in exact arithmetic.
struct line_frame {
  norm_spec norm;
  point<Rational> direction;
  point<Rational> base_point;
  point<Rational> functional;
  Rational scale_power{1};
  Rational direction_norm_power{1};  // ||direction||^q

  // <functional, x>, i.e. f(x) * scale.
  Rational raw(const point<Rational>& x) const { return dot(functional, x); }

  double scale() const { return std::pow(to_double(scale_power), 1.0 / norm.exponent()); }
  double value(const point<Rational>& x) const { return to_double(raw(x)) / scale(); }

  // |f(x)| >= c, for a raw difference raw(x) - raw(y) and c >= 0.
  bool raw_gap_at_least(const Rational& raw_difference, const Rational& c) const {
    unsigned q = norm.exponent();
    return pow_of(abs_of(raw_difference), q) >= pow_of(c, q) * scale_power;
  }

  // f(v) == 1 for the unit vector v = direction / ||direction||.
  bool unit_on_direction() const {
    unsigned q = norm.exponent();
    Rational r = raw(direction);
    if (r <= 0) return false;
    return pow_of(r, q) == scale_power * direction_norm_power;
  }

  // |f(x)| <= ||x||.
  bool bounded_by_norm(const point<Rational>& x) const {
    unsigned q = norm.exponent();
    return pow_of(abs_of(raw(x)), q) <= scale_power * norm_power(norm, x);
  }
};

// Supporting functional for direction/||direction|| under each supported norm:
// L2 the normalised inner product, Lp the dual-exponent vector sign(v_i)|v_i|^(p-1),
// L1 the sign vector, Linf a single coordinate of maximal |v_i| (lowest index).
inline line_frame supporting_functional(const norm_spec& norm, const point<Rational>& direction) {
  require_dimension(norm, direction);
  if (std::all_of(direction.begin(), direction.end(), [](const Rational& c) { return c == 0; }))
    throw domain_error("supporting functional needs a nonzero direction");
  line_frame f;
  f.norm = norm;
  f.direction = direction;
  f.base_point.assign(norm.dimension, Rational(0));
  f.direction_norm_power = norm_power(norm, direction);
  f.functional.assign(norm.dimension, Rational(0));
  switch (norm.kind) {
    case norm_kind::l2:
      f.functional = direction;
      f.scale_power = f.direction_norm_power;
      break;
    case norm_kind::l1:
      for (std::size_t i = 0; i < direction.size(); ++i) f.functional[i] = sgn(direction[i]);
      f.scale_power = 1;
      break;
    case norm_kind::linf: {
      std::size_t j = 0;
      for (std::size_t i = 1; i < direction.size(); ++i)
        if (abs_of(direction[i]) > abs_of(direction[j])) j = i;
      f.functional[j] = sgn(direction[j]);
      f.scale_power = 1;
      break;
    }
    case norm_kind::lp:
      for (std::size_t i = 0; i < direction.size(); ++i)
        f.functional[i] = sgn(direction[i]) * pow_of(abs_of(direction[i]), norm.p - 1);
      f.scale_power = pow_of(f.direction_norm_power, norm.p - 1);
      break;
  }
  return f;
}

// Distance from x to the line {base + t direction}. Exact (as a q-th power) for L2, L1
// and Linf; for Lp with p >= 3 it is found by ternary search on the convex map
// t -> ||x - base - t direction|| and only the float value is set.
struct line_distance {
  std::optional<Rational> exact_power;
  double approx = 0.0;
};

inline line_distance point_line_distance(const norm_spec& norm, const point<Rational>& x, const point<Rational>& base,
                                         const point<Rational>& direction) {
  point<Rational> w = x - base;
  const std::size_t d = w.size();
  auto at = [&](const Rational& t) {
    point<Rational> r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = w[i] - t * direction[i];
    return norm_power(norm, r);
  };
  line_distance out;
  unsigned q = norm.exponent();
  switch (norm.kind) {
    case norm_kind::l2: {
      Rational vv = dot(direction, direction);
      if (vv == 0) throw domain_error("zero line direction");
      Rational wv = dot(w, direction);
      out.exact_power = dot(w, w) - wv * wv / vv;
      break;
    }
    case norm_kind::l1:
    case norm_kind::linf: {
      // convex piecewise-linear in t: the minimum sits at a breakpoint
      std::vector<Rational> candidates;
      for (std::size_t i = 0; i < d; ++i) {
        if (direction[i] == 0) continue;
        candidates.push_back(w[i] / direction[i]);
        if (norm.kind == norm_kind::linf) {
          for (std::size_t j = i + 1; j < d; ++j) {
            Rational diff = direction[i] - direction[j];
            if (diff != 0) candidates.push_back((w[i] - w[j]) / diff);
            Rational sum = direction[i] + direction[j];
            if (sum != 0) candidates.push_back((w[i] + w[j]) / sum);
          }
        }
      }
      if (candidates.empty()) throw domain_error("zero line direction");
      Rational best = at(candidates.front());
      for (const auto& t : candidates) best = std::min(best, at(t));
      out.exact_power = best;
      break;
    }
    case norm_kind::lp: {
      std::vector<double> wd(d), vd(d);
      double scale = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        wd[i] = to_double(w[i]);
        vd[i] = to_double(direction[i]);
        scale = std::max(scale, std::abs(vd[i]));
      }
      if (scale == 0.0) throw domain_error("zero line direction");
      auto g = [&](double t) {
        double acc = 0.0;
        for (std::size_t i = 0; i < d; ++i) acc += std::pow(std::abs(wd[i] - t * vd[i]), norm.p);
        return std::pow(acc, 1.0 / norm.p);
      };
      double span = 0.0;
      for (std::size_t i = 0; i < d; ++i) span = std::max(span, std::abs(wd[i]));
      double lo = -(span + 1.0) / scale * 2.0, hi = -lo;
      while (hi - lo > 1e-12) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (g(m1) < g(m2)) hi = m2;
        else lo = m1;
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(lo))) break;
      }
      out.approx = g((lo + hi) / 2);
      return out;
    }
  }
  out.approx = std::pow(to_double(*out.exact_power), 1.0 / q);
  return out;
}

// Result of a near-line search. `near_line` is certified: exact comparison against
// c_S^q where available, otherwise float deviation + 1e-9 < c_S.
struct near_line_result {
  line_frame frame;
  std::optional<Rational> max_deviation_power;
  double max_deviation = 0.0;
  bool near_line = false;
};

inline constexpr double near_line_margin = 1e-9;

namespace detail {

inline point<Rational> normalise_direction(point<Rational> v) {
  auto lead = std::find_if(v.begin(), v.end(), [](const Rational& c) { return c != 0; });
  Rational s = *lead;
  for (auto& c : v) c /= s;
  return v;
}

struct deviation_eval {
  std::optional<Rational> power;
  double approx = 0.0;
};

inline deviation_eval max_deviation(const norm_spec& norm, const std::vector<point<Rational>>& pts,
                                    const point<Rational>& base, const point<Rational>& dir) {
  deviation_eval out;
  bool exact = true;
  Rational best(0);
  for (const auto& x : pts) {
    line_distance ld = point_line_distance(norm, x, base, dir);
    out.approx = std::max(out.approx, ld.approx);
    if (ld.exact_power) best = std::max(best, *ld.exact_power);
    else exact = false;
  }
  if (exact) out.power = best;
  return out;
}

// Base point for a fixed direction. In the plane every line with direction v is a level
// set of <x, n> for the normal n, and the distance to it is proportional to the offset in
// <x, n> for any norm, so the mid-range offset is optimal. In higher dimension a
// coordinate-wise ternary search gives an upper bound.
inline point<Rational> fit_base_point(const norm_spec& norm, const std::vector<point<Rational>>& pts,
                                      const point<Rational>& dir) {
  const std::size_t d = norm.dimension;
  if (d == 1) return point<Rational>(1, Rational(0));
  if (d == 2) {
    point<Rational> n{Rational(-dir[1]), dir[0]};
    Rational lo = dot(pts.front(), n), hi = lo;
    for (const auto& x : pts) {
      Rational s = dot(x, n);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    Rational mid = (lo + hi) / 2;
    Rational nn = dot(n, n);
    return {mid * n[0] / nn, mid * n[1] / nn};
  }
  std::vector<double> b(d, 0.0), lo_box(d), hi_box(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo_box[i] = hi_box[i] = to_double(pts.front()[i]);
    for (const auto& x : pts) {
      lo_box[i] = std::min(lo_box[i], to_double(x[i]));
      hi_box[i] = std::max(hi_box[i], to_double(x[i]));
    }
    b[i] = 0.5 * (lo_box[i] + hi_box[i]);
  }
  auto as_rational = [&](const std::vector<double>& v) {
    point<Rational> r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = from_double(v[i]);
    return r;
  };
  auto objective = [&](const std::vector<double>& v) { return max_deviation(norm, pts, as_rational(v), dir).approx; };
  for (int round = 0; round < 8; ++round) {
    for (std::size_t i = 0; i < d; ++i) {
      double lo = lo_box[i] - 1.0, hi = hi_box[i] + 1.0;
      for (int it = 0; it < 60; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        std::vector<double> b1 = b, b2 = b;
        b1[i] = m1;
        b2[i] = m2;
        if (objective(b1) < objective(b2)) hi = m2;
        else lo = m1;
      }
      b[i] = 0.5 * (lo + hi);
    }
  }
  return as_rational(b);
}

}  // namespace detail

// Searches candidate directions (pairwise differences and coordinate axes) for the line
// minimising the largest point-to-line distance.
inline near_line_result near_line_fit(const point_config<Rational>& config) {
  if (config.points.empty()) throw input_error("near_line_fit needs at least one point");
  const norm_spec& norm = config.norm;
  const std::size_t d = norm.dimension;

  std::vector<point<Rational>> candidates;
  std::set<point<Rational>> seen;
  auto consider = [&](point<Rational> v) {
    if (std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; })) return;
    v = detail::normalise_direction(std::move(v));
    if (seen.insert(v).second) candidates.push_back(std::move(v));
  };
  for (std::size_t i = 0; i < d; ++i) {
    point<Rational> e(d, Rational(0));
    e[i] = 1;
    consider(e);
  }
  for (std::size_t i = 0; i < config.points.size(); ++i)
    for (std::size_t j = i + 1; j < config.points.size(); ++j) consider(config.points[j] - config.points[i]);

  std::optional<near_line_result> best;
  for (const auto& dir : candidates) {
    point<Rational> base = detail::fit_base_point(norm, config.points, dir);
    detail::deviation_eval dev = detail::max_deviation(norm, config.points, base, dir);
    bool better = false;
    if (!best) better = true;
    else if (dev.power && best->max_deviation_power) better = *dev.power < *best->max_deviation_power;
    else better = dev.approx < best->max_deviation;
    if (!better) continue;
    near_line_result r;
    r.frame = supporting_functional(norm, dir);
    r.frame.base_point = base;
    r.max_deviation_power = dev.power;
    r.max_deviation = dev.approx;
    best = std::move(r);
  }
  near_line_result out = std::move(*best);
  if (out.max_deviation_power) out.near_line = *out.max_deviation_power < norm.near_line_radius_power();
  else out.near_line = out.max_deviation + near_line_margin < norm.near_line_radius();
  return out;
}

// Largest distance of the points from the frame's line.
inline detail::deviation_eval frame_deviation(const line_frame& frame, const std::vector<point<Rational>>& pts) {
  return detail::max_deviation(frame.norm, pts, frame.base_point, frame.direction);
}

inline bool within_near_line_radius(const line_frame& frame, const std::vector<point<Rational>>& pts) {
  auto dev = frame_deviation(frame, pts);
  if (dev.power) return *dev.power < frame.norm.near_line_radius_power() || *dev.power == frame.norm.near_line_radius_power();
  return dev.approx + near_line_margin <= frame.norm.near_line_radius();
}

struct separation_report {
  std::size_t far_pairs = 0;
  std::vector<std::pair<std::size_t, std::size_t>> violations;
  bool ok() const { return violations.empty(); }
};

// For every pair with ||x - y|| >= 1 checks |f(x) - f(y)| >= 1/2 exactly.
inline separation_report separation_check(const line_frame& frame, const point_config<Rational>& config) {
  separation_report report;
  const auto& pts = config.points;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (norm_power(config.norm, pts[i] - pts[j]) < 1) continue;
      ++report.far_pairs;
      if (!frame.raw_gap_at_least(frame.raw(pts[i]) - frame.raw(pts[j]), Rational(1, 2)))
        report.violations.emplace_back(i, j);
    }
  return report;
}

// Exact law of X_1 + ... + X_n: iterated Minkowski sum with merged coincident points.
template <class F>
vector_measure<F> product_sum_measure(const std::vector<vector_measure<F>>& measures,
                                      const resource_caps& caps = default_caps()) {
  if (measures.empty()) throw input_error("product_sum_measure needs at least one measure");
  const norm_spec norm = measures.front().norm();
  for (const auto& m : measures)
    if (!(m.norm() == norm)) throw input_error("measures must share norm and dimension");

  std::map<point<F>, Rational> acc;
  for (std::size_t i = 0; i < measures.front().size(); ++i) acc[measures.front().points()[i]] += measures.front().weights()[i];
  for (std::size_t m = 1; m < measures.size(); ++m) {
    if (acc.size() * measures[m].size() > caps.product_support * 64)
      throw resource_error("product support cap exceeded");
    std::map<point<F>, Rational> next;
    for (const auto& [p, w] : acc)
      for (std::size_t j = 0; j < measures[m].size(); ++j) {
        next[p + measures[m].points()[j]] += w * measures[m].weights()[j];
        if (next.size() > caps.product_support) throw resource_error("product support cap exceeded");
      }
    acc = std::move(next);
  }
  std::vector<point<F>> pts;
  std::vector<Rational> ws;
  for (auto& [p, w] : acc) {
    pts.push_back(p);
    ws.push_back(w);
  }
  return vector_measure<F>(norm, pts, ws);
}

template <class F>
struct concentration_result {
  Rational value{0};
  std::vector<std::size_t> witness;  // atom indices
  std::vector<point<F>> witness_points;
};

// Q~(X, 1): the largest mass of a set of atoms with pairwise distance < 1, i.e. a
// maximum weight clique of the strict distance graph of the support.
template <class F, class Metric>
concentration_result<F> concentration_q(const vector_measure<F>& measure, const Metric& metric,
                                        const resource_caps& caps = default_caps()) {
  if (measure.size() > caps.clique_vertices)
    throw resource_error("support of " + std::to_string(measure.size()) + " atoms exceeds the clique cap");
  dist_graph g = distance_graph(measure.points(), metric);
  clique_result c = max_clique(g, measure.weights(), caps);
  concentration_result<F> out;
  out.value = c.weight;
  out.witness = c.vertices;
  for (std::size_t v : c.vertices) out.witness_points.push_back(measure.points()[v]);
  return out;
}

template <class F>
concentration_result<F> concentration_q(const vector_measure<F>& measure, const resource_caps& caps = default_caps()) {
  return concentration_q(measure, norm_metric<F>{measure.norm()}, caps);
}

// Deterministic uniform double in [0,1) from the raw 64-bit engine output; the engine's
// output sequence is fixed by the standard, so draws are reproducible across platforms.
inline double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// n i.i.d. draws from the (1+delta)-dilated measure, each with weight 1/n.
inline vector_measure<Rational> empirical_measure(const vector_measure<Rational>& measure, std::size_t n,
                                                  const Rational& delta, std::uint64_t seed) {
  if (n == 0) throw domain_error("empirical measure needs n >= 1");
  if (delta <= 0) throw domain_error("delta must be positive");
  std::vector<double> cumulative;
  double running = 0.0;
  for (const auto& w : measure.weights()) {
    running += to_double(w);
    cumulative.push_back(running);
  }
  std::mt19937_64 rng(seed);
  const Rational dilation = Rational(1) + delta;
  std::vector<point<Rational>> pts;
  pts.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    double u = unit_draw(rng) * running;
    std::size_t idx = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    idx = std::min(idx, measure.size() - 1);
    point<Rational> x = measure.points()[idx];
    for (auto& c : x) c *= dilation;
    pts.push_back(std::move(x));
  }
  return vector_measure<Rational>::uniform(measure.norm(), pts);
}

}  // namespace anticonc
