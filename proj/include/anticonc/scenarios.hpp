#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "anticonc/caps.hpp"
#include "anticonc/chains.hpp"
#include "anticonc/geometry.hpp"
#include "anticonc/graph.hpp"
#include "anticonc/lattice_measure.hpp"
#include "anticonc/odd_hole.hpp"
#include "anticonc/quadratic_field.hpp"
#include "anticonc/sampling.hpp"

namespace anticonc {

// ---------------------------------------------------------------------------
// Regular octagon of radius (2 + sqrt 2)^{-1/2}, uniform on its vertices.

// Vertex k at angle k pi/4, in units of the radius.
inline std::vector<point<q_sqrt2>> octagon_unit_vertices() {
  const q_sqrt2 h(Rational(0), Rational(1, 2));  // sqrt(2)/2
  const q_sqrt2 one(1), zero(0);
  return {{one, zero}, {h, h}, {zero, one}, {-h, h}, {-one, zero}, {-h, -h}, {zero, -one}, {h, -h}};
}

// r^2 = 1 / (2 + sqrt 2) = (2 - sqrt 2) / 2.
inline q_sqrt2 octagon_radius_squared() { return {Rational(1), Rational(-1, 2)}; }

struct octagon_result {
  Rational q_single{0};
  std::vector<point<q_sqrt2>> witness;
  Rational q_sum{0};
  std::size_t sum_support = 0;
  Rational sum_center_weight{0};
  Rational t{0};
  Rational contrast_q{0};  // same vertex set at radius 1/2
  bool pass = false;
};

inline octagon_result run_octagon_scenario(const resource_caps& caps = default_caps()) {
  octagon_result out;
  const auto vertices = octagon_unit_vertices();
  const norm_spec plane = norm_spec::l2(2);
  auto x1 = vector_measure<q_sqrt2>::uniform(plane, vertices);
  scaled_l2_metric<q_sqrt2> metric{octagon_radius_squared()};

  auto single = concentration_q(x1, metric, caps);
  out.q_single = single.value;
  out.witness = single.witness_points;

  auto sum = product_sum_measure<q_sqrt2>({x1, x1}, caps);
  out.sum_support = sum.size();
  out.sum_center_weight = sum.weight_of({q_sqrt2(0), q_sqrt2(0)});
  out.q_sum = concentration_q(sum, metric, caps).value;

  out.t = t_value({Rational(3, 8), Rational(3, 8)});

  // radius 1/2: every chord is shorter than 1 and the whole octagon is one clique
  out.contrast_q = concentration_q(x1, scaled_l2_metric<q_sqrt2>{q_sqrt2(Rational(1, 4))}, caps).value;

  out.pass = out.q_single == Rational(3, 8) && out.q_sum == Rational(3, 8) && out.t < Rational(3, 8) &&
             out.contrast_q > Rational(3, 8);
  return out;
}

// ---------------------------------------------------------------------------
// Five points just beyond the Euclidean strip width sqrt(3)/4 whose distance graph is C5.

// Points (-1+2e, 0), (0, -e), (1-2e, 0), (1/2-e, sqrt3/2), (-1/2+e, sqrt3/2), shifted
// down by sqrt(3)/4. Consecutive points are closer than 1, all other pairs are not.
inline std::vector<point<q_sqrt3>> sharpness_points(const Rational& eps) {
  const q_sqrt3 r3_half(Rational(0), Rational(1, 2));
  const q_sqrt3 shift(Rational(0), Rational(1, 4));
  const q_sqrt3 e(eps);
  std::vector<point<q_sqrt3>> pts{{q_sqrt3(-1) + e * 2, q_sqrt3(0)},
                                  {q_sqrt3(0), -e},
                                  {q_sqrt3(1) - e * 2, q_sqrt3(0)},
                                  {q_sqrt3(Rational(1, 2)) - e, r3_half},
                                  {q_sqrt3(Rational(-1, 2)) + e, r3_half}};
  for (auto& p : pts) p[1] -= shift;
  return pts;
}

struct strip_batch {
  std::size_t instances = 0;
  std::size_t berge = 0;
  std::optional<std::size_t> first_failure;
  bool all_berge() const { return berge == instances; }
};

// Random L2 configurations with |y| <= strip (at most max_points points), each checked Berge.
inline strip_batch run_strip_batch(const norm_spec& norm, const Rational& strip, std::size_t instances,
                                   std::size_t max_points, std::uint64_t seed, const resource_caps& caps = default_caps()) {
  strip_batch out;
  std::mt19937_64 rng(seed);
  const long den = 1000;
  const long strip_num = floor_of(strip * Rational(den)).get_si();
  for (std::size_t i = 0; i < instances; ++i) {
    std::size_t count = static_cast<std::size_t>(draw_int(rng, 1, static_cast<long>(max_points)));
    auto pts = draw_strip_points(rng, norm, count, 3 * den, strip_num, den);
    ++out.instances;
    if (is_berge(distance_graph(pts, norm), caps)) ++out.berge;
    else if (!out.first_failure) out.first_failure = i;
  }
  return out;
}

struct sharpness_result {
  Rational epsilon{0};
  q_sqrt3 max_abs_y{0};  // deviation from the x-axis
  bool beyond_strip = false;
  std::optional<hole_witness> hole;
  std::size_t edge_count = 0;
  q_sqrt3 scaled_max_abs_y{0};
  bool scaled_within_strip = false;
  bool scaled_berge = false;
  strip_batch random_batch;
  bool pass = false;
};

inline sharpness_result run_sharpness_scenario(const Rational& eps, std::size_t random_instances = 1000,
                                               std::uint64_t seed = 0, const resource_caps& caps = default_caps()) {
  if (eps < 0 || eps >= Rational(1, 100)) throw domain_error("epsilon must lie in [0, 1/100)");
  sharpness_result out;
  out.epsilon = eps;
  const q_sqrt3 radius(Rational(0), Rational(1, 4));  // sqrt(3)/4
  const scaled_l2_metric<q_sqrt3> metric{q_sqrt3(1)};

  auto pts = sharpness_points(eps);
  for (const auto& p : pts) out.max_abs_y = std::max(out.max_abs_y, abs_of(p[1]));
  out.beyond_strip = out.max_abs_y > radius;
  dist_graph g = distance_graph(pts, metric);
  out.edge_count = g.edge_count();
  out.hole = find_odd_hole(g, false, caps);

  // the same shape squeezed vertically by (1 - 8 eps) 99/100 lies strictly inside the strip
  auto squeezed = pts;
  const q_sqrt3 factor(Rational(Rational(1) - 8 * eps) * Rational(99, 100));
  for (auto& p : squeezed) {
    p[1] *= factor;
    out.scaled_max_abs_y = std::max(out.scaled_max_abs_y, abs_of(p[1]));
  }
  out.scaled_within_strip = out.scaled_max_abs_y < radius;
  out.scaled_berge = is_berge(distance_graph(squeezed, metric), caps);

  out.random_batch = run_strip_batch(norm_spec::l2(2), Rational(43, 100), random_instances, 10, seed, caps);

  const bool hole_ok = eps > 0 ? (out.hole && out.hole->cycle.size() == 5) : (!out.hole && out.edge_count == 0);
  out.pass = hole_ok && (eps == 0 || out.beyond_strip) && out.scaled_within_strip && out.scaled_berge &&
             out.random_batch.all_berge();
  return out;
}

// ---------------------------------------------------------------------------
// Q~(X_1 + ... + X_n, 1) <= t(alpha_1, ..., alpha_n) on near-line instances.

struct sum_bound_config {
  std::size_t instances = 500;
  std::size_t max_n = 4;
  std::size_t max_atoms = 4;
  std::size_t max_weight = 4;  // atom weights are drawn from 1..max_weight, then normalised
  long x_range = 3;
  long denominator = 1000;
  Rational strip_fraction{9, 10};
  std::vector<norm_spec> norms{norm_spec::l2(2), norm_spec::l1(2), norm_spec::linf(2)};
  std::size_t equality_instances = 50;
  std::size_t max_k = 5;  // equality instances use alpha = p/k style values with k <= max_k
};

struct sum_bound_instance {
  std::size_t id = 0;
  std::string kind;  // "random", "extremal" or "blocks"
  std::string norm;
  std::vector<Rational> alphas;
  Rational q_sum{0};
  Rational t{0};
  bool skipped = false;
  std::string notice;

  bool holds() const { return skipped || q_sum <= t; }
  bool equality() const { return !skipped && q_sum == t; }
};

struct sum_bound_result {
  std::vector<sum_bound_instance> instances;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t violations = 0;
  std::size_t equality_checked = 0;
  std::size_t equality_hits = 0;
  double min_margin = 0.0;
  double mean_margin = 0.0;
  bool pass = false;
};

inline sum_bound_instance check_sum_bound_instance(std::size_t id, const std::vector<vector_measure<Rational>>& xs,
                                                   const resource_caps& caps = default_caps()) {
  sum_bound_instance inst;
  inst.id = id;
  inst.norm = xs.front().norm().name();
  try {
    for (const auto& x : xs) inst.alphas.push_back(concentration_q(x, caps).value);
    inst.q_sum = concentration_q(product_sum_measure(xs, caps), caps).value;
    inst.t = t_value(std::span<const Rational>(inst.alphas), caps);
  } catch (const resource_error& e) {
    inst.skipped = true;
    inst.notice = e.what();
  }
  return inst;
}

// Places nu*_alpha on the first axis: lattice index i becomes (i/2, 0, ..., 0).
inline vector_measure<Rational> embed_lattice_measure(const lattice_measure& m, const norm_spec& norm) {
  std::vector<point<Rational>> pts;
  std::vector<Rational> ws;
  for (std::size_t i = 0; i < m.weights().size(); ++i) {
    if (m.weights()[i] == 0) continue;
    point<Rational> x(norm.dimension, Rational(0));
    x[0] = make_rational(m.offset_index() + static_cast<long>(i), 2);
    pts.push_back(std::move(x));
    ws.push_back(m.weights()[i]);
  }
  return vector_measure<Rational>(norm, pts, ws);
}

inline sum_bound_result run_verify_sum_bound(const sum_bound_config& cfg, std::uint64_t seed,
                                             const resource_caps& caps = default_caps()) {
  if (cfg.norms.empty()) throw input_error("generator needs at least one norm");
  if (cfg.max_n == 0 || cfg.max_atoms == 0 || cfg.max_weight == 0 || cfg.max_k == 0)
    throw input_error("generator sizes must be positive");
  sum_bound_result out;
  std::mt19937_64 rng(seed);
  const long den = cfg.denominator;

  for (std::size_t id = 0; id < cfg.instances; ++id) {
    const norm_spec& norm = cfg.norms[id % cfg.norms.size()];
    const long strip = strip_numerator(norm, cfg.strip_fraction, den);
    std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, static_cast<long>(cfg.max_n)));
    std::vector<vector_measure<Rational>> xs;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t atoms = static_cast<std::size_t>(draw_int(rng, 1, static_cast<long>(cfg.max_atoms)));
      auto pts = draw_strip_points(rng, norm, atoms, cfg.x_range * den, strip, den);
      std::vector<long> raw;
      long total = 0;
      for (std::size_t a = 0; a < atoms; ++a) {
        raw.push_back(draw_int(rng, 1, static_cast<long>(cfg.max_weight)));
        total += raw.back();
      }
      std::vector<Rational> ws;
      for (long r : raw) ws.emplace_back(r, total);
      for (auto& w : ws) w.canonicalize();
      xs.emplace_back(norm, pts, ws);
    }
    auto inst = check_sum_bound_instance(id, xs, caps);
    inst.kind = "random";
    out.instances.push_back(std::move(inst));
  }

  // 1-d extremal instances embedded along the line: here the bound is attained
  for (std::size_t e = 0; e < cfg.equality_instances; ++e) {
    const norm_spec& norm = cfg.norms[e % cfg.norms.size()];
    std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, static_cast<long>(cfg.max_n)));
    std::vector<vector_measure<Rational>> xs;
    for (std::size_t i = 0; i < n; ++i) {
      long k = draw_int(rng, 1, static_cast<long>(cfg.max_k));
      // alpha in [1/(k+1), 1/k], on a grid of 12 steps
      long step = draw_int(rng, 0, 12);
      Rational alpha = make_rational(1, k + 1) + (make_rational(1, k) - make_rational(1, k + 1)) * make_rational(step, 12);
      xs.push_back(embed_lattice_measure(nu_star(alpha), norm));
    }
    auto inst = check_sum_bound_instance(cfg.instances + e, xs, caps);
    inst.kind = "extremal";
    ++out.equality_checked;
    if (inst.equality()) ++out.equality_hits;
    out.instances.push_back(std::move(inst));
  }

  double margin_sum = 0.0;
  bool first = true;
  for (const auto& inst : out.instances) {
    if (inst.skipped) {
      ++out.skipped;
      continue;
    }
    ++out.checked;
    if (!inst.holds()) ++out.violations;
    double margin = to_double(inst.t) - to_double(inst.q_sum);
    margin_sum += margin;
    out.min_margin = first ? margin : std::min(out.min_margin, margin);
    first = false;
  }
  out.mean_margin = out.checked ? margin_sum / static_cast<double>(out.checked) : 0.0;
  out.pass = out.violations == 0 && out.equality_hits == out.equality_checked;
  return out;
}

// Instances supplied explicitly: each entry is the list X_1, ..., X_n.
inline sum_bound_result run_verify_sum_bound(const std::vector<std::vector<vector_measure<Rational>>>& instances,
                                             const resource_caps& caps = default_caps()) {
  sum_bound_result out;
  double margin_sum = 0.0;
  bool first = true;
  for (std::size_t id = 0; id < instances.size(); ++id) {
    if (instances[id].empty()) throw input_error("instance " + std::to_string(id) + " has no measures");
    auto inst = check_sum_bound_instance(id, instances[id], caps);
    inst.kind = "input";
    if (inst.skipped) {
      ++out.skipped;
    } else {
      ++out.checked;
      if (!inst.holds()) ++out.violations;
      double margin = to_double(inst.t) - to_double(inst.q_sum);
      margin_sum += margin;
      out.min_margin = first ? margin : std::min(out.min_margin, margin);
      first = false;
    }
    out.instances.push_back(std::move(inst));
  }
  out.mean_margin = out.checked ? margin_sum / static_cast<double>(out.checked) : 0.0;
  out.pass = out.violations == 0;
  return out;
}

}  // namespace anticonc
