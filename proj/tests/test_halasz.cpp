#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "anticonc/halasz.hpp"
#include "anticonc/sampling.hpp"

using namespace anticonc;

namespace {

vector_measure<Rational> random_measure(std::mt19937_64& rng, std::size_t atoms, long range) {
  std::vector<point<Rational>> pts;
  std::vector<Rational> ws;
  long total = 0;
  for (std::size_t i = 0; i < atoms; ++i) {
    pts.push_back({draw_grid(rng, -range, range, 4), draw_grid(rng, -range, range, 4)});
    long w = 1 + static_cast<long>(rng() % 4);
    ws.push_back(Rational(w));
    total += w;
  }
  for (auto& w : ws) w /= total;
  return vector_measure<Rational>(norm_spec::l2(2), pts, ws);
}

// sum_i E min(<X_i - X_i', e>^2, 1) over independent copies, computed pairwise.
double d_oracle(const std::vector<vector_measure<Rational>>& ms, double theta) {
  double c = std::cos(theta), s = std::sin(theta), acc = 0.0;
  for (const auto& m : ms)
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = 0; b < m.size(); ++b) {
        double dx = to_double(m.points()[a][0] - m.points()[b][0]);
        double dy = to_double(m.points()[a][1] - m.points()[b][1]);
        double proj = dx * c + dy * s;
        acc += to_double(m.weights()[a] * m.weights()[b]) * std::min(proj * proj, 1.0);
      }
  return acc;
}

}  // namespace

TEST_CASE("D matches a dense angle scan of the symmetrised moments") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<vector_measure<Rational>> ms;
    for (std::size_t i = 0, n = 1 + rng() % 4; i < n; ++i) ms.push_back(random_measure(rng, 1 + rng() % 4, 8));
    halasz_diagnostics h = compute_halasz(ms, 360, 50);
    double scan = 1e300;
    for (int k = 0; k < 20000; ++k) scan = std::min(scan, d_oracle(ms, std::numbers::pi * k / 20000.0));
    CHECK(h.D <= scan + 1e-9);
    CHECK(h.D >= scan - 1e-4);
    CHECK(h.D == Catch::Approx(d_oracle(ms, h.angle)).margin(1e-12));
    double parts = 0.0;
    for (double d : h.per_measure_D) parts += d;
    CHECK(parts == Catch::Approx(h.D).margin(1e-12));
    CHECK(std::hypot(h.best_direction[0], h.best_direction[1]) == Catch::Approx(1.0));
  }
}

TEST_CASE("shifts minimise the truncated second moment along the direction") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> p, w;
    for (std::size_t k = 0, m = 1 + rng() % 6; k < m; ++k) {
      p.push_back(static_cast<double>(static_cast<long>(rng() % 41) - 20) / 7.0);
      w.push_back(1.0 + static_cast<double>(rng() % 5));
    }
    auto objective = [&](double s) {
      double acc = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) acc += w[k] * std::min((p[k] - s) * (p[k] - s), 1.0);
      return acc;
    };
    double scan = 1e300;
    for (int k = -40000; k <= 40000; ++k) scan = std::min(scan, objective(k / 10000.0 * 1.0));
    double s = detail::best_offset(p, w);
    CHECK(objective(s) <= scan + 1e-9);
  }
}

TEST_CASE("mu covers the origin and every support centre when unrestricted") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<vector_measure<Rational>> ms;
    for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) ms.push_back(random_measure(rng, 1 + rng() % 3, 4));
    halasz_diagnostics h = compute_halasz(ms, 90, 100000);
    // exact oracle: largest sum_i P(|X_i - X_i' - y| < 1) over y in the symmetrised supports
    std::vector<point<Rational>> centres{{Rational(0), Rational(0)}};
    for (const auto& m : ms)
      for (const auto& x : m.points())
        for (const auto& y : m.points()) centres.push_back(x - y);
    Rational best = 0;
    for (const auto& c : centres) {
      Rational acc = 0;
      for (const auto& m : ms)
        for (std::size_t a = 0; a < m.size(); ++a)
          for (std::size_t b = 0; b < m.size(); ++b) {
            point<Rational> diff = m.points()[a] - m.points()[b] - c;
            if (dot(diff, diff) < 1) acc += m.weights()[a] * m.weights()[b];
          }
      best = std::max(best, acc);
    }
    CHECK(h.mu == Catch::Approx(to_double(best)));
    CHECK(h.mu <= static_cast<double>(ms.size()) + 1e-12);
  }
}

TEST_CASE("a single centre evaluates the origin") {
  std::vector<vector_measure<Rational>> ms{
      vector_measure<Rational>::uniform(norm_spec::l2(2), {{Rational(0), Rational(0)}, {Rational(3), Rational(0)}})};
  halasz_diagnostics h = compute_halasz(ms, 10, 1);
  CHECK(h.centers_checked == 1);
  CHECK(h.mu == Catch::Approx(0.5));
  // along e2 the symmetrised law is a point mass, so D vanishes and the bound blows up
  CHECK(h.D == Catch::Approx(0.0).margin(1e-12));
  CHECK(h.bound(1.0) > 1e12);
}

TEST_CASE("bound and exceptional indices follow their formulas") {
  halasz_diagnostics h;
  h.D = 2.0;
  h.mu = 3.0;
  h.per_measure_D = {0.5, 1.0, 0.5, 0.0};
  CHECK(h.bound(2.0) == Catch::Approx(2.0 * 3.0 / 4.0 / 2.0));
  CHECK(h.exceptional_indices(1.0, 0.6) == std::vector<std::size_t>{1});
}

TEST_CASE("non-Euclidean or non-planar inputs are unsupported") {
  auto l1 = vector_measure<Rational>::point_mass(norm_spec::l1(2), {Rational(0), Rational(0)});
  auto l2_3d = vector_measure<Rational>::point_mass(norm_spec::l2(3), {Rational(0), Rational(0), Rational(0)});
  CHECK_THROWS_AS(compute_halasz({l1}, 10, 10), unsupported_error);
  CHECK_THROWS_AS(compute_halasz({l2_3d}, 10, 10), unsupported_error);
  CHECK_THROWS_AS(compute_halasz({}, 10, 10), input_error);
}
