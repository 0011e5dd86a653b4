#include "catch_amalgamated.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "anticonc/perfection.hpp"
#include "anticonc/sampling.hpp"

using namespace anticonc;

namespace {

std::vector<norm_spec> strip_norms() { return {norm_spec::l2(2), norm_spec::l1(2), norm_spec::linf(2)}; }

// Largest set of pairwise-close points by enumerating subsets of the distinct atoms;
// copies of one atom are always mutually close.
std::size_t omega_oracle(const point_config<Rational>& cfg) {
  std::vector<point<Rational>> atoms;
  std::vector<std::size_t> copies;
  for (const auto& x : cfg.points) {
    auto it = std::find(atoms.begin(), atoms.end(), x);
    if (it == atoms.end()) {
      atoms.push_back(x);
      copies.push_back(1);
    } else {
      ++copies[static_cast<std::size_t>(it - atoms.begin())];
    }
  }
  const std::size_t n = atoms.size();
  std::size_t best = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool close = true;
    std::size_t size = 0;
    for (std::size_t i = 0; i < n && close; ++i) {
      if (!(mask >> i & 1u)) continue;
      size += copies[i];
      for (std::size_t j = i + 1; j < n && close; ++j)
        if ((mask >> j & 1u) && norm_power(cfg.norm, atoms[i] - atoms[j]) >= 1) close = false;
    }
    if (close) best = std::max(best, size);
  }
  return best;
}

}  // namespace

TEST_CASE("near-line strip configurations are perfect") {
  std::mt19937_64 rng(1);
  for (const auto& n : strip_norms()) {
    const long den = 1000, w = strip_numerator(n, Rational(9, 10), den);
    for (int trial = 0; trial < 60; ++trial) {
      point_config<Rational> cfg(n, draw_strip_points(rng, n, 1 + rng() % 12, 2 * den, w, den));
      perfection_report r = verify_perfection_near_line(cfg, 10, rng());
      INFO(n.name());
      CHECK(r.near_line);
      CHECK(r.berge);
      CHECK(r.perfect_on_sample());
      CHECK(r.subgraphs_checked == 10);
      CHECK(r.omega == omega_oracle(cfg));
    }
  }
}

TEST_CASE("a unit pentagon is reported as an imperfect configuration") {
  // regular pentagon with side 0.9 and diagonal about 1.46: the distance graph is C5
  std::vector<point<Rational>> pts;
  for (int k = 0; k < 5; ++k) {
    double th = 2 * 3.141592653589793 * k / 5;
    const double r = 0.9 / (2 * std::sin(3.141592653589793 / 5));
    pts.push_back({from_double(r * std::cos(th)), from_double(r * std::sin(th))});
  }
  perfection_report r = verify_perfection_near_line(point_config<Rational>(norm_spec::l2(2), pts), 5, 1);
  CHECK_FALSE(r.near_line);
  CHECK_FALSE(r.berge);
  REQUIRE(r.hole);
  CHECK(r.hole->cycle.size() == 5);
  CHECK(r.omega == 2);
  CHECK(r.chi == 3);
  CHECK_FALSE(r.holds());
}

TEST_CASE("random vertex subsets are seeded and nonempty") {
  auto a = random_vertex_subsets(12, 20, 3), b = random_vertex_subsets(12, 20, 3);
  CHECK(a == b);
  for (const auto& s : a) {
    CHECK_FALSE(s.empty());
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(s.back() < 12);
  }
  CHECK(random_vertex_subsets(0, 5, 1).empty());
}

TEST_CASE("uniform multiset replicates atoms by weight") {
  auto n = norm_spec::l1(2);
  vector_measure<Rational> mu(n, {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}}, {Rational(1, 3), Rational(2, 3)});
  point_config<Rational> s = to_uniform_multiset(mu);
  CHECK(s.points.size() == 3);
  CHECK(std::count(s.points.begin(), s.points.end(), mu.points()[1]) == 2);
  resource_caps caps;
  caps.replicas = 2;
  CHECK_THROWS_AS(to_uniform_multiset(mu, caps), resource_error);
}

TEST_CASE("block decomposition yields omega separated classes") {
  std::mt19937_64 rng(2);
  for (const auto& n : strip_norms()) {
    const long den = 100, w = strip_numerator(n, Rational(9, 10), den);
    for (int trial = 0; trial < 40; ++trial) {
      // repeated atoms make the multiset genuinely non-simple
      auto atoms = draw_strip_points(rng, n, 1 + rng() % 7, 3 * den, w, den);
      std::vector<point<Rational>> pts;
      for (const auto& x : atoms)
        for (std::size_t r = 0, copies = 1 + rng() % 3; r < copies; ++r) pts.push_back(x);
      point_config<Rational> cfg(n, pts);
      line_frame frame = near_line_fit(cfg).frame;
      const std::size_t omega = omega_oracle(cfg);
      const Rational alpha = make_rational(static_cast<long>(omega), static_cast<long>(pts.size()));

      block_decomposition_result r = block_decomposition(cfg, frame, alpha);
      INFO(n.name());
      CHECK(r.holds());
      CHECK(r.size() == omega);
      CHECK(r.class_bound == static_cast<long>(omega));
      std::vector<std::size_t> seen;
      for (const auto& cls : r.classes) {
        for (std::size_t a = 0; a < cls.size(); ++a) {
          seen.push_back(cls[a]);
          for (std::size_t b = a + 1; b < cls.size(); ++b) CHECK(norm_power(n, pts[cls[a]] - pts[cls[b]]) >= 1);
        }
      }
      std::sort(seen.begin(), seen.end());
      std::vector<std::size_t> all(pts.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      CHECK(seen == all);

      if (omega > 1) {
        const Rational too_small = make_rational(static_cast<long>(omega) - 1, static_cast<long>(pts.size()));
        CHECK_THROWS_AS(block_decomposition(cfg, frame, too_small), domain_error);
      }
    }
  }
}

TEST_CASE("block decomposition rejects configurations off the line") {
  point_config<Rational> cfg(norm_spec::l2(2), {{Rational(0), Rational(0)}, {Rational(0), Rational(2)}});
  line_frame frame = supporting_functional(cfg.norm, {Rational(1), Rational(0)});
  CHECK_THROWS_AS(block_decomposition(cfg, frame, Rational(1)), domain_error);
  line_frame wrong = supporting_functional(norm_spec::l1(2), {Rational(1), Rational(0)});
  point_config<Rational> on_line(norm_spec::l2(2), {{Rational(0), Rational(0)}});
  CHECK_THROWS_AS(block_decomposition(on_line, wrong, Rational(1)), input_error);
}
