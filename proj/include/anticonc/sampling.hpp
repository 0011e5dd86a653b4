#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "anticonc/norm.hpp"
#include "anticonc/rational.hpp"

namespace anticonc {

// Portable draws on top of mt19937_64: only the engine's raw output is used, so every
// seeded generator below produces the same values with any standard library.
inline std::uint64_t draw_index(std::mt19937_64& rng, std::uint64_t n) { return n <= 1 ? 0 : rng() % n; }

inline long draw_int(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(draw_index(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

// Uniform on the grid {lo, lo + 1/den, ..., hi} with lo, hi given as numerators over den.
inline Rational draw_grid(std::mt19937_64& rng, long lo_num, long hi_num, long den) {
  return make_rational(draw_int(rng, lo_num, hi_num), den);
}

// Largest numerator w with w/den <= fraction * radius, for the near-line radius of `norm`.
inline long strip_numerator(const norm_spec& norm, const Rational& fraction, long den) {
  if (norm.is_hilbert()) {
    // fraction * sqrt(3)/4 >= w/den  <=>  3 fraction^2 den^2 >= 16 w^2
    long w = static_cast<long>(to_double(fraction) * 0.4330127018922193 * static_cast<double>(den)) + 2;
    const Rational lhs = Rational(3) * fraction * fraction * Rational(den) * Rational(den);
    while (w > 0 && Rational(16L * w * w) > lhs) --w;
    return w;
  }
  BigInt w = floor_of(fraction * Rational(1, 8) * Rational(den));
  return w.get_si();
}

// Points with x on the grid [-x_range, x_range] (step 1/den) and |y| <= strip/den,
// remaining coordinates in the same strip. The first coordinate axis is the line.
inline std::vector<point<Rational>> draw_strip_points(std::mt19937_64& rng, const norm_spec& norm, std::size_t count,
                                                      long x_range_num, long strip_num, long den) {
  std::vector<point<Rational>> out;
  for (std::size_t i = 0; i < count; ++i) {
    point<Rational> x(norm.dimension);
    x[0] = draw_grid(rng, -x_range_num, x_range_num, den);
    for (std::size_t j = 1; j < norm.dimension; ++j) x[j] = draw_grid(rng, -strip_num, strip_num, den);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace anticonc
