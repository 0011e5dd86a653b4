#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "anticonc/caps.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/geometry.hpp"
#include "anticonc/lattice_measure.hpp"
#include "anticonc/rational.hpp"

namespace anticonc {

// One point of a block or chain. `raw_f` is <u, x> for the frame's functional u, so
// f(x) = raw_f / scale; `tuple` records which factor elements were summed.
struct chain_element {
  point<Rational> point_value;
  Rational raw_f{0};
  std::vector<std::size_t> tuple;
};

// Points pairwise >= 1 apart with f-values ascending and pairwise >= 1/2 apart.
// Chains produced by the decompositions have the same shape.
struct block {
  std::vector<chain_element> elements;

  std::size_t size() const { return elements.size(); }
  std::vector<point<Rational>> points() const {
    std::vector<point<Rational>> out;
    for (const auto& e : elements) out.push_back(e.point_value);
    return out;
  }
};

struct chain_check {
  bool distances_ok = true;
  bool f_gaps_ok = true;
  bool ok() const { return distances_ok && f_gaps_ok; }
};

// Pairwise ||s_i - s_j|| >= 1 and consecutive f-gaps >= 1/2 (hence f(s_j) - f(s_i) >= (j - i)/2).
inline chain_check verify_chain(const line_frame& frame, const block& chain) {
  chain_check out;
  const auto& el = chain.elements;
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = i + 1; j < el.size(); ++j)
      if (norm_power(frame.norm, el[i].point_value - el[j].point_value) < 1) out.distances_ok = false;
    if (i + 1 < el.size()) {
      Rational step = el[i + 1].raw_f - el[i].raw_f;
      if (step <= 0 || !frame.raw_gap_at_least(step, Rational(1, 2))) out.f_gaps_ok = false;
    }
  }
  return out;
}

// Builds a block from points: sorts by f and validates the block conditions.
inline block make_block(const line_frame& frame, const std::vector<point<Rational>>& pts) {
  block b;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    require_dimension(frame.norm, pts[i]);
    b.elements.push_back({pts[i], frame.raw(pts[i]), {i}});
  }
  std::stable_sort(b.elements.begin(), b.elements.end(),
                   [](const chain_element& x, const chain_element& y) { return x.raw_f < y.raw_f; });
  chain_check check = verify_chain(frame, b);
  if (!check.distances_ok) throw domain_error("block points must be pairwise at distance >= 1");
  if (!check.f_gaps_ok) throw domain_error("block f-values must be pairwise separated by >= 1/2");
  return b;
}

struct chain_decomposition {
  std::vector<block> chains;

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out;
    for (const auto& c : chains) out.push_back(c.size());
    return out;
  }
};

// Peels the |A| x |B| sum matrix into chains. With a >= b, x ascending in A and y in B,
// chain k (k = 0..b-1) is x_1+y_{k+1}, ..., x_{a-k}+y_{k+1}, x_{a-k}+y_{k+2}, ..., x_{a-k}+y_b
// and has a + b - 2k - 1 elements. Element tuples are A's tuple followed by B's.
inline chain_decomposition btk_decompose(const block& a_in, const block& b_in) {
  if (a_in.size() == 0 || b_in.size() == 0) throw input_error("blocks must be nonempty");
  const bool swapped = a_in.size() < b_in.size();
  const block& x = swapped ? b_in : a_in;
  const block& y = swapped ? a_in : b_in;
  const std::size_t a = x.size(), b = y.size();

  auto sum = [&](std::size_t i, std::size_t j) {
    const chain_element& u = x.elements[i];
    const chain_element& v = y.elements[j];
    chain_element e;
    e.point_value = u.point_value + v.point_value;
    e.raw_f = u.raw_f + v.raw_f;
    const chain_element& first = swapped ? v : u;
    const chain_element& second = swapped ? u : v;
    e.tuple = first.tuple;
    e.tuple.insert(e.tuple.end(), second.tuple.begin(), second.tuple.end());
    return e;
  };

  chain_decomposition out;
  for (std::size_t k = 0; k < b; ++k) {
    block chain;
    for (std::size_t i = 0; i < a - k; ++i) chain.elements.push_back(sum(i, k));
    for (std::size_t j = k + 1; j < b; ++j) chain.elements.push_back(sum(a - k - 1, j));
    out.chains.push_back(std::move(chain));
  }
  return out;
}

// Number of tuples in prod {0..k_i-1} with coordinate sum ceil(N/2), N = sum (k_i - 1).
inline BigInt middle_layer_count(const std::vector<std::size_t>& ks) {
  std::vector<BigInt> ways(1, BigInt(1));
  std::size_t total = 0;
  for (std::size_t k : ks) {
    if (k == 0) throw domain_error("block sizes must be >= 1");
    std::vector<BigInt> next(ways.size() + k - 1, BigInt(0));
    for (std::size_t s = 0; s < ways.size(); ++s)
      for (std::size_t v = 0; v < k; ++v) next[s + v] += ways[s];
    ways = std::move(next);
    total += k - 1;
  }
  return ways[(total + 1) / 2];
}

// Decomposes S_1 x ... x S_n: the current chains are each paired with the next block in
// input order. Verifies that the element tuples partition the product.
inline chain_decomposition iterated_decompose(const std::vector<block>& blocks, const resource_caps& caps = default_caps()) {
  if (blocks.empty()) throw input_error("iterated decomposition needs at least one block");
  BigInt tuples = 1;
  for (const auto& b : blocks) tuples *= static_cast<unsigned long>(b.size());
  if (tuples > BigInt(static_cast<unsigned long>(caps.product_tuples)))
    throw resource_error("product of " + tuples.get_str() + " tuples exceeds the tuple cap");

  chain_decomposition current;
  current.chains.push_back(blocks.front());
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    chain_decomposition next;
    for (const auto& chain : current.chains) {
      chain_decomposition part = btk_decompose(chain, blocks[i]);
      for (auto& c : part.chains) next.chains.push_back(std::move(c));
    }
    current = std::move(next);
  }

  std::set<std::vector<std::size_t>> seen;
  for (const auto& c : current.chains)
    for (const auto& e : c.elements)
      if (!seen.insert(e.tuple).second) throw std::logic_error("chain decomposition repeats a tuple");
  if (BigInt(static_cast<unsigned long>(seen.size())) != tuples)
    throw std::logic_error("chain decomposition does not cover the product");
  return current;
}

struct jones_report {
  Rational bound{0};          // middle layer count / prod k_i
  Rational t_value{0};        // t(1/k_1, ..., 1/k_n)
  BigInt chain_count{0};
  std::optional<Rational> exact_q;  // Q~ of the uniform sum, when the support fits the caps
  bool bound_matches_t() const { return bound == t_value; }
  bool q_within_bound() const { return !exact_q || *exact_q <= bound; }
  bool holds() const { return bound_matches_t() && q_within_bound(); }
};

// Bound on Q~(X_1 + ... + X_n, 1) for X_i uniform on the blocks.
inline jones_report jones_bound(const line_frame& frame, const std::vector<block>& blocks,
                                const resource_caps& caps = default_caps()) {
  if (blocks.empty()) throw input_error("jones_bound needs at least one block");
  jones_report report;
  std::vector<std::size_t> ks;
  std::vector<Rational> alphas;
  BigInt product = 1;
  for (const auto& b : blocks) {
    ks.push_back(b.size());
    alphas.emplace_back(1, static_cast<long>(b.size()));
    product *= static_cast<unsigned long>(b.size());
  }
  report.chain_count = middle_layer_count(ks);
  report.bound = Rational(report.chain_count, product);
  report.bound.canonicalize();
  report.t_value = t_value(std::span<const Rational>(alphas), caps);

  std::vector<vector_measure<Rational>> measures;
  for (const auto& b : blocks) measures.push_back(vector_measure<Rational>::uniform(frame.norm, b.points()));
  try {
    vector_measure<Rational> sum = product_sum_measure(measures, caps);
    if (sum.size() <= caps.clique_vertices) report.exact_q = concentration_q(sum, caps).value;
  } catch (const resource_error&) {
    // exact Q~ is optional here
  }
  return report;
}

}  // namespace anticonc
