#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "anticonc/caps.hpp"
#include "anticonc/graph.hpp"
#include "anticonc/rational.hpp"

namespace anticonc {

struct clique_result {
  Rational weight{0};
  std::vector<std::size_t> vertices;  // ascending
};

namespace detail {

// Branch and bound for the maximum weight clique. The bound for a candidate prefix is
// the sum over greedy colour classes of the heaviest class member in that prefix.
class weighted_clique_search {
 public:
  weighted_clique_search(const dist_graph& g, std::vector<BigInt> weights)
      : g_(g), w_(std::move(weights)) {}

  std::vector<std::size_t> run() {
    std::vector<std::size_t> order(g_.size());
    std::iota(order.begin(), order.end(), 0);
    // heavier and higher-degree vertices last: they are expanded first
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (w_[a] != w_[b]) return w_[a] < w_[b];
      return g_.degree(a) < g_.degree(b);
    });
    best_weight_ = -1;
    std::vector<std::size_t> current;
    expand(current, BigInt(0), order);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  void expand(std::vector<std::size_t>& current, const BigInt& current_weight,
              const std::vector<std::size_t>& candidates) {
    std::vector<std::size_t> ordered;
    std::vector<BigInt> bound;
    colour_sort(candidates, ordered, bound);

    for (std::size_t i = ordered.size(); i-- > 0;) {
      if (current_weight + bound[i] <= best_weight_) return;
      std::size_t v = ordered[i];
      BigInt next_weight = current_weight + w_[v];
      std::vector<std::size_t> next;
      for (std::size_t j = 0; j < i; ++j)
        if (g_.adjacent(v, ordered[j])) next.push_back(ordered[j]);
      current.push_back(v);
      if (next.empty()) {
        if (next_weight > best_weight_) {
          best_weight_ = next_weight;
          best_ = current;
        }
      } else {
        expand(current, next_weight, next);
      }
      current.pop_back();
    }
  }

  void colour_sort(const std::vector<std::size_t>& candidates, std::vector<std::size_t>& ordered,
                   std::vector<BigInt>& bound) const {
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t v : candidates) {
      bool placed = false;
      for (auto& cls : classes) {
        bool conflict = std::any_of(cls.begin(), cls.end(), [&](std::size_t u) { return g_.adjacent(u, v); });
        if (!conflict) {
          cls.push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({v});
    }
    ordered.clear();
    bound.clear();
    BigInt closed(0);
    for (const auto& cls : classes) {
      BigInt heaviest(0);
      for (std::size_t v : cls) {
        if (w_[v] > heaviest) heaviest = w_[v];
        ordered.push_back(v);
        bound.push_back(closed + heaviest);
      }
      closed += heaviest;
    }
  }

  const dist_graph& g_;
  std::vector<BigInt> w_;
  BigInt best_weight_;
  std::vector<std::size_t> best_;
};

}  // namespace detail

// Exact maximum (weighted) clique. Without weights every vertex counts 1.
inline clique_result max_clique(const dist_graph& g, const std::optional<std::vector<Rational>>& weights = std::nullopt,
                                const resource_caps& caps = default_caps()) {
  if (g.size() > caps.clique_vertices)
    throw resource_error("clique solver cap exceeded: " + std::to_string(g.size()) + " > " +
                         std::to_string(caps.clique_vertices));
  clique_result out;
  if (g.size() == 0) return out;

  std::vector<BigInt> scaled(g.size(), BigInt(1));
  BigInt den = 1;
  if (weights) {
    if (weights->size() != g.size()) throw input_error("weight count does not match vertex count");
    for (const auto& w : *weights) {
      if (w < 0) throw domain_error("negative clique weight");
      den = lcm_of(den, w.get_den());
    }
    for (std::size_t i = 0; i < g.size(); ++i) scaled[i] = (*weights)[i].get_num() * (den / (*weights)[i].get_den());
  }

  out.vertices = detail::weighted_clique_search(g, scaled).run();
  for (std::size_t v : out.vertices) out.weight += weights ? (*weights)[v] : Rational(1);
  return out;
}

}  // namespace anticonc
