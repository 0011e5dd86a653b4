#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "anticonc/caps.hpp"
#include "anticonc/clique.hpp"
#include "anticonc/graph.hpp"

namespace anticonc {

struct coloring_certificate {
  std::size_t num_colors = 0;
  std::vector<std::vector<std::size_t>> classes;  // classes[c] ascending, one per colour

  // Independent check: classes partition 0..n-1 and each class is independent in g.
  bool verify(const dist_graph& g) const {
    if (classes.size() != num_colors) return false;
    std::vector<int> seen(g.size(), 0);
    for (const auto& cls : classes) {
      if (cls.empty() || !g.is_independent(cls)) return false;
      for (std::size_t v : cls) {
        if (v >= g.size() || seen[v]++) return false;
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
  }
};

namespace detail {

// DSATUR branch and bound. Vertex choice: largest saturation, then lowest index;
// colours tried lowest first.
class dsatur_search {
 public:
  explicit dsatur_search(const dist_graph& g)
      : g_(g), n_(g.size()), colour_(n_, -1), conflicts_(n_, std::vector<int>(n_ + 1, 0)), saturation_(n_, 0) {}

  std::vector<int> greedy() {
    std::vector<int> out(n_, -1);
    reset();
    std::size_t used = 0;
    for (std::size_t step = 0; step < n_; ++step) {
      std::size_t v = pick();
      std::size_t c = 0;
      while (conflicts_[v][c] != 0) ++c;
      assign(v, static_cast<int>(c));
      used = std::max(used, c + 1);
    }
    out = colour_;
    return out;
  }

  // Searches for a colouring with fewer than `upper` colours, stopping at `lower`.
  std::vector<int> optimise(std::vector<int> incumbent, std::size_t upper, std::size_t lower,
                            const std::vector<std::size_t>& seed_clique) {
    best_ = std::move(incumbent);
    best_count_ = upper;
    lower_ = lower;
    reset();
    std::size_t used = 0;
    for (std::size_t i = 0; i < seed_clique.size(); ++i) {
      assign(seed_clique[i], static_cast<int>(i));
      used = i + 1;
    }
    search(seed_clique.size(), used);
    return best_;
  }

  std::size_t best_count() const { return best_count_; }

 private:
  void reset() {
    std::fill(colour_.begin(), colour_.end(), -1);
    for (auto& row : conflicts_) std::fill(row.begin(), row.end(), 0);
    std::fill(saturation_.begin(), saturation_.end(), 0);
  }

  std::size_t pick() const {
    std::size_t best = n_;
    for (std::size_t v = 0; v < n_; ++v) {
      if (colour_[v] != -1) continue;
      if (best == n_ || saturation_[v] > saturation_[best]) best = v;
    }
    return best;
  }

  void assign(std::size_t v, int c) {
    colour_[v] = c;
    const auto& nb = g_.neighbours(v);
    for (std::size_t u = nb.find_first(); u != vertex_set::npos; u = nb.find_next(u))
      if (conflicts_[u][static_cast<std::size_t>(c)]++ == 0) ++saturation_[u];
  }

  void unassign(std::size_t v) {
    int c = colour_[v];
    colour_[v] = -1;
    const auto& nb = g_.neighbours(v);
    for (std::size_t u = nb.find_first(); u != vertex_set::npos; u = nb.find_next(u))
      if (--conflicts_[u][static_cast<std::size_t>(c)] == 0) --saturation_[u];
  }

  void search(std::size_t coloured, std::size_t used) {
    if (used >= best_count_) return;
    if (coloured == n_) {
      best_count_ = used;
      best_ = colour_;
      return;
    }
    std::size_t v = pick();
    for (std::size_t c = 0; c <= used && c < n_; ++c) {
      if (conflicts_[v][c] != 0) continue;
      std::size_t next_used = std::max(used, c + 1);
      if (next_used >= best_count_) break;
      assign(v, static_cast<int>(c));
      search(coloured + 1, next_used);
      unassign(v);
      if (best_count_ <= lower_) return;
    }
  }

  const dist_graph& g_;
  std::size_t n_;
  std::vector<int> colour_;
  std::vector<std::vector<int>> conflicts_;
  std::vector<std::size_t> saturation_;
  std::vector<int> best_;
  std::size_t best_count_ = 0;
  std::size_t lower_ = 0;
};

inline coloring_certificate to_certificate(const std::vector<int>& colour) {
  coloring_certificate cert;
  int max_colour = -1;
  for (int c : colour) max_colour = std::max(max_colour, c);
  cert.num_colors = static_cast<std::size_t>(max_colour + 1);
  cert.classes.assign(cert.num_colors, {});
  for (std::size_t v = 0; v < colour.size(); ++v) cert.classes[static_cast<std::size_t>(colour[v])].push_back(v);
  return cert;
}

}  // namespace detail

// Optimal colouring with certificate; the clique number is the lower bound.
inline coloring_certificate chromatic_number(const dist_graph& g, const resource_caps& caps = default_caps()) {
  if (g.size() > caps.coloring_vertices)
    throw resource_error("colouring cap exceeded: " + std::to_string(g.size()) + " > " +
                         std::to_string(caps.coloring_vertices));
  if (g.size() == 0) return {};

  detail::dsatur_search search(g);
  std::vector<int> greedy = search.greedy();
  coloring_certificate cert = detail::to_certificate(greedy);

  resource_caps clique_caps = caps;
  clique_caps.clique_vertices = std::max(caps.clique_vertices, g.size());
  clique_result omega = max_clique(g, std::nullopt, clique_caps);
  if (cert.num_colors == omega.vertices.size()) return cert;

  std::vector<int> best = search.optimise(greedy, cert.num_colors, omega.vertices.size(), omega.vertices);
  return detail::to_certificate(best);
}

}  // namespace anticonc
