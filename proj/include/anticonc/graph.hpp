#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "anticonc/errors.hpp"
#include "anticonc/norm.hpp"

namespace anticonc {

using vertex_set = boost::dynamic_bitset<>;

// Simple undirected graph on vertices 0..n-1. `origin` maps vertices back to indices
// of the point sequence (or parent graph) they were built from.
class dist_graph {
 public:
  dist_graph() = default;
  explicit dist_graph(std::size_t n) : adj_(n, vertex_set(n)) {}

  std::size_t size() const { return adj_.size(); }

  void add_edge(std::size_t i, std::size_t j) {
    if (i == j) throw input_error("self-loop");
    if (i >= size() || j >= size()) throw input_error("edge endpoint out of range");
    adj_[i].set(j);
    adj_[j].set(i);
  }

  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i].test(j); }
  const vertex_set& neighbours(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const { return adj_[v].count(); }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& row : adj_) total += row.count();
    return total / 2;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = adj_[i].find_next(i); j != vertex_set::npos; j = adj_[i].find_next(j))
        out.emplace_back(i, j);
    return out;
  }

  dist_graph complement() const {
    dist_graph out(size());
    for (std::size_t i = 0; i < size(); ++i) {
      out.adj_[i] = ~adj_[i];
      out.adj_[i].reset(i);
    }
    out.origin = origin;
    return out;
  }

  // Induced subgraph on `vertices` (in the given order); origin records parent indices.
  dist_graph induced(const std::vector<std::size_t>& vertices) const {
    dist_graph out(vertices.size());
    for (std::size_t a = 0; a < vertices.size(); ++a)
      for (std::size_t b = a + 1; b < vertices.size(); ++b)
        if (adjacent(vertices[a], vertices[b])) out.add_edge(a, b);
    out.origin = vertices;
    return out;
  }

  bool is_clique(const std::vector<std::size_t>& vs) const {
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b)
        if (vs[a] == vs[b] || !adjacent(vs[a], vs[b])) return false;
    return true;
  }

  bool is_independent(const std::vector<std::size_t>& vs) const {
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b)
        if (adjacent(vs[a], vs[b])) return false;
    return true;
  }

  std::optional<std::vector<std::size_t>> origin;

 private:
  std::vector<vertex_set> adj_;
};

// Strict distance graph: i ~ j iff close(x_i, x_j), i.e. distance < 1. Coincident points
// are always adjacent.
template <class F, class Metric>
dist_graph distance_graph(const std::vector<point<F>>& points, const Metric& metric) {
  dist_graph g(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (metric.close(points[i], points[j])) g.add_edge(i, j);
  std::vector<std::size_t> identity(points.size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  g.origin = std::move(identity);
  return g;
}

template <class F>
dist_graph distance_graph(const std::vector<point<F>>& points, const norm_spec& norm) {
  for (const auto& x : points) require_dimension(norm, x);
  return distance_graph(points, norm_metric<F>{norm});
}

}  // namespace anticonc
