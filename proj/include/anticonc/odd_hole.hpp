#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "anticonc/caps.hpp"
#include "anticonc/graph.hpp"

namespace anticonc {

// An induced odd cycle of length >= 5 in G, or in its complement when in_complement.
struct hole_witness {
  std::vector<std::size_t> cycle;
  bool in_complement = false;
};

// True iff `cycle` (length >= 4) is an induced cycle of g in the listed order.
inline bool is_induced_cycle(const dist_graph& g, const std::vector<std::size_t>& cycle) {
  const std::size_t k = cycle.size();
  if (k < 4) return false;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      if (cycle[a] == cycle[b]) return false;
      bool consecutive = (b == a + 1) || (a == 0 && b == k - 1);
      if (g.adjacent(cycle[a], cycle[b]) != consecutive) return false;
    }
  return true;
}

namespace detail {

// Depth-first extension of induced paths whose smallest vertex is path[0].
class induced_cycle_search {
 public:
  induced_cycle_search(const dist_graph& g, std::size_t length) : g_(g), length_(length), on_path_(g.size()) {}

  std::optional<std::vector<std::size_t>> find() {
    for (std::size_t v = 0; v + length_ <= g_.size(); ++v) {
      path_.assign(1, v);
      on_path_.reset();
      on_path_.set(v);
      if (extend()) return path_;
    }
    return std::nullopt;
  }

 private:
  bool extend() {
    const std::size_t k = path_.size();
    const std::size_t start = path_.front(), last = path_.back();
    const auto& nb = g_.neighbours(last);
    for (std::size_t u = nb.find_next(start); u != vertex_set::npos; u = nb.find_next(u)) {
      if (on_path_.test(u)) continue;
      bool closing = (k + 1 == length_);
      if (closing != g_.adjacent(u, start) && k > 1) continue;
      if (closing && !g_.adjacent(u, start)) continue;
      // no chords back to interior path vertices
      bool chord = false;
      for (std::size_t j = 1; j + 1 < k; ++j)
        if (g_.adjacent(path_[j], u)) { chord = true; break; }
      if (chord) continue;
      path_.push_back(u);
      on_path_.set(u);
      if (closing || extend()) return true;
      on_path_.reset(u);
      path_.pop_back();
    }
    return false;
  }

  const dist_graph& g_;
  std::size_t length_;
  std::vector<std::size_t> path_;
  vertex_set on_path_;
};

}  // namespace detail

// Shortest odd hole (induced odd cycle of length >= 5) of g, or of its complement when
// check_complement is set. Returns nullopt when none exists.
inline std::optional<hole_witness> find_odd_hole(const dist_graph& g, bool check_complement,
                                                 const resource_caps& caps = default_caps()) {
  if (g.size() > caps.odd_hole_vertices)
    throw resource_error("odd-hole search cap exceeded: " + std::to_string(g.size()) + " > " +
                         std::to_string(caps.odd_hole_vertices));
  const dist_graph target = check_complement ? g.complement() : g;
  for (std::size_t length = 5; length <= target.size(); length += 2) {
    if (auto cycle = detail::induced_cycle_search(target, length).find())
      return hole_witness{std::move(*cycle), check_complement};
  }
  return std::nullopt;
}

// Berge: no odd hole in g and none in its complement.
inline bool is_berge(const dist_graph& g, const resource_caps& caps = default_caps()) {
  return !find_odd_hole(g, false, caps) && !find_odd_hole(g, true, caps);
}

}  // namespace anticonc
