#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "anticonc/caps.hpp"
#include "anticonc/clique.hpp"
#include "anticonc/coloring.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/geometry.hpp"
#include "anticonc/graph.hpp"
#include "anticonc/odd_hole.hpp"

namespace anticonc {

struct perfection_report {
  bool near_line = false;
  double max_deviation = 0.0;
  bool berge = false;
  std::optional<hole_witness> hole;
  std::size_t omega = 0;
  std::size_t chi = 0;
  std::size_t subgraphs_checked = 0;
  std::vector<std::vector<std::size_t>> omega_chi_failures;  // induced vertex sets with omega != chi

  bool perfect_on_sample() const { return omega == chi && omega_chi_failures.empty(); }
  bool holds() const { return near_line && berge && perfect_on_sample(); }
};

// omega(H) == chi(H), with the colouring certificate checked independently.
inline bool omega_equals_chi(const dist_graph& h, const resource_caps& caps, std::size_t* omega = nullptr,
                             std::size_t* chi = nullptr) {
  if (h.size() == 0) return true;
  clique_result w = max_clique(h, std::nullopt, caps);
  coloring_certificate cert = chromatic_number(h, caps);
  if (!cert.verify(h)) throw std::logic_error("colouring certificate failed verification");
  if (omega) *omega = w.vertices.size();
  if (chi) *chi = cert.num_colors;
  return w.vertices.size() == cert.num_colors;
}

// Random vertex subsets, each vertex kept with probability 1/2; empty draws are redrawn.
inline std::vector<std::vector<std::size_t>> random_vertex_subsets(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return out;
  std::mt19937_64 rng(seed);
  while (out.size() < count) {
    std::vector<std::size_t> subset;
    std::uint64_t bits = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (v % 64 == 0) bits = rng();
      if ((bits >> (v % 64)) & 1U) subset.push_back(v);
    }
    if (!subset.empty()) out.push_back(std::move(subset));
  }
  return out;
}

// Checks that a near-line configuration has a Berge distance graph and that omega = chi
// on the graph and on `samples` random induced subgraphs. A configuration that is not
// near a line is reported as such (near_line = false) and still analysed.
inline perfection_report verify_perfection_near_line(const point_config<Rational>& config, std::size_t samples,
                                                     std::uint64_t seed, const resource_caps& caps = default_caps()) {
  perfection_report report;
  if (config.points.empty()) {
    report.near_line = report.berge = true;
    return report;
  }
  near_line_result fit = near_line_fit(config);
  report.near_line = fit.near_line;
  report.max_deviation = fit.max_deviation;

  dist_graph g = distance_graph(config.points, config.norm);
  report.hole = find_odd_hole(g, false, caps);
  if (!report.hole) report.hole = find_odd_hole(g, true, caps);
  report.berge = !report.hole;

  omega_equals_chi(g, caps, &report.omega, &report.chi);
  for (const auto& subset : random_vertex_subsets(g.size(), samples, seed)) {
    ++report.subgraphs_checked;
    if (!omega_equals_chi(g.induced(subset), caps)) report.omega_chi_failures.push_back(subset);
  }
  return report;
}

// Replicates each atom weight * L times, L the lcm of the weight denominators, so that
// the measure becomes uniform on the resulting multiset.
inline point_config<Rational> to_uniform_multiset(const vector_measure<Rational>& measure,
                                                  const resource_caps& caps = default_caps()) {
  BigInt lcm = 1;
  for (const auto& w : measure.weights()) lcm = lcm_of(lcm, w.get_den());
  if (lcm > BigInt(static_cast<unsigned long>(caps.replicas)))
    throw resource_error("replication needs " + lcm.get_str() + " points, above the replica cap");
  point_config<Rational> out;
  out.norm = measure.norm();
  for (std::size_t i = 0; i < measure.size(); ++i) {
    Rational copies = measure.weights()[i] * Rational(lcm);
    for (unsigned long c = 0; c < copies.get_num().get_ui(); ++c) out.points.push_back(measure.points()[i]);
  }
  return out;
}

struct block_decomposition_result {
  std::vector<std::vector<std::size_t>> classes;  // indices into the multiset, each ascending
  std::size_t omega = 0;
  BigInt class_bound{0};  // floor(alpha |S|)
  std::size_t separation_violations = 0;

  std::size_t size() const { return classes.size(); }
  bool holds() const {
    return classes.size() == omega && BigInt(static_cast<unsigned long>(classes.size())) <= class_bound &&
           separation_violations == 0;
  }
};

// Partitions a near-line multiset S with Q~ <= alpha into K = chi(G) = omega(G) classes
// whose members are pairwise at distance >= 1. Each class is an optimal colour class.
inline block_decomposition_result block_decomposition(const point_config<Rational>& multiset, const line_frame& frame,
                                                      const Rational& alpha, const resource_caps& caps = default_caps()) {
  if (multiset.points.empty()) throw input_error("block decomposition needs a nonempty multiset");
  if (!(frame.norm == multiset.norm)) throw input_error("frame and multiset use different norms");
  if (!within_near_line_radius(frame, multiset.points))
    throw domain_error("multiset is not within the near-line radius of the frame's line");

  dist_graph g = distance_graph(multiset.points, multiset.norm);
  block_decomposition_result out;
  clique_result w = max_clique(g, std::nullopt, caps);
  out.omega = w.vertices.size();
  const Rational bound = alpha * Rational(static_cast<long>(multiset.points.size()));
  if (Rational(static_cast<long>(out.omega)) > bound)
    throw domain_error("concentration exceeds alpha: omega = " + std::to_string(out.omega) + " > alpha |S| = " +
                       to_string(bound));
  out.class_bound = floor_of(bound);

  coloring_certificate cert = chromatic_number(g, caps);
  if (!cert.verify(g)) throw std::logic_error("colouring certificate failed verification");
  out.classes = cert.classes;
  for (const auto& cls : out.classes)
    for (std::size_t a = 0; a < cls.size(); ++a)
      for (std::size_t b = a + 1; b < cls.size(); ++b)
        if (norm_power(multiset.norm, multiset.points[cls[a]] - multiset.points[cls[b]]) < 1) ++out.separation_violations;
  return out;
}

}  // namespace anticonc
