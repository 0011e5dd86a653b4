#pragma once

#include <cstddef>
#include <cstdlib>
#include <sstream>
#include <string>

#include "anticonc/errors.hpp"

namespace anticonc {

// Resource limits shared by the exact solvers. Overridable through ANTICONC_CAPS,
// e.g. ANTICONC_CAPS="clique=800,product=500000".
struct resource_caps {
  std::size_t clique_vertices = 500;
  std::size_t coloring_vertices = 200;
  std::size_t odd_hole_vertices = 64;
  std::size_t product_support = 200000;
  std::size_t product_tuples = 1000000;
  std::size_t replicas = 10000;
  std::size_t exact_factors = 64;
  std::size_t lattice_points = 1000000;

  void set(const std::string& key, std::size_t value) {
    if (key == "clique") clique_vertices = value;
    else if (key == "coloring") coloring_vertices = value;
    else if (key == "odd_hole") odd_hole_vertices = value;
    else if (key == "product") product_support = value;
    else if (key == "tuples") product_tuples = value;
    else if (key == "replicas") replicas = value;
    else if (key == "exact_factors") exact_factors = value;
    else if (key == "lattice_points") lattice_points = value;
    else throw input_error("unknown cap '" + key + "'");
  }

  // Parses "key=value,key=value".
  static resource_caps parse(const std::string& spec) { return parse(spec, resource_caps()); }

  static resource_caps parse(const std::string& spec, resource_caps base) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) throw input_error("cap entry '" + item + "' lacks '='");
      std::string key = item.substr(0, eq);
      std::size_t value = 0;
      try {
        value = static_cast<std::size_t>(std::stoull(item.substr(eq + 1)));
      } catch (const std::exception&) {
        throw input_error("cap '" + key + "' is not a non-negative integer");
      }
      base.set(key, value);
    }
    return base;
  }

  static resource_caps from_environment() {
    const char* env = std::getenv("ANTICONC_CAPS");
    return env ? parse(env) : resource_caps();
  }
};

inline const resource_caps& default_caps() {
  static const resource_caps caps = resource_caps::from_environment();
  return caps;
}

}  // namespace anticonc
