#pragma once

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "anticonc/bounds.hpp"
#include "anticonc/caps.hpp"
#include "anticonc/chains.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/geometry.hpp"
#include "anticonc/halasz.hpp"
#include "anticonc/json_io.hpp"
#include "anticonc/lattice_measure.hpp"
#include "anticonc/perfection.hpp"
#include "anticonc/scenarios.hpp"

namespace anticonc::cli {

using json = nlohmann::json;

enum exit_code : int { ok = 0, assertion_failed = 1, bad_input = 2 };

// A report and the verdict of whatever it asserts.
struct outcome {
  json report;
  bool pass = true;
};

namespace detail {

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error("input file '" + path + "' is not valid JSON: " + e.what());
  }
}

// One "path,value" row per scalar leaf.
inline void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix.empty() ? "value" : prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void emit(const json& report, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << csv_field(k) << ',' << csv_field(v) << '\n';
  } else {
    out << report.dump(2) << '\n';
  }
}

inline line_frame frame_for(const point_config<Rational>& config, const json& input) {
  if (input.contains("direction")) {
    point<Rational> dir = json_io::point_from(input["direction"], config.norm.dimension, "direction");
    line_frame f = supporting_functional(config.norm, dir);
    f.base_point = anticonc::detail::fit_base_point(config.norm, config.points, dir);
    return f;
  }
  return near_line_fit(config).frame;
}

inline json conditions_report(const std::vector<condition_check>& cs) {
  json out = json_io::to_json(cs);
  return out;
}

inline json optional_rational(const std::optional<Rational>& r) { return r ? json(to_string(*r)) : json(nullptr); }

}  // namespace detail

// ---- commands

inline outcome cmd_nu_star(const std::string& alpha) {
  return {json_io::to_json(nu_star(parse_rational(alpha))), true};
}

inline outcome cmd_t_value(const std::string& alphas, const resource_caps& caps) {
  std::vector<Rational> a = json_io::parse_alpha_list(alphas);
  t_evaluation t = evaluate_t(a, caps);
  if (t.exact) return {json(to_string(*t.exact_value)), true};
  return {json(t.value), true};
}

inline outcome cmd_concentration(const json& input, const resource_caps& caps) {
  if (input.contains("offset_index")) {
    lattice_measure m = json_io::lattice_measure_from(input);
    return {{{"value", to_string(concentration_1d(m))}}, true};
  }
  vector_measure<Rational> m = json_io::vector_measure_from(input);
  auto q = concentration_q(m, caps);
  return {{{"value", to_string(q.value)}, {"witness", json_io::to_json(q.witness_points)}}, true};
}

inline outcome cmd_berge_check(const json& input, bool complement, const resource_caps& caps) {
  dist_graph g = input.contains("edges") ? json_io::graph_from(input)
                                         : [&] {
                                             auto config = json_io::point_config_from(input);
                                             return distance_graph(config.points, config.norm);
                                           }();
  std::optional<hole_witness> hole = find_odd_hole(g, false, caps);
  if (!hole && complement) hole = find_odd_hole(g, true, caps);
  json report{{"vertices", g.size()}, {"edges", g.edge_count()}, {"complement_checked", complement}};
  report["odd_hole"] = hole ? json_io::to_json(*hole) : json(nullptr);
  if (complement) report["berge"] = !hole.has_value();
  return {report, true};
}

inline outcome cmd_decompose(const json& input, const std::optional<std::string>& alpha_text, const resource_caps& caps) {
  point_config<Rational> multiset;
  std::optional<Rational> q;
  if (input.contains("atoms") && !input["atoms"].empty() && input["atoms"][0].contains("weight")) {
    vector_measure<Rational> m = json_io::vector_measure_from(input);
    multiset = to_uniform_multiset(m, caps);
    q = concentration_q(m, caps).value;
  } else {
    multiset = json_io::point_config_from(input);
    q = Rational(static_cast<long>(max_clique(distance_graph(multiset.points, multiset.norm), std::nullopt, caps).vertices.size()),
                 static_cast<long>(multiset.points.size()));
    q->canonicalize();
  }
  const Rational alpha = alpha_text ? parse_rational(*alpha_text) : *q;
  line_frame frame = detail::frame_for(multiset, input);
  block_decomposition_result r = block_decomposition(multiset, frame, alpha, caps);
  json classes = json::array();
  for (const auto& cls : r.classes) {
    std::vector<point<Rational>> pts;
    for (std::size_t v : cls) pts.push_back(multiset.points[v]);
    classes.push_back(json_io::to_json(pts));
  }
  json report{{"K", r.size()},
              {"omega", r.omega},
              {"alpha", to_string(alpha)},
              {"class_bound", r.class_bound.get_str()},
              {"separation_violations", r.separation_violations},
              {"classes", classes},
              {"class_indices", r.classes},
              {"frame", json_io::to_json(frame)},
              {"holds", r.holds()}};
  return {report, r.holds()};
}

inline std::vector<block> blocks_from(const json& input, line_frame& frame) {
  norm_spec norm = json_io::header_from(input);
  const json& list = json_io::require(input, "blocks", "");
  if (!list.is_array() || list.empty()) throw input_error("field 'blocks' must be a nonempty array");
  std::vector<std::vector<point<Rational>>> raw;
  point_config<Rational> all;
  all.norm = norm;
  for (std::size_t b = 0; b < list.size(); ++b) {
    const std::string f = "blocks[" + std::to_string(b) + "]";
    if (!list[b].is_array() || list[b].empty()) throw input_error("field '" + f + "' must be a nonempty array of points");
    std::vector<point<Rational>> pts;
    for (std::size_t i = 0; i < list[b].size(); ++i)
      pts.push_back(json_io::point_from(list[b][i], norm.dimension, f + "[" + std::to_string(i) + "]"));
    all.points.insert(all.points.end(), pts.begin(), pts.end());
    raw.push_back(std::move(pts));
  }
  frame = detail::frame_for(all, input);
  std::vector<block> blocks;
  for (std::size_t b = 0; b < raw.size(); ++b) {
    try {
      blocks.push_back(make_block(frame, raw[b]));
    } catch (const domain_error& e) {
      throw input_error("field 'blocks[" + std::to_string(b) + "]': " + e.what());
    }
  }
  return blocks;
}

inline outcome cmd_btk_chains(const json& input, const resource_caps& caps) {
  line_frame frame;
  std::vector<block> blocks = blocks_from(input, frame);
  chain_decomposition d = blocks.size() == 2 ? btk_decompose(blocks[0], blocks[1]) : iterated_decompose(blocks, caps);
  bool verified = true;
  for (const auto& c : d.chains) verified = verified && verify_chain(frame, c).ok();
  json report{{"chains", json_io::to_json(d)}, {"sizes", d.sizes()}, {"verified", verified}, {"frame", json_io::to_json(frame)}};
  if (blocks.size() > 2) {
    std::vector<std::size_t> ks;
    for (const auto& b : blocks) ks.push_back(b.size());
    report["middle_layer_count"] = middle_layer_count(ks).get_str();
  }
  return {report, verified};
}

inline outcome cmd_jones_bound(const json& input, const resource_caps& caps) {
  line_frame frame;
  std::vector<block> blocks = blocks_from(input, frame);
  jones_report r = jones_bound(frame, blocks, caps);
  json report{{"bound", to_string(r.bound)},
              {"t", to_string(r.t_value)},
              {"chains", r.chain_count.get_str()},
              {"exact_q", detail::optional_rational(r.exact_q)},
              {"bound_matches_t", r.bound_matches_t()},
              {"q_within_bound", r.q_within_bound()}};
  return {report, r.holds()};
}

inline outcome cmd_clt_window(const std::string& alphas, const std::string& c, std::optional<double> delta_prime,
                              const resource_caps& caps) {
  std::vector<Rational> a = json_io::parse_alpha_list(alphas);
  const double dp = delta_prime ? *delta_prime : minimal_delta_prime(a);
  clt_report r = clt_window(a, parse_rational(c), dp, caps);
  const condition_check* failed = first_failure(r.conditions);
  json report{{"conditions", detail::conditions_report(r.conditions)},
              {"first_failure", failed ? json(failed->name) : json(nullptr)},
              {"variance", to_string(r.variance)},
              {"delta_prime", dp}};
  if (r.variance > 0) {
    report["epsilon_prime"] = r.epsilon_prime;
    report["center"] = r.center;
    report["interval"] = {r.lower, r.upper};
    report["t"] = r.t;
    report["t_exact"] = r.t_exact;
    report["exact_t"] = detail::optional_rational(r.exact_t);
    report["contained"] = r.contained;
    report["relative_error"] = r.relative_error;
  }
  return {report, r.conditions_hold() && r.contained};
}

inline outcome cmd_main_bound(const main_bound_params& params, const resource_caps& caps) {
  main_bound_report r = main_bound(params, caps);
  const condition_check* failed = first_failure(r.conditions);
  json report{{"conditions", detail::conditions_report(r.conditions)},
              {"first_failure", failed ? json(failed->name) : json(nullptr)},
              {"n", r.n},
              {"alpha_bar", to_string(r.alpha_bar)},
              {"variance", to_string(r.variance)},
              {"xi", r.xi_value},
              {"delta_prime", r.delta_prime},
              {"epsilon_prime", r.epsilon_prime},
              {"gamma", r.gamma},
              {"m", r.m},
              {"t", r.t},
              {"t_exact", r.t_exact},
              {"exact_t", detail::optional_rational(r.exact_t)},
              {"expression", std::isfinite(r.expression) ? json(r.expression) : json(nullptr)},
              {"value", r.value ? json(*r.value) : json(nullptr)}};
  return {report, r.conditions_hold()};
}

inline outcome cmd_halasz(const json& input, std::size_t directions, std::size_t centers, std::optional<double> c_h,
                          const resource_caps& caps) {
  const json& list = input.is_array() ? input : json_io::require(input, "measures", "");
  if (!list.is_array() || list.empty()) throw input_error("field 'measures' must be a nonempty array");
  std::vector<vector_measure<Rational>> ms;
  for (std::size_t i = 0; i < list.size(); ++i) ms.push_back(json_io::vector_measure_from(list[i], "measures[" + std::to_string(i) + "]"));
  halasz_diagnostics d = compute_halasz(ms, directions, centers, caps);
  json shifts = json::array();
  for (const auto& s : d.shifts) shifts.push_back({s[0], s[1]});
  json report{{"D", d.D},
              {"mu", d.mu},
              {"angle", d.angle},
              {"best_direction", {d.best_direction[0], d.best_direction[1]}},
              {"per_measure_D", d.per_measure_D},
              {"shifts", shifts},
              {"centers_checked", d.centers_checked},
              {"D_is_upper_bound", true}};
  if (c_h) report["bound"] = std::isfinite(d.bound(*c_h)) ? json(d.bound(*c_h)) : json(nullptr);
  return {report, true};
}

inline outcome cmd_octagon(const resource_caps& caps) {
  octagon_result r = run_octagon_scenario(caps);
  json witness = json::array();
  for (const auto& p : r.witness) witness.push_back({to_string(p[0]), to_string(p[1])});
  json report{{"name", "octagon"},
              {"q_single", to_string(r.q_single)},
              {"q_sum", to_string(r.q_sum)},
              {"t", to_string(r.t)},
              {"witness", witness},
              {"sum_support", r.sum_support},
              {"sum_center_weight", to_string(r.sum_center_weight)},
              {"contrast_q_radius_half", to_string(r.contrast_q)},
              {"pass", r.pass}};
  return {report, r.pass};
}

inline outcome cmd_sharpness(const std::string& eps, std::size_t instances, std::uint64_t seed, const resource_caps& caps) {
  sharpness_result r = run_sharpness_scenario(parse_rational(eps), instances, seed, caps);
  json report{{"name", "sharpness"},
              {"epsilon", to_string(r.epsilon)},
              {"max_abs_y", to_string(r.max_abs_y)},
              {"max_abs_y_approx", to_double(r.max_abs_y)},
              {"beyond_strip", r.beyond_strip},
              {"edges", r.edge_count},
              {"odd_hole", r.hole ? json_io::to_json(*r.hole) : json(nullptr)},
              {"squeezed_max_abs_y_approx", to_double(r.scaled_max_abs_y)},
              {"squeezed_within_strip", r.scaled_within_strip},
              {"squeezed_berge", r.scaled_berge},
              {"random_instances", r.random_batch.instances},
              {"random_berge", r.random_batch.berge},
              {"pass", r.pass}};
  return {report, r.pass};
}

inline sum_bound_config sum_bound_config_from(const json& j) {
  sum_bound_config cfg;
  auto size_field = [&](const char* key, std::size_t& target) {
    if (j.contains(key)) target = json_io::size_from(j[key], key);
  };
  size_field("instances", cfg.instances);
  size_field("max_n", cfg.max_n);
  size_field("max_atoms", cfg.max_atoms);
  size_field("max_weight", cfg.max_weight);
  size_field("equality_instances", cfg.equality_instances);
  size_field("max_k", cfg.max_k);
  if (j.contains("x_range")) cfg.x_range = static_cast<long>(json_io::size_from(j["x_range"], "x_range"));
  if (j.contains("denominator")) cfg.denominator = static_cast<long>(json_io::size_from(j["denominator"], "denominator"));
  if (j.contains("strip_fraction")) cfg.strip_fraction = json_io::rational_from(j["strip_fraction"], "strip_fraction");
  if (cfg.denominator <= 0) throw input_error("field 'denominator' must be positive");
  if (cfg.strip_fraction <= 0 || cfg.strip_fraction >= 1) throw input_error("field 'strip_fraction' must lie in (0,1)");
  if (j.contains("norms")) {
    cfg.norms.clear();
    for (std::size_t i = 0; i < j["norms"].size(); ++i) cfg.norms.push_back(json_io::norm_from(j["norms"][i], 2));
  }
  return cfg;
}

inline outcome cmd_verify_sum_bound(const std::optional<json>& instances, const std::optional<json>& config,
                                    std::uint64_t seed, bool details, const resource_caps& caps) {
  sum_bound_result r;
  if (instances) {
    const json& list = instances->is_array() ? *instances : json_io::require(*instances, "instances", "");
    std::vector<std::vector<vector_measure<Rational>>> parsed;
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::vector<vector_measure<Rational>> xs;
      for (std::size_t k = 0; k < list[i].size(); ++k)
        xs.push_back(json_io::vector_measure_from(list[i][k], "instances[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
      parsed.push_back(std::move(xs));
    }
    r = run_verify_sum_bound(parsed, caps);
  } else {
    r = run_verify_sum_bound(config ? sum_bound_config_from(*config) : sum_bound_config{}, seed, caps);
  }
  json report{{"name", "verify-theorem22"},
              {"seed", seed},
              {"checked", r.checked},
              {"skipped", r.skipped},
              {"violations", r.violations},
              {"equality_checked", r.equality_checked},
              {"equality_hits", r.equality_hits},
              {"min_margin", r.min_margin},
              {"mean_margin", r.mean_margin},
              {"pass", r.pass}};
  json listed = json::array();
  for (const auto& inst : r.instances) {
    if (!details && inst.holds() && !inst.skipped) continue;
    json alphas = json::array();
    for (const auto& a : inst.alphas) alphas.push_back(to_string(a));
    listed.push_back({{"id", inst.id},
                      {"kind", inst.kind},
                      {"norm", inst.norm},
                      {"alphas", alphas},
                      {"q_sum", to_string(inst.q_sum)},
                      {"t", to_string(inst.t)},
                      {"holds", inst.holds()},
                      {"skipped", inst.skipped},
                      {"notice", inst.notice}});
  }
  report["instances"] = listed;
  return {report, r.pass};
}

inline outcome cmd_empirical(const json& input, std::size_t n, const std::string& delta, std::uint64_t seed) {
  vector_measure<Rational> m = json_io::vector_measure_from(input);
  return {json_io::to_json(empirical_measure(m, n, parse_rational(delta), seed)), true};
}

// ---- dispatch

// Parses `args` (args[0] is the program name), runs the subcommand and writes the report
// to `out`. Returns 0 on success, 1 when an asserted check fails, 2 on bad input.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact anticoncentration toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  std::uint64_t seed = 0;
  app.add_option("--output", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "Seed for randomised commands");

  std::string alpha, alphas, input_path, c_text = "1/4", eps_text = "1/1000", delta_text = "1/100", config_path;
  std::optional<std::string> alpha_opt;
  std::optional<double> delta_prime, gamma, c_h;
  bool complement = false, details = false;
  std::size_t directions = 360, centers = 400, instances = 1000, sample_n = 100, dim = 2;
  double big_c = 1.0;

  auto* nu = app.add_subcommand("nu-star", "Extremal lattice measure for alpha");
  nu->add_option("--alpha", alpha, "alpha in (0,1]")->required();

  auto* tv = app.add_subcommand("t-value", "Mass of {0, 1/2} under the extremal sum");
  tv->add_option("--alphas", alphas, "Comma separated, a*r repeats a r times")->required();

  auto* conc = app.add_subcommand("concentration", "Exact concentration of a measure");
  conc->add_option("--input", input_path, "Measure JSON")->required();

  auto* berge = app.add_subcommand("berge-check", "Odd hole search on a distance graph");
  berge->add_option("--input", input_path, "Point configuration or graph JSON")->required();
  berge->add_flag("--complement", complement, "Also search the complement (full Berge check)");

  auto* dec = app.add_subcommand("decompose", "Block decomposition of a near-line multiset");
  dec->add_option("--input", input_path, "Measure or point configuration JSON")->required();
  dec->add_option("--alpha", alpha_opt, "Concentration bound (defaults to the exact value)");

  auto* btk = app.add_subcommand("btk-chains", "Chain decomposition of a product of blocks");
  btk->add_option("--input", input_path, "Blocks JSON")->required();

  auto* jones = app.add_subcommand("jones-bound", "Middle layer bound for a product of blocks");
  jones->add_option("--input", input_path, "Blocks JSON")->required();

  auto* clt = app.add_subcommand("clt-window", "Local CLT window for t");
  clt->add_option("--alphas", alphas, "Comma separated, a*r repeats a r times")->required();
  clt->add_option("--c", c_text, "c in (0,1)");
  clt->add_option("--delta-prime", delta_prime, "delta' (defaults to the smallest admissible value)");

  auto* mb = app.add_subcommand("main-bound", "General bound with all hypotheses checked");
  mb->add_option("--alphas", alphas, "Comma separated, a*r repeats a r times")->required();
  mb->add_option("--d", dim, "Dimension d >= 2");
  mb->add_option("--c", c_text, "c in (0,1/3)");
  mb->add_option("--delta-prime", delta_prime, "delta'");
  mb->add_option("--gamma", gamma, "gamma");
  mb->add_option("--C", big_c, "Norm constant C (user supplied)");

  auto* hal = app.add_subcommand("halasz", "Halasz diagnostics D and mu (Euclidean plane)");
  hal->add_option("--input", input_path, "List of measures JSON")->required();
  hal->add_option("--directions", directions, "Angle grid size");
  hal->add_option("--centers", centers, "Candidate centre budget");
  hal->add_option("--c-h", c_h, "Halasz constant for the bound (user supplied)");

  auto* oct = app.add_subcommand("octagon", "Regular octagon counterexample");

  auto* sharp = app.add_subcommand("sharpness", "Five-point configuration beyond the strip");
  sharp->add_option("--epsilon", eps_text, "Perturbation size in [0, 1/100)");
  sharp->add_option("--instances", instances, "Random strip instances");

  auto* thm = app.add_subcommand("verify-theorem22", "Q(sum) <= t on near-line instances");
  thm->add_option("--input", input_path, "Explicit instances JSON");
  thm->add_option("--config", config_path, "Generator config JSON");
  thm->add_flag("--details", details, "List every instance");

  auto* emp = app.add_subcommand("empirical", "Empirical measure of a dilated measure");
  emp->add_option("--input", input_path, "Measure JSON")->required();
  emp->add_option("--n", sample_n, "Sample count");
  emp->add_option("--delta", delta_text, "Dilation delta > 0");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return bad_input;
  }

  try {
    const resource_caps caps = resource_caps::from_environment();
    outcome result;
    if (*nu) result = cmd_nu_star(alpha);
    else if (*tv) result = cmd_t_value(alphas, caps);
    else if (*conc) result = cmd_concentration(detail::read_json_file(input_path), caps);
    else if (*berge) result = cmd_berge_check(detail::read_json_file(input_path), complement, caps);
    else if (*dec) result = cmd_decompose(detail::read_json_file(input_path), alpha_opt, caps);
    else if (*btk) result = cmd_btk_chains(detail::read_json_file(input_path), caps);
    else if (*jones) result = cmd_jones_bound(detail::read_json_file(input_path), caps);
    else if (*clt) result = cmd_clt_window(alphas, c_text, delta_prime, caps);
    else if (*mb) {
      main_bound_params p;
      p.alphas = json_io::parse_alpha_list(alphas);
      p.d = dim;
      p.c = parse_rational(c_text);
      p.delta_prime = delta_prime;
      p.gamma = gamma;
      p.C = big_c;
      result = cmd_main_bound(p, caps);
    } else if (*hal) result = cmd_halasz(detail::read_json_file(input_path), directions, centers, c_h, caps);
    else if (*oct) result = cmd_octagon(caps);
    else if (*sharp) result = cmd_sharpness(eps_text, instances, seed, caps);
    else if (*thm) {
      std::optional<json> inst, cfg;
      if (!input_path.empty()) inst = detail::read_json_file(input_path);
      if (!config_path.empty()) cfg = detail::read_json_file(config_path);
      result = cmd_verify_sum_bound(inst, cfg, seed, details, caps);
    } else if (*emp) result = cmd_empirical(detail::read_json_file(input_path), sample_n, delta_text, seed);

    detail::emit(result.report, format, out);
    return result.pass ? ok : assertion_failed;
  } catch (const input_error& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const domain_error& e) {
    err << "domain error: " << e.what() << '\n';
  } catch (const resource_error& e) {
    err << "resource cap: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << '\n';
  }
  return bad_input;
}

}  // namespace anticonc::cli
