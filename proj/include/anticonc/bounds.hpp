#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anticonc/caps.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/lattice_measure.hpp"
#include "anticonc/rational.hpp"

namespace anticonc {

struct condition_check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline const condition_check* first_failure(const std::vector<condition_check>& conditions) {
  for (const auto& c : conditions)
    if (!c.holds) return &c;
  return nullptr;
}

namespace detail {

inline std::vector<Rational> sorted_descending(std::span<const Rational> alphas) {
  if (alphas.empty()) throw domain_error("alpha list must be nonempty");
  std::vector<Rational> out(alphas.begin(), alphas.end());
  for (const auto& a : out) require_alpha(a);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline Rational alpha_mean(const std::vector<Rational>& alphas) {
  Rational sum(0);
  for (const auto& a : alphas) sum += a;
  return sum / Rational(static_cast<long>(alphas.size()));
}

inline Rational third_moment_sum(const std::vector<Rational>& alphas) {
  Rational sum(0);
  for (const auto& a : alphas) sum += third_abs_moment(a);
  return sum;
}

inline std::size_t ceil_index(std::size_t n, const Rational& fraction) {
  BigInt v = ceil_of(Rational(static_cast<long>(n)) * fraction);
  return static_cast<std::size_t>(v.get_ui());
}

// 405 sqrt(delta') c^{-3/4} <= bound, decided exactly: (405^2 delta' / bound^2)^2 <= c^3.
inline bool epsilon_at_most(const Rational& delta_prime, const Rational& c, const Rational& bound) {
  Rational lhs = Rational(405 * 405) * delta_prime / (bound * bound);
  return lhs * lhs <= c * c * c;
}

inline double epsilon_prime(double delta_prime, double c) { return 405.0 * std::sqrt(delta_prime) * std::pow(c, -0.75); }

}  // namespace detail

// Smallest delta' allowed by the third-moment condition: sum E|Y_i|^3 / (V*)^{3/2}.
inline double minimal_delta_prime(std::span<const Rational> alphas) {
  std::vector<Rational> a = detail::sorted_descending(alphas);
  Rational v = make_variance_profile(a).total;
  if (v == 0) return std::numeric_limits<double>::infinity();
  return to_double(detail::third_moment_sum(a)) / std::pow(to_double(v), 1.5);
}

// Local-CLT window (1 +- eps') / sqrt(2 pi V*) for t(alpha_1, ..., alpha_n).
struct clt_report {
  std::vector<condition_check> conditions;
  Rational variance{0};
  double epsilon_prime = 0.0;
  double center = 0.0;  // 1 / sqrt(2 pi V*)
  double lower = 0.0;
  double upper = 0.0;
  double t = 0.0;
  bool t_exact = false;
  std::optional<Rational> exact_t;
  bool contained = false;
  double relative_error = 0.0;  // |t sqrt(2 pi V*) - 1|

  bool conditions_hold() const { return first_failure(conditions) == nullptr; }
};

inline clt_report clt_window(std::span<const Rational> alphas_in, const Rational& c, double delta_prime,
                             const resource_caps& caps = default_caps()) {
  if (c <= 0 || c >= 1) throw domain_error("c must lie in (0,1)");
  if (!(delta_prime > 0.0 && delta_prime < 1.0)) throw domain_error("delta' must lie in (0,1)");
  std::vector<Rational> alphas = detail::sorted_descending(alphas_in);
  const std::size_t n = alphas.size();
  variance_profile profile = make_variance_profile(alphas);
  const Rational& v = profile.total;

  clt_report r;
  r.variance = v;
  r.conditions.push_back({"variance_positive", to_double(v), 0.0, v > 0});
  if (v == 0) return r;

  const Rational half_tail = profile.prefix(detail::ceil_index(n, Rational(1) - c));
  r.conditions.push_back({"tail_variance_half", to_double(half_tail), to_double(v) / 2, half_tail * 2 >= v});

  const Rational cubes = detail::third_moment_sum(alphas);
  const Rational dp = from_double(delta_prime);
  r.conditions.push_back({"third_moment", to_double(cubes), delta_prime * std::pow(to_double(v), 1.5),
                          cubes * cubes <= dp * dp * v * v * v});

  r.epsilon_prime = detail::epsilon_prime(delta_prime, to_double(c));
  r.conditions.push_back({"epsilon_at_most_half", r.epsilon_prime, 0.5, detail::epsilon_at_most(dp, c, Rational(1, 2))});

  const long double root = std::sqrt(2.0L * std::numbers::pi_v<long double> * static_cast<long double>(to_double(v)));
  r.center = static_cast<double>(1.0L / root);
  r.lower = static_cast<double>((1.0L - r.epsilon_prime) / root);
  r.upper = static_cast<double>((1.0L + r.epsilon_prime) / root);

  t_evaluation t = evaluate_t(alphas, caps);
  r.t = t.value;
  r.t_exact = t.exact;
  r.exact_t = t.exact_value;
  const long double tv = t.exact_value ? static_cast<long double>(to_double(*t.exact_value)) : t.value;
  r.contained = (1.0L - r.epsilon_prime) <= tv * root && tv * root <= (1.0L + r.epsilon_prime);
  r.relative_error = static_cast<double>(std::abs(tv * root - 1.0L));
  return r;
}

// sqrt(6/pi) abar / sqrt((1 - abar^2) n).
inline double crude_bound(const Rational& alpha_bar, std::size_t n) {
  if (alpha_bar <= 0 || alpha_bar >= 1) throw domain_error("crude bound needs 0 < alpha_bar < 1");
  if (n == 0) throw domain_error("n must be positive");
  const double a = to_double(alpha_bar);
  return std::sqrt(6.0 / std::numbers::pi) * a / std::sqrt((1.0 - a * a) * static_cast<double>(n));
}

// 1/sqrt(2 pi V*) <= 1/sqrt(2 pi n V*_abar) <= sqrt(6/(pi n)) abar / sqrt(1 - abar^2),
// each link decided exactly as V* >= n V*_abar and V*_abar >= (abar^-2 - 1)/12.
struct remark_chain {
  Rational alpha_bar{0};
  Rational variance{0};
  Rational mean_variance{0};  // V*_abar
  double sharp = 0.0;
  double middle = 0.0;
  double crude = 0.0;
  bool first_link = false;
  bool second_link = false;
  bool holds() const { return first_link && second_link; }
};

inline remark_chain check_remark_chain(std::span<const Rational> alphas_in) {
  std::vector<Rational> alphas = detail::sorted_descending(alphas_in);
  const std::size_t n = alphas.size();
  remark_chain out;
  out.alpha_bar = detail::alpha_mean(alphas);
  if (out.alpha_bar >= 1) throw domain_error("the chain needs alpha_bar < 1");
  out.variance = make_variance_profile(alphas).total;
  out.mean_variance = v_star(out.alpha_bar);
  const Rational nn(static_cast<long>(n));
  out.first_link = out.variance >= nn * out.mean_variance;
  const Rational a2 = out.alpha_bar * out.alpha_bar;
  out.second_link = out.mean_variance * 12 * a2 >= Rational(1) - a2;
  const double two_pi = 2.0 * std::numbers::pi;
  out.sharp = 1.0 / std::sqrt(two_pi * to_double(out.variance));
  out.middle = 1.0 / std::sqrt(two_pi * static_cast<double>(n) * to_double(out.mean_variance));
  out.crude = crude_bound(out.alpha_bar, n);
  return out;
}

// Kesten's bound with L = lambda_i = 1 and Q(X_i, 1) = abar: 4 sqrt(2) (1 + 9C) abar / sqrt((1 - abar) n).
inline double kesten_bound(const Rational& alpha_bar, std::size_t n, double c_kesten) {
  if (alpha_bar <= 0 || alpha_bar >= 1) throw domain_error("kesten bound needs 0 < alpha_bar < 1");
  if (n == 0) throw domain_error("n must be positive");
  const double a = to_double(alpha_bar);
  return 4.0 * std::sqrt(2.0) * (1.0 + 9.0 * c_kesten) * a / std::sqrt((1.0 - a) * static_cast<double>(n));
}

inline double kesten_bound(std::span<const Rational> alphas, double c_kesten) {
  std::vector<Rational> a = detail::sorted_descending(alphas);
  return kesten_bound(detail::alpha_mean(a), a.size(), c_kesten);
}

// The sharp asymptotic 1/sqrt(pi (1 - abar) n) that Kesten's bound is compared with.
inline double sharp_reference(const Rational& alpha_bar, std::size_t n) {
  const double a = to_double(alpha_bar);
  return 1.0 / std::sqrt(std::numbers::pi * (1.0 - a) * static_cast<double>(n));
}

inline double xi(std::size_t d, double x) { return d == 2 ? x : 1.0; }

struct main_bound_params {
  std::vector<Rational> alphas;
  std::size_t d = 2;
  Rational c{1, 4};
  std::optional<double> delta_prime;  // defaults to the smallest admissible value
  std::optional<double> gamma;        // defaults to xi abar^2 n / V*^{3/2}
  double C = 1.0;
};

struct main_bound_report {
  std::vector<condition_check> conditions;
  std::size_t n = 0;
  Rational alpha_bar{0};
  Rational variance{0};
  double xi_value = 0.0;
  double delta_prime = 0.0;
  double epsilon_prime = 0.0;
  double gamma = 0.0;
  double m = 0.0;
  double t = 0.0;
  bool t_exact = false;
  std::optional<Rational> exact_t;
  double expression = std::numeric_limits<double>::infinity();  // right side, evaluated regardless
  std::optional<double> value;                                  // set only when every condition holds

  bool conditions_hold() const { return first_failure(conditions) == nullptr; }
};

// Right side (1 + 6 eps' + 4 m/n + C sqrt(gamma)) / sqrt(2 pi V*_{n - floor(m)}) + exp(-m^2 / (9n))
// together with every hypothesis it rests on.
inline main_bound_report main_bound(const main_bound_params& params, const resource_caps& caps = default_caps()) {
  if (params.d < 2) throw domain_error("d must be >= 2");
  if (!(params.C > 0.0)) throw domain_error("C must be positive");
  std::vector<Rational> alphas = detail::sorted_descending(params.alphas);
  main_bound_report r;
  const std::size_t n = alphas.size();
  const double nd = static_cast<double>(n);
  r.n = n;
  r.alpha_bar = detail::alpha_mean(alphas);
  variance_profile profile = make_variance_profile(alphas);
  r.variance = profile.total;
  const double v = to_double(r.variance);
  const double abar = to_double(r.alpha_bar);
  r.xi_value = xi(params.d, abar);

  const Rational& c = params.c;
  r.conditions.push_back({"n_at_least_8", nd, 8.0, n >= 8});
  r.conditions.push_back({"c_in_open_interval_0_third", to_double(c), 1.0 / 3.0, c > 0 && c < Rational(1, 3)});
  r.conditions.push_back({"variance_positive", v, 0.0, r.variance > 0});

  const Rational tail = profile.prefix(detail::ceil_index(n, Rational(1) - c));
  r.conditions.push_back({"tail_variance_three_quarters", to_double(tail), 0.75 * v, tail * 4 >= r.variance * 3});

  const Rational cubes = detail::third_moment_sum(alphas);
  r.delta_prime = params.delta_prime ? *params.delta_prime : minimal_delta_prime(alphas);
  const bool dp_ok = std::isfinite(r.delta_prime) && r.delta_prime > 0.0;
  const Rational dp = dp_ok ? from_double(r.delta_prime) : Rational(0);
  r.conditions.push_back({"third_moment", to_double(cubes), r.delta_prime * std::pow(v, 1.5),
                          dp_ok && cubes * cubes <= dp * dp * r.variance * r.variance * r.variance});

  const bool c_ok = c > 0;
  r.epsilon_prime = c_ok && dp_ok ? detail::epsilon_prime(r.delta_prime, to_double(c)) : std::numeric_limits<double>::infinity();
  r.conditions.push_back({"epsilon_at_most_half", r.epsilon_prime, 0.5,
                          c_ok && dp_ok && detail::epsilon_at_most(dp, c, Rational(1, 2))});
  r.conditions.push_back({"epsilon_at_most_3_16", r.epsilon_prime, 3.0 / 16.0,
                          c_ok && dp_ok && detail::epsilon_at_most(dp, c, Rational(3, 16))});

  const double v32 = std::pow(v, 1.5);
  const double near_one_lhs = r.xi_value * abar * abar * nd;
  r.gamma = params.gamma ? *params.gamma : (v > 0 ? near_one_lhs / v32 : std::numeric_limits<double>::infinity());
  const double gamma_cap = 1.0 / (100.0 * params.C * params.C);
  r.conditions.push_back({"gamma_at_most_inverse_100_C_squared", r.gamma, gamma_cap, r.gamma <= gamma_cap});
  r.conditions.push_back({"near_one", near_one_lhs, v32 * r.gamma, v > 0 && near_one_lhs <= v32 * r.gamma});

  t_evaluation t = evaluate_t(alphas, caps);
  r.t = t.value;
  r.t_exact = t.exact;
  r.exact_t = t.exact_value;
  r.m = params.C * std::sqrt(r.xi_value) / std::sqrt(r.t) * std::sqrt(nd);
  const double cn5 = to_double(c) * nd / 5.0;
  r.conditions.push_back({"m_below_cn_over_5", r.m, cn5, r.m < cn5});

  const double floor_m = std::floor(r.m);
  if (floor_m < nd) {
    const std::size_t keep = n - static_cast<std::size_t>(floor_m);
    const double v_keep = to_double(profile.prefix(keep));
    if (v_keep > 0.0) {
      const double numerator = 1.0 + 6.0 * r.epsilon_prime + 4.0 * r.m / nd + params.C * std::sqrt(r.gamma);
      r.expression = numerator / std::sqrt(2.0 * std::numbers::pi * v_keep) + std::exp(-r.m * r.m / (9.0 * nd));
    }
  }
  if (r.conditions_hold()) r.value = r.expression;
  return r;
}

// Finite-row surrogates for the triangular-array hypotheses: each o(.) or limit
// condition is reported as a ratio together with the value it should tend to.
struct ratio_entry {
  std::string name;
  double value = 0.0;
  double tends_to = 0.0;
};

struct local_conditions_report {
  bool variance_positive = false;
  std::vector<ratio_entry> ratios;
};

inline local_conditions_report theorem_local_conditions(std::span<const Rational> alphas_in, std::size_t d, double C) {
  std::vector<Rational> alphas = detail::sorted_descending(alphas_in);
  const std::size_t n = alphas.size();
  const double nd = static_cast<double>(n);
  variance_profile profile = make_variance_profile(alphas);
  local_conditions_report r;
  r.variance_positive = profile.total > 0;
  const double v = to_double(profile.total);
  const double abar = to_double(detail::alpha_mean(alphas));
  const double x = xi(d, abar);
  const double inf = std::numeric_limits<double>::infinity();

  r.ratios.push_back({"xi_squared_variance_over_n_squared", x * x * v / (nd * nd), 0.0});
  r.ratios.push_back({"variance_over_exponential_cap", std::exp(std::log(v) - C * C / 36.0 * std::sqrt(nd)), 0.0});
  r.ratios.push_back({"third_moment_over_variance_three_halves",
                      v > 0 ? to_double(detail::third_moment_sum(alphas)) / std::pow(v, 1.5) : inf, 0.0});
  r.ratios.push_back({"near_one_over_variance_three_halves", v > 0 ? x * abar * abar * nd / std::pow(v, 1.5) : inf, 0.0});
  for (const auto& [label, eps] : {std::pair{"tail_variance_ratio_eps_0.1", Rational(1, 10)},
                                   std::pair{"tail_variance_ratio_eps_0.01", Rational(1, 100)}}) {
    const Rational tail = profile.prefix(detail::ceil_index(n, Rational(1) - eps));
    r.ratios.push_back({label, v > 0 ? to_double(tail / profile.total) : 0.0, 1.0});
  }
  return r;
}

}  // namespace anticonc
