// Copyright 2026 The fpsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file verify.hpp
 * @brief Batch verification of every identity the search relies on.
 *
 * Each check reports the largest deviation it saw against its tolerance.
 * Enumeration-heavy checks are capped below the requested max_L (13 for
 * tilings, 11 for the weight comparison, 15 for Vieta sums); tangent sums
 * run up to max_L itself (at most 25).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpsearch/combinat.hpp"
#include "fpsearch/complexpoly.hpp"
#include "fpsearch/schedule.hpp"
#include "fpsearch/sim2d.hpp"
#include "fpsearch/statevector.hpp"

namespace fpsearch {

struct CheckResult {
  std::string check_name;
  int L = 0;
  std::vector<std::pair<std::string, double>> params;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  int max_L = 9;
  std::uint64_t seed = 42;
};

namespace detail {

class CheckBuilder {
 public:
  CheckBuilder(std::string name, int L, double tolerance) {
    result_.check_name = std::move(name);
    result_.L = L;
    result_.tolerance = tolerance;
  }

  CheckBuilder& param(std::string key, double value) {
    result_.params.emplace_back(std::move(key), value);
    return *this;
  }

  /// Records a deviation; NaN counts as a failure.
  void observe(double deviation) {
    if (std::isnan(deviation)) {
      failed_ = true;
      deviation = std::numeric_limits<double>::infinity();
    }
    result_.max_deviation = std::max(result_.max_deviation, deviation);
  }

  void fail() { failed_ = true; }

  CheckResult finish() {
    result_.pass = !failed_ && result_.max_deviation <= result_.tolerance;
    return result_;
  }

 private:
  CheckResult result_;
  bool failed_ = false;
};

inline std::vector<double> gamma_grid() { return {0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1.0}; }

inline std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  return out;
}

inline double chebyshev_by_recurrence(int L, double x) {
  double prev = 1.0, cur = x;
  if (L == 0) return prev;
  for (int n = 1; n < L; ++n) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace detail

inline std::vector<CheckResult> verify_polynomials(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const int max_degree = std::min(opts.max_L, kMaxCoeffDegree);
  const auto xs = detail::linspace(-1.5, 1.5, 31);

  for (int L = 1; L <= max_degree; L += 2) {
    detail::CheckBuilder cheb("chebyshev_vs_recurrence", L, 1e-12);
    for (double x : detail::linspace(-3.0, 3.0, 61)) {
      const double a = chebyshev_T(L, x);
      const double b = detail::chebyshev_by_recurrence(L, x);
      cheb.observe(std::abs(a - b) / (1.0 + std::abs(b)));
    }
    out.push_back(cheb.finish());

    detail::CheckBuilder closed("quasi_cheb_closed_form", L, 1e-9);
    detail::CheckBuilder parity("quasi_cheb_parity", L, 1e-10);
    detail::CheckBuilder dprod("d_product_identity", L, 1e-10);
    detail::CheckBuilder nd("n_over_d_consistency", L, 1e-12);
    detail::CheckBuilder ncoef("n_poly_scaled_chebyshev", L, 1e-9);
    for (double gamma : detail::gamma_grid()) {
      const auto params = QuasiChebParams::from_degree(gamma, L);
      const auto n_poly = n_poly_coeffs(params);
      const Complex d = d_product(params);
      const double expected_d = std::pow(gamma, L) * chebyshev_T(L, 1.0 / gamma);
      dprod.observe(std::abs(d - expected_d) / std::abs(expected_d));
      const auto scaled = scaled_chebyshev_coeffs(L, gamma);
      for (std::size_t k = 0; k < scaled.size(); ++k) {
        ncoef.observe(std::abs(n_poly[k] - scaled[k]) / (1.0 + std::abs(scaled[k])));
      }
      const QuasiChebRecursion<ExtendedReal> extended(params);
      for (double x : xs) {
        const Complex rec = quasi_cheb_recursive(params, x);
        const Complex rec_ext = extended(x);
        const double cl = quasi_cheb_closed(params, x);
        closed.observe(std::abs(rec - cl) / (1.0 + std::abs(cl)));
        closed.observe(std::abs(rec_ext - cl) / (1.0 + std::abs(cl)));
        closed.observe(std::abs(rec_ext.imag()));
        parity.observe(std::abs(quasi_cheb_recursive(params, -x) + rec) / (1.0 + std::abs(rec)));
        // Monomial evaluation of N loses digits in proportion to its condition number.
        const double condition = n_poly.magnitude_at(x) / std::abs(d);
        nd.observe(std::abs(n_poly(x) / d - rec_ext) / (1.0 + condition));
      }
    }
    out.push_back(closed.finish());
    out.push_back(parity.finish());
    out.push_back(dprod.finish());
    out.push_back(nd.finish());
    out.push_back(ncoef.finish());
  }
  return out;
}

inline std::vector<CheckResult> verify_schedule_and_sim(const VerifyOptions& opts) {
  std::vector<CheckResult> out;

  detail::CheckBuilder branch("arccot_branch_consistency", 0, 1e-14);
  for (double z : detail::linspace(-50.0, 50.0, 401)) branch.observe(std::abs(std::numbers::pi - 2.0 * arccot(z) - 2.0 * std::atan(z)));
  out.push_back(branch.finish());

  detail::CheckBuilder logineq("log_ratio_inequality", 0, 0.0);
  for (double w : detail::linspace(0.0, 0.999, 1000)) logineq.observe(std::max(0.0, 2.0 * w - std::log((1.0 + w) / (1.0 - w))));
  out.push_back(logineq.finish());

  const std::vector<double> ws{0.05, 0.1, 0.2, 0.4, 0.6, 0.9};
  const std::vector<double> deltas{0.05, 0.1, 0.3, 0.5};
  detail::CheckBuilder query("query_count_bound", 0, 0.0);
  detail::CheckBuilder fixed("fixed_point_guarantee", 0, 1e-12);
  for (double w : ws) {
    for (double delta : deltas) {
      const int l = min_iterations({w, delta});
      const int L = 2 * l + 1;
      const double needed = std::acosh(1.0 / delta) / std::acosh(1.0 / std::sqrt(1.0 - w * w));
      query.observe(std::max(0.0, needed - L));
      double worst = 1.0;
      for (double lambda : detail::linspace(w, 1.0, 200)) worst = std::min(worst, success_probability_closed(lambda, w, l));
      fixed.observe(std::max(0.0, std::sqrt(1.0 - delta * delta) - worst));
    }
  }
  out.push_back(query.finish());
  out.push_back(fixed.finish());

  const int max_l = std::clamp((opts.max_L - 1) / 2 + 6, 1, 15);
  detail::CheckBuilder three("three_way_agreement", 0, 1e-9);
  three.param("max_l", max_l);
  detail::CheckBuilder sym("phi_reflection_symmetry", 0, 1e-12);
  detail::CheckBuilder unit("two_dim_unitarity", 0, 1e-10);
  for (double w : {0.05, 0.2, 0.5, 0.9}) {
    for (int l = 1; l <= max_l; ++l) {
      const auto schedule = make_schedule(w, l);
      for (int n = 1; n <= 2 * l; ++n) {
        sym.observe(std::abs(schedule.phi[static_cast<std::size_t>(2 * l - n)] + schedule.phi[static_cast<std::size_t>(n - 1)]));
      }
      const auto params = QuasiChebParams::from_degree(std::sqrt(1.0 - w * w), 2 * l + 1);
      for (double x : detail::linspace(0.0, 1.0, 50)) {
        const auto state = run_search(x, schedule);
        unit.observe(std::abs(state.norm() - 1.0));
        const double r = std::abs(state.r_amp);
        three.observe(std::abs(r - std::abs(failure_amplitude_recursion(x, schedule.phi))));
        three.observe(std::abs(r - std::abs(quasi_cheb_closed(params, x))));
      }
    }
  }
  out.push_back(three.finish());
  out.push_back(sym.finish());
  out.push_back(unit.finish());

  std::mt19937_64 rng(opts.seed);
  detail::CheckBuilder oracle("oracle_phase_equivalence", 0, 1e-12);
  detail::CheckBuilder reduction("statevector_subspace_reduction", 0, 1e-10);
  for (int n = 2; n <= 8; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    for (int trial = 0; trial < 3; ++trial) {
      const std::size_t count = 1 + static_cast<std::size_t>(rng() % (dim - 1));
      const auto marked = random_marked_set(n, count, rng());
      std::vector<Complex> amps(dim);
      std::normal_distribution<double> gauss;
      for (auto& a : amps) a = {gauss(rng), gauss(rng)};
      double norm = 0.0;
      for (const auto& a : amps) norm += std::norm(a);
      for (auto& a : amps) a /= std::sqrt(norm);
      const StateVector state(n, amps);
      const double alpha = 2.0 * std::numbers::pi * static_cast<double>(rng() % 10000) / 10000.0;
      oracle.observe(apply_marked_phase_via_oracle(state, marked, alpha).max_abs_diff(apply_marked_phase(state, marked, alpha)));

      const double lambda = marked.lambda();
      const double w = std::max(0.01, std::min(0.95, lambda * 0.9));
      const auto schedule = make_schedule(w, 1 + static_cast<int>(rng() % 6));
      const auto full = run_full_search(n, marked, schedule);
      const double amp2d = std::abs(run_search(std::sqrt(1.0 - lambda * lambda), schedule).t_amp);
      reduction.observe(std::abs(std::sqrt(full.success_probability) - amp2d));
    }
  }
  out.push_back(oracle.finish());
  out.push_back(reduction.finish());
  return out;
}

inline std::vector<CheckResult> verify_combinatorics(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const int tiling_cap = std::min(opts.max_L, 13);
  for (int L = 3; L <= tiling_cap; L += 2) {
    detail::CheckBuilder star("star_weight_equals_2N", L, 1e-9);
    detail::CheckBuilder line("line_weight_equals_N", L, 1e-9);
    detail::CheckBuilder refl("reflection_weight_invariance", L, 1e-12);
    for (double gamma : {0.3, 0.7, 1.0}) {
      const auto n_poly = n_poly_coeffs(QuasiChebParams::from_degree(gamma, L));
      for (double x : {0.2, 0.5, 1.0}) {
        const Complex n_val = n_poly(x);
        star.observe(std::abs(total_star_weight(L, gamma, x) - 2.0 * n_val) / (1.0 + std::abs(2.0 * n_val)));
        line.observe(std::abs(total_line_weight(L, gamma, x) - n_val) / (1.0 + std::abs(n_val)));
        refl.observe(reflection_weight_deviation(L, gamma, x));
      }
    }
    out.push_back(star.finish());
    out.push_back(line.finish());
    out.push_back(refl.finish());

    const auto bij = star_line_bijection(L);
    detail::CheckBuilder bijection("star_line_bijection", L, 0.0);
    bijection.param("star_tilings", static_cast<double>(bij.star_count));
    if (!bij.pass()) bijection.fail();
    out.push_back(bijection.finish());

    detail::CheckBuilder orbits("rotation_orbit_partition", L, 0.0);
    if (!orbits_partition(L)) orbits.fail();
    out.push_back(orbits.finish());
  }

  for (int L = 3; L <= std::min(opts.max_L, 11); L += 2) {
    detail::CheckBuilder cmp("type_a_b_coefficients", L, kCoefficientTolerance);
    for (int ns = L; ns >= 1; ns -= 2) {
      const auto report = coefficient_compare(L, ns);
      cmp.observe(report.max_deviation);
      cmp.observe(report.max_odd_coefficient);
    }
    out.push_back(cmp.finish());
  }

  for (int L = 3; L <= std::min(opts.max_L, kMaxTilingLength); L += 2) {
    detail::CheckBuilder vieta("vieta_identity", L, 1e-6);
    for (int k = 0; k <= L; ++k) {
      const auto result = vieta_sum(L, k);
      const double expected = (k % 2 == 0) ? binomial(L, k) : 0.0;
      vieta.observe(std::abs(result.sum - expected) / std::max(1.0, result.abs_sum));
    }
    out.push_back(vieta.finish());
  }

  std::mt19937_64 rng(opts.seed);
  for (int L = 3; L <= std::min(opts.max_L, kMaxTangentLength); L += 2) {
    detail::CheckBuilder tsum("tangent_sum_identity", L, 1e-6);
    tsum.param("subsets_per_k", 50);
    std::vector<int> pool(static_cast<std::size_t>(L));
    for (int k = 1; k <= L; ++k) {
      for (int trial = 0; trial < 50; ++trial) {
        for (int i = 0; i < L; ++i) pool[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < k; ++i) std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(i + static_cast<int>(rng() % static_cast<std::uint64_t>(L - i)))]);
        const auto result = tangent_sum(L, std::span<const int>(pool.data(), static_cast<std::size_t>(k)));
        const double expected = (k % 2 == 0) ? L : 0.0;
        tsum.observe(std::abs(result.sum - expected) / std::max(1.0, result.max_term));
      }
    }
    out.push_back(tsum.finish());
  }

  detail::CheckBuilder sub("tangent_subtraction_identity", 0, 1e-10);
  std::uniform_real_distribution<double> angle(-1.4, 1.4);
  for (int i = 0; i < 1000; ++i) {
    const double x = angle(rng), y = angle(rng);
    if (std::abs(std::cos(x - y)) < 1e-3) continue;
    sub.observe(tangent_subtraction_residual(x, y));
  }
  out.push_back(sub.finish());
  return out;
}

inline std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  if (opts.max_L < 3 || opts.max_L > kMaxTangentLength || opts.max_L % 2 == 0) {
    throw DomainError("max_L must be an odd integer in 3..25");
  }
  std::vector<CheckResult> all;
  for (auto&& part : {verify_polynomials(opts), verify_schedule_and_sim(opts), verify_combinatorics(opts)}) {
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

inline nlohmann::ordered_json to_json(const std::vector<CheckResult>& checks) {
  auto array = nlohmann::ordered_json::array();
  bool all_pass = true;
  for (const auto& c : checks) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : c.params) params[key] = value;
    array.push_back(nlohmann::ordered_json{{"check_name", c.check_name},
                                           {"L", c.L},
                                           {"params", params},
                                           {"max_deviation", c.max_deviation},
                                           {"tolerance", c.tolerance},
                                           {"pass", c.pass}});
    all_pass = all_pass && c.pass;
  }
  return nlohmann::ordered_json{{"checks", array}, {"all_pass", all_pass}};
}

}  // namespace fpsearch
