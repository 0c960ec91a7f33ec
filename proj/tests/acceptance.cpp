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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fpsearch/combinat.hpp"
#include "fpsearch/complexpoly.hpp"
#include "fpsearch/schedule.hpp"
#include "fpsearch/sim2d.hpp"
#include "fpsearch/statevector.hpp"

using namespace fpsearch;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

std::vector<double> grid(double lo, double hi, int points) {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  return out;
}

std::vector<double> gamma_steps() {
  std::vector<double> out;
  for (int i = 1; i <= 20; ++i) out.push_back(0.05 * i);
  return out;
}

Outcome sweep_reproduction() {
  const auto start = Clock::now();
  const auto schedule = make_schedule(SearchParams{0.08, 0.3});
  const auto rows = sweep(schedule, 0.0, 1.0, 500);
  double min_p = 1.0, worst = 0.0;
  for (const auto& row : rows) {
    worst = std::max(worst, row.abs_err);
    if (row.lambda >= 0.08) min_p = std::min({min_p, row.p_sim, row.p_closed});
  }
  // The grid point nearest w may sit just above it; include lambda = w itself.
  const auto at_w = sweep_point(0.08, schedule);
  min_p = std::min({min_p, at_w.p_sim, at_w.p_closed});
  worst = std::max(worst, at_w.abs_err);
  const double elapsed = seconds_since(start);
  const double bound = std::sqrt(1.0 - 0.09);
  return {schedule.l == 12 && min_p >= bound && worst <= 1e-9 && elapsed < 5.0,
          "l = " + std::to_string(schedule.l) + fmt(", min P = %.10f (bound %.10f), max |sim - closed| = %.3g", min_p, bound, worst) +
              fmt(", %.3f s", elapsed)};
}

Outcome quasi_chebyshev_equality() {
  const auto start = Clock::now();
  double worst_scaled = 0.0, worst_imag = 0.0;
  for (int L = 1; L <= 41; L += 2) {
    for (double gamma : gamma_steps()) {
      const QuasiChebRecursion<ExtendedReal> recursion(QuasiChebParams::from_degree(gamma, L));
      for (double x : grid(-1.5, 1.5, 50)) {
        const Complex rec = recursion(x);
        const double closed = chebyshev_T(L, x / gamma) / chebyshev_T(L, 1.0 / gamma);
        worst_scaled = std::max(worst_scaled, std::abs(rec - closed) / (1.0 + std::abs(closed)));
        worst_imag = std::max(worst_imag, std::abs(rec.imag()));
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {worst_scaled <= 1e-9 && worst_imag <= 1e-9 && elapsed < 10.0,
          fmt("max scaled gap %.3g, max |Im| %.3g, %.3f s", worst_scaled, worst_imag, elapsed)};
}

Outcome d_product_identity() {
  double worst = 0.0;
  for (int L = 1; L <= 41; L += 2) {
    for (double gamma : gamma_steps()) {
      const auto params = QuasiChebParams::from_degree(gamma, L);
      const double expected = std::pow(gamma, L) * chebyshev_T(L, 1.0 / gamma);
      worst = std::max(worst, std::abs(d_product(params) - expected) / std::abs(expected));
    }
  }
  return {worst <= 1e-10, fmt("max relative gap %.3g", worst)};
}

Outcome tiling_totals() {
  double worst = 0.0;
  bool bijections = true;
  for (int L = 3; L <= 11; L += 2) {
    for (double gamma : {0.3, 0.7, 1.0}) {
      for (double x : {0.2, 0.5, 1.0}) {
        // N_L(x) = gamma^L T_L(x / gamma), from the Chebyshev closed form.
        const double n_value = std::pow(gamma, L) * chebyshev_T(L, x / gamma);
        const double scale = std::max(std::abs(n_value), 1e-300);
        worst = std::max(worst, std::abs(total_star_weight(L, gamma, x) - 2.0 * n_value) / (2.0 * scale));
        worst = std::max(worst, std::abs(total_line_weight(L, gamma, x) - n_value) / scale);
      }
    }
    bijections = bijections && star_line_bijection(L).pass();
  }
  return {worst <= 1e-9 && bijections,
          fmt("max relative gap %.3g, bijection ", worst) + (bijections ? "exact" : "BROKEN")};
}

Outcome type_ab_coefficients() {
  double worst_dev = 0.0, worst_odd = 0.0;
  for (int L = 3; L <= 9; L += 2) {
    for (int ns = L; ns >= 1; ns -= 2) {
      const auto report = coefficient_compare(L, ns);
      worst_dev = std::max(worst_dev, report.max_deviation);
      worst_odd = std::max(worst_odd, report.max_odd_coefficient);
    }
  }
  return {worst_dev <= 1e-8 && worst_odd <= 1e-8,
          fmt("max |A - B| %.3g, max odd coefficient %.3g", worst_dev, worst_odd)};
}

Outcome tangent_sums() {
  std::mt19937_64 rng(20260101);
  double worst = 0.0;
  long long evaluated = 0;
  for (int L = 3; L <= 25; L += 2) {
    for (int k = 1; k <= L; ++k) {
      const double expected = k % 2 == 0 ? L : 0.0;
      const auto record = [&](std::span<const int> subset) {
        const auto ts = tangent_sum(L, subset);
        worst = std::max(worst, std::abs(ts.sum - Complex{expected}) / ts.max_term);
        ++evaluated;
      };
      if (binomial(L, k) <= 200.0) {
        for_each_subset(L, k, [&](TilingMask mask) {
          std::vector<int> subset;
          for (int d = 0; d < L; ++d) {
            if ((mask >> d) & 1U) subset.push_back(d);
          }
          record(subset);
        });
      } else {
        std::vector<int> pool(static_cast<std::size_t>(L));
        std::iota(pool.begin(), pool.end(), 0);
        for (int trial = 0; trial < 200; ++trial) {
          std::shuffle(pool.begin(), pool.end(), rng);
          record(std::span<const int>(pool.data(), static_cast<std::size_t>(k)));
        }
      }
    }
  }
  const std::array<int, 2> instance{0, 2};
  const Complex five = tangent_sum(5, instance).sum;
  const double instance_gap = std::abs(five - Complex{5.0});
  return {worst <= 1e-6 && instance_gap <= 1e-10,
          std::to_string(evaluated) + fmt(" subsets, max gap / max term %.3g, L=5 {0,2} -> %.15f", worst, five.real())};
}

Outcome vieta_identity() {
  double worst = 0.0;
  for (int L = 3; L <= 15; L += 2) {
    for (int k = 0; k <= L; ++k) {
      const auto v = vieta_sum(L, k);
      const double expected = k % 2 == 0 ? binomial(L, k) : 0.0;
      worst = std::max(worst, std::abs(v.sum - Complex{expected}) / v.abs_sum);
    }
  }
  return {worst <= 1e-6, fmt("max gap / sum of |terms| %.3g", worst)};
}

Outcome full_space_reduction() {
  const auto start = Clock::now();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> fraction(0.05, 1.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::normal_distribution<double> normal;
  double worst_amp = 0.0, worst_oracle = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    for (int trial = 0; trial < 20; ++trial) {
      const auto marked = random_marked_set(n, 1 + rng() % (dim - 1), rng());
      const double lambda = marked.lambda();
      const double w = std::min(lambda * fraction(rng), 0.99);
      const int l = 1 + static_cast<int>(rng() % 12);
      const auto schedule = make_schedule(w, l);
      const auto full = run_full_search(n, marked, schedule);
      const double sub = std::abs(run_search(std::sqrt(1.0 - lambda * lambda), schedule).t_amp);
      worst_amp = std::max(worst_amp, std::abs(std::sqrt(full.success_probability) - sub));

      std::vector<Complex> amps(dim);
      for (auto& a : amps) a = Complex{normal(rng), normal(rng)};
      const StateVector state(n, std::move(amps));
      const double alpha = angle(rng);
      worst_oracle = std::max(worst_oracle, apply_marked_phase(state, marked, alpha)
                                                .max_abs_diff(apply_marked_phase_via_oracle(state, marked, alpha)));
    }
  }
  const double elapsed = seconds_since(start);
  return {worst_amp <= 1e-10 && worst_oracle <= 1e-12 && elapsed < 30.0,
          fmt("max amplitude gap %.3g, max oracle gap %.3g, %.3f s", worst_amp, worst_oracle, elapsed)};
}

Outcome fixed_point_sweep() {
  double worst_margin = std::numeric_limits<double>::infinity();
  bool bounds = true;
  for (double w : {0.05, 0.1, 0.2, 0.4}) {
    for (double delta : {0.05, 0.1, 0.3, 0.5}) {
      const int l = min_iterations({w, delta});
      const auto schedule = make_schedule(w, l);
      const double target = std::sqrt(1.0 - delta * delta);
      for (double lambda : grid(w, 1.0, 2000)) {
        const double p = std::min(success_probability_closed(lambda, w, l),
                                  std::abs(run_search(std::sqrt(1.0 - lambda * lambda), schedule).t_amp));
        worst_margin = std::min(worst_margin, p - target);
      }
      const double gamma = std::sqrt(1.0 - w * w);
      const double needed = std::acosh(1.0 / delta) / std::acosh(1.0 / gamma);
      bounds = bounds && (2 * l + 1) >= needed && needed <= std::log(2.0 / delta) / w;
    }
  }
  return {worst_margin >= -1e-12 && bounds,
          fmt("min P - sqrt(1 - delta^2) = %.3g, ", worst_margin) + "query bound " + (bounds ? "holds" : "VIOLATED")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 sweep w=0.08 delta=0.3 l=12", sweep_reproduction},
      {"2 quasi-Chebyshev recursion = closed form", quasi_chebyshev_equality},
      {"3 D_L product = gamma^L T_L(1/gamma)", d_product_identity},
      {"4 tiling totals and star/line bijection", tiling_totals},
      {"5 type A / type B coefficients", type_ab_coefficients},
      {"6 tangent-sum identity", tangent_sums},
      {"7 Vieta subset sums", vieta_identity},
      {"8 full state vector vs 2-D subspace", full_space_reduction},
      {"9 fixed-point guarantee and query bound", fixed_point_sweep},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("%s [%s] %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(), outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
