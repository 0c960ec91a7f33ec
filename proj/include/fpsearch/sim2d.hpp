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
 * @file sim2d.hpp
 * @brief The search restricted to the invariant plane span{|r>, |t>}.
 *
 * |r> is the normalized unmarked part of the initial state and |t> the
 * normalized marked part. With x = ||unmarked projection of psi_0|| the
 * initial state is R(x)|r>, and one generalized iteration acts as
 *
 *   G(alpha, beta) = e^{i beta} R(x) diag(1, e^{-i beta}) R(x) diag(1, e^{i alpha}).
 *
 * Global phases are kept; callers compare magnitudes.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <future>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "fpsearch/complexpoly.hpp"
#include "fpsearch/errors.hpp"
#include "fpsearch/schedule.hpp"

namespace fpsearch {

/// Row-major 2x2 complex matrix.
struct Mat2 {
  std::array<Complex, 4> m{};

  [[nodiscard]] Complex operator()(int row, int col) const { return m[static_cast<std::size_t>(2 * row + col)]; }

  static Mat2 identity() { return Mat2{{Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}}}; }

  static Mat2 diag(Complex d0, Complex d1) { return Mat2{{d0, Complex{0.0}, Complex{0.0}, d1}}; }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return Mat2{{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
                 a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
  }

  friend Mat2 operator*(Complex s, const Mat2& a) {
    return Mat2{{s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]}};
  }

  [[nodiscard]] Mat2 adjoint() const {
    return Mat2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
  }

  /// Largest entrywise deviation from another matrix.
  [[nodiscard]] double max_abs_diff(const Mat2& other) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(m[i] - other.m[i]));
    return worst;
  }
};

/// Amplitudes on |r> (unmarked) and |t> (marked).
struct TwoDimState {
  Complex r_amp{1.0};
  Complex t_amp{0.0};

  [[nodiscard]] double norm() const { return std::hypot(std::abs(r_amp), std::abs(t_amp)); }

  friend TwoDimState operator*(const Mat2& g, const TwoDimState& s) {
    return TwoDimState{g.m[0] * s.r_amp + g.m[1] * s.t_amp, g.m[2] * s.r_amp + g.m[3] * s.t_amp};
  }
};

/// Unmarked overlap x and marked overlap lambda, with x^2 + lambda^2 = 1.
struct OverlapX {
  double x = 1.0;
  double lambda = 0.0;

  static OverlapX from_x(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("x must lie in [0, 1], got " + std::to_string(x));
    return OverlapX{x, std::sqrt(std::max(0.0, 1.0 - x * x))};
  }

  static OverlapX from_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      throw DomainError("lambda must lie in [0, 1], got " + std::to_string(lambda));
    }
    return OverlapX{std::sqrt(std::max(0.0, 1.0 - lambda * lambda)), lambda};
  }
};

inline void check_overlap(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("x must lie in [0, 1], got " + std::to_string(x));
}

/// R(x) = [[x, s], [s, -x]] with s = sqrt(1 - x^2); maps |r> to |psi_0>.
inline Mat2 rotation_R(double x) {
  check_overlap(x);
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  return Mat2{{Complex{x}, Complex{s}, Complex{s}, Complex{-x}}};
}

/// G(alpha, beta) = S_0(beta) S_M(alpha) in the {|r>, |t>} basis.
inline Mat2 iteration_G(double x, double alpha, double beta) {
  const Mat2 r = rotation_R(x);
  const Mat2 reflect_init = std::polar(1.0, beta) * (r * Mat2::diag(1.0, std::polar(1.0, -beta)) * r);
  return reflect_init * Mat2::diag(1.0, std::polar(1.0, alpha));
}

inline TwoDimState initial_state(double x) {
  check_overlap(x);
  return TwoDimState{Complex{x}, Complex{std::sqrt(std::max(0.0, 1.0 - x * x))}};
}

/// Applies G(alpha_1, beta_1) first and G(alpha_l, beta_l) last.
inline TwoDimState run_search(double x, const AngleSchedule& schedule) {
  TwoDimState state = initial_state(x);
  for (std::size_t k = 0; k < schedule.alpha.size(); ++k) {
    state = iteration_G(x, schedule.alpha[k], schedule.beta[k]) * state;
  }
  return state;
}

/**
 * a_L(x) from the decoupled failure-amplitude recursion
 *
 *   a_{n+1} = x (1 - e^{-i phi'_n}) a_n + e^{-i phi'_n} a_{n-1},  phi'_n = phi_n - pi,
 *
 * where phi holds phi_1..phi_{2l}. |a_L(x)| is the final unmarked amplitude.
 */
inline Complex failure_amplitude_recursion(double x, std::span<const double> phi) {
  check_overlap(x);
  Complex prev{1.0};
  Complex cur{x};
  for (double angle : phi) {
    const Complex twist = std::polar(1.0, -(angle - std::numbers::pi));
    Complex next = x * (1.0 - twist) * cur + twist * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/**
 * a_L(x) from the coupled recursion before elimination of b_n:
 *
 *   a_{n+1} = x a_n + e^{-i phi'_n} (1 - x^2) b_n,
 *   b_{n+1} = a_n - x e^{-i phi'_n} b_n,
 *
 * with a_0 = 1, b_0 = 0 and phi'_0 = 0.
 */
inline Complex failure_amplitude_coupled(double x, std::span<const double> phi) {
  check_overlap(x);
  Complex a{1.0};
  Complex b{0.0};
  const double s2 = 1.0 - x * x;
  for (std::size_t n = 0; n <= phi.size(); ++n) {
    const double shifted = n == 0 ? 0.0 : phi[n - 1] - std::numbers::pi;
    const Complex twist = std::polar(1.0, -shifted);
    const Complex next_a = x * a + twist * s2 * b;
    const Complex next_b = a - x * twist * b;
    a = next_a;
    b = next_b;
  }
  return a;
}

/// P(lambda) = sqrt(1 - T_L^2(x/gamma) / T_L^2(1/gamma)), gamma = sqrt(1 - w^2).
inline double success_probability_closed(double lambda, double w, int l) {
  const auto overlap = OverlapX::from_lambda(lambda);
  if (!(w > 0.0 && w < 1.0)) throw DomainError("w must lie in (0, 1), got " + std::to_string(w));
  if (l < 0) throw DomainError("l must be >= 0");
  const double gamma = std::sqrt(1.0 - w * w);
  const double failure = chebyshev_ratio(2 * l + 1, overlap.x / gamma, 1.0 / gamma);
  return std::sqrt(std::clamp(1.0 - failure * failure, 0.0, 1.0));
}

/// Optimal stop time of plain Grover search; ties round to even.
inline int classic_grover_optimal(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw DomainError("lambda must lie in (0, 1), got " + std::to_string(lambda));
  }
  double t = std::numbers::pi / (4.0 * std::asin(lambda)) - 0.5;
  // Values within rounding distance of a half-integer are treated as exact ties.
  const double half = std::floor(t) + 0.5;
  if (std::abs(t - half) <= 1e-12 * std::max(1.0, t)) t = half;
  return std::max(0, static_cast<int>(std::nearbyint(t)));
}

struct SweepRow {
  double lambda = 0.0;
  double p_sim = 0.0;
  double p_closed = 0.0;
  double abs_err = 0.0;
};

inline SweepRow sweep_point(double lambda, const AngleSchedule& schedule) {
  const auto overlap = OverlapX::from_lambda(lambda);
  const double p_sim = std::abs(run_search(overlap.x, schedule).t_amp);
  const double p_closed = success_probability_closed(lambda, schedule.w, schedule.l);
  return SweepRow{lambda, p_sim, p_closed, std::abs(p_sim - p_closed)};
}

/// Evaluates P(lambda) both ways on an evenly spaced grid; rows come back in
/// lambda order. Large grids are split across threads.
inline std::vector<SweepRow> sweep(const AngleSchedule& schedule, double lambda_min, double lambda_max,
                                   int points) {
  if (points < 2) throw DomainError("sweep needs at least 2 points");
  if (!(lambda_min >= 0.0 && lambda_max <= 1.0 && lambda_min < lambda_max)) {
    throw DomainError("sweep needs 0 <= lambda_min < lambda_max <= 1");
  }
  std::vector<SweepRow> rows(static_cast<std::size_t>(points));
  const auto lambda_at = [&](int i) {
    if (i == points - 1) return lambda_max;
    return lambda_min + (lambda_max - lambda_min) * i / (points - 1);
  };
  const auto fill = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) rows[static_cast<std::size_t>(i)] = sweep_point(lambda_at(i), schedule);
  };

  constexpr int kChunk = 4096;
  const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 16);
  if (points <= kChunk || workers == 1) {
    fill(0, points);
    return rows;
  }
  std::vector<std::future<void>> jobs;
  const int per_worker = (points + workers - 1) / workers;
  for (int begin = 0; begin < points; begin += per_worker) {
    jobs.push_back(std::async(std::launch::async, fill, begin, std::min(points, begin + per_worker)));
  }
  for (auto& job : jobs) job.get();
  return rows;
}

}  // namespace fpsearch
