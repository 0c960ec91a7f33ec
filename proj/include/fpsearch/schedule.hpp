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

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fpsearch/errors.hpp"

namespace fpsearch {

/// Lower bound w on the marked amplitude and target failure amplitude delta.
struct SearchParams {
  double w = 0.5;
  double delta = 0.5;

  void validate() const {
    if (!(w > 0.0 && w < 1.0)) throw DomainError("w must lie in (0, 1), got " + std::to_string(w));
    if (!(delta > 0.0 && delta < 1.0)) {
      throw DomainError("delta must lie in (0, 1), got " + std::to_string(delta));
    }
  }
};

/// Smallest l with l >= ln(2/delta) / (2w), floored at 1.
inline int min_iterations(const SearchParams& params) {
  params.validate();
  const double bound = std::log(2.0 / params.delta) / (2.0 * params.w);
  return std::max(1, static_cast<int>(std::ceil(bound)));
}

/// Inverse cotangent on the (0, pi) branch.
inline double arccot(double y) { return std::numbers::pi / 2.0 - std::atan(y); }

/**
 * Angle schedule of the fixed-point search.
 *
 * alpha[k-1] and beta[k-1] hold the k-th oracle and reflection phases
 * (k = 1..l); phi[n-1] holds the recursion angle phi_n (n = 1..2l). Angles
 * are stored unreduced, so beta_1 can be below -pi.
 */
struct AngleSchedule {
  double w = 0.0;
  std::optional<double> delta;
  int l = 0;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> phi;

  [[nodiscard]] int L() const { return 2 * l + 1; }
};

inline AngleSchedule make_schedule(double w, int l) {
  if (!(w > 0.0 && w < 1.0)) throw DomainError("w must lie in (0, 1), got " + std::to_string(w));
  if (l < 1) throw DomainError("iteration count l must be >= 1, got " + std::to_string(l));

  AngleSchedule schedule;
  schedule.w = w;
  schedule.l = l;
  const double L = 2.0 * l + 1.0;
  const auto scaled_tan = [&](int n) { return w * std::tan(n * std::numbers::pi / L); };

  schedule.alpha.reserve(static_cast<std::size_t>(l));
  schedule.beta.reserve(static_cast<std::size_t>(l));
  for (int k = 1; k <= l; ++k) {
    schedule.alpha.push_back(2.0 * arccot(scaled_tan(2 * k - 1)));
    schedule.beta.push_back(-2.0 * arccot(scaled_tan(2 * k)));
  }
  schedule.phi.reserve(static_cast<std::size_t>(2 * l));
  for (int n = 1; n <= 2 * l; ++n) schedule.phi.push_back(2.0 * std::atan(scaled_tan(n)));
  return schedule;
}

/// Schedule with the minimal iteration count guaranteeing failure amplitude <= delta.
inline AngleSchedule make_schedule(const SearchParams& params) {
  auto schedule = make_schedule(params.w, min_iterations(params));
  schedule.delta = params.delta;
  return schedule;
}

}  // namespace fpsearch
