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

// Fixed-point search versus plain Grover search on an 8-qubit register.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "fpsearch/schedule.hpp"
#include "fpsearch/sim2d.hpp"
#include "fpsearch/statevector.hpp"

int main() {
  using namespace fpsearch;
  const auto schedule = make_schedule(SearchParams{0.08, 0.3});
  std::printf("w = 0.08, delta = 0.3 -> l = %d iterations\n\n", schedule.l);
  std::printf("%8s %8s %14s %14s\n", "marked", "lambda", "P fixed-point", "P grover(l)");

  // Plain Grover stopped at the same l overshoots once lambda grows.
  for (std::size_t count : {2, 4, 16, 64, 128, 200}) {
    const auto marked = random_marked_set(8, count, 7);
    const auto result = run_full_search(8, marked, schedule);
    const double x = std::sqrt(1.0 - marked.lambda() * marked.lambda());
    TwoDimState grover = initial_state(x);
    for (int k = 0; k < schedule.l; ++k) grover = iteration_G(x, std::numbers::pi, std::numbers::pi) * grover;
    std::printf("%8zu %8.4f %14.6f %14.6f\n", count, result.lambda, result.success_probability,
                std::norm(grover.t_amp));
  }
  return 0;
}
