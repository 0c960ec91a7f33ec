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
 * @file statevector.hpp
 * @brief Dense 2^n amplitude simulation of the fixed-point search.
 *
 * The marked phase S_M(alpha) is available both directly (a diagonal phase)
 * and through the standard bit-flip oracle O|x>|b> = |x>|b xor [x in M]>
 * applied twice around an ancilla phase.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fpsearch/complexpoly.hpp"
#include "fpsearch/errors.hpp"
#include "fpsearch/schedule.hpp"

namespace fpsearch {

inline constexpr int kMaxQubits = 12;

inline void check_qubits(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw CapabilityError("qubit count must lie in 1.." + std::to_string(kMaxQubits) +
                          " (dense simulation cap n <= " + std::to_string(kMaxQubits) + "), got " +
                          std::to_string(n_qubits));
  }
}

class StateVector {
 public:
  StateVector(int n_qubits, std::vector<Complex> amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {
    check_qubits(n_qubits_);
    if (amps_.size() != dimension()) {
      throw DomainError("amplitude count " + std::to_string(amps_.size()) + " does not match 2^" +
                        std::to_string(n_qubits_));
    }
  }

  [[nodiscard]] int n_qubits() const { return n_qubits_; }
  [[nodiscard]] std::size_t dimension() const { return std::size_t{1} << n_qubits_; }
  [[nodiscard]] std::span<const Complex> amps() const { return amps_; }
  [[nodiscard]] std::span<Complex> amps() { return amps_; }
  [[nodiscard]] Complex operator[](std::size_t i) const { return amps_[i]; }

  [[nodiscard]] double norm() const {
    double sum = 0.0;
    for (const auto& a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
  }

  [[nodiscard]] Complex inner(const StateVector& other) const {
    Complex sum{0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) sum += std::conj(amps_[i]) * other.amps_[i];
    return sum;
  }

  [[nodiscard]] double max_abs_diff(const StateVector& other) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) worst = std::max(worst, std::abs(amps_[i] - other.amps_[i]));
    return worst;
  }

 private:
  int n_qubits_;
  std::vector<Complex> amps_;
};

/// Sorted, distinct marked basis indices; non-empty and not the whole space.
class MarkedSet {
 public:
  MarkedSet(int n_qubits, std::vector<std::size_t> indices) : n_qubits_(n_qubits), indices_(std::move(indices)) {
    check_qubits(n_qubits_);
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
      throw DomainError("marked indices must be distinct");
    }
    if (indices_.empty()) throw DomainError("marked set must be non-empty");
    const std::size_t dim = std::size_t{1} << n_qubits_;
    if (indices_.back() >= dim) {
      throw DomainError("marked index " + std::to_string(indices_.back()) + " out of range for " +
                        std::to_string(n_qubits_) + " qubits");
    }
    if (indices_.size() >= dim) throw DomainError("marked set must leave at least one unmarked state");
  }

  [[nodiscard]] int n_qubits() const { return n_qubits_; }
  [[nodiscard]] std::span<const std::size_t> indices() const { return indices_; }
  [[nodiscard]] std::size_t size() const { return indices_.size(); }

  [[nodiscard]] bool contains(std::size_t index) const {
    return std::binary_search(indices_.begin(), indices_.end(), index);
  }

  /// lambda = sqrt(|M| / 2^n), the marked overlap of the uniform state.
  [[nodiscard]] double lambda() const {
    return std::sqrt(static_cast<double>(indices_.size()) / static_cast<double>(std::size_t{1} << n_qubits_));
  }

 private:
  int n_qubits_;
  std::vector<std::size_t> indices_;
};

/// m distinct indices drawn by a partial Fisher-Yates shuffle. Uses raw
/// mt19937_64 output so the draw is identical across standard libraries.
inline MarkedSet random_marked_set(int n_qubits, std::size_t count, std::uint64_t seed) {
  check_qubits(n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (count == 0 || count >= dim) {
    throw DomainError("marked count must lie in 1.." + std::to_string(dim - 1));
  }
  std::vector<std::size_t> pool(dim);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (dim - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return MarkedSet(n_qubits, std::move(pool));
}

inline StateVector init_uniform(int n_qubits) {
  check_qubits(n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  return StateVector(n_qubits, std::vector<Complex>(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim))}));
}

inline void check_same_space(const StateVector& state, const MarkedSet& marked) {
  if (state.n_qubits() != marked.n_qubits()) throw DomainError("state and marked set qubit counts differ");
}

/// S_M(alpha): phase e^{i alpha} on marked amplitudes.
inline StateVector apply_marked_phase(StateVector state, const MarkedSet& marked, double alpha) {
  check_same_space(state, marked);
  const Complex phase = std::polar(1.0, alpha);
  auto amps = state.amps();
  for (std::size_t index : marked.indices()) amps[index] *= phase;
  return state;
}

/**
 * S_M(alpha) built from two standard-oracle calls. The register is extended
 * by an ancilla (the top bit, starting in |0>): O flips it on marked indices,
 * the ancilla |1> branch picks up e^{i alpha}, and a second O uncomputes it.
 *
 * Throws InternalError if the ancilla is not returned exactly to |0>.
 */
inline StateVector apply_marked_phase_via_oracle(const StateVector& state, const MarkedSet& marked, double alpha) {
  check_same_space(state, marked);
  const std::size_t dim = state.dimension();
  std::vector<Complex> extended(2 * dim, Complex{0.0});
  std::copy(state.amps().begin(), state.amps().end(), extended.begin());

  const auto standard_oracle = [&] {
    for (std::size_t index : marked.indices()) std::swap(extended[index], extended[index + dim]);
  };
  standard_oracle();
  const Complex phase = std::polar(1.0, alpha);
  for (std::size_t i = dim; i < 2 * dim; ++i) extended[i] *= phase;
  standard_oracle();

  for (std::size_t i = dim; i < 2 * dim; ++i) {
    if (extended[i] != Complex{0.0}) throw InternalError("ancilla left entangled after second oracle call");
  }
  extended.resize(dim);
  return StateVector(state.n_qubits(), std::move(extended));
}

/// S_0(beta) = I - (1 - e^{i beta}) |psi_0><psi_0|.
inline StateVector apply_init_phase(StateVector state, const StateVector& psi0, double beta) {
  if (state.n_qubits() != psi0.n_qubits()) throw DomainError("state and psi0 qubit counts differ");
  const Complex scale = (1.0 - std::polar(1.0, beta)) * psi0.inner(state);
  auto amps = state.amps();
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] -= scale * psi0[i];
  return state;
}

struct FullSearchResult {
  double lambda = 0.0;
  /// Sum of |amp_m|^2 over marked m (a probability, not an amplitude norm).
  double success_probability = 0.0;
  int phase_oracle_calls = 0;
  int standard_oracle_calls = 0;
};

inline constexpr double kNormTolerance = 1e-10;

/// Runs the schedule on the uniform superposition over 2^n states, building
/// every S_M(alpha) from two standard-oracle calls.
inline FullSearchResult run_full_search(int n_qubits, const MarkedSet& marked, const AngleSchedule& schedule) {
  if (marked.n_qubits() != n_qubits) throw DomainError("marked set qubit count differs from n");
  const StateVector psi0 = init_uniform(n_qubits);
  StateVector state = psi0;
  FullSearchResult result;
  result.lambda = marked.lambda();

  const auto check_norm = [](const StateVector& s) {
    if (std::abs(s.norm() - 1.0) > kNormTolerance) throw InternalError("state norm drifted beyond 1e-10");
  };
  for (std::size_t k = 0; k < schedule.alpha.size(); ++k) {
    state = apply_marked_phase_via_oracle(state, marked, schedule.alpha[k]);
    result.phase_oracle_calls += 1;
    result.standard_oracle_calls += 2;
    check_norm(state);
    state = apply_init_phase(std::move(state), psi0, schedule.beta[k]);
    check_norm(state);
  }
  for (std::size_t index : marked.indices()) result.success_probability += std::norm(state[index]);
  return result;
}

}  // namespace fpsearch
