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

#include <array>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "fpsearch/combinat.hpp"
#include "fpsearch/complexpoly.hpp"
#include "test_oracles.hpp"

using namespace fpsearch;
using Catch::Matchers::WithinAbs;

namespace {

TilingMask mask_of(std::initializer_list<int> positions) {
  TilingMask m = 0;
  for (int p : positions) m |= TilingMask{1} << p;
  return m;
}

/// Reads an {S, D} word left to right from position L-1 down to 0.
TilingMask mask_from_word(const std::string& word, int L) {
  TilingMask m = 0;
  int top = L - 1;
  for (char c : word) {
    if (c == 'D') {
      m |= TilingMask{1} << top;
      top -= 2;
    } else {
      top -= 1;
    }
  }
  return m;
}

}  // namespace

TEST_CASE("tiling counts") {
  CHECK(enumerate_tilings(3, false).size() == 3);
  CHECK(enumerate_tilings(3, true).size() == 4);
  for (int L = 3; L <= 15; L += 2) {
    const auto star = enumerate_tilings(L, true);
    const auto line = enumerate_tilings(L, false);
    CHECK(static_cast<long long>(star.size()) == oracle::lucas(L));
    CHECK(static_cast<long long>(line.size()) == oracle::fibonacci(L + 1));
    std::map<int, long long> by_dominos;
    for (const auto& t : line) ++by_dominos[t.domino_count()];
    for (const auto& [k, count] : by_dominos) CHECK(count == oracle::binomial(L - k, k));
  }
}

TEST_CASE("line tilings match an independent word recursion") {
  for (int L = 3; L <= 13; L += 2) {
    std::vector<std::string> words;
    oracle::line_words(L, "", words);
    std::vector<TilingMask> expected;
    for (const auto& w : words) expected.push_back(mask_from_word(w, L));
    std::sort(expected.begin(), expected.end());
    std::vector<TilingMask> got;
    for (const auto& t : enumerate_tilings(L, false)) got.push_back(t.mask());
    CHECK(got == expected);
  }
}

TEST_CASE("the five-star tiling with dominos at 0 and 2") {
  const Tiling t(5, mask_of({0, 2}));
  CHECK(t.domino_count() == 2);
  CHECK(t.square_count() == 1);
  CHECK_FALSE(t.is_line_tiling());
  const std::vector<Piece> expected{{PieceKind::domino, 2}, {PieceKind::square, 3}, {PieceKind::domino, 0}};
  CHECK(t.pieces() == expected);
  CHECK(rotation_orbit(t, 1).mask() == mask_of({1, 3}));
  CHECK(rotation_orbit(t, 5) == t);
  CHECK(reflect(t).mask() == mask_of({1, 4}));
  CHECK(orbit_of(t).size() == 5);
}

TEST_CASE("pieces decode line tilings") {
  const Tiling t(7, mask_of({2, 6}));
  const std::vector<Piece> expected{
      {PieceKind::square, 0}, {PieceKind::domino, 2}, {PieceKind::square, 3}, {PieceKind::square, 4},
      {PieceKind::domino, 6}};
  CHECK(t.pieces() == expected);
  for (int L = 3; L <= 11; L += 2) {
    for (const auto& tiling : enumerate_tilings(L, true)) {
      int cells = 0;
      for (const auto& p : tiling.pieces()) cells += p.kind == PieceKind::domino ? 2 : 1;
      CHECK(cells == L);
    }
  }
}

TEST_CASE("tiling constructor rejects bad masks") {
  CHECK_THROWS_AS(Tiling(5, mask_of({1, 2})), DomainError);
  CHECK_THROWS_AS(Tiling(5, mask_of({0, 1})), DomainError);
  CHECK_THROWS_AS(Tiling(5, mask_of({5})), DomainError);
  CHECK_THROWS_AS(Tiling(4, 0), DomainError);
  CHECK_THROWS_AS(enumerate_tilings(17, true), CapabilityError);
}

TEST_CASE("weights: single tiling examples") {
  const auto all_squares = Tiling(5, 0);
  const auto model = WeightModel::from_gamma(WeightVariant::A, 0.6, 0.5);
  CHECK_THAT(std::abs(tiling_weight(all_squares, model) - Complex{1.0}), WithinAbs(0.0, 1e-15));
  auto line_model = model;
  line_model.modified = true;
  CHECK_THAT(std::abs(tiling_weight(all_squares, line_model) - Complex{0.5}), WithinAbs(0.0, 1e-15));
  CHECK_THROWS_AS(tiling_weight(Tiling(5, mask_of({0})), line_model), DomainError);

  const auto b = WeightModel::from_gamma(WeightVariant::B, 0.6, 1.0);
  CHECK_THAT(std::abs(domino_weight(3, 5, b) - Complex{-0.36}), WithinAbs(0.0, 1e-15));
  // Domino at 0 wraps: -(1 - i t(0) w)(1 + i t(-1) w) = -(1 - i tan(-pi/5) w).
  const Complex expected = -(1.0 + kI * std::tan(-std::numbers::pi / 5) * 0.8);
  CHECK(std::abs(domino_weight(0, 5, model) - expected) <= 1e-15);
}

TEST_CASE("star and line totals reproduce N_L") {
  for (int L = 3; L <= 11; L += 2) {
    for (double gamma : {0.3, 0.7, 1.0}) {
      const auto n_poly = n_poly_coeffs(QuasiChebParams::from_degree(gamma, L));
      for (double x : {0.2, 0.5, 1.0}) {
        const Complex n_value = n_poly(Complex{x});
        const double scale = std::max(1.0, std::abs(n_value));
        CHECK(std::abs(total_star_weight(L, gamma, x) - 2.0 * n_value) <= 1e-10 * scale);
        CHECK(std::abs(total_line_weight(L, gamma, x) - n_value) <= 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("type A and type B coefficients agree") {
  const auto r = coefficient_compare(5, 1);
  CHECK(r.coeffs_a.size() == 5);
  CHECK(r.pass);
  // Five two-domino tilings, each (1 - w^2)^2 under variant B.
  CHECK_THAT(r.coeffs_b[0].real(), WithinAbs(5.0, 1e-12));
  CHECK_THAT(r.coeffs_b[2].real(), WithinAbs(-10.0, 1e-12));
  CHECK_THAT(r.coeffs_b[4].real(), WithinAbs(5.0, 1e-12));

  for (int L = 3; L <= 11; L += 2) {
    for (int ns = L; ns >= 1; ns -= 2) {
      const auto report = coefficient_compare(L, ns);
      CHECK(report.max_deviation <= 1e-8);
      CHECK(report.max_odd_coefficient <= 1e-8);
      CHECK(report.fit_deviation <= 1e-8);
      CHECK(report.pass);
    }
  }
  CHECK_THROWS_AS(coefficient_compare(5, 2), DomainError);
  CHECK_THROWS_AS(coefficient_compare(13, 1), CapabilityError);
}

TEST_CASE("tangent_sum examples") {
  const std::array<int, 2> pair{0, 2};
  CHECK(std::abs(tangent_sum(5, pair).sum - Complex{5.0}) <= 1e-10);
  const std::array<int, 1> single{0};
  CHECK(std::abs(tangent_sum(5, single).sum) <= 1e-12);
  const std::array<int, 3> triple{1, 2, 3};
  CHECK(std::abs(tangent_sum(7, triple).sum) <= 1e-10);
  const std::array<int, 2> dup{1, 1};
  CHECK_THROWS_AS(tangent_sum(7, dup), DomainError);
  const std::array<int, 1> outside{7};
  CHECK_THROWS_AS(tangent_sum(7, outside), DomainError);
}

TEST_CASE("tangent_sum on random subsets") {
  std::mt19937_64 rng(3);
  for (int L = 3; L <= 25; L += 2) {
    std::vector<int> pool(static_cast<std::size_t>(L));
    std::iota(pool.begin(), pool.end(), 0);
    for (int k = 1; k <= L; ++k) {
      for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::span<const int> subset(pool.data(), static_cast<std::size_t>(k));
        const auto ts = tangent_sum(L, subset);
        const double expected = k % 2 == 0 ? L : 0.0;
        CHECK(std::abs(ts.sum - Complex{expected}) <= 1e-9 * std::max(1.0, ts.max_term));
      }
    }
  }
}

TEST_CASE("vieta_sum examples and sweep") {
  CHECK(std::abs(vieta_sum(5, 0).sum - Complex{1.0}) <= 1e-15);
  CHECK(std::abs(vieta_sum(5, 2).sum - Complex{10.0}) <= 1e-12);
  CHECK(std::abs(vieta_sum(7, 5).sum) <= 1e-10);
  for (int L = 3; L <= 15; L += 2) {
    for (int k = 0; k <= L; ++k) {
      const auto v = vieta_sum(L, k);
      const double expected = k % 2 == 0 ? static_cast<double>(oracle::binomial(L, k)) : 0.0;
      CHECK(std::abs(v.sum - Complex{expected}) <= 1e-10 * std::max(1.0, v.abs_sum));
    }
  }
  CHECK_THROWS_AS(vieta_sum(5, 6), DomainError);
}

TEST_CASE("for_each_subset visits C(L, k) distinct subsets") {
  for (int k = 0; k <= 7; ++k) {
    std::set<TilingMask> seen;
    for_each_subset(7, k, [&](TilingMask m) {
      CHECK(std::popcount(m) == k);
      seen.insert(m);
    });
    CHECK(static_cast<long long>(seen.size()) == oracle::binomial(7, k));
  }
}

TEST_CASE("tangent subtraction identity") {
  for (int i = -20; i <= 20; ++i) {
    for (int j = -20; j <= 20; ++j) {
      const double x = 0.07 * i, y = 0.05 * j;
      if (std::abs(std::cos(x - y)) < 1e-3) continue;
      CHECK(tangent_subtraction_residual(x, y) <= 1e-12);
    }
  }
}

TEST_CASE("star-line bijection, reflection and orbits") {
  for (int L = 3; L <= 15; L += 2) {
    const auto report = star_line_bijection(L);
    CHECK(report.pass());
    CHECK(report.square_at_zero + 2 * report.domino_at_one == report.star_count);
    CHECK(orbits_partition(L));
  }
  for (int L = 3; L <= 11; L += 2) {
    for (double gamma : {0.3, 0.7, 1.0}) CHECK(reflection_weight_deviation(L, gamma, 0.5) <= 1e-12);
  }
}
