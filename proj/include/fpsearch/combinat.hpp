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
 * @file combinat.hpp
 * @brief Exhaustive tiling enumeration and tangent identities.
 *
 * The L-star has positions 0..L-1 on a circle. A tiling covers every position
 * once with squares (one position) and dominos (positions <n, n-1> mod L).
 * A tiling is encoded by the bitmask of domino top positions n; squares are
 * implied. Line tilings ("modified" tilings) are the star tilings with no
 * domino on <0, L-1>, i.e. bit 0 clear.
 *
 * With t(n) = tan(n pi / L) and w = sqrt(1 - gamma^2), squares weigh 2x (x at
 * position 0 for line tilings) and a domino at n weighs
 *   variant A: -(1 - i t(n) w)(1 + i t(n-1) w)
 *   variant B: -(1 - w)(1 + w).
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fpsearch/complexpoly.hpp"
#include "fpsearch/errors.hpp"

namespace fpsearch {

inline constexpr int kMaxTilingLength = 15;
inline constexpr int kMaxTangentLength = 25;

using TilingMask = std::uint32_t;

enum class PieceKind { square, domino };

/// A square at `position`, or a domino covering <position, position - 1> mod L.
struct Piece {
  PieceKind kind = PieceKind::square;
  int position = 0;

  friend bool operator==(const Piece&, const Piece&) = default;
};

namespace detail {

inline void check_odd_length(int L, int max_length, const char* what) {
  if (L % 2 == 0) throw DomainError(std::string(what) + ": L must be odd, got " + std::to_string(L));
  if (L < 3 || L > max_length) {
    throw CapabilityError(std::string(what) + ": L must lie in 3.." + std::to_string(max_length) + ", got " +
                          std::to_string(L));
  }
}

inline TilingMask full_mask(int L) { return (TilingMask{1} << L) - 1; }

/// Cyclic rotation of an L-bit mask by j positions toward higher indices.
inline TilingMask rotate_mask(TilingMask mask, int L, int j) {
  j = ((j % L) + L) % L;
  if (j == 0) return mask;
  return ((mask << j) | (mask >> (L - j))) & full_mask(L);
}

inline bool dominos_disjoint(TilingMask mask, int L) { return (mask & rotate_mask(mask, L, 1)) == 0; }

}  // namespace detail

class Tiling {
 public:
  Tiling(int L, TilingMask domino_mask) : L_(L), mask_(domino_mask) {
    detail::check_odd_length(L_, kMaxTangentLength, "Tiling");
    if ((mask_ & ~detail::full_mask(L_)) != 0) throw DomainError("Tiling: domino position out of range");
    if (!detail::dominos_disjoint(mask_, L_)) throw DomainError("Tiling: overlapping dominos");
  }

  [[nodiscard]] int length() const { return L_; }
  [[nodiscard]] TilingMask mask() const { return mask_; }
  [[nodiscard]] int domino_count() const { return std::popcount(mask_); }
  [[nodiscard]] int square_count() const { return L_ - 2 * domino_count(); }
  [[nodiscard]] bool has_domino_at(int n) const { return ((mask_ >> n) & 1U) != 0; }
  /// True when no domino covers <0, L-1>.
  [[nodiscard]] bool is_line_tiling() const { return !has_domino_at(0); }

  /// Pieces in ascending order of the highest position they cover.
  [[nodiscard]] std::vector<Piece> pieces() const {
    std::vector<Piece> out;
    const bool wraps = has_domino_at(0);
    const int last = wraps ? L_ - 2 : L_ - 1;
    for (int p = wraps ? 1 : 0; p <= last; ++p) {
      if (p + 1 < L_ && has_domino_at(p + 1)) continue;  // lower half of the next domino
      out.push_back(Piece{has_domino_at(p) ? PieceKind::domino : PieceKind::square, p});
    }
    if (wraps) out.push_back(Piece{PieceKind::domino, 0});
    return out;
  }

  friend bool operator==(const Tiling&, const Tiling&) = default;
  friend auto operator<=>(const Tiling& a, const Tiling& b) {
    if (a.L_ != b.L_) return a.L_ <=> b.L_;
    return a.mask_ <=> b.mask_;
  }

 private:
  int L_;
  TilingMask mask_;
};

/// All star tilings (wrap = true) or line tilings (wrap = false), in mask order.
inline std::vector<Tiling> enumerate_tilings(int L, bool wrap) {
  detail::check_odd_length(L, kMaxTilingLength, "enumerate_tilings");
  std::vector<Tiling> out;
  for (TilingMask mask = 0; mask <= detail::full_mask(L); ++mask) {
    if (!wrap && (mask & 1U) != 0) continue;
    if (detail::dominos_disjoint(mask, L)) out.emplace_back(L, mask);
  }
  return out;
}

/// Shifts every piece by j positions (mod L).
inline Tiling rotation_orbit(const Tiling& t, int j) {
  return Tiling(t.length(), detail::rotate_mask(t.mask(), t.length(), j));
}

/// Reflection across the axis through position 0: position p maps to L - p,
/// so a domino on <n, n-1> lands on <L-n+1, L-n>.
inline Tiling reflect(const Tiling& t) {
  const int L = t.length();
  TilingMask out = 0;
  for (int n = 0; n < L; ++n) {
    if (t.has_domino_at(n)) out |= TilingMask{1} << ((L - n + 1) % L);
  }
  return Tiling(L, out);
}

enum class WeightVariant { A, B };

struct WeightModel {
  WeightVariant variant = WeightVariant::A;
  double w = 0.0;
  double x = 1.0;
  /// Line-tiling weights: the square at position 0 weighs x instead of 2x.
  bool modified = false;

  static WeightModel from_gamma(WeightVariant variant, double gamma, double x, bool modified = false) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in (0, 1]");
    return WeightModel{variant, std::sqrt(std::max(0.0, 1.0 - gamma * gamma)), x, modified};
  }
};

template <typename Real = double>
ComplexOf<Real> domino_weight(int n, int L, const WeightModel& model) {
  using C = ComplexOf<Real>;
  const Real w(model.w);
  if (model.variant == WeightVariant::B) return C(-(Real(1) - w) * (Real(1) + w));
  const C i(Real(0), Real(1));
  return -(C(Real(1)) - i * (tan_fraction_as<Real>(n, L) * w)) * (C(Real(1)) + i * (tan_fraction_as<Real>(n - 1, L) * w));
}

template <typename Real = double>
ComplexOf<Real> tiling_weight(const Tiling& t, const WeightModel& model) {
  if (model.modified && !t.is_line_tiling()) {
    throw DomainError("tiling_weight: modified weights need a tiling without the <0, L-1> domino");
  }
  using C = ComplexOf<Real>;
  const Real x(model.x);
  C weight(Real(1));
  for (const Piece& piece : t.pieces()) {
    if (piece.kind == PieceKind::domino) {
      weight *= domino_weight<Real>(piece.position, t.length(), model);
    } else {
      weight *= C((model.modified && piece.position == 0) ? x : Real(2) * x);
    }
  }
  return weight;
}

/// Sum of weights over star or line tilings, accumulated in 113-bit arithmetic
/// so that the cancellation between O(1) terms leaves a small, accurate total.
inline Complex total_weight(int L, const WeightModel& model, bool wrap) {
  ExtendedComplex total(ExtendedReal(0));
  for (const auto& t : enumerate_tilings(L, wrap)) total += tiling_weight<ExtendedReal>(t, model);
  return to_complex(total);
}

/// Sum of variant-A weights over all star tilings; equals 2 N_L(x).
inline Complex total_star_weight(int L, double gamma, double x) {
  detail::check_odd_length(L, 13, "total_star_weight");
  return total_weight(L, WeightModel::from_gamma(WeightVariant::A, gamma, x), true);
}

/// Sum of modified variant-A weights over all line tilings; equals N_L(x).
inline Complex total_line_weight(int L, double gamma, double x) {
  detail::check_odd_length(L, 13, "total_line_weight");
  return total_weight(L, WeightModel::from_gamma(WeightVariant::A, gamma, x, true), false);
}

// ---------------------------------------------------------------------------
// Type A / type B comparison, as polynomials in w with unit square weights.

using WPolynomial = std::vector<Complex>;

inline WPolynomial multiply(const WPolynomial& a, const WPolynomial& b) {
  WPolynomial out(a.size() + b.size() - 1, Complex{0.0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// (1 - i t(n) w)(1 + i t(n-1) w) or (1 - w)(1 + w), as coefficients in w.
inline WPolynomial domino_polynomial(int n, int L, WeightVariant variant) {
  if (variant == WeightVariant::B) return {Complex{1.0}, Complex{0.0}, Complex{-1.0}};
  const double a = tan_fraction(n, L);
  const double b = tan_fraction(n - 1, L);
  return {Complex{1.0}, kI * (b - a), Complex{a * b}};
}

/// Total weight, as a polynomial in w, of the star tilings with n_d dominos.
inline WPolynomial group_weight_polynomial(int L, int domino_count, WeightVariant variant) {
  WPolynomial total(static_cast<std::size_t>(2 * domino_count + 1), Complex{0.0});
  for (const auto& t : enumerate_tilings(L, true)) {
    if (t.domino_count() != domino_count) continue;
    WPolynomial product{Complex{1.0}};
    for (int n = 0; n < L; ++n) {
      if (t.has_domino_at(n)) product = multiply(product, domino_polynomial(n, L, variant));
    }
    for (std::size_t k = 0; k < product.size(); ++k) total[k] += product[k];
  }
  return total;
}

/// Unit-square weight of the n_d-domino star tilings at a numeric w.
inline Complex group_weight_at(int L, int domino_count, WeightVariant variant, double w) {
  const WeightModel model{variant, w, 0.5, false};  // 2x = 1
  Complex total{0.0};
  for (const auto& t : enumerate_tilings(L, true)) {
    if (t.domino_count() != domino_count) continue;
    // Undo the minus sign carried by each star domino.
    total += tiling_weight(t, model) * ((domino_count % 2 == 0) ? 1.0 : -1.0);
  }
  return total;
}

/// Solves the dense complex system A c = b by Gaussian elimination with partial pivoting.
inline std::vector<Complex> solve_dense(std::vector<std::vector<Complex>> a, std::vector<Complex> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) == 0.0) throw InternalError("solve_dense: singular system");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Complex> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Complex acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

/// Coefficients in w recovered from values at Chebyshev nodes on [-1, 1].
inline WPolynomial group_weight_by_fit(int L, int domino_count, WeightVariant variant) {
  const std::size_t size = static_cast<std::size_t>(2 * domino_count + 1);
  std::vector<std::vector<Complex>> vandermonde(size, std::vector<Complex>(size));
  std::vector<Complex> values(size);
  for (std::size_t i = 0; i < size; ++i) {
    const double node = std::cos((2.0 * static_cast<double>(i) + 1.0) * std::numbers::pi / (2.0 * static_cast<double>(size)));
    double power = 1.0;
    for (std::size_t k = 0; k < size; ++k, power *= node) vandermonde[i][k] = power;
    values[i] = group_weight_at(L, domino_count, variant, node);
  }
  return solve_dense(std::move(vandermonde), std::move(values));
}

struct CoefficientReport {
  int L = 0;
  int square_count = 0;
  WPolynomial coeffs_a;
  WPolynomial coeffs_b;
  /// max_k |coeff_A[k] - coeff_B[k]|
  double max_deviation = 0.0;
  /// Largest odd-power coefficient over both variants.
  double max_odd_coefficient = 0.0;
  /// Largest gap between the symbolic product and the Chebyshev-node fit.
  double fit_deviation = 0.0;
  bool pass = false;
};

inline constexpr double kCoefficientTolerance = 1e-8;

inline CoefficientReport coefficient_compare(int L, int square_count) {
  detail::check_odd_length(L, 11, "coefficient_compare");
  if (square_count < 1 || square_count > L || (L - square_count) % 2 != 0) {
    throw DomainError("coefficient_compare: n_s must be one of L, L-2, ..., 1");
  }
  const int domino_count = (L - square_count) / 2;
  CoefficientReport report;
  report.L = L;
  report.square_count = square_count;
  report.coeffs_a = group_weight_polynomial(L, domino_count, WeightVariant::A);
  report.coeffs_b = group_weight_polynomial(L, domino_count, WeightVariant::B);
  for (std::size_t k = 0; k < report.coeffs_a.size(); ++k) {
    report.max_deviation = std::max(report.max_deviation, std::abs(report.coeffs_a[k] - report.coeffs_b[k]));
    if (k % 2 == 1) {
      report.max_odd_coefficient = std::max(
          {report.max_odd_coefficient, std::abs(report.coeffs_a[k]), std::abs(report.coeffs_b[k])});
    }
  }
  for (auto variant : {WeightVariant::A, WeightVariant::B}) {
    const auto fit = group_weight_by_fit(L, domino_count, variant);
    const auto& exact = variant == WeightVariant::A ? report.coeffs_a : report.coeffs_b;
    for (std::size_t k = 0; k < fit.size(); ++k) {
      report.fit_deviation = std::max(report.fit_deviation, std::abs(fit[k] - exact[k]));
    }
  }
  report.pass = report.max_deviation <= kCoefficientTolerance && report.max_odd_coefficient <= kCoefficientTolerance;
  return report;
}

// ---------------------------------------------------------------------------
// Tangent identities.

struct TangentSum {
  Complex sum{0.0};
  /// max_j |prod_m i t(l_m + j)|, the scale for cancellation error.
  double max_term = 0.0;
};

/// sum_{j in [L]} prod_m i t(l_m + j); equals L for even |subset|, 0 for odd.
inline TangentSum tangent_sum(int L, std::span<const int> subset) {
  detail::check_odd_length(L, kMaxTangentLength, "tangent_sum");
  if (subset.empty() || static_cast<int>(subset.size()) > L) {
    throw DomainError("tangent_sum: subset size must lie in 1..L");
  }
  std::vector<int> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("tangent_sum: duplicate subset entries");
  }
  if (sorted.front() < 0 || sorted.back() >= L) throw DomainError("tangent_sum: subset entries must lie in [0, L)");

  TangentSum result;
  for (int j = 0; j < L; ++j) {
    Complex term{1.0};
    for (int l : subset) term *= kI * tan_fraction((l + j) % L, L);
    result.sum += term;
    result.max_term = std::max(result.max_term, std::abs(term));
  }
  return result;
}

/// C(n, k) in double precision; exact for the sizes used here.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

struct VietaSum {
  Complex sum{0.0};
  /// sum of |terms|, the scale for cancellation error.
  double abs_sum = 0.0;
};

/// Calls fn(mask) for every k-subset of [L] encoded as a bitmask.
template <typename Fn>
void for_each_subset(int L, int k, Fn&& fn) {
  if (k == 0) {
    fn(TilingMask{0});
    return;
  }
  TilingMask mask = (TilingMask{1} << k) - 1;
  const TilingMask limit = TilingMask{1} << L;
  while (mask < limit) {
    fn(mask);
    const TilingMask low = mask & (~mask + 1);
    const TilingMask ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;  // next subset of the same size
  }
}

/// sum over k-subsets {d_m} of [L] of prod_m i t(d_m); equals [k even] C(L, k).
inline VietaSum vieta_sum(int L, int k) {
  detail::check_odd_length(L, kMaxTilingLength, "vieta_sum");
  if (k < 0 || k > L) throw DomainError("vieta_sum: k must lie in 0..L");
  VietaSum result;
  for_each_subset(L, k, [&](TilingMask mask) {
    Complex term{1.0};
    for (int d = 0; d < L; ++d) {
      if ((mask >> d) & 1U) term *= kI * tan_fraction(d, L);
    }
    result.sum += term;
    result.abs_sum += std::abs(term);
  });
  return result;
}

/// |tan x - tan y - tan(x - y)(1 - (i tan x)(i tan y))|, relative to the
/// largest magnitude involved.
inline double tangent_subtraction_residual(double x, double y) {
  const double tx = std::tan(x);
  const double ty = std::tan(y);
  const double rhs = (std::tan(x - y) * (1.0 - (kI * tx) * (kI * ty))).real();
  const double scale = std::max({1.0, std::abs(tx), std::abs(ty), std::abs(rhs)});
  return std::abs(tx - ty - rhs) / scale;
}

// ---------------------------------------------------------------------------
// Structural checks on the tiling sets.

struct BijectionReport {
  std::size_t star_count = 0;
  std::size_t square_at_zero = 0;  // |f(A)|
  std::size_t domino_at_one = 0;   // |B| = |g(B)|
  bool disjoint = false;
  bool covers_exactly = false;

  [[nodiscard]] bool pass() const { return disjoint && covers_exactly; }
};

/// Checks f(A) u B u g(B) = C with the three parts pairwise disjoint, where A
/// and B split the line tilings by whether <1, 0> carries a domino.
inline BijectionReport star_line_bijection(int L) {
  detail::check_odd_length(L, kMaxTilingLength, "star_line_bijection");
  std::vector<TilingMask> f_a, b, g_b;
  for (const auto& t : enumerate_tilings(L, false)) {
    if (t.has_domino_at(1)) {
      b.push_back(t.mask());
      g_b.push_back(reflect(t).mask());
    } else {
      f_a.push_back(t.mask());
    }
  }
  std::vector<TilingMask> star;
  for (const auto& t : enumerate_tilings(L, true)) star.push_back(t.mask());

  BijectionReport report;
  report.star_count = star.size();
  report.square_at_zero = f_a.size();
  report.domino_at_one = b.size();

  const std::set<TilingMask> sf(f_a.begin(), f_a.end()), sb(b.begin(), b.end()), sg(g_b.begin(), g_b.end());
  const auto intersects = [](const std::set<TilingMask>& x, const std::set<TilingMask>& y) {
    return std::any_of(x.begin(), x.end(), [&](TilingMask m) { return y.contains(m); });
  };
  report.disjoint = sf.size() == f_a.size() && sb.size() == b.size() && sg.size() == g_b.size() &&
                    !intersects(sf, sb) && !intersects(sf, sg) && !intersects(sb, sg);

  std::vector<TilingMask> combined;
  combined.insert(combined.end(), f_a.begin(), f_a.end());
  combined.insert(combined.end(), b.begin(), b.end());
  combined.insert(combined.end(), g_b.begin(), g_b.end());
  std::sort(combined.begin(), combined.end());
  std::sort(star.begin(), star.end());
  report.covers_exactly = combined == star;
  return report;
}

/// Checks that reflection is an involution preserving variant-A weights;
/// returns the largest weight change seen, or +inf if g^2 != I somewhere.
inline double reflection_weight_deviation(int L, double gamma, double x) {
  const auto model = WeightModel::from_gamma(WeightVariant::A, gamma, x);
  double worst = 0.0;
  for (const auto& t : enumerate_tilings(L, true)) {
    const Tiling g = reflect(t);
    if (reflect(g) != t) return std::numeric_limits<double>::infinity();
    const Complex wt = tiling_weight(t, model);
    worst = std::max(worst, std::abs(tiling_weight(g, model) - wt) / std::max(1.0, std::abs(wt)));
  }
  return worst;
}

/// Set of distinct rotations of t.
inline std::set<TilingMask> orbit_of(const Tiling& t) {
  std::set<TilingMask> orbit;
  for (int j = 0; j < t.length(); ++j) orbit.insert(rotation_orbit(t, j).mask());
  return orbit;
}

/// True when the rotation orbits partition the star tilings: any two orbits
/// coincide or are disjoint, and together they cover every tiling once.
inline bool orbits_partition(int L) {
  const auto tilings = enumerate_tilings(L, true);
  std::set<std::set<TilingMask>> orbits;
  for (const auto& t : tilings) orbits.insert(orbit_of(t));
  std::vector<TilingMask> covered;
  for (const auto& orbit : orbits) covered.insert(covered.end(), orbit.begin(), orbit.end());
  std::sort(covered.begin(), covered.end());
  std::vector<TilingMask> all;
  for (const auto& t : tilings) all.push_back(t.mask());
  return covered == all;
}

}  // namespace fpsearch
