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
 * @file complexpoly.hpp
 * @brief Chebyshev and quasi-Chebyshev polynomials.
 *
 * The quasi-Chebyshev polynomial a_L(x) of odd degree L = 2l+1 is defined by
 * the phase-twisted recursion
 *
 *   a_0 = 1, a_1 = x,
 *   a_{n+1} = x (1 + e^{-i phi_n}) a_n - e^{-i phi_n} a_{n-1},
 *   phi_n = 2 atan( sqrt(1 - gamma^2) tan(n pi / L) ),   n = 1..2l,
 *
 * and has the closed form T_L(x / gamma) / T_L(1 / gamma). Writing
 * t_n = sqrt(1 - gamma^2) tan(n pi / L), the same polynomial splits as
 * N_L(x) / D_L(gamma) with D_L = prod_{n=0}^{2l} (1 + i t_n) and N obeying
 * N_{n+1} = 2x N_n - (1 - i t_n)(1 + i t_{n-1}) N_{n-1}.
 *
 * Evaluation is double precision by default. QuasiChebRecursion also runs in
 * 113-bit binary floating point (ExtendedReal), which keeps the imaginary
 * rounding residue of the recursion far below 1e-9 even where |a_L| ~ 1e12.
 */

#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <type_traits>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "fpsearch/errors.hpp"

namespace fpsearch {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

using ExtendedReal = boost::multiprecision::cpp_bin_float_quad;
using ExtendedComplex = boost::multiprecision::cpp_complex_quad;

template <typename Real>
struct ComplexFor {
  using type = std::complex<Real>;
};
template <>
struct ComplexFor<ExtendedReal> {
  using type = ExtendedComplex;
};
template <typename Real>
using ComplexOf = typename ComplexFor<Real>::type;

/// Rounds a double or extended complex value to Complex.
template <typename C>
Complex to_complex(const C& z) {
  return Complex{static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

/// Largest degree accepted by coefficient-extraction routines.
inline constexpr int kMaxCoeffDegree = 41;
/// Largest degree accepted by evaluation-only routines.
inline constexpr int kMaxEvalDegree = 100000;

/// Dense polynomial with complex coefficients, indexed by degree.
class ComplexPolynomial {
 public:
  ComplexPolynomial() : coeffs_{Complex{0.0}} {}

  explicit ComplexPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    // Trim exact zeros so the leading coefficient is nonzero.
    while (coeffs_.size() > 1 && coeffs_.back() == Complex{0.0}) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(Complex{0.0});
  }

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  [[nodiscard]] bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Complex{0.0}; }

  [[nodiscard]] std::span<const Complex> coeffs() const { return coeffs_; }

  /// Coefficient of x^k; zero past the degree.
  [[nodiscard]] Complex operator[](std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Complex{0.0};
  }

  [[nodiscard]] Complex operator()(Complex x) const {
    Complex acc{0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  [[nodiscard]] Complex operator()(double x) const { return (*this)(Complex{x}); }

  /// sum_k |c_k| |x|^k, the scale of the rounding error of evaluation at x.
  [[nodiscard]] double magnitude_at(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * std::abs(x) + std::abs(*it);
    return acc;
  }

 private:
  std::vector<Complex> coeffs_;
};

/// gamma in (0,1] and odd degree L = 2l + 1.
struct QuasiChebParams {
  double gamma = 1.0;
  int l = 0;

  [[nodiscard]] int L() const { return 2 * l + 1; }

  /// sqrt(1 - gamma^2), the scale applied to tan(n pi / L).
  [[nodiscard]] double tan_scale() const { return std::sqrt(std::max(0.0, 1.0 - gamma * gamma)); }

  static QuasiChebParams from_degree(double gamma, int L) {
    if (!(gamma > 0.0 && gamma <= 1.0)) {
      throw DomainError("gamma must lie in (0, 1], got " + std::to_string(gamma));
    }
    if (L < 1 || L % 2 == 0) {
      throw DomainError("degree L must be an odd integer >= 1, got " + std::to_string(L));
    }
    if (L > kMaxEvalDegree) {
      throw CapabilityError("degree L exceeds evaluation cap " + std::to_string(kMaxEvalDegree));
    }
    return QuasiChebParams{gamma, (L - 1) / 2};
  }
};

/// T_L(x), branching between the trigonometric and hyperbolic forms at |x| = 1.
inline double chebyshev_T(int L, double x) {
  if (L < 0) throw DomainError("chebyshev_T: negative degree");
  if (std::abs(x) <= 1.0) return std::cos(L * std::acos(x));
  const double magnitude = std::cosh(L * std::acosh(std::abs(x)));
  return (x < 0.0 && L % 2 == 1) ? -magnitude : magnitude;
}

/// T_L(num) / T_L(den) for den >= 1, without forming the (possibly overflowing)
/// numerator and denominator separately.
inline double chebyshev_ratio(int L, double num, double den) {
  assert(den >= 1.0);
  if (std::abs(num) <= 1.0 || den == 1.0) {
    const double denominator = chebyshev_T(L, den);
    return chebyshev_T(L, num) / denominator;
  }
  const double u = std::acosh(std::abs(num));
  const double v = std::acosh(den);
  const double ratio = std::exp(L * (u - v)) * (1.0 + std::exp(-2.0 * L * u)) /
                       (1.0 + std::exp(-2.0 * L * v));
  return (num < 0.0 && L % 2 == 1) ? -ratio : ratio;
}

/// Power-basis coefficients of T_L, via T_{n+1} = 2x T_n - T_{n-1}.
inline std::vector<double> chebyshev_coeffs(int L) {
  if (L < 0) throw DomainError("chebyshev_coeffs: negative degree");
  std::vector<double> prev{1.0};
  if (L == 0) return prev;
  std::vector<double> cur{0.0, 1.0};
  for (int n = 1; n < L; ++n) {
    std::vector<double> next(static_cast<std::size_t>(n) + 2, 0.0);
    for (std::size_t k = 0; k < cur.size(); ++k) next[k + 1] += 2.0 * cur[k];
    for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= prev[k];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// tan(n pi / L); finite because L is odd.
inline double tan_fraction(int n, int L) {
  assert(L % 2 == 1 && 2 * (n % L) != L);
  return std::tan(static_cast<double>(n) * std::numbers::pi / L);
}

/// t_n = sqrt(1 - gamma^2) tan(n pi / L).
inline double scaled_tan(const QuasiChebParams& params, int n) {
  return params.tan_scale() * tan_fraction(n, params.L());
}

inline double phi_angle(const QuasiChebParams& params, int n) {
  if (n < 1 || n > 2 * params.l) {
    throw DomainError("phi_angle: n must lie in 1.." + std::to_string(2 * params.l) +
                      ", got " + std::to_string(n));
  }
  return 2.0 * std::atan(scaled_tan(params, n));
}

/// All recursion angles phi_1..phi_{2l}; element [n-1] holds phi_n.
inline std::vector<double> phi_angles(const QuasiChebParams& params) {
  std::vector<double> phi(static_cast<std::size_t>(2 * params.l));
  for (int n = 1; n <= 2 * params.l; ++n) phi[static_cast<std::size_t>(n - 1)] = phi_angle(params, n);
  return phi;
}

/// Runs the quasi-Chebyshev recursion for arbitrary recursion angles phi_1..phi_{2l}.
inline Complex quasi_cheb_from_angles(std::span<const double> phi, double x) {
  Complex prev{1.0};
  Complex cur{x};
  for (double angle : phi) {
    const Complex twist = std::polar(1.0, -angle);
    Complex next = x * (1.0 + twist) * cur - twist * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline Complex quasi_cheb_recursive(const QuasiChebParams& params, double x) {
  const auto phi = phi_angles(params);
  return quasi_cheb_from_angles(phi, x);
}

/// tan(n pi / L) evaluated in Real arithmetic.
template <typename Real>
Real tan_fraction_as(int n, int L) {
  using std::tan;
  return tan(Real(n) * boost::math::constants::pi<Real>() / Real(L));
}

/// t_n = sqrt(1 - gamma^2) tan(n pi / L) in Real arithmetic.
template <typename Real>
Real scaled_tan_as(const QuasiChebParams& params, int n) {
  using std::sqrt;
  const Real gamma(params.gamma);
  return sqrt(std::max(Real(0), Real(1) - gamma * gamma)) * tan_fraction_as<Real>(n, params.L());
}

/**
 * The recursion with precomputed twist factors e^{-i phi_n} = (1 - i t_n)^2 / (1 + t_n^2),
 * carried out in Real arithmetic; one instance serves many x.
 */
template <typename Real>
class QuasiChebRecursion {
 public:
  explicit QuasiChebRecursion(const QuasiChebParams& params) {
    twists_.reserve(static_cast<std::size_t>(2 * params.l));
    for (int n = 1; n <= 2 * params.l; ++n) {
      const Real t = scaled_tan_as<Real>(params, n);
      const Real denom = Real(1) + t * t;
      twists_.emplace_back((Real(1) - t * t) / denom, Real(-2) * t / denom);
    }
  }

  [[nodiscard]] Complex operator()(double x) const {
    using C = ComplexOf<Real>;
    const Real xr(x);
    C prev(Real(1));
    C cur(xr);
    for (const C& twist : twists_) {
      C next = xr * (C(Real(1)) + twist) * cur - twist * prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    return to_complex(cur);
  }

 private:
  std::vector<ComplexOf<Real>> twists_;
};

/// a_L(x) by the recursion in 113-bit arithmetic.
inline Complex quasi_cheb_recursive_extended(const QuasiChebParams& params, double x) {
  return QuasiChebRecursion<ExtendedReal>(params)(x);
}

inline double quasi_cheb_closed(const QuasiChebParams& params, double x) {
  return chebyshev_ratio(params.L(), x / params.gamma, 1.0 / params.gamma);
}

namespace detail {

inline void check_coeff_degree(const QuasiChebParams& params, const char* what) {
  if (params.L() > kMaxCoeffDegree) {
    throw CapabilityError(std::string(what) + ": L = " + std::to_string(params.L()) +
                          " exceeds coefficient cap " + std::to_string(kMaxCoeffDegree));
  }
}

/// Runs p_{n+1} = lead(n) x p_n + tail(n) p_{n-1} from p_0 = 1, p_1 = x on
/// coefficient vectors in Real arithmetic and rounds the result to double.
template <typename Real, typename Lead, typename Tail>
ComplexPolynomial three_term_coeffs(int l, Lead lead, Tail tail) {
  using C = ComplexOf<Real>;
  std::vector<C> prev{C(Real(1))};
  std::vector<C> cur{C(Real(0)), C(Real(1))};
  for (int n = 1; n <= 2 * l; ++n) {
    const C a = lead(n);
    const C b = tail(n);
    std::vector<C> next(cur.size() + 1, C(Real(0)));
    for (std::size_t k = 0; k < cur.size(); ++k) next[k + 1] += a * cur[k];
    for (std::size_t k = 0; k < prev.size(); ++k) next[k] += b * prev[k];
    prev = std::move(cur);
    cur = std::move(next);
  }
  std::vector<Complex> out;
  out.reserve(cur.size());
  for (const C& c : cur) out.push_back(to_complex(c));
  return ComplexPolynomial(std::move(out));
}

}  // namespace detail

/// Coefficients of a_L obtained by running the recursion on coefficient vectors.
inline ComplexPolynomial quasi_cheb_coeffs(const QuasiChebParams& params) {
  detail::check_coeff_degree(params, "quasi_cheb_coeffs");
  using C = ExtendedComplex;
  const auto twist = [&](int n) {
    const ExtendedReal t = scaled_tan_as<ExtendedReal>(params, n);
    const ExtendedReal denom = 1 + t * t;
    return C((1 - t * t) / denom, -2 * t / denom);
  };
  return detail::three_term_coeffs<ExtendedReal>(
      params.l, [&](int n) { return C(ExtendedReal(1)) + twist(n); }, [&](int n) { return -twist(n); });
}

/// Coefficients of N_L from its three-term recursion.
inline ComplexPolynomial n_poly_coeffs(const QuasiChebParams& params) {
  detail::check_coeff_degree(params, "n_poly_coeffs");
  using C = ExtendedComplex;
  const C i(ExtendedReal(0), ExtendedReal(1));
  const auto domino = [&](int n) {
    return -(C(ExtendedReal(1)) - i * scaled_tan_as<ExtendedReal>(params, n)) *
           (C(ExtendedReal(1)) + i * scaled_tan_as<ExtendedReal>(params, n - 1));
  };
  return detail::three_term_coeffs<ExtendedReal>(params.l, [](int) { return C(ExtendedReal(2)); }, domino);
}

/// D_L(gamma) = prod_{n=0}^{2l} (1 + i t_n).
inline Complex d_product(const QuasiChebParams& params) {
  Complex product{1.0};
  for (int n = 0; n <= 2 * params.l; ++n) product *= 1.0 + kI * scaled_tan(params, n);
  return product;
}

/// Coefficients of gamma^L T_L(x / gamma).
inline std::vector<double> scaled_chebyshev_coeffs(int L, double gamma) {
  auto coeffs = chebyshev_coeffs(L);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    coeffs[k] *= std::pow(gamma, L - static_cast<int>(k));
  }
  return coeffs;
}

}  // namespace fpsearch
