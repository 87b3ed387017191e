#pragma once

// Reference implementations used only by the tests. None of them share code
// with the library: big integers come from Boost.Multiprecision, integrals
// from Boost.Math quadrature, Bessel functions from <cmath>.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace oracle {

using boost::multiprecision::cpp_int;
using Float100 = boost::multiprecision::cpp_bin_float_100;

inline cpp_int to_cpp_int(const std::string& decimal) { return cpp_int(decimal); }

// frac(sqrt(a/b)) from isqrt(floor(a * 2^256 / b)); the low 128 bits are the
// fraction, truncated to long double.
inline long double frac_sqrt(const cpp_int& a, const cpp_int& b) {
  cpp_int scaled = (a << 256) / b;
  cpp_int root = boost::multiprecision::sqrt(scaled);
  cpp_int frac = root & ((cpp_int(1) << 128) - 1);
  cpp_int top = frac >> 64;  // 64 leading fraction bits
  return static_cast<long double>(static_cast<std::uint64_t>(top)) * 0x1p-64L;
}

// Si(y) by Gauss-Kronrod on consecutive intervals of length pi.
inline long double sine_integral(long double y) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [](long double t) { return t == 0 ? 1.0L : std::sin(t) / t; };
  const long double pi = std::numbers::pi_v<long double>;
  long double total = 0;
  long double a = 0;
  while (a < y) {
    long double b = std::min(y, a + pi);
    total += gauss_kronrod<long double, 61>::integrate(f, a, b, 0, 0);
    a = b;
  }
  return total;
}

// c_k(N) = N^(2k+1) * (zeta(2k+2) - sum_{n<N} n^(-2k-2)) in 100 digits.
inline double coeff_c(int k, std::uint64_t N) {
  Float100 s = boost::math::zeta(Float100(2 * k + 2));
  for (std::uint64_t n = 1; n < N; ++n) {
    s -= pow(Float100(n), -(2 * k + 2));
  }
  return static_cast<double>(s * pow(Float100(N), 2 * k + 1));
}

// G(u) = sin(1/u)/u and its order-th derivative by the central difference
// of the same order, evaluated in 100 digits.
inline Float100 g(const Float100& u) { return sin(1 / u) / u; }

inline double g_derivative_fd(double u, int order) {
  Float100 h = Float100(u) * Float100("1e-9");
  Float100 sum = 0;
  Float100 binom = 1;
  for (int i = 0; i <= order; ++i) {
    Float100 offset = (Float100(order) / 2 - i) * h;
    Float100 term = binom * g(Float100(u) + offset);
    sum += (i % 2 == 0) ? term : Float100(-term);
    binom = binom * (order - i) / (i + 1);
  }
  return static_cast<double>(sum / pow(h, order));
}

// sin(pi t) in 100 digits, rounded once.
inline double sin_pi(double t) {
  return static_cast<double>(sin(boost::math::constants::pi<Float100>() * Float100(t)));
}

// Q(1) = sum_j (-1)^j zeta(2j+2)/(2j+1)!.
inline long double q_at_one() {
  long double total = 0;
  long double fact = 1;
  for (int j = 0; j < 30; ++j) {
    if (j > 0) {
      fact *= (2 * j) * (2 * j + 1);
    }
    long double term = std::riemann_zeta(static_cast<long double>(2 * j + 2)) / fact;
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

// Plain serial sum of sin(pi*r/n)/n in long double.
inline long double serial_partial_sum(long double r, std::uint64_t n_lo, std::uint64_t n_hi) {
  const long double pi = std::numbers::pi_v<long double>;
  long double s = 0;
  long double c = 0;
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    long double y = std::sin(pi * r / n) / n - c;
    long double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

}  // namespace oracle
