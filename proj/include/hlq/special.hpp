#pragma once

#include <cstdint>
#include <vector>

#include "hlq/double_double.hpp"
#include "hlq/exact_args.hpp"

namespace hlq::special {

struct Rational64 {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational64&, const Rational64&) = default;
};

// B_m for even m in [2, 24], from the recurrence sum_{j<=m} C(m+1,j) B_j = 0.
// The table is built once on first use.
Rational64 bernoulli(int m);

// Rising factorial a (a+1) ... (a+r-1); r = 0 gives 1.
BigInt pochhammer(long a, unsigned r);

// Asymptotic Si(y) truncated after k = M in both sums; M = -1 gives pi/2.
double si_asymptotic(double y, int M);

// Maclaurin series for Si(y), 0 <= y <= 40, accumulated in double-double so
// the cancellation at the top of the range stays below 1e-16.
double si_series(double y);

// Si(y) for any real y: series up to |y| = 30, optimally truncated
// asymptotic expansion beyond.
double sine_integral(double y);

// Si(y) for y > 0 where sin(y) and cos(y) are already known accurately
// (e.g. from exact reduction of a huge argument).
double sine_integral(double y, double sin_y, double cos_y);

// Integer polynomial pair giving odd derivatives of G(u) = sin(1/u)/u:
//   G^(2j+1)(u) = u^(-2j-2) [cos(1/u) pc(1/u) + sin(1/u) ps(1/u)],
// with deg pc = 2j+1 and deg ps = 2j. Coefficients are ascending in degree.
struct GDerivPolyPair {
  int j = 0;
  std::vector<BigInt> pc;
  std::vector<BigInt> ps;
};

inline constexpr int kMaxGDerivIndex = 12;

// 0 <= j <= 12; cached.
const GDerivPolyPair& g_deriv_polys(int j);

// cos(v) pc(v) + sin(v) ps(v) for the order-(2j+1) pair, with sin(v) and
// cos(v) supplied by the caller (who may have reduced v exactly).
double g_deriv_bracket(int j, DoubleDouble v, double sin_v, double cos_v);

// G^(order)(u) for odd order in [1, 25] and u > 0.
double g_derivative(double u, int order);

// (pi/(2 m x))^(1/4) sin(pi/4 + 2 sqrt(2 pi m x)). With x = (p/q) pi the
// phase is pi/4 + 2 pi sqrt(2mp/q), so only frac(sqrt(2mp/q)) is needed.
double j0_phase_term(std::uint64_t m, const PiRational& x);

// Same as j0_phase_term for a fixed x across many m. One per thread.
class J0PhaseKernel {
 public:
  explicit J0PhaseKernel(const PiRational& x);
  double operator()(std::uint64_t m);

 private:
  PhaseSqrt root_;
  double x_;
};

}  // namespace hlq::special
