#include "hlq/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hlq/errors.hpp"

namespace hlq::special {
namespace {

constexpr int kMaxBernoulli = 24;

std::array<mpq_class, kMaxBernoulli + 1> build_bernoulli() {
  std::array<mpq_class, kMaxBernoulli + 1> b;
  b[0] = 1;
  for (int m = 1; m <= kMaxBernoulli; ++m) {
    mpq_class acc = 0;
    BigInt binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      acc += mpq_class(binom) * b[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = -acc / (m + 1);
    b[m].canonicalize();
  }
  return b;
}

const std::array<mpq_class, kMaxBernoulli + 1>& bernoulli_table() {
  static const auto table = build_bernoulli();
  return table;
}

struct PolyTable {
  std::vector<GDerivPolyPair> exact;
  std::vector<std::vector<DoubleDouble>> pc;
  std::vector<std::vector<DoubleDouble>> ps;
};

using Poly = std::vector<BigInt>;

Poly derivative(const Poly& a) {
  Poly d;
  for (std::size_t i = 1; i < a.size(); ++i) {
    d.push_back(a[i] * static_cast<long>(i));
  }
  return d;
}

// a + s * v * b
Poly add_shifted(const Poly& a, const Poly& b, long s) {
  Poly out(std::max(a.size(), b.size() + 1), BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] += a[i];
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    out[i + 1] += s * b[i];
  }
  while (out.size() > 1 && out.back() == 0) {
    out.pop_back();
  }
  return out;
}

Poly scale(const Poly& a, long s) {
  Poly out = a;
  for (auto& c : out) {
    c *= s;
  }
  return out;
}

PolyTable build_polys() {
  // F(u) = u^-r [cos(v) a(v) + sin(v) b(v)], v = 1/u. Since dv/du = -v^2,
  //   F'(u) = u^-(r+1) [cos(v) (-r a - v (a' + b)) + sin(v) (-r b - v (b' - a))].
  PolyTable t;
  long r = 1;
  Poly a{BigInt(0)};
  Poly b{BigInt(1)};
  auto step = [&] {
    Poly da = derivative(a);
    Poly db = derivative(b);
    Poly s1(std::max(da.size(), b.size()), BigInt(0));
    for (std::size_t i = 0; i < da.size(); ++i) s1[i] += da[i];
    for (std::size_t i = 0; i < b.size(); ++i) s1[i] += b[i];
    Poly s2(std::max(db.size(), a.size()), BigInt(0));
    for (std::size_t i = 0; i < db.size(); ++i) s2[i] += db[i];
    for (std::size_t i = 0; i < a.size(); ++i) s2[i] -= a[i];
    Poly new_a = add_shifted(scale(a, -r), s1, -1);
    Poly new_b = add_shifted(scale(b, -r), s2, -1);
    a = std::move(new_a);
    b = std::move(new_b);
    ++r;
  };
  step();  // G'
  for (int j = 0; j <= kMaxGDerivIndex; ++j) {
    GDerivPolyPair pair{j, a, b};
    std::vector<DoubleDouble> pc_dd;
    std::vector<DoubleDouble> ps_dd;
    for (const auto& c : a) pc_dd.push_back(to_double_double(c));
    for (const auto& c : b) ps_dd.push_back(to_double_double(c));
    t.exact.push_back(std::move(pair));
    t.pc.push_back(std::move(pc_dd));
    t.ps.push_back(std::move(ps_dd));
    step();
    step();
  }
  return t;
}

const PolyTable& poly_table() {
  static const PolyTable table = build_polys();
  return table;
}

DoubleDouble horner(const std::vector<DoubleDouble>& coeffs, DoubleDouble v) {
  DoubleDouble acc;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = dd::add(dd::mul(acc, v), coeffs[i]);
  }
  return acc;
}

}  // namespace

Rational64 bernoulli(int m) {
  if (m < 2 || m > kMaxBernoulli || m % 2 != 0) {
    throw DomainError("bernoulli: index must be even and in [2, 24], got " + std::to_string(m));
  }
  const mpq_class& b = bernoulli_table()[static_cast<std::size_t>(m)];
  return {b.get_num().get_si(), b.get_den().get_si()};
}

BigInt pochhammer(long a, unsigned r) {
  BigInt out = 1;
  for (unsigned i = 0; i < r; ++i) {
    out *= a + static_cast<long>(i);
  }
  return out;
}

namespace {

double si_asymptotic_trig(double y, int M, double sin_y, double cos_y) {
  double cos_sum = 0.0;
  double sin_sum = 0.0;
  double term = 1.0 / y;  // (2k)!/y^(2k+1)
  for (int k = 0; k <= M; ++k) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    cos_sum += sign * term;
    sin_sum += sign * term * (2.0 * k + 1.0) / y;
    term *= (2.0 * k + 1.0) * (2.0 * k + 2.0) / (y * y);
  }
  return std::numbers::pi / 2 - cos_y * cos_sum - sin_y * sin_sum;
}

int optimal_si_depth(double y) { return std::min(static_cast<int>(y / 2.0) - 1, 20); }

}  // namespace

double si_asymptotic(double y, int M) { return si_asymptotic_trig(y, M, std::sin(y), std::cos(y)); }

double si_series(double y) {
  if (!(y >= 0.0 && y <= 40.0)) {
    throw DomainError("si_series: y must be in [0, 40]");
  }
  if (y == 0.0) {
    return 0.0;
  }
  const DoubleDouble y2 = dd::two_prod(y, y);
  DoubleDouble power(y);  // y^(2k+1)/(2k+1)!
  DoubleDouble sum;
  for (int k = 0; k < 200; ++k) {
    DoubleDouble term = dd::div(power, DoubleDouble(2.0 * k + 1.0));
    sum = (k % 2 == 0) ? dd::add(sum, term) : dd::sub(sum, term);
    if (k > 0 && std::fabs(term.hi) < 1e-18 * std::fabs(sum.hi)) {
      break;
    }
    power = dd::div(dd::mul(power, y2), DoubleDouble((2.0 * k + 2.0) * (2.0 * k + 3.0)));
  }
  return sum.to_double();
}

double sine_integral(double y) {
  if (y < 0.0) {
    return -sine_integral(-y);
  }
  if (y <= 30.0) {
    return si_series(y);
  }
  // Terms of the asymptotic series shrink until k ~ y/2.
  return si_asymptotic(y, optimal_si_depth(y));
}

double sine_integral(double y, double sin_y, double cos_y) {
  if (y <= 30.0) {
    return sine_integral(y);
  }
  return si_asymptotic_trig(y, optimal_si_depth(y), sin_y, cos_y);
}

const GDerivPolyPair& g_deriv_polys(int j) {
  if (j < 0 || j > kMaxGDerivIndex) {
    throw DomainError("g_deriv_polys: j must be in [0, 12]");
  }
  return poly_table().exact[static_cast<std::size_t>(j)];
}

double g_deriv_bracket(int j, DoubleDouble v, double sin_v, double cos_v) {
  if (j < 0 || j > kMaxGDerivIndex) {
    throw DomainError("g_deriv_bracket: j must be in [0, 12]");
  }
  const PolyTable& t = poly_table();
  DoubleDouble c = horner(t.pc[static_cast<std::size_t>(j)], v);
  DoubleDouble s = horner(t.ps[static_cast<std::size_t>(j)], v);
  return dd::add(dd::mul(c, cos_v), dd::mul(s, sin_v)).to_double();
}

double g_derivative(double u, int order) {
  if (!(u > 0.0)) {
    throw DomainError("g_derivative: u must be positive");
  }
  if (order < 1 || order % 2 == 0 || (order - 1) / 2 > kMaxGDerivIndex) {
    throw DomainError("g_derivative: order must be odd and in [1, 25]");
  }
  int j = (order - 1) / 2;
  DoubleDouble v = dd::div(DoubleDouble(1.0), DoubleDouble(u));
  double bracket = g_deriv_bracket(j, v, std::sin(v.hi) + std::cos(v.hi) * v.lo,
                                   std::cos(v.hi) - std::sin(v.hi) * v.lo);
  return std::pow(v.to_double(), 2 * j + 2) * bracket;
}

J0PhaseKernel::J0PhaseKernel(const PiRational& x) : root_(x), x_(to_float(x)) {
  if (!(x_ > 0.0)) {
    throw DomainError("j0_phase_term: x must be positive");
  }
}

double J0PhaseKernel::operator()(std::uint64_t m) {
  DoubleDouble f = root_(m);
  // t = 1/4 + 2 frac  (mod 2)
  DoubleDouble t = dd::add(DoubleDouble(0.25), dd::mul(f, 2.0));
  if (!dd::less(t, DoubleDouble(2.0))) {
    t = dd::sub(t, DoubleDouble(2.0));
  }
  double amplitude = std::sqrt(std::sqrt(std::numbers::pi / (2.0 * static_cast<double>(m) * x_)));
  return amplitude * sin_pi({t});
}

double j0_phase_term(std::uint64_t m, const PiRational& x) {
  if (m == 0) {
    throw DomainError("j0_phase_term: m must be >= 1");
  }
  J0PhaseKernel kernel(x);
  return kernel(m);
}

}  // namespace hlq::special
