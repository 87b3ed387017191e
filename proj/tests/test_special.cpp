#include "doctest.h"

#include <cmath>
#include <gmpxx.h>
#include <numbers>

#include "hlq/errors.hpp"
#include "hlq/special.hpp"
#include "oracles.hpp"

namespace sp = hlq::special;
using hlq::BigInt;
using hlq::PiRational;

TEST_CASE("bernoulli values") {
  CHECK(sp::bernoulli(2) == sp::Rational64{1, 6});
  CHECK(sp::bernoulli(4) == sp::Rational64{-1, 30});
  CHECK(sp::bernoulli(12) == sp::Rational64{-691, 2730});
  CHECK(sp::bernoulli(24) == sp::Rational64{-236364091, 2730});
  CHECK_THROWS_AS(sp::bernoulli(3), hlq::DomainError);
  CHECK_THROWS_AS(sp::bernoulli(0), hlq::DomainError);
  CHECK_THROWS_AS(sp::bernoulli(26), hlq::DomainError);
}

TEST_CASE("bernoulli numbers satisfy the defining recurrence exactly") {
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 with B_0 = 1, B_1 = -1/2, odd B_j = 0
  for (int m = 2; m <= 24; ++m) {
    mpq_class total = 1;  // j = 0
    mpz_class binom = m + 1;
    total += mpq_class(binom) * mpq_class(-1, 2);
    for (int j = 2; j <= m; ++j) {
      binom = binom * (m + 2 - j) / j;
      if (j % 2 == 0) {
        auto b = sp::bernoulli(j);
        total += mpq_class(binom) * mpq_class(b.num, b.den);
      }
    }
    CAPTURE(m);
    CHECK(total == 0);
  }
}

TEST_CASE("pochhammer") {
  CHECK(sp::pochhammer(4, 0) == 1);
  CHECK(sp::pochhammer(4, 3) == 120);
  CHECK(sp::pochhammer(1, 5) == 120);
  CHECK(sp::pochhammer(20, 11) == BigInt("2180547008640000"));
}

TEST_CASE("si_asymptotic with no terms is pi/2") {
  for (double y : {0.5, 20.0, 1e6}) {
    CHECK(sp::si_asymptotic(y, -1) == std::numbers::pi / 2);
  }
}

TEST_CASE("si_series against quadrature") {
  CHECK(sp::si_series(0.0) == 0.0);
  CHECK(sp::si_series(1.0) == doctest::Approx(0.946083070367183).epsilon(1e-15));
  CHECK(sp::si_series(std::numbers::pi) == doctest::Approx(1.851937051982466).epsilon(1e-15));
  for (double y = 0.25; y <= 40.0; y += 0.75) {
    CAPTURE(y);
    CHECK(std::fabs(sp::si_series(y) - static_cast<double>(oracle::sine_integral(y))) <= 1e-14);
  }
  CHECK_THROWS_AS(sp::si_series(41.0), hlq::DomainError);
}

TEST_CASE("si_asymptotic with four terms: achieved accuracy") {
  // The truncation error of the 4-term expansion is about 10!/y^11, which is
  // 1.2e-8 at y = 20 and 6e-13 at y = 50; the tests pin those magnitudes.
  struct Row {
    double y, bound;
  };
  for (Row r : {Row{20, 2e-8}, Row{25, 2e-9}, Row{30, 1e-10}, Row{40, 1e-11}, Row{50, 1e-12}}) {
    CAPTURE(r.y);
    double err = std::fabs(sp::si_asymptotic(r.y, 4) - static_cast<double>(oracle::sine_integral(r.y)));
    CHECK(err <= r.bound);
  }
  CHECK(sp::si_asymptotic(20, 4) == doctest::Approx(1.5482417).epsilon(1e-7));
}

TEST_CASE("si_asymptotic with four terms misses 1e-10 at y = 20" * doctest::should_fail()) {
  double err = std::fabs(sp::si_asymptotic(20, 4) - static_cast<double>(oracle::sine_integral(20)));
  CHECK(err <= 1e-10);
}

TEST_CASE("si_asymptotic and si_series overlap") {
  for (double y = 20; y <= 40; y += 0.5) {
    CAPTURE(y);
    double d = std::fabs(sp::si_asymptotic(y, 4) - sp::si_series(y));
    CHECK(d <= (y >= 27 ? 1e-9 : 2e-8));
  }
}

TEST_CASE("sine_integral is accurate everywhere") {
  for (double y = 0.0; y <= 200.0; y += 0.37) {
    CAPTURE(y);
    CHECK(std::fabs(sp::sine_integral(y) - static_cast<double>(oracle::sine_integral(y))) <= 1e-13);
  }
}

TEST_CASE("g_deriv_polys structure") {
  const auto& p0 = sp::g_deriv_polys(0);
  REQUIRE(p0.pc.size() == 2);
  REQUIRE(p0.ps.size() == 1);
  CHECK(p0.pc[0] == 0);
  CHECK(p0.pc[1] == -1);
  CHECK(p0.ps[0] == -1);
  for (int j = 0; j <= sp::kMaxGDerivIndex; ++j) {
    const auto& p = sp::g_deriv_polys(j);
    CAPTURE(j);
    CHECK(p.pc.size() == static_cast<std::size_t>(2 * j + 2));
    CHECK(p.ps.size() == static_cast<std::size_t>(2 * j + 1));
    CHECK(p.pc.back() != 0);
    CHECK(p.ps.back() != 0);
  }
}

TEST_CASE("g_derivative closed forms") {
  CHECK(sp::g_derivative(1 / std::numbers::pi, 1) ==
        doctest::Approx(std::pow(std::numbers::pi, 3)).epsilon(1e-14));
  CHECK(sp::g_derivative(10, 1) ==
        doctest::Approx(-std::sin(0.1) / 100 - std::cos(0.1) / 1000).epsilon(1e-14));
  CHECK_THROWS_AS(sp::g_derivative(0.0, 1), hlq::DomainError);
  CHECK_THROWS_AS(sp::g_derivative(-1.0, 1), hlq::DomainError);
  CHECK_THROWS_AS(sp::g_derivative(1.0, 2), hlq::DomainError);
}

TEST_CASE("g_derivative matches finite differences") {
  for (int order : {1, 3, 5, 7}) {
    for (double u = 0.2; u <= 5.0; u *= 1.17) {
      CAPTURE(order);
      CAPTURE(u);
      double ref = oracle::g_derivative_fd(u, order);
      CHECK(std::fabs(sp::g_derivative(u, order) - ref) <= 1e-6 * std::fabs(ref));
    }
  }
  double ref = oracle::g_derivative_fd(0.3, 1);
  CHECK(sp::g_derivative(0.3, 1) == doctest::Approx(ref).epsilon(1e-4));
}

TEST_CASE("g_derivative obeys the growth bound") {
  // |G^(2j+1)(u)| <= C(j) (u^(-4j-3) + u^(-2)); C fitted on a coarse grid,
  // then asserted on a finer one.
  for (int j = 0; j <= 4; ++j) {
    auto ratio = [j](double u) {
      return std::fabs(sp::g_derivative(u, 2 * j + 1)) / (std::pow(u, -4.0 * j - 3) + 1 / (u * u));
    };
    double c = 0;
    for (double u = 0.05; u <= 100; u *= 1.5) c = std::max(c, ratio(u));
    for (double u = 0.05; u <= 100; u *= 1.013) {
      CAPTURE(j);
      CAPTURE(u);
      CHECK(ratio(u) <= 2 * c);
    }
  }
}

TEST_CASE("j0_phase_term at a perfect square") {
  // 2mp/q = 4 with x = pi, m = 2
  PiRational x(BigInt(1), 1);
  double amp = std::pow(std::numbers::pi / (2 * 2 * std::numbers::pi), 0.25);
  CHECK(sp::j0_phase_term(2, x) == doctest::Approx(amp * std::sin(std::numbers::pi / 4)).epsilon(1e-14));
}

TEST_CASE("j0_phase_term small argument") {
  PiRational x(BigInt(1), 1);
  double amp = std::pow(0.5, 0.25);
  double ref = amp * std::sin(std::numbers::pi / 4 + 2 * std::numbers::pi * (std::sqrt(2.0) - 1));
  CHECK(sp::j0_phase_term(1, x) == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("j0_phase_term tracks pi J0") {
  PiRational x = PiRational::from_real(1e4);
  double xf = hlq::to_float(x);
  for (std::uint64_t m = 1; m <= 100; ++m) {
    CAPTURE(m);
    long double z = 2 * std::sqrt(2 * std::numbers::pi_v<long double> * m * xf);
    double ref = static_cast<double>(std::numbers::pi_v<long double> * std::cyl_bessel_j(0.0L, z));
    double err = std::fabs(ref - sp::j0_phase_term(m, x));
    CHECK(err <= 0.05 * std::pow(m * xf, -0.75));
  }
}
