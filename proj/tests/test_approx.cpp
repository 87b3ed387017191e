#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hlq/approx.hpp"
#include "hlq/confirm.hpp"
#include "hlq/errors.hpp"
#include "hlq/search.hpp"
#include "hlq/special.hpp"
#include "oracles.hpp"

namespace ap = hlq::approx;
namespace sp = hlq::special;
using hlq::BigInt;
using hlq::PiRational;

namespace {

PiRational real_x(double x) { return PiRational::from_real(x); }

}  // namespace

TEST_CASE("partial_sum single terms") {
  PiRational x(BigInt(3), 7);
  CHECK(ap::partial_sum(x, 1, 1) == doctest::Approx(std::sin(3 * std::numbers::pi / 7)).epsilon(1e-15));

  PiRational star = hlq::parse_pi_decimal("8203872394818031742687.5");
  for (std::uint64_t n : {1ULL, 5ULL, 13ULL, 65ULL, 1105ULL, 64411251125ULL}) {
    CAPTURE(n);
    CHECK(ap::partial_sum(star, n, n) == -1.0 / static_cast<double>(n));
  }
}

TEST_CASE("partial_sum matches a serial long double sum") {
  double got = ap::partial_sum(PiRational(BigInt(1), 1), 1, 1000000, 2);
  long double ref = oracle::serial_partial_sum(1.0L, 1, 1000000);
  CHECK(std::fabs(got - static_cast<double>(ref)) <= 1e-13);
}

TEST_CASE("partial_sum is identical for any worker count") {
  PiRational x = hlq::parse_pi_decimal("123456789.123");
  double a = ap::partial_sum(x, 3, 700001, 1);
  CHECK(ap::partial_sum(x, 3, 700001, 2) == a);
  CHECK(ap::partial_sum(x, 3, 700001, 8) == a);
}

TEST_CASE("coeff_c against the zeta oracle") {
  for (int k = 0; k <= 9; ++k) {
    CAPTURE(k);
    double ref = oracle::coeff_c(k, 1000);
    CHECK(std::fabs(ap::coeff_c(k, 1000, 6) - ref) <= 1e-14);
  }
  for (int k = 0; k <= 9; ++k) {
    CHECK(std::fabs(ap::coeff_c(k, 1000000000, 6) - 1.0 / (2 * k + 1)) <= 1e-9);
  }
}

TEST_CASE("q_direct at x = 1") {
  CHECK(ap::q_direct_real(1.0) == doctest::Approx(static_cast<double>(oracle::q_at_one())).epsilon(1e-15));
  CHECK(ap::q_direct_real(1.0) == doctest::Approx(1.47283).epsilon(1e-5));
  PiRational exact_one(BigInt(1), 1);  // pi, for an exact cross-check
  double qpi = ap::q_direct(exact_one).value;
  long double series = 0;
  long double fact = 1;
  for (int j = 0; j < 40; ++j) {
    if (j > 0) fact *= (2 * j) * (2 * j + 1);
    long double term = std::riemann_zeta(2.0L * j + 2) *
                       std::pow(std::numbers::pi_v<long double>, 2 * j + 1) / fact;
    series += (j % 2 == 0) ? term : -term;
  }
  CHECK(qpi == doctest::Approx(static_cast<double>(series)).epsilon(1e-14));
}

TEST_CASE("q_direct is odd and vanishes at zero") {
  CHECK(ap::q_direct(PiRational()).value == 0.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 20000.0);
  for (int i = 0; i < 50; ++i) {
    PiRational x = real_x(u(rng));
    CHECK(ap::q_direct(-x).value == -ap::q_direct(x).value);
  }
}

TEST_CASE("q_direct reaches 15 digits") {
  // Two choices of N give independent truncations of the same function.
  for (double x : {10.0, 500.0, 3000.0, 20000.0}) {
    PiRational px = real_x(x);
    ap::DirectParams other;
    other.N = static_cast<std::uint64_t>(3 * std::max(x, 1000.0));
    double a = ap::q_direct(px).value;
    double b = ap::q_direct(px, other).value;
    CAPTURE(x);
    CHECK(std::fabs(a - b) <= 1e-14);
  }
}

TEST_CASE("q_half against q_direct") {
  for (double x : {2500.0, 5000.0}) {
    PiRational px = real_x(x);
    double d = std::fabs(ap::q_half(px, 0.05, 4).value - ap::q_direct(px).value);
    CAPTURE(x);
    CHECK(d <= (x >= 4500 ? 1e-12 : 1e-10));
  }
  PiRational p5000 = real_x(5000);
  // Without corrections the gap is the first omitted term B_2/2! G'(N/x)/x^2,
  // about 2e-4 at this x.
  double x5 = hlq::to_float(p5000);
  double n5 = std::floor(std::pow(x5, 0.55));
  double lead = sp::g_derivative(n5 / x5, 1) / (12 * x5 * x5);
  double gap = ap::q_half(p5000, 0.05, 0).value - ap::q_direct(p5000).value;
  CHECK(std::fabs(gap) <= 5e-4);
  CHECK(std::fabs(gap - lead) <= 1e-6);
  PiRational p1000 = hlq::parse_pi_decimal("1000");
  CHECK(std::fabs(ap::q_half(p1000, 0.05, 4).value - ap::q_direct(p1000).value) <= 1e-9);
}

TEST_CASE("q_half domain") {
  CHECK_THROWS_AS(ap::q_half(real_x(5000), 0.0, 4), hlq::DomainError);
  CHECK_THROWS_AS(ap::q_half(real_x(5000), 0.5, 4), hlq::DomainError);
  CHECK_THROWS_AS(ap::q_half(real_x(50), 0.05, 4), hlq::DomainError);
  auto r = ap::q_half(real_x(5000), 0.05, 4);
  CHECK(r.n_terms_main == static_cast<std::uint64_t>(std::floor(std::pow(hlq::to_float(real_x(5000)), 0.55))) - 1);
  CHECK(r.err_heuristic == doctest::Approx(std::pow(5000.0, -0.5 - 19 * 0.05)).epsilon(1e-6));
}

TEST_CASE("q_third_split special splits") {
  PiRational x = real_x(1e8);
  double xf = hlq::to_float(x);
  // M = 1: no phase terms, so head + pi/2
  double n_sqrt = std::sqrt(xf / (2 * std::numbers::pi));
  auto r1 = ap::q_third_split(x, n_sqrt);
  CHECK(r1.n_terms_phase == 0);
  auto head = ap::partial_sum(x, 1, r1.n_terms_main);
  CHECK(r1.value == doctest::Approx(head + std::numbers::pi / 2).epsilon(1e-15));

  auto t = ap::q_third(x);
  auto s = ap::q_third_split(x, std::cbrt(xf / (2 * std::numbers::pi)));
  CHECK(t.value == s.value);
  CHECK_THROWS_AS(ap::q_third_split(x, 2 * n_sqrt), hlq::DomainError);
}

TEST_CASE("q_third_split stays near q_half across splits") {
  PiRational x = real_x(1e8);
  double xf = hlq::to_float(x);
  double ref = ap::q_half(x, 0.05, 4).value;
  double envelope = 5 * std::log(xf) / std::cbrt(xf);
  double n_max = std::sqrt(xf / (2 * std::numbers::pi));
  for (double e = 0.34; e <= 0.5; e += 0.02) {
    double N = std::min(std::pow(xf, e), n_max);
    CAPTURE(e);
    CHECK(std::fabs(ap::q_third_split(x, N).value - ref) <= envelope);
  }
}

TEST_CASE("q_third near 1e9 is within 1e-2 of q_half") {
  for (int u = 0; u < 5; ++u) {
    PiRational x = real_x(1e9 + 1e4 * u);
    CHECK(std::fabs(ap::q_third(x).value - ap::q_half(x, 0.05, 4).value) <= 1e-2);
  }
}

TEST_CASE("q_trunc") {
  PiRational x = real_x(1e6);
  double direct = ap::q_direct(x).value;
  CHECK(std::fabs(ap::q_trunc(x, 0.4).value - direct) <= 0.05);
  PiRational ten = hlq::parse_pi_decimal("3.2");
  auto tiny = ap::q_trunc(ten, 0.1);
  CHECK(tiny.n_terms_main == 1);
  CHECK(tiny.value == doctest::Approx(std::sin(hlq::to_float(ten)) + std::numbers::pi / 2));
  CHECK(std::isfinite(tiny.value));
}

TEST_CASE("q_trunc improves with eps on average") {
  std::vector<PiRational> grid;
  std::vector<double> ref;
  for (int i = 0; i < 100; ++i) {
    grid.push_back(real_x(1e6 + 997.0 * i));
    ref.push_back(ap::q_direct(grid.back(), {}, 1).value);
  }
  double previous = INFINITY;
  for (double eps : {0.2, 0.3, 0.4, 0.49}) {
    double mean = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      mean += std::fabs(ap::q_trunc(grid[i], eps, 1).value - ref[i]);
    }
    mean /= static_cast<double>(grid.size());
    CAPTURE(eps);
    CHECK(mean < previous);
    previous = mean;
  }
}

TEST_CASE("evaluators are deterministic across worker counts") {
  PiRational big = hlq::parse_pi_decimal("31415926535.897");
  for (auto algo : {ap::Algo::half, ap::Algo::third, ap::Algo::trunc}) {
    ap::EvalSpec spec;
    spec.algo = algo;
    double a = ap::evaluate(big, spec, 1).value;
    CHECK(ap::evaluate(big, spec, 2).value == a);
    CHECK(ap::evaluate(big, spec, 8).value == a);
  }
  PiRational mid = hlq::parse_pi_decimal("400000.5");
  double d = ap::q_direct(mid, {}, 1).value;
  CHECK(ap::q_direct(mid, {}, 2).value == d);
  CHECK(ap::q_direct(mid, {}, 8).value == d);
}

TEST_CASE("evaluate handles sign and small x") {
  ap::EvalSpec spec;
  spec.algo = ap::Algo::third;
  PiRational x = real_x(50);
  auto r = ap::evaluate(x, spec);
  CHECK(r.algo == ap::Algo::direct);
  CHECK(ap::evaluate(-x, spec).value == -r.value);
  CHECK(ap::parse_algo("half") == ap::Algo::half);
  CHECK_THROWS_AS(ap::parse_algo("fast"), hlq::ParseError);
}

TEST_CASE("multiprecision confirmation agrees with q_third") {
  PiRational x = hlq::parse_pi_decimal("123456789012.5");
  if (!ap::have_confirm_backend()) {
    CHECK_THROWS(ap::q_third_confirm(x));
    return;
  }
  auto mp = ap::q_third_confirm(x, 60, 2);
  auto dd = ap::q_third(x, 2);
  CHECK(mp.n_terms_main == dd.n_terms_main);
  CHECK(mp.n_terms_phase == dd.n_terms_phase);
  CHECK(std::fabs(mp.value - dd.value) <= 1e-12);
  CHECK(mp.text.size() >= 60);
}
