#include "hlq/approx.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hlq/errors.hpp"
#include "hlq/parallel.hpp"
#include "hlq/special.hpp"

namespace hlq::approx {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// x/N as a double-double, from the exact rational x = (p/q) pi.
DoubleDouble scaled_argument(const PiRational& x, std::uint64_t N) {
  DoubleDouble ratio = dd::div(to_double_double(x.numerator()),
                               dd::mul(dd::from_u64(N), static_cast<double>(x.denominator())));
  return dd::mul(ratio, dd::kPi);
}

// Largest integer strictly below a real bound (bound >= 1).
std::uint64_t last_index_below(double bound) {
  double f = std::floor(bound);
  auto n = static_cast<std::uint64_t>(f);
  return f == bound ? n - 1 : n;
}

void require_eps(double eps, const char* who) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw DomainError(std::string(who) + ": eps must lie in (0, 1/2)");
  }
}

// sum_{k=0}^{k_max} (-1)^k c_k(N) z^(2k+1)/(2k+1)!, plus the magnitude of
// the first omitted term.
std::pair<double, double> taylor_tail(double z, std::uint64_t N, int em_depth, int k_max) {
  double power = z;  // z^(2k+1)/(2k+1)!
  CompensatedSum tail;
  for (int k = 0; k <= k_max; ++k) {
    double term = coeff_c(k, N, em_depth) * power;
    tail.add(k % 2 == 0 ? term : -term);
    power *= z * z / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
  }
  double omitted = std::fabs(power) * (1.0 / (2.0 * k_max + 3.0) + 1.0 / (2.0 * N));
  return {tail.value(), omitted};
}

void validate_direct(const DirectParams& params) {
  if (params.k_max < 0 || params.k_max > 12) {
    throw DomainError("q_direct: k_max must be in [0, 12]");
  }
  if (params.em_depth < 1 || params.em_depth > 12) {
    throw DomainError("q_direct: Euler-Maclaurin depth must be in [1, 12]");
  }
}

}  // namespace

std::string_view algo_name(Algo algo) {
  switch (algo) {
    case Algo::direct:
      return "direct";
    case Algo::half:
      return "half";
    case Algo::third:
      return "third";
    case Algo::trunc:
      return "trunc";
  }
  return "?";
}

Algo parse_algo(std::string_view name) {
  for (Algo a : {Algo::direct, Algo::half, Algo::third, Algo::trunc}) {
    if (algo_name(a) == name) {
      return a;
    }
  }
  throw ParseError("unknown algorithm '" + std::string(name) +
                   "' (expected direct, half, third or trunc)");
}

double partial_sum(const PiRational& x, std::uint64_t n_lo, std::uint64_t n_hi,
                   unsigned workers) {
  if (n_lo < 1) {
    throw DomainError("partial_sum: n_lo must be >= 1");
  }
  if (n_hi < n_lo || x.is_zero()) {
    return 0.0;
  }
  const SinReducer reduce(x);
  return deterministic_range_sum(n_lo, n_hi, workers, [&](std::uint64_t a, std::uint64_t b) {
           CompensatedSum s;
           for (std::uint64_t n = a; n <= b; ++n) {
             s.add(sin_pi(reduce(n)) / static_cast<double>(n));
           }
           return s;
         }).to_double();
}

double coeff_c(int k, std::uint64_t N, int em_depth) {
  if (k < 0 || k > 12) {
    throw DomainError("coeff_c: k must be in [0, 12]");
  }
  if (em_depth < 1 || em_depth > 12) {
    throw DomainError("coeff_c: Euler-Maclaurin depth must be in [1, 12]");
  }
  if (N < 1) {
    throw DomainError("coeff_c: N must be >= 1");
  }
  const double n = static_cast<double>(N);
  CompensatedSum c;
  c.add(1.0 / (2.0 * k + 1.0));
  c.add(1.0 / (2.0 * n));
  double inv_n2 = 1.0 / (n * n);
  double n_power = 1.0;
  BigInt factorial = 1;  // (2m)!
  for (int m = 1; m <= em_depth - 1; ++m) {
    factorial *= (2 * m - 1) * (2 * m);
    n_power *= inv_n2;
    special::Rational64 b = special::bernoulli(2 * m);
    mpq_class coeff(special::pochhammer(2 * k + 2, static_cast<unsigned>(2 * m - 1)) * b.num,
                    factorial * b.den);
    coeff.canonicalize();
    c.add(coeff.get_d() * n_power);
  }
  return c.value();
}

ApproxResult q_direct(const PiRational& x, const DirectParams& params, unsigned workers) {
  validate_direct(params);
  ApproxResult r;
  r.algo = Algo::direct;
  if (x.is_zero()) {
    return r;
  }
  if (x.sign() < 0) {
    r = q_direct(-x, params, workers);
    r.value = -r.value;
    return r;
  }
  const double xf = to_float(x);
  std::uint64_t N = params.N;
  if (N == 0) {
    N = std::max<std::uint64_t>(static_cast<std::uint64_t>(std::floor(xf)), 1000);
  }
  double head = partial_sum(x, 1, N - 1, workers);
  double z = scaled_argument(x, N).to_double();
  auto [tail, omitted] = taylor_tail(z, N, params.em_depth, params.k_max);
  r.value = head + tail;
  r.n_terms_main = N - 1;
  r.n_terms_phase = static_cast<std::uint64_t>(params.k_max + 1);
  r.err_heuristic = omitted;
  if (z >= 1.0 && omitted > 1e-15) {
    r.warning = "x/N >= 1 and the Taylor tail is truncated early (first omitted term " +
                std::to_string(omitted) + "); raise k_max or N";
  }
  return r;
}

double q_direct_real(double x, const DirectParams& params) {
  validate_direct(params);
  if (!(std::fabs(x) <= 1e6)) {
    throw DomainError("q_direct_real: |x| must be <= 1e6");
  }
  if (x == 0.0) {
    return 0.0;
  }
  if (x < 0.0) {
    return -q_direct_real(-x, params);
  }
  std::uint64_t N = params.N;
  if (N == 0) {
    N = std::max<std::uint64_t>(static_cast<std::uint64_t>(std::floor(x)), 1000);
  }
  CompensatedSum head;
  for (std::uint64_t n = 1; n < N; ++n) {
    double nd = static_cast<double>(n);
    head.add(std::sin(x / nd) / nd);
  }
  auto [tail, omitted] = taylor_tail(x / static_cast<double>(N), N, params.em_depth, params.k_max);
  (void)omitted;
  head.add(tail);
  return head.value();
}

ApproxResult q_half(const PiRational& x, double eps, int M, unsigned workers) {
  require_eps(eps, "q_half");
  if (M < 0 || M > 12) {
    throw DomainError("q_half: M must be in [0, 12]");
  }
  const double xf = to_float(x);
  if (!(xf >= 100.0)) {
    throw DomainError("q_half: x must be >= 100");
  }
  const auto N = static_cast<std::uint64_t>(std::floor(std::pow(xf, 0.5 + eps)));
  ApproxResult r;
  r.algo = Algo::half;
  r.n_terms_main = N - 1;
  r.n_terms_phase = static_cast<std::uint64_t>(M);

  CompensatedSum total;
  total.add(partial_sum(x, 1, N - 1, workers));

  const ReducedPhase phase = reduce_sin_arg(x, N);
  const double s = sin_pi(phase);
  const double c = cos_pi(phase);
  const double nd = static_cast<double>(N);
  total.add(s / (2.0 * nd));

  const DoubleDouble v = scaled_argument(x, N);
  total.add(special::sine_integral(v.to_double(), s, c));

  double factorial = 1.0;  // (2m)!
  double n_power = 1.0;    // N^(-2m)
  for (int m = 1; m <= M; ++m) {
    factorial *= (2.0 * m - 1.0) * (2.0 * m);
    n_power /= nd * nd;
    double bracket = special::g_deriv_bracket(m - 1, v, s, c);
    total.add(-special::bernoulli(2 * m).to_double() / factorial * n_power * bracket);
  }
  r.value = total.value();
  r.err_heuristic = std::pow(xf, -0.5 - (4.0 * M + 3.0) * eps);
  return r;
}

ApproxResult q_third_split(const PiRational& x, double N, unsigned workers) {
  const double xf = to_float(x);
  if (!(xf > 0.0)) {
    throw DomainError("q_third_split: x must be positive");
  }
  if (!(N >= 1.0)) {
    throw DomainError("q_third_split: N must be >= 1");
  }
  double M = xf / (2.0 * std::numbers::pi * N * N);
  if (M < 1.0 && M > 1.0 - 1e-12) {
    M = 1.0;  // N = sqrt(x/2pi) up to rounding
  }
  if (!(M >= 1.0)) {
    throw DomainError("q_third_split: M = x/(2 pi N^2) must be >= 1");
  }
  const std::uint64_t n_hi = last_index_below(N);
  const std::uint64_t m_hi = last_index_below(M);

  ApproxResult r;
  r.algo = Algo::third;
  r.n_terms_main = n_hi;
  r.n_terms_phase = m_hi;

  CompensatedSum total;
  total.add(partial_sum(x, 1, n_hi, workers));
  total.add(kHalfPi);
  if (m_hi >= 1) {
    DoubleDouble phase_sum =
        deterministic_range_sum(1, m_hi, workers, [&](std::uint64_t a, std::uint64_t b) {
          special::J0PhaseKernel term(x);
          CompensatedSum s;
          for (std::uint64_t m = a; m <= b; ++m) {
            s.add(term(m));
          }
          return s;
        });
    total.add(phase_sum.hi);
    total.add(phase_sum.lo);
  }
  r.value = total.value();
  r.err_heuristic = std::log(xf) / N + std::sqrt(N / xf);
  return r;
}

ApproxResult q_third(const PiRational& x, unsigned workers) {
  const double xf = to_float(x);
  if (!(xf >= 1e4)) {
    throw DomainError("q_third: x must be >= 1e4");
  }
  ApproxResult r = q_third_split(x, std::cbrt(xf / (2.0 * std::numbers::pi)), workers);
  r.err_heuristic = std::log(xf) / std::cbrt(xf);
  return r;
}

ApproxResult q_trunc(const PiRational& x, double eps, unsigned workers) {
  require_eps(eps, "q_trunc");
  const double xf = to_float(x);
  if (!(xf >= 10.0)) {
    throw DomainError("q_trunc: x must be >= 10");
  }
  const std::uint64_t n_hi = last_index_below(std::pow(xf, eps));
  ApproxResult r;
  r.algo = Algo::trunc;
  r.n_terms_main = n_hi;
  r.value = partial_sum(x, 1, n_hi, workers) + kHalfPi;
  const double delta = eps * std::exp2(-1.0 / eps);
  r.err_heuristic = std::pow(xf, -delta);
  return r;
}

double algo_min_x(Algo algo) {
  switch (algo) {
    case Algo::direct:
      return 0.0;
    case Algo::half:
      return 100.0;
    case Algo::third:
      return 1e4;
    case Algo::trunc:
      return 10.0;
  }
  return 0.0;
}

ApproxResult evaluate(const PiRational& x, const EvalSpec& spec, unsigned workers) {
  if (x.sign() < 0) {
    ApproxResult r = evaluate(-x, spec, workers);
    r.value = -r.value;
    return r;
  }
  if (spec.algo == Algo::direct || to_float(x) < algo_min_x(spec.algo)) {
    return q_direct(x, spec.direct, workers);
  }
  switch (spec.algo) {
    case Algo::half:
      return q_half(x, spec.eps, spec.em_depth, workers);
    case Algo::third:
      return q_third(x, workers);
    case Algo::trunc:
      return q_trunc(x, spec.eps, workers);
    case Algo::direct:
      break;
  }
  return q_direct(x, spec.direct, workers);
}

}  // namespace hlq::approx
