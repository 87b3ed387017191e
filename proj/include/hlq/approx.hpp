#pragma once

// Evaluators for Q(x) = sum_{n>=1} sin(x/n)/n.
//
//   q_direct  O(x):        head sum to N-1 plus a Taylor series in x/N whose
//                          coefficients c_k(N) come from Euler-Maclaurin.
//   q_half    O(x^(1/2+e)): head sum to N-1 = floor(x^(1/2+e)) - 1, a half
//                          boundary term, Si(x/N) and Bernoulli corrections.
//   q_third   O(x^(1/3)):  head sum below N plus pi/2 plus the leading
//                          asymptotics of pi J0(2 sqrt(2 pi m x)) for m < M,
//                          with 2 pi M N^2 = x.
//   q_trunc   O(x^e):      head sum below x^e plus pi/2.
//
// All sums run through the same chunked compensated kernel, so every result
// is bit-identical for any worker count.

#include <cstdint>
#include <string>
#include <string_view>

#include "hlq/exact_args.hpp"

namespace hlq::approx {

enum class Algo { direct, half, third, trunc };

std::string_view algo_name(Algo algo);
// Throws ParseError.
Algo parse_algo(std::string_view name);

struct ApproxResult {
  double value = 0.0;
  Algo algo = Algo::direct;
  std::uint64_t n_terms_main = 0;
  std::uint64_t n_terms_phase = 0;
  // Heuristic (implied constant 1), not a certified bound.
  double err_heuristic = 0.0;
  // Non-empty when the parameters leave a tail the estimate cannot vouch for.
  std::string warning;
};

struct DirectParams {
  std::uint64_t N = 0;  // 0 selects max(floor(x), 1000)
  int em_depth = 6;     // Euler-Maclaurin depth M in c_k(N)
  int k_max = 9;        // last Taylor index
};

// sum_{n=n_lo}^{n_hi} sin(x/n)/n with exact argument reduction.
double partial_sum(const PiRational& x, std::uint64_t n_lo, std::uint64_t n_hi,
                   unsigned workers = 0);

// c_k(N) = N^(2k+1) sum_{n>=N} n^(-2k-2) from its Euler-Maclaurin expansion
// truncated before N^(-2 M_em). k <= 12, 1 <= M_em <= 12.
double coeff_c(int k, std::uint64_t N, int em_depth);

ApproxResult q_direct(const PiRational& x, const DirectParams& params = {},
                      unsigned workers = 0);

// q_direct for a plain real argument of moderate size (|x| <= 1e6), using the
// library sine. Used where x is not a rational multiple of pi, e.g. inside
// quadrature.
double q_direct_real(double x, const DirectParams& params = {});

// eps in (0, 1/2), M >= 0 Bernoulli corrections, x >= 100.
ApproxResult q_half(const PiRational& x, double eps = 0.05, int M = 4, unsigned workers = 0);

// Balanced split M = N = (x/(2 pi))^(1/3); x >= 1e4.
ApproxResult q_third(const PiRational& x, unsigned workers = 0);

// Caller-chosen real N >= 1 with M = x/(2 pi N^2) >= 1.
ApproxResult q_third_split(const PiRational& x, double N, unsigned workers = 0);

// eps in (0, 1/2), x >= 10.
ApproxResult q_trunc(const PiRational& x, double eps, unsigned workers = 0);

// Algorithm choice plus its knobs, as used by scans and the CLI.
struct EvalSpec {
  Algo algo = Algo::half;
  double eps = 0.05;  // half and trunc
  int em_depth = 4;   // half: Bernoulli corrections
  DirectParams direct{};
};

// Smallest x at which each algorithm is used by `evaluate`.
double algo_min_x(Algo algo);

// Dispatches on spec.algo. Points below the algorithm's working range are
// evaluated with q_direct instead; the result's `algo` records what ran.
ApproxResult evaluate(const PiRational& x, const EvalSpec& spec, unsigned workers = 0);

}  // namespace hlq::approx
