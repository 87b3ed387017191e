#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include <mpfr.h>

#include "hlq/confirm.hpp"
#include "hlq/errors.hpp"
#include "hlq/parallel.hpp"

namespace hlq::approx {
namespace {

class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

std::uint64_t last_index_below(double bound) {
  double f = std::floor(bound);
  auto n = static_cast<std::uint64_t>(f);
  return f == bound ? n - 1 : n;
}

// Sums fn(i) for i in [first, last] chunk by chunk; partials are added in
// chunk order so the result does not depend on the worker count.
template <class TermFn>
void ordered_sum(std::uint64_t first, std::uint64_t last, mpfr_prec_t prec, unsigned workers,
                 Real& total, TermFn term_fn) {
  if (last < first) {
    return;
  }
  std::uint64_t n_chunks = (last - first) / kSumChunk + 1;
  std::vector<std::unique_ptr<Real>> parts;
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    parts.push_back(std::make_unique<Real>(prec));
  }
  parallel_for(n_chunks, workers, [&](std::size_t c) {
    std::uint64_t a = first + c * kSumChunk;
    std::uint64_t b = (last - a < kSumChunk - 1) ? last : a + kSumChunk - 1;
    Real term(prec);
    for (std::uint64_t i = a; i <= b; ++i) {
      term_fn(i, term);
      mpfr_add(parts[c]->get(), parts[c]->get(), term.get(), MPFR_RNDN);
    }
  });
  for (auto& p : parts) {
    mpfr_add(total.get(), total.get(), p->get(), MPFR_RNDN);
  }
}

}  // namespace

bool have_confirm_backend() { return true; }

ConfirmResult q_third_confirm(const PiRational& x, int digits, unsigned workers) {
  if (digits < 20 || digits > 1000) {
    throw DomainError("q_third_confirm: digits must be in [20, 1000]");
  }
  const double xf = to_float(x);
  if (!(xf >= 1e4)) {
    throw DomainError("q_third_confirm: x must be >= 1e4");
  }
  const auto prec = static_cast<mpfr_prec_t>(std::ceil(digits * std::log2(10.0))) + 64;
  const double N = std::cbrt(xf / (2.0 * std::numbers::pi));
  const double M = xf / (2.0 * std::numbers::pi * N * N);
  const std::uint64_t n_hi = last_index_below(N);
  const std::uint64_t m_hi = last_index_below(M);
  const auto q = static_cast<unsigned long>(x.denominator());

  Real pi(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  Real x_mp(prec);  // (p/q) pi
  mpfr_set_z(x_mp.get(), x.numerator().get_mpz_t(), MPFR_RNDN);
  mpfr_div_ui(x_mp.get(), x_mp.get(), q, MPFR_RNDN);
  mpfr_mul(x_mp.get(), x_mp.get(), pi.get(), MPFR_RNDN);

  Real total(prec);
  ordered_sum(1, n_hi, prec, workers, total, [&](std::uint64_t n, Real& term) {
    // Exact reduction: angle = ((p mod 2qn)/(qn)) pi.
    BigInt modulus = BigInt(q) * static_cast<unsigned long>(n) * 2;
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.numerator().get_mpz_t(), modulus.get_mpz_t());
    mpfr_set_z(term.get(), r.get_mpz_t(), MPFR_RNDN);
    mpfr_div_ui(term.get(), term.get(), q, MPFR_RNDN);
    mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_mul(term.get(), term.get(), pi.get(), MPFR_RNDN);
    mpfr_sin(term.get(), term.get(), MPFR_RNDN);
    mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(n), MPFR_RNDN);
  });

  Real half_pi(prec);
  mpfr_div_2ui(half_pi.get(), pi.get(), 1, MPFR_RNDN);
  mpfr_add(total.get(), total.get(), half_pi.get(), MPFR_RNDN);

  ordered_sum(1, m_hi, prec, workers, total, [&](std::uint64_t m, Real& term) {
    // sqrt(2mp/q), keep the fractional part f; phase = pi/4 + 2 pi f.
    Real root(prec + 64);
    mpfr_set_z(root.get(), x.numerator().get_mpz_t(), MPFR_RNDN);
    mpfr_mul_ui(root.get(), root.get(), 2 * static_cast<unsigned long>(m), MPFR_RNDN);
    mpfr_div_ui(root.get(), root.get(), q, MPFR_RNDN);
    mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
    mpfr_frac(root.get(), root.get(), MPFR_RNDN);
    mpfr_mul_ui(root.get(), root.get(), 8, MPFR_RNDN);
    mpfr_add_ui(root.get(), root.get(), 1, MPFR_RNDN);
    mpfr_mul(root.get(), root.get(), pi.get(), MPFR_RNDN);
    mpfr_div_2ui(root.get(), root.get(), 2, MPFR_RNDN);
    mpfr_sin(term.get(), root.get(), MPFR_RNDN);
    // (pi / (2 m x))^(1/4)
    Real amp(prec);
    mpfr_mul_ui(amp.get(), x_mp.get(), 2 * static_cast<unsigned long>(m), MPFR_RNDN);
    mpfr_div(amp.get(), pi.get(), amp.get(), MPFR_RNDN);
    mpfr_sqrt(amp.get(), amp.get(), MPFR_RNDN);
    mpfr_sqrt(amp.get(), amp.get(), MPFR_RNDN);
    mpfr_mul(term.get(), term.get(), amp.get(), MPFR_RNDN);
  });

  ConfirmResult out;
  out.value = mpfr_get_d(total.get(), MPFR_RNDN);
  out.n_terms_main = n_hi;
  out.n_terms_phase = m_hi;
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, total.get());
  out.text = buf.data();
  return out;
}

}  // namespace hlq::approx
