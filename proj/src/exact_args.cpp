#include "hlq/exact_args.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "hlq/errors.hpp"

static_assert(GMP_LIMB_BITS == 64, "frac_sqrt reads the low 64 bits from one limb");

namespace hlq {
namespace {

constexpr double kTwoPowMinus64 = 0x1p-64;

// Value of an mpz that is known to fit in a signed 128-bit integer.
__int128 to_int128(const BigInt& v) {
  BigInt mag = abs(v);
  unsigned __int128 u = 0;
  std::size_t limbs = mpz_size(mag.get_mpz_t());
  for (std::size_t i = limbs; i-- > 0;) {
    u = (u << 64) | mpz_getlimbn(mag.get_mpz_t(), static_cast<mp_size_t>(i));
  }
  auto s = static_cast<__int128>(u);
  return sgn(v) < 0 ? -s : s;
}

bool fits_u64_product(std::uint64_t a, std::uint64_t b, std::uint64_t* out) {
  return !__builtin_mul_overflow(a, b, out);
}

}  // namespace

PiRational::PiRational(BigInt p, std::int64_t q) : p_(std::move(p)), q_(q) {
  if (q_ < 1) {
    throw DomainError("PiRational: denominator must be >= 1");
  }
}

PiRational PiRational::from_pi_multiple(double t) {
  if (!std::isfinite(t)) {
    throw DomainError("PiRational: non-finite multiple of pi");
  }
  constexpr std::int64_t kScale = 100000000;
  double scaled = std::nearbyint(t * static_cast<double>(kScale));
  return PiRational(BigInt(scaled), kScale);
}

PiRational PiRational::from_real(double x) {
  return from_pi_multiple(x / std::numbers::pi);
}

PiRational operator+(const PiRational& a, const PiRational& b) {
  std::int64_t g = std::gcd(a.q_, b.q_);
  std::int64_t lcm = 0;
  if (__builtin_mul_overflow(a.q_ / g, b.q_, &lcm)) {
    throw DomainError("PiRational: denominator overflow");
  }
  BigInt p = a.p_ * static_cast<long>(lcm / a.q_) + b.p_ * static_cast<long>(lcm / b.q_);
  return PiRational(std::move(p), lcm);
}

bool operator==(const PiRational& a, const PiRational& b) {
  return a.p_ * static_cast<long>(b.q_) == b.p_ * static_cast<long>(a.q_);
}

double PiRational::pi_multiple() const {
  return dd::div(to_double_double(p_), DoubleDouble(static_cast<double>(q_))).to_double();
}

std::string PiRational::pi_multiple_string(int frac_digits) const {
  std::int64_t pow10 = 1;
  int d = 0;
  while (pow10 < q_ && d < 18) {
    pow10 *= 10;
    ++d;
  }
  BigInt scaled;
  if (pow10 == q_) {
    scaled = abs(p_);
  } else {
    d = frac_digits;
    BigInt num = abs(p_);
    BigInt ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(d));
    num *= ten_pow;
    // Round half up.
    num = (2 * num + q_) / (2 * BigInt(static_cast<long>(q_)));
    scaled = num;
  }
  std::string digits = scaled.get_str();
  if (d > 0) {
    if (digits.size() <= static_cast<std::size_t>(d)) {
      digits.insert(0, static_cast<std::size_t>(d) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(d), ".");
  }
  if (sgn(p_) < 0 && scaled != 0) {
    digits.insert(0, "-");
  }
  return digits;
}

PiRational parse_pi_decimal(std::string_view s) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  std::size_t int_digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits.push_back(s[i++]);
    ++int_digits;
  }
  if (int_digits == 0) {
    throw ParseError("expected a decimal number, got '" + std::string(s) + "'");
  }
  int frac_digits = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits.push_back(s[i++]);
      ++frac_digits;
    }
    if (frac_digits == 0) {
      throw ParseError("missing digits after '.' in '" + std::string(s) + "'");
    }
  }
  if (i != s.size()) {
    throw ParseError("trailing characters in decimal '" + std::string(s) + "'");
  }
  if (frac_digits > 18) {
    throw ParseError("at most 18 fractional digits are supported");
  }
  BigInt p(digits, 10);
  if (negative) {
    p = -p;
  }
  std::int64_t q = 1;
  for (int k = 0; k < frac_digits; ++k) {
    q *= 10;
  }
  return PiRational(std::move(p), q);
}

DoubleDouble to_double_double(const BigInt& v) {
  double hi = mpz_get_d(v.get_mpz_t());
  if (!std::isfinite(hi)) {
    return DoubleDouble(hi);
  }
  BigInt rem = v - BigInt(hi);
  double lo = mpz_get_d(rem.get_mpz_t());
  return dd::two_sum(hi, lo);
}

ReducedPhase reduce_sin_arg(const PiRational& x, std::uint64_t n) {
  if (n == 0) {
    throw DomainError("reduce_sin_arg: n must be >= 1");
  }
  auto q = static_cast<std::uint64_t>(x.denominator());
  std::uint64_t qn = 0;
  std::uint64_t modulus = 0;
  if (fits_u64_product(q, n, &qn) && fits_u64_product(qn, 2, &modulus)) {
    std::uint64_t r = mpz_fdiv_ui(x.numerator().get_mpz_t(), modulus);
    return {dd::div(dd::from_u64(r), dd::from_u64(qn))};
  }
  BigInt qn_big = BigInt(static_cast<unsigned long>(q)) * static_cast<unsigned long>(n);
  BigInt r;
  BigInt m = 2 * qn_big;
  mpz_fdiv_r(r.get_mpz_t(), x.numerator().get_mpz_t(), m.get_mpz_t());
  return {dd::div(to_double_double(r), to_double_double(qn_big))};
}

double sin_pi(ReducedPhase phase) {
  DoubleDouble u = phase.t;
  double sign = 1.0;
  if (!dd::less(u, DoubleDouble(1.0))) {
    u = dd::sub(u, DoubleDouble(1.0));
    sign = -1.0;
  }
  if (dd::less(DoubleDouble(0.5), u)) {
    u = dd::sub(DoubleDouble(1.0), u);
  }
  // u in [0, 1/2]
  if (u.hi == 0.0) {
    return 0.0;
  }
  if (u.hi == 0.5 && u.lo == 0.0) {
    return sign;
  }
  if (!dd::less(DoubleDouble(0.25), u)) {
    DoubleDouble a = dd::mul(dd::kPi, u);
    return sign * (std::sin(a.hi) + std::cos(a.hi) * a.lo);
  }
  DoubleDouble a = dd::mul(dd::kPi, dd::sub(DoubleDouble(0.5), u));
  return sign * (std::cos(a.hi) - std::sin(a.hi) * a.lo);
}

double cos_pi(ReducedPhase phase) {
  DoubleDouble t = dd::add(phase.t, DoubleDouble(0.5));
  if (!dd::less(t, DoubleDouble(2.0))) {
    t = dd::sub(t, DoubleDouble(2.0));
  }
  return sin_pi({t});
}

DoubleDouble frac_sqrt(const BigInt& a, const BigInt& b) {
  if (sgn(b) <= 0) {
    throw DomainError("frac_sqrt: b must be positive");
  }
  if (sgn(a) < 0) {
    throw DomainError("frac_sqrt: a must be nonnegative");
  }
  BigInt radicand = a;
  radicand <<= 128;
  mpz_fdiv_q(radicand.get_mpz_t(), radicand.get_mpz_t(), b.get_mpz_t());
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  std::uint64_t low = mpz_getlimbn(root.get_mpz_t(), 0);
  DoubleDouble f = dd::from_u64(low);
  return {f.hi * kTwoPowMinus64, f.lo * kTwoPowMinus64};
}

double to_float(const PiRational& x, bool* overflowed) {
  if (overflowed != nullptr) {
    *overflowed = false;
  }
  if (mpz_sizeinbase(x.numerator().get_mpz_t(), 2) > 1100) {
    if (overflowed != nullptr) {
      *overflowed = true;
    }
    return x.sign() < 0 ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
  }
  DoubleDouble v = dd::div(to_double_double(x.numerator()),
                           DoubleDouble(static_cast<double>(x.denominator())));
  double r = dd::mul(v, dd::kPi).to_double();
  if (!std::isfinite(r) && overflowed != nullptr) {
    *overflowed = true;
  }
  return r;
}

SinReducer::SinReducer(const PiRational& x)
    : x_(x), q_(static_cast<std::uint64_t>(x.denominator())) {
  if (mpz_sizeinbase(x.numerator().get_mpz_t(), 2) <= 126) {
    small_ = true;
    p_small_ = to_int128(x.numerator());
  }
}

ReducedPhase SinReducer::operator()(std::uint64_t n) const {
  std::uint64_t qn = 0;
  std::uint64_t modulus = 0;
  if (!small_ || n == 0 || !fits_u64_product(q_, n, &qn) || !fits_u64_product(qn, 2, &modulus)) {
    return reduce_sin_arg(x_, n);
  }
  std::uint64_t r = 0;
  if (p_small_ >= 0 && p_small_ <= static_cast<__int128>(std::numeric_limits<std::uint64_t>::max())) {
    r = static_cast<std::uint64_t>(p_small_) % modulus;
  } else {
    __int128 rr = p_small_ % static_cast<__int128>(modulus);
    if (rr < 0) {
      rr += modulus;
    }
    r = static_cast<std::uint64_t>(rr);
  }
  return {dd::div(dd::from_u64(r), dd::from_u64(qn))};
}

PhaseSqrt::PhaseSqrt(const PiRational& x)
    : scaled_p_(x.numerator()), q_(static_cast<std::uint64_t>(x.denominator())) {
  if (x.sign() < 0) {
    throw DomainError("PhaseSqrt: x must be nonnegative");
  }
  scaled_p_ <<= 129;
}

PhaseSqrt::PhaseSqrt(const PhaseSqrt& other) : scaled_p_(other.scaled_p_), q_(other.q_) {}

DoubleDouble PhaseSqrt::operator()(std::uint64_t m) {
  mpz_mul_ui(radicand_.get_mpz_t(), scaled_p_.get_mpz_t(), m);
  mpz_fdiv_q_ui(radicand_.get_mpz_t(), radicand_.get_mpz_t(), q_);
  mpz_sqrt(root_.get_mpz_t(), radicand_.get_mpz_t());
  std::uint64_t low = mpz_getlimbn(root_.get_mpz_t(), 0);
  DoubleDouble f = dd::from_u64(low);
  return {f.hi * kTwoPowMinus64, f.lo * kTwoPowMinus64};
}

}  // namespace hlq
