#pragma once

// Evaluation points are stored as exact rational multiples of pi,
// x = (p/q)*pi with a big-integer numerator. Reducing sin(x/n) then only
// needs p mod 2qn, which is exact at any magnitude of x.

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "hlq/double_double.hpp"

namespace hlq {

using BigInt = mpz_class;

class PiRational {
 public:
  PiRational() = default;
  // Throws DomainError if q < 1.
  PiRational(BigInt p, std::int64_t q);

  // Lossy constructors: the multiple of pi is rounded to 8 decimals.
  static PiRational from_pi_multiple(double t);
  static PiRational from_real(double x);

  const BigInt& numerator() const { return p_; }
  std::int64_t denominator() const { return q_; }
  int sign() const { return sgn(p_); }
  bool is_zero() const { return p_ == 0; }

  PiRational operator-() const { return PiRational(-p_, q_); }
  friend PiRational operator+(const PiRational& a, const PiRational& b);
  friend PiRational operator-(const PiRational& a, const PiRational& b) { return a + (-b); }
  friend bool operator==(const PiRational& a, const PiRational& b);

  // x/pi as a double (not x itself).
  double pi_multiple() const;
  // x/pi in decimal; exact when q is a power of ten, otherwise rounded to
  // `frac_digits` places.
  std::string pi_multiple_string(int frac_digits = 9) const;

 private:
  BigInt p_ = 0;
  std::int64_t q_ = 1;
};

// Reduced angle t*pi with t in [0, 2).
struct ReducedPhase {
  DoubleDouble t;
};

// "[+-]digits[.digits]" -> (p/10^d)*pi. Throws ParseError.
PiRational parse_pi_decimal(std::string_view s);

// x/n mod 2*pi, as t = (p mod 2qn)/(qn). n >= 1.
ReducedPhase reduce_sin_arg(const PiRational& x, std::uint64_t n);

double sin_pi(ReducedPhase t);
double cos_pi(ReducedPhase t);

// Fractional part of sqrt(a/b), |error| <= 2^-64, via an integer square root
// of floor(a * 2^128 / b). Requires a >= 0, b > 0.
DoubleDouble frac_sqrt(const BigInt& a, const BigInt& b);

// Nearest double to (p/q)*pi. On overflow returns +-inf and sets *overflowed.
double to_float(const PiRational& x, bool* overflowed = nullptr);

// Exact big integer -> double-double (rounded to ~106 bits).
DoubleDouble to_double_double(const BigInt& v);

// Hot-loop form of reduce_sin_arg for a fixed x. Immutable after
// construction; safe to share between threads.
class SinReducer {
 public:
  explicit SinReducer(const PiRational& x);
  ReducedPhase operator()(std::uint64_t n) const;

 private:
  PiRational x_;
  bool small_ = false;  // |p| < 2^126, numerator held in p_small_
  __int128 p_small_ = 0;
  std::uint64_t q_ = 1;
};

// Hot-loop form of frac_sqrt(2*m*p, q) for a fixed x = (p/q)*pi > 0. Holds
// scratch integers, so each thread needs its own instance.
class PhaseSqrt {
 public:
  explicit PhaseSqrt(const PiRational& x);
  PhaseSqrt(const PhaseSqrt& other);
  PhaseSqrt& operator=(const PhaseSqrt&) = delete;

  DoubleDouble operator()(std::uint64_t m);

 private:
  BigInt scaled_p_;  // p * 2^129
  std::uint64_t q_;
  BigInt radicand_;
  BigInt root_;
};

}  // namespace hlq
