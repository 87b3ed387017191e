#pragma once

// Unevaluated sum of two doubles (|lo| <= ulp(hi)/2), about 106 bits of
// significand. Only the handful of operations the evaluators need.

#include <cmath>
#include <cstdint>

namespace hlq {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT(implicit)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

namespace dd {

inline DoubleDouble two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble add(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble neg(DoubleDouble a) { return {-a.hi, -a.lo}; }

inline DoubleDouble sub(DoubleDouble a, DoubleDouble b) { return add(a, neg(b)); }

inline DoubleDouble mul(DoubleDouble a, DoubleDouble b) {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble mul(DoubleDouble a, double b) {
  DoubleDouble p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble div(DoubleDouble a, DoubleDouble b) {
  double q1 = a.hi / b.hi;
  DoubleDouble r = sub(a, mul(b, q1));
  double q2 = r.hi / b.hi;
  r = sub(r, mul(b, q2));
  double q3 = r.hi / b.hi;
  DoubleDouble q = quick_two_sum(q1, q2);
  return add(q, DoubleDouble(q3));
}

// Exact conversion of a 64-bit unsigned integer.
inline DoubleDouble from_u64(std::uint64_t u) {
  double hi = static_cast<double>(u & ~std::uint64_t{0x7FF});
  double lo = static_cast<double>(u & std::uint64_t{0x7FF});
  return quick_two_sum(hi, lo);
}

inline bool less(DoubleDouble a, DoubleDouble b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

inline bool equal(DoubleDouble a, DoubleDouble b) { return a.hi == b.hi && a.lo == b.lo; }

// pi to about 107 bits.
inline constexpr DoubleDouble kPi{3.141592653589793116e+00, 1.224646799147353207e-16};

}  // namespace dd

// Neumaier-compensated accumulator; the sum and compensation are kept
// separately so partials can be merged in a fixed order.
class CompensatedSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  void merge(const CompensatedSum& other) {
    add(other.sum_);
    comp_ += other.comp_;
  }

  double value() const { return sum_ + comp_; }
  DoubleDouble value_dd() const { return dd::two_sum(sum_, comp_); }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace hlq
