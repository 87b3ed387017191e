#pragma once

// Multiprecision re-evaluation of the O(x^(1/3)) approximation, used to
// confirm that rounding in the double-double pipeline is not what decides
// the answer. Available when built with HLQ_WITH_MPFR.

#include <cstdint>
#include <string>

#include "hlq/exact_args.hpp"

namespace hlq::approx {

struct ConfirmResult {
  double value = 0.0;
  std::string text;  // `digits` significant decimal digits
  std::uint64_t n_terms_main = 0;
  std::uint64_t n_terms_phase = 0;
};

bool have_confirm_backend();

// q_third evaluated with `digits` (>= 20) decimal digits of working
// precision. Throws std::runtime_error when the backend is not built.
ConfirmResult q_third_confirm(const PiRational& x, int digits = 60, unsigned workers = 0);

}  // namespace hlq::approx
