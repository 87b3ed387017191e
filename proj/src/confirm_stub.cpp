#include <stdexcept>

#include "hlq/confirm.hpp"

namespace hlq::approx {

bool have_confirm_backend() { return false; }

ConfirmResult q_third_confirm(const PiRational&, int, unsigned) {
  throw std::runtime_error("multiprecision backend not built (configure with -DHLQ_WITH_MPFR=ON)");
}

}  // namespace hlq::approx
