#pragma once

#include <stdexcept>

namespace hlq {

// Malformed textual input (decimal literals, checkpoint lines, enum names).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace hlq
