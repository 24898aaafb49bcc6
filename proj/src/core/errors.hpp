#ifndef COMMSPLIT_ERRORS_HPP
#define COMMSPLIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace commsplit {

// std::invalid_argument is used directly for precondition violations.

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnverifiedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace commsplit

#endif
