#pragma once

#include <stdexcept>
#include <string>

namespace tropep {

// Bad caller input: malformed files, invalid model parameters, violated
// preconditions. The CLI maps it to exit status 2.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Floating-point machinery failed (QR did not converge, ambiguous eigenvalue
// matching, ...). The CLI maps it to exit status 3.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tropep
