#pragma once

#include <stdexcept>
#include <string>

namespace qcascade {

// Error categories; the CLI maps them onto exit codes (parse 2,
// validation 3, numerical 4).
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qcascade
