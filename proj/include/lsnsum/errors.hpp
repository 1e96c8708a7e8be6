#pragma once

#include <stdexcept>

namespace lsnsum {

// Malformed scenario/config input. CLI maps this to exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A fit or other numeric procedure could not produce a result. Exit code 3.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File I/O failure. Exit code 4.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lsnsum
