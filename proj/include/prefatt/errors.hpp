#pragma once

#include <stdexcept>

namespace prefatt {

// Malformed input: bad edge lists, inconsistent histories, out-of-range ids.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure: missing root bracket, truncation limits, degenerate moments.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace prefatt
