#pragma once

#include <stdexcept>

namespace qnt {

// Invalid user-supplied parameters. The CLI maps this to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A simulation would exceed the dense state-vector dimension cap.
// The CLI maps this to exit code 3.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qnt
