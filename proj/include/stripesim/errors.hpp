// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace stripesim {

// Unreadable, unwritable, or malformed file. The CLI maps this to exit code 2.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A run configuration that fails validation. CLI exit code 4.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The unattacked scene is not recognized as its ground-truth color, so attack
// results against it would be meaningless. CLI exit code 3.
struct BaselineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace stripesim
