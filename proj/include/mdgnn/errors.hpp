#pragma once

#include <stdexcept>
#include <string>

namespace mdgnn {

/// Bad run configuration (flags, config files, inconsistent settings).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (trajectory files, checkpoints).
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numeric failure at runtime (non-finite loss, NaN gradients, degeneracies).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mdgnn
