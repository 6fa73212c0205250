#pragma once

#include <stdexcept>
#include <string>

namespace lfsgm {

/// Unreadable/missing/malformed input files (datasets, images, maps).
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration values or parameter combinations.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lfsgm
