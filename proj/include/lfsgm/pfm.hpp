#pragma once

#include <filesystem>

#include "lfsgm/light_field.hpp"

namespace lfsgm {

/// Writes a grayscale PFM: header "Pf", width height, scale -1.0
/// (little-endian), rows bottom-up as 32-bit floats. Invalid pixels are
/// stored as NaN. Throws io_error.
void write_pfm(const DisparityMap& dm, const std::filesystem::path& path);

/// Reads a grayscale PFM written in either byte order; non-finite samples
/// come back invalid. A write/read round trip is bit-exact. Throws io_error.
DisparityMap read_pfm(const std::filesystem::path& path);

} // namespace lfsgm
