#include "lfsgm/pfm.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "lfsgm/errors.hpp"

namespace lfsgm {

namespace {

constexpr bool host_little_endian = std::endian::native == std::endian::little;

void swap_bytes(float& f) {
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    u = ((u & 0x000000ffu) << 24) | ((u & 0x0000ff00u) << 8) |
        ((u & 0x00ff0000u) >> 8) | ((u & 0xff000000u) >> 24);
    std::memcpy(&f, &u, 4);
}

/// One whitespace-delimited header token, skipping comment lines.
std::string next_token(std::istream& in) {
    std::string tok;
    if (!(in >> tok))
        throw io_error("truncated PFM header");
    while (!tok.empty() && tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        if (!(in >> tok))
            throw io_error("truncated PFM header");
    }
    return tok;
}

} // namespace

void write_pfm(const DisparityMap& dm, const std::filesystem::path& path) {
    if (dm.width <= 0 || dm.height <= 0)
        throw io_error("empty disparity map");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open " + path.string() + " for writing");

    out << "Pf\n" << dm.width << " " << dm.height << "\n-1.0\n";
    std::vector<float> row(static_cast<std::size_t>(dm.width));
    for (int y = dm.height - 1; y >= 0; --y) {
        for (int x = 0; x < dm.width; ++x) {
            float f = dm.is_valid(x, y)
                          ? dm.value(x, y)
                          : std::numeric_limits<float>::quiet_NaN();
            if (!host_little_endian)
                swap_bytes(f);
            row[static_cast<std::size_t>(x)] = f;
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!out)
        throw io_error("short write to " + path.string());
}

DisparityMap read_pfm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open " + path.string());

    const std::string magic = next_token(in);
    if (magic != "Pf")
        throw io_error(path.string() + ": not a grayscale PFM (got '" + magic +
                       "')");
    int width = 0;
    int height = 0;
    double scale = 0.0;
    try {
        width = std::stoi(next_token(in));
        height = std::stoi(next_token(in));
        scale = std::stod(next_token(in));
    } catch (const std::exception&) {
        throw io_error(path.string() + ": malformed PFM header");
    }
    if (width <= 0 || height <= 0)
        throw io_error(path.string() + ": bad PFM dimensions");
    if (scale == 0.0)
        throw io_error(path.string() + ": zero PFM scale");
    in.get(); // single whitespace byte terminating the header

    const bool file_little_endian = scale < 0.0;
    DisparityMap dm(width, height);
    std::vector<float> row(static_cast<std::size_t>(width));
    for (int y = height - 1; y >= 0; --y) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(float)));
        if (!in)
            throw io_error(path.string() + ": truncated PFM data");
        for (int x = 0; x < width; ++x) {
            float f = row[static_cast<std::size_t>(x)];
            if (file_little_endian != host_little_endian)
                swap_bytes(f);
            if (std::isfinite(f))
                dm.set(x, y, f);
        }
    }
    return dm;
}

} // namespace lfsgm
