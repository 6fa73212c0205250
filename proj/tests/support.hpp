#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lfsgm/image.hpp"

namespace lfsgm::testing {

/// Periodic "cloud" texture: random-phase sinusoids with a 1/f amplitude
/// falloff, min-max normalized per channel into [lo, hi]. Periodic by
/// construction, so it tiles seamlessly; smooth but textured everywhere.
inline ImageU8 cloud_texture(int n, unsigned seed, int lo = 0, int hi = 255) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> amp(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);

    struct Wave {
        int kx, ky;
        double a, ph;
    };
    ImageU8 img(n, n);
    std::vector<double> field(static_cast<std::size_t>(n) * n);
    for (int c = 0; c < 3; ++c) {
        std::vector<Wave> waves;
        for (int kx = 0; kx <= 8; ++kx) {
            for (int ky = -8; ky <= 8; ++ky) {
                if (kx == 0 && ky <= 0)
                    continue; // half-plane; the rest are conjugates
                const double f = std::hypot(kx, ky);
                waves.push_back({kx, ky, amp(rng) / std::pow(f, 1.2),
                                 phase(rng)});
            }
        }
        double mn = 1e300;
        double mx = -1e300;
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                double v = 0.0;
                for (const Wave& w : waves)
                    v += w.a * std::cos(2.0 * M_PI * (w.kx * x + w.ky * y) / n +
                                        w.ph);
                field[static_cast<std::size_t>(y) * n + x] = v;
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
        }
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const double v = field[static_cast<std::size_t>(y) * n + x];
                img.at(x, y, c) = static_cast<std::uint8_t>(
                    std::lround(lo + (v - mn) / (mx - mn) * (hi - lo)));
            }
    }
    return img;
}

/// Rounded 8-bit gamma curve v -> 255 (v/255)^g.
inline std::array<std::uint8_t, 256> gamma_lut(double g) {
    std::array<std::uint8_t, 256> lut{};
    for (int v = 0; v < 256; ++v)
        lut[v] = static_cast<std::uint8_t>(
            std::lround(255.0 * std::pow(v / 255.0, g)));
    return lut;
}

inline ImageU8 apply_lut(const ImageU8& img,
                         const std::array<std::uint8_t, 256>& lut) {
    ImageU8 out = img;
    for (std::uint8_t& v : out.data)
        v = lut[v];
    return out;
}

/// Fresh scratch directory under the build tree (wiped if it exists).
inline std::filesystem::path scratch_dir(const std::string& name) {
    const std::filesystem::path base =
        std::filesystem::temp_directory_path() / "lfsgm_tests";
    const std::filesystem::path dir = base / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

/// Runs a command, returns its exit code (normalized from system()).
inline int run_cmd(const std::string& cmd) {
    const int raw = std::system(cmd.c_str());
    if (raw == -1)
        return -1;
    return WEXITSTATUS(raw);
}

/// Parses a key=value report file.
inline std::map<std::string, std::string>
parse_report(const std::filesystem::path& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos)
            kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

inline double report_double(const std::map<std::string, std::string>& kv,
                            const std::string& key) {
    return std::stod(kv.at(key));
}

} // namespace lfsgm::testing
