#include "lfsgm/census.hpp"

#include <set>
#include <sstream>

#include "lfsgm/errors.hpp"
#include "lfsgm/parallel.hpp"

namespace lfsgm {

CensusPattern CensusPattern::sparse7x7() {
    CensusPattern p;
    for (int dv : {-3, -1, 1, 3})
        for (int du : {-3, -1, 1, 3})
            p.offsets.emplace_back(du, dv);
    return p;
}

CensusPattern CensusPattern::parse(const std::string& text) {
    CensusPattern p;
    std::string cleaned;
    cleaned.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            cleaned.push_back(c);
    std::istringstream in(cleaned);
    char ch = 0;
    while (in >> ch) {
        int du = 0, dv = 0;
        char comma = 0, close = 0;
        if (ch != '(' || !(in >> du >> comma >> dv >> close) || comma != ',' ||
            close != ')')
            throw config_error("bad census pattern at '" + text +
                               "', expected (du,dv),(du,dv),...");
        p.offsets.emplace_back(du, dv);
        in >> ch; // separating comma, if any
    }
    p.validate();
    return p;
}

std::string CensusPattern::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (i)
            out << ',';
        out << '(' << offsets[i].first << ',' << offsets[i].second << ')';
    }
    return out.str();
}

void CensusPattern::validate() const {
    if (offsets.empty())
        throw config_error("census pattern must be nonempty");
    if (offsets.size() > 64)
        throw config_error("census pattern exceeds 64 offsets");
    std::set<std::pair<int, int>> seen;
    for (const auto& o : offsets) {
        if (o == std::pair<int, int>{0, 0})
            throw config_error("census pattern must not contain (0,0)");
        if (!seen.insert(o).second)
            throw config_error("census pattern has duplicate offsets");
    }
}

namespace {

void transform_view(const ImageU8& img, const CensusPattern& pattern,
                    std::array<std::vector<std::uint64_t>, 3>& out, int workers) {
    const int w = img.width;
    const int h = img.height;
    for (int c = 0; c < 3; ++c)
        out[c].assign(static_cast<std::size_t>(w) * h, 0);

    parallel_chunks(h, workers, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < w; ++x) {
                const std::size_t at = static_cast<std::size_t>(y) * w + x;
                for (int c = 0; c < 3; ++c) {
                    const std::uint8_t center = img.at(x, y, c);
                    std::uint64_t word = 0;
                    for (std::size_t k = 0; k < pattern.offsets.size(); ++k) {
                        const auto [du, dv] = pattern.offsets[k];
                        if (center > img.at_clamped(x + du, y + dv, c))
                            word |= std::uint64_t{1} << k;
                    }
                    out[c][at] = word;
                }
            }
        }
    });
}

} // namespace

CensusField census_transform(const LightField& lf, const CensusPattern& pattern,
                             std::span<const int> view_indices, int workers) {
    pattern.validate();
    CensusField cf;
    cf.width = lf.width;
    cf.height = lf.height;
    cf.bits = pattern.bits();
    cf.views.resize(lf.view_count());
    for (int v : view_indices) {
        if (v < 0 || v >= lf.view_count())
            throw config_error("census view index out of range");
        transform_view(lf.views[v], pattern, cf.views[v], workers);
    }
    return cf;
}

CensusField census_transform(const LightField& lf, const CensusPattern& pattern,
                             int workers) {
    std::vector<int> all(lf.view_count());
    for (int i = 0; i < lf.view_count(); ++i)
        all[i] = i;
    return census_transform(lf, pattern, all, workers);
}

} // namespace lfsgm
