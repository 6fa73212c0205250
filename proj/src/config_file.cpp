#include "lfsgm/config_file.hpp"

#include <fstream>

#include "lfsgm/errors.hpp"

namespace lfsgm {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

std::map<std::string, std::string>
read_key_value_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open config file: " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';' || t[0] == '[' ||
            t.rfind("//", 0) == 0)
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            continue;
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (!key.empty())
            kv[key] = value;
    }
    return kv;
}

bool kv_has(const std::map<std::string, std::string>& kv,
            std::initializer_list<const char*> names) {
    for (const char* n : names)
        if (kv.count(n))
            return true;
    return false;
}

double kv_double(const std::map<std::string, std::string>& kv,
                 std::initializer_list<const char*> names, double fallback) {
    for (const char* n : names) {
        const auto it = kv.find(n);
        if (it == kv.end())
            continue;
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size())
                throw std::invalid_argument(it->second);
            return v;
        } catch (const std::exception&) {
            throw config_error("config key '" + std::string(n) +
                               "' has non-numeric value '" + it->second + "'");
        }
    }
    return fallback;
}

int kv_int(const std::map<std::string, std::string>& kv,
           std::initializer_list<const char*> names, int fallback) {
    for (const char* n : names) {
        const auto it = kv.find(n);
        if (it == kv.end())
            continue;
        try {
            std::size_t pos = 0;
            const int v = std::stoi(it->second, &pos);
            if (pos != it->second.size())
                throw std::invalid_argument(it->second);
            return v;
        } catch (const std::exception&) {
            throw config_error("config key '" + std::string(n) +
                               "' has non-integer value '" + it->second + "'");
        }
    }
    return fallback;
}

} // namespace lfsgm
