#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace lfsgm {

/// Plain-text key=value file. Blank lines, `[section]` headers and lines
/// starting with '#', ';' or "//" are skipped; keys and values are trimmed.
/// Later duplicates overwrite earlier ones.
std::map<std::string, std::string>
read_key_value_file(const std::filesystem::path& path);

/// First present key from `names`, parsed as double. Throws config_error on
/// parse failure; returns fallback when no key is present.
double kv_double(const std::map<std::string, std::string>& kv,
                 std::initializer_list<const char*> names, double fallback);
int kv_int(const std::map<std::string, std::string>& kv,
           std::initializer_list<const char*> names, int fallback);
bool kv_has(const std::map<std::string, std::string>& kv,
            std::initializer_list<const char*> names);

} // namespace lfsgm
