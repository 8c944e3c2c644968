#ifndef SQZQFI_CONFIG_HPP
#define SQZQFI_CONFIG_HPP

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqzqfi {

/// Flat `key = value` config files mirroring the CLI flag names. Blank lines
/// and '#' comments allowed, no sections, no nesting. Unknown keys are
/// rejected against the caller-supplied key set.
inline std::map<std::string, std::string> parse_config_file(
    const std::string& path, const std::vector<std::string>& known_keys) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");

    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };

    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not 'key = value': " + stripped);
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        bool known = false;
        for (const auto& k : known_keys)
            if (k == key) known = true;
        if (!known)
            throw std::invalid_argument("config: unknown key '" + key + "' on line " +
                                        std::to_string(lineno));
        if (kv.count(key))
            throw std::invalid_argument("config: duplicate key '" + key + "' on line " +
                                        std::to_string(lineno));
        kv[key] = value;
    }
    return kv;
}

} // namespace sqzqfi

#endif
