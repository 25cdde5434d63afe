#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "qmf/error.hpp"

namespace qmf {

// Runtime limits guarding exact arithmetic against runaway inputs. Values
// come from a TOML-style key = value file and are clamped to hard caps.
struct Limits {
    long max_terms = 4096;
    long long max_prime = 1000003;
    int max_precision = 16;
    long max_weight = 64;

    static constexpr long kMaxTermsCap = 20000;
    static constexpr long long kMaxPrimeCap = 10000019;
    static constexpr int kMaxPrecisionCap = 64;
    static constexpr long kMaxWeightCap = 200;

    void clamp() {
        max_terms = std::clamp(max_terms, 0L, kMaxTermsCap);
        max_prime = std::clamp(max_prime, 3LL, kMaxPrimeCap);
        max_precision = std::clamp(max_precision, 1, kMaxPrecisionCap);
        max_weight = std::clamp(max_weight, 4L, kMaxWeightCap);
    }
};

namespace detail {
inline std::string trim_ws(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}
}  // namespace detail

// Parses the key = value subset of TOML used by the config file; unknown
// keys are rejected so typos do not silently fall back to defaults.
inline Limits parse_limits(std::istream& in) {
    Limits limits;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim_ws(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            raise(errc::invalid_parameter, "config line is not key = value: " + line);
        std::string key = detail::trim_ws(line.substr(0, eq));
        std::string value = detail::trim_ws(line.substr(eq + 1));
        long long v = 0;
        try {
            v = std::stoll(value);
        } catch (...) {
            raise(errc::invalid_parameter, "config value for " + key + " is not an integer");
        }
        if (key == "max_terms")
            limits.max_terms = static_cast<long>(v);
        else if (key == "max_prime")
            limits.max_prime = v;
        else if (key == "max_precision")
            limits.max_precision = static_cast<int>(v);
        else if (key == "max_weight")
            limits.max_weight = static_cast<long>(v);
        else
            raise(errc::invalid_parameter, "unknown config key: " + key);
    }
    limits.clamp();
    return limits;
}

// Resolution order: explicit path, then QMF_CONFIG, then ./qmf.toml if it
// exists, then compiled-in defaults.
inline Limits load_limits(const std::optional<std::string>& explicit_path = std::nullopt) {
    std::string path;
    if (explicit_path) {
        path = *explicit_path;
    } else if (const char* env = std::getenv("QMF_CONFIG")) {
        path = env;
    } else {
        std::ifstream probe("qmf.toml");
        if (!probe.good()) return Limits{};
        path = "qmf.toml";
    }
    std::ifstream in(path);
    if (!in.good()) raise(errc::invalid_parameter, "cannot open config file " + path);
    return parse_limits(in);
}

}  // namespace qmf
