#pragma once

// Run configuration for the CLI: a flat key=value store initialized from
// built-in defaults (the Figure-2 parameter set), optionally merged from a
// config file, then overridden by command-line flags. The resolved store is
// echoed into every output, so a run is reproducible from its own artifact.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "abheat/model.hpp"
#include "abheat/quad.hpp"

namespace abheat::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) parts.push_back(trim(item));
    if (!s.empty() && s.back() == sep) parts.push_back("");
    return parts;
}

} // namespace detail

struct GridSpec {
    int nx = 0, ny = 0;
    double extent = 0.0;
};

struct RunConfig {
    // every recognized key with its default; unknown keys are typos and
    // rejected rather than silently ignored
    static const std::map<std::string, std::string>& defaults() {
        static const std::map<std::string, std::string> d = {
            {"omega_c", "4"},   {"alpha", "0.4"}, {"beta", "0.7"},
            {"D", "3.5"},       {"rel_tol", ""},  {"abs_tol", ""},
            {"format", "csv"},  {"out", ""},      {"mode", "psi1"},
            {"grid", "101,101,2.5"},              {"r", "0.9"},
            {"theta", "0.6"},   {"r0", "0.7"},    {"t", "0.5"},
            {"x", "0.4"},       {"y", "0.3"},     {"x0", "0.5"},
            {"y0", "0"},        {"nmax", "2"},    {"table", ""},
            {"which", ""},
        };
        return d;
    }

    std::map<std::string, std::string> kv = defaults();

    void set(const std::string& key, const std::string& value) {
        if (!defaults().count(key))
            throw ConfigError("unknown config key: " + key);
        kv[key] = detail::trim(value);
    }

    // key = value lines, '#' starts a comment, blank lines ignored
    void merge_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
            set(detail::trim(line.substr(0, eq)),
                detail::trim(line.substr(eq + 1)));
        }
    }

    const std::string& str(const std::string& key) const {
        return kv.at(key);
    }

    double num(const std::string& key) const {
        const std::string& s = kv.at(key);
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size())
            throw ConfigError("config key '" + key +
                              "' is not a number: " + s);
        return v;
    }

    int integer(const std::string& key) const {
        const double v = num(key);
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw ConfigError("config key '" + key +
                              "' is not an integer: " + kv.at(key));
        return i;
    }

    std::vector<double> list(const std::string& key) const {
        const std::string& s = kv.at(key);
        std::vector<double> out;
        if (detail::trim(s).empty()) return out;
        for (const auto& part : detail::split(s, ',')) {
            char* end = nullptr;
            const double v = std::strtod(part.c_str(), &end);
            if (part.empty() || end != part.c_str() + part.size())
                throw ConfigError("config key '" + key +
                                  "' has a bad list entry: " + part);
            out.push_back(v);
        }
        return out;
    }

    GridSpec grid() const {
        const auto parts = detail::split(kv.at("grid"), ',');
        if (parts.size() != 3)
            throw ConfigError("config key 'grid' must be nx,ny,extent");
        GridSpec g;
        try {
            g.nx = std::stoi(parts[0]);
            g.ny = std::stoi(parts[1]);
            g.extent = std::stod(parts[2]);
        } catch (const std::exception&) {
            throw ConfigError("config key 'grid' must be nx,ny,extent");
        }
        return g;
    }

    ModelParams params() const {
        const double w = num("omega_c"), D = num("D");
        if (!(w > 0.0) || !(D > 0.0))
            throw ConfigError("omega_c and D must be positive");
        try {
            return ModelParams::make(w, num("alpha"), num("beta"),
                                     std::sqrt(D / w));
        } catch (const std::domain_error& e) {
            throw ConfigError(e.what());
        }
    }

    // nullptr when neither tolerance is overridden: modules keep their own
    const quad::Spec* quad_override(quad::Spec& storage) const {
        if (kv.at("rel_tol").empty() && kv.at("abs_tol").empty())
            return nullptr;
        if (!kv.at("rel_tol").empty()) storage.rel_tol = num("rel_tol");
        if (!kv.at("abs_tol").empty()) storage.abs_tol = num("abs_tol");
        return &storage;
    }
};

// shortest exact decimal round trip is locale-independent and deterministic
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace abheat::cli
