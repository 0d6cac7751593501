#pragma once

/**
 * @file config.hpp
 * @brief key = value files describing a parametric coincidence problem.
 *
 *   mapping = ex6_7               # F, from the catalog
 *   h       = 0.05*x1, 0.05*x2    # may use x1..xn and s
 *   omega   = 1 + s, 0            # may use s only
 *   x_bar   = 1, 0
 *   grid    = 0:0.2:11            # start:stop:count, or a comma list
 *   radius  = 0.5                 # optional, default |x_bar| / 2
 *   alpha_hat = 1                 # optional covering modulus of F
 *   tol     = 1e-10               # optional
 */

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "covkit/errors.hpp"
#include "covkit/linalg.hpp"

namespace covkit {

struct SolveConfig {
    std::string mapping;
    std::string h;
    std::string omega;
    Vector x_bar;
    std::vector<double> grid;
    std::optional<double> radius;
    std::optional<double> alpha_hat;
    double tol = 1e-10;
};

inline std::string trim_copy(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& text) {
    const std::string t = trim_copy(text);
    double v = 0.0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
        throw precondition_error("not a number: '" + text + "'");
    return v;
}

inline std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
    if (out.empty()) throw precondition_error("empty list");
    return out;
}

inline Vector parse_point(const std::string& text) { return Vector(parse_list(text)); }

/// "a:b:k" gives k evenly spaced values from a to b; otherwise a comma list.
inline std::vector<double> parse_grid(const std::string& text) {
    if (text.find(':') == std::string::npos) return parse_list(text);
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw precondition_error("grid range must look like start:stop:count");
    const double a = parse_double(parts[0]), b = parse_double(parts[1]), k = parse_double(parts[2]);
    if (k < 1 || k != static_cast<long>(k)) throw precondition_error("grid count must be a positive integer");
    const auto count = static_cast<std::size_t>(k);
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    return out;
}

inline SolveConfig parse_solve_config(std::istream& in) {
    SolveConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim_copy(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw precondition_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim_copy(line.substr(0, eq)), val = trim_copy(line.substr(eq + 1));
        if (key == "mapping") c.mapping = val;
        else if (key == "h") c.h = val;
        else if (key == "omega") c.omega = val;
        else if (key == "x_bar") c.x_bar = parse_point(val);
        else if (key == "grid") c.grid = parse_grid(val);
        else if (key == "radius") c.radius = parse_double(val);
        else if (key == "alpha_hat") c.alpha_hat = parse_double(val);
        else if (key == "tol") c.tol = parse_double(val);
        else throw precondition_error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    const std::pair<const char*, const std::string*> required[] = {{"mapping", &c.mapping}, {"h", &c.h}, {"omega", &c.omega}};
    for (const auto& [k, v] : required)
        if (v->empty()) throw precondition_error(std::string("config: missing key '") + k + "'");
    if (c.x_bar.empty()) throw precondition_error("config: missing key 'x_bar'");
    if (c.grid.empty()) throw precondition_error("config: missing key 'grid'");
    return c;
}

inline SolveConfig load_solve_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw precondition_error("cannot open config file " + path);
    return parse_solve_config(in);
}

} // namespace covkit
