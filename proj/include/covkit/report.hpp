#pragma once

/**
 * @file report.hpp
 * @brief JSON and CSV renderings of estimator results. Keys keep insertion
 * order and numbers print in shortest round-trip form, so equal inputs give
 * byte-identical output.
 */

#include <charconv>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "covkit/amz.hpp"
#include "covkit/coderivative.hpp"
#include "covkit/covering.hpp"
#include "covkit/linalg.hpp"

namespace covkit {

inline constexpr const char* version = "0.1.0";

using json = nlohmann::ordered_json;

inline json to_json(const Vector& v) { return json(v.values()); }

inline json to_json(const Matrix& M) {
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) rows.push_back(to_json(M.row(i)));
    return rows;
}

inline json provenance(std::uint64_t seed, std::size_t samples) {
    return json{{"seed", seed}, {"samples", samples}, {"version", version}};
}

inline json covering_report(const std::string& mapping, const Vector& point, const CoveringEstimate& est,
                            std::uint64_t seed) {
    json schedule = json::array();
    for (const auto& e : est.schedule) schedule.push_back(json{{"eta", e.eta}, {"inf", e.inf}});
    json result{{"value", est.value},
                {"method", to_string(est.method)},
                {"converged", est.converged},
                {"frobenius_cap", est.frobenius_cap ? json(*est.frobenius_cap) : json(nullptr)},
                {"schedule", schedule}};
    return json{{"command", "covering"},
                {"mapping", mapping},
                {"point", to_json(point)},
                {"result", result},
                {"provenance", provenance(seed, est.samples_per_eta)}};
}

inline json to_json(const CoincidenceSolution<double>& s) {
    return json{{"parameter", s.parameter},     {"sigma", to_json(s.sigma)},
                {"residual", s.residual},       {"bound_rhs", s.bound_rhs},
                {"bound_holds", s.bound_holds}, {"iterations", s.iterations},
                {"status", to_string(s.status)}};
}

inline json to_json(const CoderivativeResult& r) {
    json j{{"status", to_string(r.status)}};
    j["matrix"] = r.matrix ? to_json(*r.matrix) : json(nullptr);
    if (r.locus) {
        j["restricted"] = to_json(r.locus->restricted);
        j["vanishing_duals"] = r.locus->vanishing;
    }
    return j;
}

inline std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

inline std::string csv_row(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + format_double(xs[i]);
    return s + "\n";
}

inline std::string schedule_csv(const CoveringEstimate& est) {
    std::string out = "eta,inf\n";
    for (const auto& e : est.schedule) out += csv_row({e.eta, e.inf});
    return out;
}

inline std::string matrix_csv(const Matrix& M) {
    std::string out;
    for (std::size_t i = 0; i < M.rows(); ++i) out += csv_row(M.row(i).values());
    return out;
}

} // namespace covkit
