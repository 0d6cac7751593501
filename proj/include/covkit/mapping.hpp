#pragma once

/**
 * @file mapping.hpp
 * @brief A mapping R^n -> R^m bundled with the metadata the estimators use.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covkit/dual.hpp"
#include "covkit/errors.hpp"
#include "covkit/linalg.hpp"

namespace covkit {

enum class NormIdentity { preserving, expanding_square, constant_one, expanding_ge, none };

inline const char* to_string(NormIdentity k) {
    switch (k) {
    case NormIdentity::preserving: return "preserving";
    case NormIdentity::expanding_square: return "expanding-square";
    case NormIdentity::constant_one: return "constant-one";
    case NormIdentity::expanding_ge: return "expanding-ge";
    case NormIdentity::none: return "none";
    }
    return "none";
}

struct OracleValue {
    enum class Kind { exact, upper_bound } kind;
    double value;
};

inline const char* to_string(OracleValue::Kind k) {
    return k == OracleValue::Kind::exact ? "exact" : "upper_bound";
}

/// Coderivative data at a singular point where the set is still nonempty for
/// some duals: the set is {y M} provided y vanishes on every index listed.
struct LocusCoderivative {
    Matrix restricted;
    std::vector<std::size_t> vanishing;
};

enum class Origin { catalog, user };

struct MappingSpec {
    using Eval = std::function<Vector(const Vector&)>;
    using DualEval = std::function<std::vector<Dual<>>(const std::vector<Dual<>>&)>;

    std::string name;
    std::size_t n = 0;
    std::size_t m = 0;
    Eval eval;
    DualEval eval_dual;
    std::function<Matrix(const Vector&)> analytic_jacobian;     // n x m, optional
    std::function<bool(const Vector&)> singular_locus;          // optional
    std::string locus_description;
    NormIdentity norm_identity = NormIdentity::none;
    std::function<OracleValue(const Vector&)> covering_oracle;  // optional, may throw
    std::function<LocusCoderivative(const Vector&)> locus_coderivative;  // optional
    bool twice_differentiable = false;
    Origin origin = Origin::user;

    Vector operator()(const Vector& z) const {
        if (z.size() != n)
            throw dimension_error(name + ": expected " + std::to_string(n) + " coordinates, got " +
                                  std::to_string(z.size()));
        Vector w = eval(z);
        if (w.size() != m) throw dimension_error(name + ": evaluator returned wrong size");
        return w;
    }

    bool on_locus(const Vector& z) const { return singular_locus && singular_locus(z); }
};

/// Wraps a generic callable fn(const std::vector<T>&) -> std::vector<T> so it
/// serves both plain and dual evaluation.
template <class Fn>
MappingSpec make_mapping(std::string name, std::size_t n, std::size_t m, Fn fn) {
    MappingSpec s;
    s.name = std::move(name);
    s.n = n;
    s.m = m;
    s.eval = [fn](const Vector& z) { return Vector(fn(z.values())); };
    s.eval_dual = [fn](const std::vector<Dual<>>& z) { return fn(z); };
    return s;
}

} // namespace covkit
