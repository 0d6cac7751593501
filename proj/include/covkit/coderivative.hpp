#pragma once

/**
 * @file coderivative.hpp
 * @brief Frechet coderivatives of single-valued mappings in finite dimension.
 *
 * Off the singular locus the coderivative is y -> y M with M the m x n
 * transpose of the Jacobian. At catalog singular points the set may be
 * empty for some duals; LocusCoderivative records which duals survive.
 */

#include <optional>

#include "covkit/autodiff.hpp"
#include "covkit/linalg.hpp"
#include "covkit/mapping.hpp"

namespace covkit {

enum class CoderivativeStatus { defined, empty, undefined_point };

inline const char* to_string(CoderivativeStatus s) {
    switch (s) {
    case CoderivativeStatus::defined: return "defined";
    case CoderivativeStatus::empty: return "empty";
    case CoderivativeStatus::undefined_point: return "undefined_point";
    }
    return "undefined_point";
}

struct CoderivativeResult {
    CoderivativeStatus status = CoderivativeStatus::undefined_point;
    std::optional<Matrix> matrix;             // m x n when defined
    std::optional<LocusCoderivative> locus;   // set when empty for some duals only
};

inline CoderivativeResult coderivative_matrix(const MappingSpec& f, const Vector& z) {
    if (z.size() != f.n) throw dimension_error(f.name + ": point has wrong dimension");
    CoderivativeResult r;
    if (f.on_locus(z)) {
        if (f.locus_coderivative) {
            r.status = CoderivativeStatus::empty;
            r.locus = f.locus_coderivative(z);
        }
        return r;
    }
    if (f.origin == Origin::user && !probe_differentiability(f, z).differentiable) return r;
    try {
        r.matrix = transpose(jacobian_ad(f, z));
        r.status = CoderivativeStatus::defined;
    } catch (const nondifferentiable_error&) {
    }
    return r;
}

/// x = y M for a defined result. For an empty result the set is nonempty
/// only when y vanishes on the locus indices; nullopt marks the empty set.
inline std::optional<Vector> apply(const CoderivativeResult& r, const Vector& y) {
    if (r.status == CoderivativeStatus::defined) return left_mul(y, *r.matrix);
    if (r.status == CoderivativeStatus::empty && r.locus) {
        if (y.size() != r.locus->restricted.rows()) throw dimension_error("apply: dual has wrong dimension");
        for (std::size_t i : r.locus->vanishing)
            if (y[i] != 0.0) return std::nullopt;
        return left_mul(y, r.locus->restricted);
    }
    return std::nullopt;
}

} // namespace covkit
