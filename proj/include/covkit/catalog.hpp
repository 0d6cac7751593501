#pragma once

/**
 * @file catalog.hpp
 * @brief Registry of the worked example mappings, each with its analytic
 * Jacobian, singular locus, norm identity and known covering constant.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "covkit/dual.hpp"
#include "covkit/errors.hpp"
#include "covkit/linalg.hpp"
#include "covkit/mapping.hpp"

namespace covkit {

namespace detail {

template <class V>
using scalar_of = std::decay_t<decltype(std::declval<const V&>()[0])>;

inline bool is_origin(const Vector& z) {
    return std::all_of(z.begin(), z.end(), [](double v) { return v == 0.0; });
}

inline OracleValue exact(double v) { return {OracleValue::Kind::exact, v}; }
inline OracleValue upper(double v) { return {OracleValue::Kind::upper_bound, v}; }

// Jacobian of (x1^2 - x2^2, 2 x1 x2)/r at a point off the origin.
inline Matrix f51_jacobian(double z1, double z2) {
    const double r2 = z1 * z1 + z2 * z2, r3 = r2 * std::sqrt(r2);
    return Matrix{{(z1 * z1 + 3 * z2 * z2) * z1 / r3, 2 * z2 * z2 * z2 / r3},
                  {-(3 * z1 * z1 + z2 * z2) * z2 / r3, 2 * z1 * z1 * z1 / r3}};
}

template <class T>
void f51_pair(const T& a, const T& b, T& u, T& v) {
    using std::sqrt;
    const T r2 = a * a + b * b;
    if (value_of(r2) == 0.0) {
        u = T(0.0);
        v = T(0.0);
        return;
    }
    const T r = sqrt(r2);
    u = (a * a - b * b) / r;
    v = T(2.0) * a * b / r;
}

inline MappingSpec build_ex4_3() {
    auto s = make_mapping("ex4_3", 2, 3, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        const double k = 1.0 / std::sqrt(2.0);
        return std::vector<T>{x[0], k * x[1], k * x[1]};
    });
    s.analytic_jacobian = [](const Vector&) {
        const double k = 1.0 / std::sqrt(2.0);
        return Matrix{{1, 0, 0}, {0, k, k}};
    };
    s.norm_identity = NormIdentity::preserving;
    s.covering_oracle = [](const Vector&) { return exact(0.0); };
    s.twice_differentiable = true;
    return s;
}

inline MappingSpec build_ex4_4() {
    auto s = make_mapping("ex4_4", 2, 3, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        return std::vector<T>{x[0], x[0] * x[1], x[1]};
    });
    s.analytic_jacobian = [](const Vector& z) { return Matrix{{1, z[1], 0}, {0, z[0], 1}}; };
    s.norm_identity = NormIdentity::expanding_ge;
    s.covering_oracle = [](const Vector&) { return exact(0.0); };
    s.twice_differentiable = true;
    return s;
}

inline MappingSpec build_f5_1() {
    auto s = make_mapping("f5_1", 2, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        std::vector<T> y(2);
        f51_pair(x[0], x[1], y[0], y[1]);
        return y;
    });
    s.analytic_jacobian = [](const Vector& z) { return f51_jacobian(z[0], z[1]); };
    s.singular_locus = [](const Vector& z) { return z[0] == 0.0 && z[1] == 0.0; };
    s.locus_description = "z = 0";
    s.locus_coderivative = [](const Vector&) { return LocusCoderivative{Matrix(2, 2), {0, 1}}; };
    s.norm_identity = NormIdentity::preserving;
    s.covering_oracle = [](const Vector&) { return exact(1.0); };
    return s;
}

inline MappingSpec build_g5_11() {
    auto s = make_mapping("g5_11", 4, 4, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        std::vector<T> y(4);
        f51_pair(x[0], x[1], y[0], y[1]);
        f51_pair(x[2], x[3], y[2], y[3]);
        return y;
    });
    s.analytic_jacobian = [](const Vector& z) {
        Matrix J(4, 4);
        const Matrix a = f51_jacobian(z[0], z[1]), b = f51_jacobian(z[2], z[3]);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                J(i, j) = a(i, j);
                J(i + 2, j + 2) = b(i, j);
            }
        return J;
    };
    s.singular_locus = [](const Vector& z) {
        return (z[0] * z[0] + z[1] * z[1]) * (z[2] * z[2] + z[3] * z[3]) == 0.0;
    };
    s.locus_description = "(z1^2 + z2^2)(z3^2 + z4^2) = 0";
    // A degenerate pair forces the matching dual components to vanish; the
    // other pair contributes its ordinary block.
    s.locus_coderivative = [](const Vector& z) {
        LocusCoderivative lc{Matrix(4, 4), {}};
        for (std::size_t p = 0; p < 4; p += 2) {
            if (z[p] == 0.0 && z[p + 1] == 0.0) {
                lc.vanishing.push_back(p);
                lc.vanishing.push_back(p + 1);
                continue;
            }
            const Matrix b = transpose(f51_jacobian(z[p], z[p + 1]));
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) lc.restricted(p + i, p + j) = b(i, j);
        }
        return lc;
    };
    s.norm_identity = NormIdentity::preserving;
    s.covering_oracle = [](const Vector& z) {
        if (is_origin(z)) throw precondition_error("g5_11: z̄ ≠ θ required");
        return exact(1.0);
    };
    return s;
}

inline MappingSpec build_h5_18() {
    auto s = make_mapping("h5_18", 4, 4, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        using std::sqrt;
        const T r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        if (value_of(r2) == 0.0) return std::vector<T>(4, T(0.0));
        const T r = sqrt(r2);
        return std::vector<T>{(x[0] * x[0] - x[1] * x[1]) / r, T(2.0) * x[0] * x[1] / r,
                              (x[2] * x[2] - x[3] * x[3]) / r, T(2.0) * x[2] * x[3] / r};
    });
    s.analytic_jacobian = [](const Vector& z) {
        const double r2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
        const double r = std::sqrt(r2), r3 = r2 * r;
        const double N[4] = {z[0] * z[0] - z[1] * z[1], 2 * z[0] * z[1], z[2] * z[2] - z[3] * z[3], 2 * z[2] * z[3]};
        // dN[j][i] = d N_i / d x_j
        const double dN[4][4] = {{2 * z[0], 2 * z[1], 0, 0},
                                 {-2 * z[1], 2 * z[0], 0, 0},
                                 {0, 0, 2 * z[2], 2 * z[3]},
                                 {0, 0, -2 * z[3], 2 * z[2]}};
        Matrix J(4, 4);
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t i = 0; i < 4; ++i) J(j, i) = dN[j][i] / r - N[i] * z[j] / r3;
        return J;
    };
    s.singular_locus = is_origin;
    s.locus_description = "z = 0";
    s.covering_oracle = [](const Vector& z) {
        if (is_origin(z)) throw precondition_error("h5_18: z̄ ≠ θ required");
        if ((z[0] == 0.0 && z[1] == 0.0) || (z[2] == 0.0 && z[3] == 0.0)) return exact(0.0);
        const double a = std::abs(z[0]);
        if (std::abs(z[1]) == a && std::abs(z[2]) == a && std::abs(z[3]) == a) return upper(1.0 / std::sqrt(2.0));
        throw precondition_error("h5_18: |z̄1| = |z̄2| = |z̄3| = |z̄4|, z̄1 = z̄2 = 0 or z̄3 = z̄4 = 0 required");
    };
    return s;
}

inline MappingSpec build_ex6_1() {
    auto s = make_mapping("ex6_1", 3, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        using std::sqrt;
        const T r2 = x[0] * x[0] + x[1] * x[1];
        return std::vector<T>{value_of(r2) == 0.0 ? T(0.0) : sqrt(r2), x[2]};
    });
    s.analytic_jacobian = [](const Vector& z) {
        const double r = std::hypot(z[0], z[1]);
        return Matrix{{z[0] / r, 0}, {z[1] / r, 0}, {0, 1}};
    };
    s.singular_locus = [](const Vector& z) { return z[0] == 0.0 && z[1] == 0.0; };
    s.locus_description = "z1^2 + z2^2 = 0";
    s.norm_identity = NormIdentity::preserving;
    s.covering_oracle = [](const Vector& z) {
        if (z[0] * z[0] + z[1] * z[1] == 0.0) throw precondition_error("ex6_1: z̄1² + z̄2² > 0 required");
        return exact(1.0);
    };
    return s;
}

inline MappingSpec build_ex6_2() {
    auto s = make_mapping("ex6_2", 3, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        return std::vector<T>{x[0] * x[1], x[0] * x[2]};
    });
    s.analytic_jacobian = [](const Vector& z) { return Matrix{{z[1], z[2]}, {z[0], 0}, {0, z[0]}}; };
    s.covering_oracle = [](const Vector& z) { return exact(std::abs(z[0])); };
    s.twice_differentiable = true;
    return s;
}

inline MappingSpec build_ex6_3() {
    auto s = make_mapping("ex6_3", 3, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        return std::vector<T>{x[0] * x[0] * x[2], x[1] * x[1] * x[2]};
    });
    s.analytic_jacobian = [](const Vector& z) {
        return Matrix{{2 * z[0] * z[2], 0}, {0, 2 * z[1] * z[2]}, {z[0] * z[0], z[1] * z[1]}};
    };
    s.covering_oracle = [](const Vector& z) {
        if (z[0] != z[1]) throw precondition_error("ex6_3: z̄1 = z̄2 required");
        return upper(2.0 * std::abs(z[0] * z[2]));
    };
    s.twice_differentiable = true;
    return s;
}

inline MappingSpec build_ex6_4() {
    auto s = make_mapping("ex6_4", 3, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        const T q = T(1.0) + x[2] * x[2];
        return std::vector<T>{x[0] / q, x[1] / q};
    });
    s.analytic_jacobian = [](const Vector& z) {
        const double q = 1 + z[2] * z[2];
        return Matrix{{1 / q, 0}, {0, 1 / q}, {-2 * z[0] * z[2] / (q * q), -2 * z[1] * z[2] / (q * q)}};
    };
    s.covering_oracle = [](const Vector& z) { return exact(1.0 / (1.0 + z[2] * z[2])); };
    s.twice_differentiable = true;
    return s;
}

inline MappingSpec build_ex6_5() {
    auto s = make_mapping("ex6_5", 2, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        return std::vector<T>{x[0], x[1]};
    });
    s.analytic_jacobian = [](const Vector&) { return Matrix::identity(2); };
    s.norm_identity = NormIdentity::preserving;
    s.covering_oracle = [](const Vector&) { return exact(1.0); };
    s.twice_differentiable = true;
    return s;
}

inline MappingSpec build_ex6_6() {
    auto s = make_mapping("ex6_6", 2, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        using std::cos, std::sin;
        const T t = x[0] + x[1];
        return std::vector<T>{sin(t), cos(t)};
    });
    s.analytic_jacobian = [](const Vector& z) {
        const double c = std::cos(z[0] + z[1]), sn = std::sin(z[0] + z[1]);
        return Matrix{{c, -sn}, {c, -sn}};
    };
    s.norm_identity = NormIdentity::constant_one;
    s.covering_oracle = [](const Vector&) { return exact(0.0); };
    s.twice_differentiable = true;
    return s;
}

inline MappingSpec build_ex6_7() {
    auto s = make_mapping("ex6_7", 2, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        return std::vector<T>{x[0] * x[0] - x[1] * x[1], T(2.0) * x[0] * x[1]};
    });
    s.analytic_jacobian = [](const Vector& z) { return Matrix{{2 * z[0], 2 * z[1]}, {-2 * z[1], 2 * z[0]}}; };
    s.norm_identity = NormIdentity::expanding_square;
    s.covering_oracle = [](const Vector& z) { return exact(2.0 * norm(z)); };
    s.twice_differentiable = true;
    return s;
}

inline MappingSpec build_ex6_8() {
    auto s = make_mapping("ex6_8", 2, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        using std::exp;
        return std::vector<T>{exp(x[0] + x[1]), exp(-x[0] - x[1])};
    });
    s.analytic_jacobian = [](const Vector& z) {
        const double e = std::exp(z[0] + z[1]), d = std::exp(-z[0] - z[1]);
        return Matrix{{e, -d}, {e, -d}};
    };
    s.covering_oracle = [](const Vector&) { return exact(0.0); };
    s.twice_differentiable = true;
    return s;
}

inline MappingSpec build_ex6_9() {
    auto s = make_mapping("ex6_9", 2, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        using std::log;
        const T q = T(1.0) + x[0] * x[0] + x[1] * x[1];
        return std::vector<T>{log(q), T(1.0) / q};
    });
    s.analytic_jacobian = [](const Vector& z) {
        const double q = 1 + z[0] * z[0] + z[1] * z[1];
        return Matrix{{2 * z[0] / q, -2 * z[0] / (q * q)}, {2 * z[1] / q, -2 * z[1] / (q * q)}};
    };
    s.covering_oracle = [](const Vector&) { return exact(0.0); };
    s.twice_differentiable = true;
    return s;
}

inline MappingSpec build_ex6_10() {
    auto s = make_mapping("ex6_10", 2, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        using std::sqrt;
        const T r2 = x[0] * x[0] + x[1] * x[1];
        if (value_of(r2) == 0.0) return std::vector<T>(2, T(0.0));
        const T r = sqrt(r2);
        return std::vector<T>{x[0] / r, x[1] / r};
    });
    s.analytic_jacobian = [](const Vector& z) {
        const double r2 = z[0] * z[0] + z[1] * z[1], r3 = r2 * std::sqrt(r2);
        return Matrix{{z[1] * z[1] / r3, -z[0] * z[1] / r3}, {-z[0] * z[1] / r3, z[0] * z[0] / r3}};
    };
    s.singular_locus = is_origin;
    s.locus_description = "z = 0";
    s.covering_oracle = [](const Vector& z) {
        if (is_origin(z)) throw precondition_error("ex6_10: z̄ ≠ θ required");
        return exact(0.0);
    };
    return s;
}

inline MappingSpec build_ex6_11() {
    auto s = make_mapping("ex6_11", 2, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        using std::sqrt;
        const T r2 = x[0] * x[0] + x[1] * x[1];
        if (value_of(r2) == 0.0) return std::vector<T>(2, T(0.0));
        const T r = sqrt(r2);
        return std::vector<T>{x[0] * x[0] / r, x[1] * x[1] / r};
    });
    s.analytic_jacobian = [](const Vector& z) {
        const double a = z[0], b = z[1];
        const double r2 = a * a + b * b, r3 = r2 * std::sqrt(r2);
        return Matrix{{(a * a * a + 2 * a * b * b) / r3, -b * b * a / r3},
                      {-a * a * b / r3, (b * b * b + 2 * b * a * a) / r3}};
    };
    s.singular_locus = is_origin;
    s.locus_description = "z = 0";
    s.covering_oracle = [](const Vector& z) {
        if (is_origin(z)) throw precondition_error("ex6_11: z̄ ≠ θ required");
        const double a = z[0], b = z[1];
        if (a * b == 0.0) return exact(0.0);
        return upper(std::min(1.0 / std::sqrt(2.0), 2.0 * std::abs(a * b) / std::sqrt(a * a * a * a + b * b * b * b)));
    };
    return s;
}

inline std::vector<MappingSpec> build_registry() {
    std::vector<MappingSpec> r{build_ex4_3(), build_ex4_4(), build_f5_1(), build_g5_11(), build_h5_18(),
                               build_ex6_1(), build_ex6_2(), build_ex6_3(), build_ex6_4(), build_ex6_5(),
                               build_ex6_6(), build_ex6_7(), build_ex6_8(), build_ex6_9(), build_ex6_10(),
                               build_ex6_11()};
    for (auto& s : r) s.origin = Origin::catalog;
    return r;
}

} // namespace detail

namespace catalog {

inline const std::vector<MappingSpec>& all() {
    static const std::vector<MappingSpec> registry = detail::build_registry();
    return registry;
}

inline std::vector<std::string> names() {
    std::vector<std::string> out;
    for (const auto& s : all()) out.push_back(s.name);
    return out;
}

inline const MappingSpec& get(const std::string& name) {
    for (const auto& s : all())
        if (s.name == name) return s;
    std::string list;
    for (const auto& n : names()) list += (list.empty() ? "" : ", ") + n;
    throw not_found_error("unknown mapping '" + name + "'; available: " + list);
}

inline OracleValue oracle_constant(const MappingSpec& f, const Vector& z) {
    if (!f.covering_oracle) throw precondition_error(f.name + ": no known covering constant");
    if (z.size() != f.n) throw dimension_error(f.name + ": point has wrong dimension");
    return f.covering_oracle(z);
}

struct NormCheck {
    bool holds = true;
    double worst_gap = 0.0;
    std::size_t samples = 0;
};

/// Checks the declared norm identity at random off-locus points of [-3, 3]^n,
/// to 1e-10 relative.
inline NormCheck verify_norm_identity(const MappingSpec& f, std::size_t samples = 100, std::uint64_t seed = 1) {
    NormCheck out;
    if (f.norm_identity == NormIdentity::none) return out;
    std::mt19937_64 rng(seed);
    while (out.samples < samples) {
        Vector x(f.n);
        for (std::size_t i = 0; i < f.n; ++i) x[i] = -3.0 + 6.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (f.on_locus(x)) continue;
        ++out.samples;
        const double nx = norm(x), nf = norm(f(x));
        double gap = 0.0;
        switch (f.norm_identity) {
        case NormIdentity::preserving: gap = std::abs(nf - nx) / std::max(1.0, nx); break;
        case NormIdentity::expanding_square: gap = std::abs(nf - nx * nx) / std::max(1.0, nx * nx); break;
        case NormIdentity::constant_one: gap = std::abs(nf - 1.0); break;
        case NormIdentity::expanding_ge: gap = std::max(0.0, nx - nf) / std::max(1.0, nx); break;
        case NormIdentity::none: break;
        }
        out.worst_gap = std::max(out.worst_gap, gap);
    }
    out.holds = out.worst_gap <= 1e-10;
    return out;
}

} // namespace catalog

} // namespace covkit
