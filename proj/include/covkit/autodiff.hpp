#pragma once

/**
 * @file autodiff.hpp
 * @brief Jacobians by forward-mode AD and by central differences, plus a
 * numerical probe for Frechet differentiability.
 *
 * Jacobians follow the row-vector convention: an n x m matrix J with
 * J(j, i) = d f_i / d x_j.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "covkit/dual.hpp"
#include "covkit/linalg.hpp"
#include "covkit/mapping.hpp"
#include "covkit/sampling.hpp"

namespace covkit {

inline std::string format_point(const Vector& z) {
    std::string s = "(";
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(z[i]);
    }
    return s + ")";
}

inline Matrix jacobian_ad(const MappingSpec& f, const Vector& z) {
    if (z.size() != f.n) throw dimension_error(f.name + ": point has wrong dimension");
    if (f.on_locus(z))
        throw nondifferentiable_error(f.name + " is not differentiable at " + format_point(z) + " (" +
                                      f.locus_description + ")");
    Matrix J(f.n, f.m);
    std::vector<Dual<>> x(f.n);
    for (std::size_t j = 0; j < f.n; ++j) {
        for (std::size_t k = 0; k < f.n; ++k) x[k] = Dual<>(z[k], k == j ? 1.0 : 0.0);
        std::vector<Dual<>> y;
        try {
            y = f.eval_dual(x);
        } catch (const nondifferentiable_error& e) {
            throw nondifferentiable_error(f.name + " at " + format_point(z) + ": " + e.what());
        }
        if (y.size() != f.m) throw dimension_error(f.name + ": evaluator returned wrong size");
        for (std::size_t i = 0; i < f.m; ++i) {
            if (!std::isfinite(y[i].eps)) throw nondifferentiable_error(f.name + ": derivative is not finite");
            J(j, i) = y[i].eps;
        }
    }
    return J;
}

inline double default_fd_step(const Vector& z) {
    return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, norm(z));
}

inline Matrix jacobian_fd(const MappingSpec& f, const Vector& z, double h) {
    if (z.size() != f.n) throw dimension_error(f.name + ": point has wrong dimension");
    if (!(h > 0)) throw precondition_error("finite-difference step must be positive");
    Matrix J(f.n, f.m);
    for (std::size_t j = 0; j < f.n; ++j) {
        Vector zp = z, zm = z;
        zp[j] += h;
        zm[j] -= h;
        Vector fp, fm;
        try {
            fp = f(zp);
            fm = f(zm);
        } catch (const domain_error& e) {
            throw domain_error(f.name + ": stencil point leaves the domain near " + format_point(z) + ": " + e.what());
        }
        for (std::size_t i = 0; i < f.m; ++i) J(j, i) = (fp[i] - fm[i]) / (2.0 * h);
    }
    return J;
}

inline Matrix jacobian_fd(const MappingSpec& f, const Vector& z) { return jacobian_fd(f, z, default_fd_step(z)); }

struct DifferentiabilityReport {
    Vector point;
    bool differentiable = false;
    double directional_spread = 0.0;
    std::size_t probes = 0;
};

/// Probes the first-order remainder (f(z+tv) - f(z) - t v J)/t along 16
/// directions at t in {r, r/8, r/64}, J being the central-difference Jacobian.
inline DifferentiabilityReport probe_differentiability(const MappingSpec& f, const Vector& z, double radius = 1e-5) {
    DifferentiabilityReport rep;
    rep.point = z;
    if (f.on_locus(z)) {
        rep.directional_spread = std::numeric_limits<double>::infinity();
        return rep;
    }
    Vector fz;
    Matrix J;
    try {
        fz = f(z);
        J = jacobian_fd(f, z, std::min(radius / 64.0, default_fd_step(z)));
    } catch (const error&) {
        rep.directional_spread = std::numeric_limits<double>::infinity();
        return rep;
    }
    const double tol = 1e-4 * std::max(1.0, norm(fz));
    double worst = 0.0;
    for (const Vector& v : sphere_directions(f.n, 16)) {
        const Vector dv = left_mul(v, J);
        for (double t : {radius, radius / 8.0, radius / 64.0}) {
            ++rep.probes;
            try {
                const Vector ft = f(z + t * v);
                worst = std::max(worst, norm((1.0 / t) * (ft - fz - t * dv)));
            } catch (const error&) {
                worst = std::numeric_limits<double>::infinity();
            }
        }
    }
    rep.directional_spread = worst;
    rep.differentiable = worst <= tol;
    return rep;
}

} // namespace covkit
