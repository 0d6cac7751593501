#pragma once

/**
 * @file covering.hpp
 * @brief Numerical estimate of the local covering constant
 *
 *   alpha(f, zbar, wbar) = sup_eta inf { sigma_min(D*f(z)) :
 *                           |z - zbar| < eta, |f(z) - wbar| < eta }
 *
 * sampled over a shrinking schedule of radii. Points on the singular locus
 * are skipped, so a singular centre is handled through the punctured ball.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "covkit/autodiff.hpp"
#include "covkit/errors.hpp"
#include "covkit/linalg.hpp"
#include "covkit/mapping.hpp"
#include "covkit/sampling.hpp"

namespace covkit {

struct BallSpec {
    Vector center;
    double radius = 0.0;
};

enum class CoveringMethod { dimension_zero, svd_limit };

inline const char* to_string(CoveringMethod m) {
    return m == CoveringMethod::dimension_zero ? "dimension_zero" : "svd_limit";
}

struct ScheduleEntry {
    double eta;
    double inf;
};

struct CoveringEstimate {
    double value = 0.0;
    CoveringMethod method = CoveringMethod::svd_limit;
    std::vector<ScheduleEntry> schedule;
    std::optional<double> frobenius_cap;
    bool converged = false;
    std::size_t samples_per_eta = 0;
};

struct CoveringOptions {
    double eta0 = 0.0;  // 0 picks max(0.5, 0.1 |zbar|)
    double eta_factor = 0.25;
    int eta_steps = 8;
    std::size_t samples = 256;
    std::uint64_t seed = 0;
    int refine_iterations = 50;
};

inline constexpr std::size_t min_samples_per_eta = 64;

/// sigma_min of the coderivative at z, or nullopt where it is not defined.
inline std::optional<double> coderivative_sigma(const MappingSpec& f, const Vector& z) {
    if (f.on_locus(z)) return std::nullopt;
    try {
        return min_singular_value(transpose(jacobian_ad(f, z)));
    } catch (const nondifferentiable_error&) {
        return std::nullopt;
    } catch (const domain_error&) {
        return std::nullopt;
    }
}

namespace detail {

inline void check_center(const MappingSpec& f, const Vector& zbar, const Vector& wbar) {
    if (zbar.size() != f.n || wbar.size() != f.m) throw dimension_error(f.name + ": centre has wrong dimension");
    const double gap = distance(f(zbar), wbar);
    if (gap > 1e-9 * std::max(1.0, norm(wbar)))
        throw precondition_error(f.name + ": wbar must equal f(zbar), off by " + std::to_string(gap));
}

inline bool feasible(const MappingSpec& f, const Vector& z, const Vector& zbar, const Vector& wbar, double eta) {
    if (distance(z, zbar) > eta) return false;
    try {
        return distance(f(z), wbar) <= eta;
    } catch (const domain_error&) {
        return false;
    }
}

struct BallInf {
    double value;
    Vector argmin;
};

inline BallInf ball_inf(const MappingSpec& f, const Vector& zbar, const Vector& wbar, double eta,
                        std::size_t samples, std::uint64_t seed, int refine_iterations) {
    double best = std::numeric_limits<double>::infinity();
    Vector arg;
    auto consider = [&](const Vector& z) {
        if (!feasible(f, z, zbar, wbar, eta)) return;
        if (auto s = coderivative_sigma(f, z); s && *s < best) {
            best = *s;
            arg = z;
        }
    };
    consider(zbar);
    for (const Vector& z : ball_points(zbar, eta, samples, seed)) consider(z);
    if (!std::isfinite(best))
        throw degenerate_ball_error(f.name + ": no feasible sample in the ball of radius " + std::to_string(eta));

    // Coordinate descent from the best sample, staying feasible.
    double step = eta / 4.0;
    for (int it = 0; it < refine_iterations && best > 0.0; ++it) {
        bool moved = false;
        for (std::size_t d = 0; d < f.n; ++d) {
            for (double sgn : {1.0, -1.0}) {
                Vector z = arg;
                z[d] += sgn * step;
                if (!feasible(f, z, zbar, wbar, eta)) continue;
                if (auto s = coderivative_sigma(f, z); s && *s < best) {
                    best = *s;
                    arg = z;
                    moved = true;
                }
            }
        }
        if (!moved) step /= 2.0;
    }
    return {best, arg};
}

} // namespace detail

/// inf of sigma_min(D*f(z)) over z in B(zbar, eta) with f(z) in B(wbar, eta).
inline double inf_over_ball(const MappingSpec& f, const Vector& zbar, const Vector& wbar, double eta,
                            std::size_t samples = 256, std::uint64_t seed = 0) {
    if (!(eta > 0)) throw precondition_error("eta must be positive");
    if (samples < min_samples_per_eta) throw precondition_error("at least 64 samples per radius required");
    detail::check_center(f, zbar, wbar);
    return detail::ball_inf(f, zbar, wbar, eta, samples, seed, 50).value;
}

/// Frobenius norm of the Jacobian at z, an upper bound for the covering
/// constant when n >= m.
inline double frobenius_bound(const MappingSpec& f, const Vector& z) {
    if (f.n < f.m)
        throw hypothesis_error(f.name + ": Frobenius bound needs n >= m (n = " + std::to_string(f.n) +
                               ", m = " + std::to_string(f.m) + ")");
    return frobenius_norm(jacobian_ad(f, z));
}

inline CoveringEstimate estimate(const MappingSpec& f, const Vector& zbar, const CoveringOptions& opt = {}) {
    if (zbar.size() != f.n) throw dimension_error(f.name + ": point has wrong dimension");
    const Vector wbar = f(zbar);
    CoveringEstimate est;
    est.samples_per_eta = opt.samples;
    if (f.n < f.m) {
        est.value = 0.0;
        est.method = CoveringMethod::dimension_zero;
        est.converged = true;
        return est;
    }
    if (opt.samples < min_samples_per_eta) throw precondition_error("at least 64 samples per radius required");
    if (opt.eta_steps < 1) throw precondition_error("eta_steps must be at least 1");
    if (!(opt.eta_factor > 0 && opt.eta_factor < 1)) throw precondition_error("eta_factor must lie in (0, 1)");

    if (!f.on_locus(zbar)) {
        try {
            est.frobenius_cap = frobenius_bound(f, zbar);
        } catch (const nondifferentiable_error&) {
        }
    }

    double eta = opt.eta0 > 0 ? opt.eta0 : std::max(0.5, 0.1 * norm(zbar));
    for (int k = 0; k < opt.eta_steps; ++k, eta *= opt.eta_factor) {
        auto bi = detail::ball_inf(f, zbar, wbar, eta, opt.samples, opt.seed, opt.refine_iterations);
        est.schedule.push_back({eta, bi.value});
    }
    // Points feasible for a smaller radius are feasible for every larger one,
    // so each level also sees the minima found further down the schedule.
    for (std::size_t k = est.schedule.size() - 1; k-- > 0;)
        est.schedule[k].inf = std::min(est.schedule[k].inf, est.schedule[k + 1].inf);

    est.value = est.schedule.back().inf;
    if (est.schedule.size() >= 2) {
        const double a = est.schedule[est.schedule.size() - 2].inf, b = est.schedule.back().inf;
        est.converged = std::abs(b - a) <= 1e-4 * std::abs(b) || std::abs(b - a) <= 1e-12;
    } else {
        est.converged = false;
    }
    return est;
}

} // namespace covkit
