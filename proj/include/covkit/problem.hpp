#pragma once

/**
 * @file problem.hpp
 * @brief Builds a coincidence problem from a SolveConfig: F from the
 * catalog, G(x, s) = h(x, s) + omega(s) from inline expressions.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "covkit/amz.hpp"
#include "covkit/catalog.hpp"
#include "covkit/config.hpp"
#include "covkit/covering.hpp"
#include "covkit/expr.hpp"
#include "covkit/sampling.hpp"

namespace covkit {

/// Smallest sigma_min of the coderivative over sampled points of the region.
inline double region_covering_floor(const MappingSpec& F, const BallSpec& region, std::size_t samples = 256,
                                    std::uint64_t seed = 0) {
    double best = coderivative_sigma(F, region.center).value_or(std::numeric_limits<double>::infinity());
    for (const Vector& z : ball_points(region.center, region.radius, samples, seed))
        if (auto s = coderivative_sigma(F, z)) best = std::min(best, *s);
    if (!std::isfinite(best)) throw degenerate_ball_error(F.name + ": no differentiable point in the region");
    return best;
}

struct PreparedSolve {
    AmzProblem<double> problem;
    std::vector<double> grid;
    double alpha_hat = 0.0;
};

inline PreparedSolve prepare_solve(const SolveConfig& cfg, std::uint64_t seed = 0) {
    PreparedSolve out;
    const MappingSpec& F = catalog::get(cfg.mapping);
    if (cfg.x_bar.size() != F.n) throw dimension_error("x_bar must have " + std::to_string(F.n) + " entries");

    const expr::Parsed h = expr::parse(cfg.h, true);
    const expr::Parsed w = expr::parse(cfg.omega, true);
    if (h.components.size() != F.m || w.components.size() != F.m)
        throw dimension_error("h and omega need " + std::to_string(F.m) + " components each");
    if (h.highest > F.n) throw dimension_error("h uses a variable beyond x" + std::to_string(F.n));
    if (w.highest != 0) throw precondition_error("omega may depend on s only");

    auto hc = h.components, wc = w.components;
    auto h_at = [hc](const Vector& x, double s) {
        std::vector<double> v;
        for (const auto& c : hc) v.push_back(expr::eval(*c, x.values(), s));
        return Vector(v);
    };
    auto w_at = [wc](double s) {
        std::vector<double> v;
        for (const auto& c : wc) v.push_back(expr::eval(*c, std::vector<double>{}, s));
        return Vector(v);
    };

    out.grid = cfg.grid;
    std::sort(out.grid.begin(), out.grid.end());

    AmzProblem<double>& pb = out.problem;
    pb.F = F;
    pb.G = [h_at, w_at](const Vector& x, const double& s) { return h_at(x, s) + w_at(s); };
    pb.x_bar = cfg.x_bar;
    pb.y_bar = F(cfg.x_bar);
    pb.region = BallSpec{cfg.x_bar, cfg.radius.value_or(norm(cfg.x_bar) / 2.0)};
    if (!(pb.region.radius > 0)) throw precondition_error("region radius must be positive");

    out.alpha_hat = cfg.alpha_hat ? *cfg.alpha_hat : region_covering_floor(F, pb.region, 256, seed);
    for (double s : out.grid)
        pb.beta = std::max(pb.beta, estimate_lipschitz([&](const Vector& x) { return h_at(x, s); }, pb.region, 200,
                                                       seed + 7));
    if (!(pb.beta < out.alpha_hat))
        throw hypothesis_error("Lipschitz modulus " + std::to_string(pb.beta) + " of h is not below the covering modulus " +
                               std::to_string(out.alpha_hat));
    pb.alpha = 0.5 * (pb.beta + out.alpha_hat);
    return out;
}

} // namespace covkit
