#pragma once

/**
 * @file amz.hpp
 * @brief Parametric coincidence points F(x) = G(x, p) near a reference
 * solution F(xbar) = ybar, with the a-priori distance bound
 *
 *   |sigma(p) - xbar| <= |G(xbar, p) - ybar| / (alpha - beta)
 *
 * where alpha is a covering modulus of F and beta a Lipschitz modulus of
 * G(., p) on the region.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "covkit/autodiff.hpp"
#include "covkit/catalog.hpp"
#include "covkit/covering.hpp"
#include "covkit/errors.hpp"
#include "covkit/linalg.hpp"
#include "covkit/mapping.hpp"
#include "covkit/sampling.hpp"

namespace covkit {

template <class Param = double>
struct AmzProblem {
    MappingSpec F;
    std::function<Vector(const Vector&, const Param&)> G;
    Vector x_bar;
    Vector y_bar;
    BallSpec region;
    double beta = 0.0;
    double alpha = 0.0;
};

enum class SolveStatus { converged, failed };

inline const char* to_string(SolveStatus s) { return s == SolveStatus::converged ? "converged" : "failed"; }

template <class Param = double>
struct CoincidenceSolution {
    Param parameter{};
    Vector sigma;
    double residual = 0.0;
    double bound_rhs = 0.0;
    bool bound_holds = false;
    int iterations = 0;
    SolveStatus status = SolveStatus::failed;
};

struct SolveOptions {
    double tol = 1e-10;
    int max_iterations = 200;
    int max_gradient_steps = 50;
};

/// Largest difference quotient of G over sampled pairs in the region, times
/// 1.1. Half the pairs are spread over the ball, half are close neighbours.
inline double estimate_lipschitz(const std::function<Vector(const Vector&)>& G, const BallSpec& region,
                                 std::size_t pairs = 200, std::uint64_t seed = 7) {
    if (pairs < 100) throw precondition_error("estimate_lipschitz needs at least 100 pairs");
    if (!(region.radius > 0)) throw precondition_error("region radius must be positive");
    const std::size_t n = region.center.size();
    std::mt19937_64 rng(seed);
    auto in_ball = [&](const Vector& c, double r) {
        for (;;) {
            Vector u(n);
            double s = 0;
            for (std::size_t i = 0; i < n; ++i) {
                u[i] = 2.0 * unit_double(rng) - 1.0;
                s += u[i] * u[i];
            }
            if (s <= 1.0) return c + r * u;
        }
    };
    double best = 0.0;
    for (std::size_t k = 0; k < pairs; ++k) {
        const Vector a = in_ball(region.center, region.radius);
        Vector b = k % 2 ? in_ball(a, 1e-3 * region.radius) : in_ball(region.center, region.radius);
        if (distance(b, region.center) > region.radius) b = in_ball(region.center, region.radius);
        const double d = distance(a, b);
        if (d == 0.0) continue;
        best = std::max(best, distance(G(a), G(b)) / d);
    }
    return 1.1 * best;
}

namespace detail {

inline Matrix fd_jacobian(const std::function<Vector(const Vector&)>& g, const Vector& z) {
    const double h = default_fd_step(z);
    const Vector g0 = g(z);
    Matrix J(z.size(), g0.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        Vector zp = z, zm = z;
        zp[j] += h;
        zm[j] -= h;
        const Vector gp = g(zp), gm = g(zm);
        for (std::size_t i = 0; i < g0.size(); ++i) J(j, i) = (gp[i] - gm[i]) / (2 * h);
    }
    return J;
}

} // namespace detail

template <class Param>
void validate(const AmzProblem<Param>& pb) {
    if (pb.F.n != pb.F.m) throw precondition_error("coincidence solver needs a square F");
    if (pb.x_bar.size() != pb.F.n || pb.y_bar.size() != pb.F.m) throw dimension_error("xbar or ybar has wrong dimension");
    if (distance(pb.F(pb.x_bar), pb.y_bar) > 1e-9 * std::max(1.0, norm(pb.y_bar)))
        throw precondition_error("F(xbar) = ybar required");
    if (!(pb.beta >= 0.0)) throw precondition_error("beta must be non-negative");
    if (!(pb.beta < pb.alpha))
        throw hypothesis_error("beta < alpha required (beta = " + std::to_string(pb.beta) +
                               ", alpha = " + std::to_string(pb.alpha) + ")");
}

/// Damped Newton on R(x) = F(x) - G(x, p) from x0 (default xbar). F is
/// differentiated by AD, G by central differences. Singular steps fall back
/// to gradient descent on |R|^2 / 2.
template <class Param>
CoincidenceSolution<Param> solve_coincidence(const AmzProblem<Param>& pb, const Param& p,
                                             const std::optional<Vector>& x0 = std::nullopt,
                                             const SolveOptions& opt = {}) {
    validate(pb);
    CoincidenceSolution<Param> sol;
    sol.parameter = p;
    sol.bound_rhs = distance(pb.G(pb.x_bar, p), pb.y_bar) / (pb.alpha - pb.beta);

    const std::function<Vector(const Vector&)> Gp = [&](const Vector& x) { return pb.G(x, p); };
    auto residual = [&](const Vector& x) -> std::optional<Vector> {
        try {
            return pb.F(x) - Gp(x);
        } catch (const domain_error&) {
            return std::nullopt;
        }
    };
    auto rnorm = [&](const Vector& x) {
        auto r = residual(x);
        return r ? norm(*r) : std::numeric_limits<double>::infinity();
    };

    Vector x = x0 ? *x0 : pb.x_bar;
    auto r = residual(x);
    if (!r) {
        x = pb.x_bar;
        r = residual(x);
        if (!r) throw domain_error("residual undefined at xbar");
    }
    double rn = norm(*r);
    int gradient_steps = 0;

    while (rn > opt.tol && sol.iterations < opt.max_iterations) {
        ++sol.iterations;
        std::optional<Matrix> A;
        try {
            A = transpose(jacobian_ad(pb.F, x));
        } catch (const nondifferentiable_error&) {
        }
        if (A) {  // A(i, j) = dR_i / dx_j
            const Matrix JG = transpose(detail::fd_jacobian(Gp, x));
            for (std::size_t i = 0; i < A->rows(); ++i)
                for (std::size_t j = 0; j < A->cols(); ++j) (*A)(i, j) -= JG(i, j);
        }

        bool stepped = false;
        if (A) {
            if (auto delta = solve(*A, -1.0 * *r)) {
                for (double lam = 1.0; lam > 1e-10; lam /= 2.0) {
                    const Vector xn = x + lam * *delta;
                    const double nn = rnorm(xn);
                    if (nn < (1.0 - 1e-4 * lam) * rn) {
                        x = xn;
                        rn = nn;
                        stepped = true;
                        break;
                    }
                }
            }
        }
        if (!stepped) {
            if (!A || gradient_steps >= opt.max_gradient_steps) break;
            ++gradient_steps;
            const Vector d = -1.0 * left_mul(*r, *A);  // -A^T r
            const Vector Ad = right_mul(*A, d);
            const double dd = dot(d, d), aa = dot(Ad, Ad);
            if (dd == 0.0 || aa == 0.0) break;
            for (double lam = dd / aa; lam > 1e-14; lam /= 2.0) {
                const Vector xn = x + lam * d;
                const double nn = rnorm(xn);
                if (nn < rn) {
                    x = xn;
                    rn = nn;
                    stepped = true;
                    break;
                }
            }
            if (!stepped) break;
        }
        r = residual(x);
    }

    sol.sigma = x;
    sol.residual = rn;
    sol.status = rn <= opt.tol ? SolveStatus::converged : SolveStatus::failed;
    sol.bound_holds = distance(x, pb.x_bar) <= sol.bound_rhs + 1e-9;
    return sol;
}

/// Solves over the grid in the given order. With warm starts each point
/// begins at the previous converged solution.
template <class Param>
std::vector<CoincidenceSolution<Param>> solve_grid(const AmzProblem<Param>& pb, const std::vector<Param>& grid,
                                                   bool warm_start = true, const SolveOptions& opt = {}) {
    std::vector<CoincidenceSolution<Param>> out;
    std::optional<Vector> start;
    for (const Param& p : grid) {
        out.push_back(solve_coincidence(pb, p, warm_start ? start : std::nullopt, opt));
        if (out.back().status == SolveStatus::converged) start = out.back().sigma;
    }
    return out;
}

struct Certificate {
    double beta = 0.0;
    double alpha = 0.0;
    std::vector<CoincidenceSolution<double>> solutions;
    std::vector<double> identity_gaps;  // |G(sigma, s)|^2 - |F(sigma)|^2 in closed form
};

using ParamField = std::function<Vector(const Vector&, double)>;
using ParamShift = std::function<Vector(double)>;

namespace detail {

inline Certificate certify(const MappingSpec& F, double alpha_hat, const ParamField& h, const ParamShift& omega,
                           const Vector& x_bar, const BallSpec& region, const std::vector<double>& grid,
                           const std::function<double(const Vector&)>& image_norm2) {
    if (grid.empty()) throw precondition_error("parameter grid is empty");
    Certificate c;
    for (double s : grid)
        c.beta = std::max(c.beta, estimate_lipschitz([&](const Vector& x) { return h(x, s); }, region));
    if (!(c.beta < alpha_hat))
        throw hypothesis_error("Lipschitz modulus " + std::to_string(c.beta) + " of h is not below the covering modulus " +
                               std::to_string(alpha_hat));
    c.alpha = 0.5 * (c.beta + alpha_hat);

    AmzProblem<double> pb;
    pb.F = F;
    pb.G = [h, omega](const Vector& x, const double& s) { return h(x, s) + omega(s); };
    pb.x_bar = x_bar;
    pb.y_bar = F(x_bar);
    pb.region = region;
    pb.beta = c.beta;
    pb.alpha = c.alpha;

    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    c.solutions = solve_grid(pb, sorted);
    for (const auto& sol : c.solutions) {
        const Vector g = pb.G(sol.sigma, sol.parameter);
        c.identity_gaps.push_back(std::abs(dot(g, g) - image_norm2(sol.sigma)));
    }
    return c;
}

} // namespace detail

/// F = ex6_7 on B(xbar, |xbar|/2), where its covering modulus is at least |xbar|.
/// Checks (h1 + w1)^2 + (h2 + w2)^2 = (s1^2 - s2^2)^2 + (2 s1 s2)^2 at each solution.
inline Certificate certify_squaring(const ParamField& h, const ParamShift& omega, const Vector& x_bar,
                                       const std::vector<double>& grid) {
    if (x_bar.size() != 2) throw dimension_error("xbar must lie in R^2");
    const double r = norm(x_bar);
    if (r == 0.0) throw precondition_error("xbar ≠ θ required");
    return detail::certify(catalog::get("ex6_7"), r, h, omega, x_bar, BallSpec{x_bar, r / 2.0}, grid,
                           [](const Vector& s) {
                               const double a = s[0] * s[0] - s[1] * s[1], b = 2 * s[0] * s[1];
                               return a * a + b * b;
                           });
}

/// F = f5_1, whose covering modulus is 1 everywhere. h is sampled on
/// B(xbar, max(1, |xbar|)). Checks (h1 + w1)^2 + (h2 + w2)^2 = s1^2 + s2^2.
inline Certificate certify_angle_doubling(const ParamField& h, const ParamShift& omega, const Vector& x_bar,
                                       const std::vector<double>& grid) {
    if (x_bar.size() != 2) throw dimension_error("xbar must lie in R^2");
    return detail::certify(catalog::get("f5_1"), 1.0, h, omega, x_bar, BallSpec{x_bar, std::max(1.0, norm(x_bar))},
                           grid, [](const Vector& s) { return s[0] * s[0] + s[1] * s[1]; });
}

} // namespace covkit
