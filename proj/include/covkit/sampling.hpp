#pragma once

/**
 * @file sampling.hpp
 * @brief Deterministic point sets: Halton sequences with an optional seeded
 * Cranley-Patterson shift, restricted to balls and spheres.
 */

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "covkit/errors.hpp"
#include "covkit/linalg.hpp"

namespace covkit {

inline constexpr std::array<unsigned, 12> halton_bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

inline double radical_inverse(std::uint64_t index, unsigned base) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (index > 0) {
        r += f * static_cast<double>(index % base);
        index /= base;
        f *= inv;
    }
    return r;
}

/// Uniform double in [0, 1) from the top 53 bits; portable across standard
/// libraries, unlike std::uniform_real_distribution.
inline double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class HaltonCube {
public:
    explicit HaltonCube(std::size_t dim, std::uint64_t seed = 0) : shift_(dim, 0.0) {
        if (dim == 0 || dim > halton_bases.size()) throw dimension_error("Halton: unsupported dimension");
        if (seed != 0) {
            std::mt19937_64 rng(seed);
            for (double& s : shift_) s = unit_double(rng);
        }
    }

    /// Next point of [-1, 1)^dim.
    std::vector<double> next() {
        ++index_;
        std::vector<double> u(shift_.size());
        for (std::size_t d = 0; d < u.size(); ++d) {
            double v = radical_inverse(index_, halton_bases[d]) + shift_[d];
            if (v >= 1.0) v -= 1.0;
            u[d] = 2.0 * v - 1.0;
        }
        return u;
    }

private:
    std::vector<double> shift_;
    std::uint64_t index_ = 0;
};

/// count points of the closed ball B(center, radius).
inline std::vector<Vector> ball_points(const Vector& center, double radius, std::size_t count,
                                       std::uint64_t seed = 0) {
    HaltonCube cube(center.size(), seed);
    std::vector<Vector> pts;
    pts.reserve(count);
    while (pts.size() < count) {
        auto u = cube.next();
        double r2 = 0;
        for (double x : u) r2 += x * x;
        if (r2 > 1.0) continue;
        Vector p(center.size());
        for (std::size_t d = 0; d < u.size(); ++d) p[d] = center[d] + radius * u[d];
        pts.push_back(p);
    }
    return pts;
}

/// count unit vectors spread over the sphere in R^dim.
inline std::vector<Vector> sphere_directions(std::size_t dim, std::size_t count) {
    std::vector<Vector> dirs;
    dirs.reserve(count);
    if (dim == 1) {
        for (std::size_t k = 0; k < count; ++k) dirs.push_back(Vector{k % 2 ? -1.0 : 1.0});
        return dirs;
    }
    HaltonCube cube(dim);
    while (dirs.size() < count) {
        Vector v(cube.next());
        double r = norm(v);
        if (r < 0.1 || r > 1.0) continue;
        dirs.push_back((1.0 / r) * v);
    }
    return dirs;
}

} // namespace covkit
