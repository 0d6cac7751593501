#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <gtest/gtest.h>

#include "covkit/linalg.hpp"
#include "covkit/sampling.hpp"

namespace covkit::testing {

inline Vector random_point(std::size_t n, std::mt19937_64& rng, double lo = -3.0, double hi = 3.0) {
    Vector z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = lo + (hi - lo) * unit_double(rng);
    return z;
}

inline Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix M(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) M(i, j) = 2.0 * unit_double(rng) - 1.0;
    return M;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    EXPECT_EQ(a.rows(), b.rows());
    EXPECT_EQ(a.cols(), b.cols());
    double d = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
    EXPECT_EQ(a.size(), b.size());
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace covkit::testing
