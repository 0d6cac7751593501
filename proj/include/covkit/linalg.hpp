#pragma once

/**
 * @file linalg.hpp
 * @brief Small dense vectors and matrices, row-vector convention.
 *
 * A vector acts on a matrix from the left: (y M)_j = sum_i y_i M(i, j).
 * Matrices are stored row-major. Sizes are tiny (at most 9x9 in practice),
 * so everything here is written for clarity, not speed.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covkit/errors.hpp"

namespace covkit {

class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t n, double fill = 0.0) : data_(n, fill) { check(); }
    Vector(std::initializer_list<double> xs) : data_(xs) { check(); }
    explicit Vector(std::vector<double> xs) : data_(std::move(xs)) { check(); }

    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }
    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }

    const std::vector<double>& values() const noexcept { return data_; }

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    void check() const {
        for (double v : data_)
            if (!std::isfinite(v)) throw domain_error("vector entry is not finite");
    }

    std::vector<double> data_;
};

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw dimension_error("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
        for (double v : data_)
            if (!std::isfinite(v)) throw domain_error("matrix entry is not finite");
    }

    static Matrix identity(std::size_t n) {
        Matrix I(n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
        return I;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector row(std::size_t i) const {
        return Vector(std::vector<double>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_));
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw dimension_error("dot: size mismatch");
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double norm(const Vector& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw dimension_error("vector add: size mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw dimension_error("vector subtract: size mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vector operator*(double s, const Vector& a) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline double distance(const Vector& a, const Vector& b) { return norm(a - b); }

inline Matrix transpose(const Matrix& M) {
    Matrix T(M.cols(), M.rows());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) T(j, i) = M(i, j);
    return T;
}

/// y M, with y of length rows(M).
inline Vector left_mul(const Vector& y, const Matrix& M) {
    if (y.size() != M.rows())
        throw dimension_error("left_mul: vector has " + std::to_string(y.size()) +
                              " entries, matrix has " + std::to_string(M.rows()) + " rows");
    Vector x(M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) x[j] += y[i] * M(i, j);
    return x;
}

/// M v, with v of length cols(M).
inline Vector right_mul(const Matrix& M, const Vector& v) {
    if (v.size() != M.cols()) throw dimension_error("right_mul: size mismatch");
    Vector r(M.rows());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) r[i] += M(i, j) * v[j];
    return r;
}

inline double frobenius_norm(const Matrix& M) {
    double s = 0.0;
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) s += M(i, j) * M(i, j);
    return std::sqrt(s);
}

namespace detail {

// Hestenes one-sided Jacobi. Orthogonalises the columns of A in place and
// returns their norms, i.e. the singular values of A (A has at least as
// many rows as columns).
inline std::vector<double> hestenes(Matrix A, double tol = 1e-12, int max_sweeps = 200) {
    const std::size_t n = A.rows(), k = A.cols();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < k; ++p) {
            for (std::size_t q = p + 1; q < k; ++q) {
                double alpha = 0, beta = 0, gamma = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    alpha += A(i, p) * A(i, p);
                    beta += A(i, q) * A(i, q);
                    gamma += A(i, p) * A(i, q);
                }
                if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < n; ++i) {
                    const double ap = A(i, p), aq = A(i, q);
                    A(i, p) = c * ap - s * aq;
                    A(i, q) = s * ap + c * aq;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<double> sv(k);
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += A(i, j) * A(i, j);
        sv[j] = std::sqrt(s);
    }
    return sv;
}

} // namespace detail

/// Singular values in descending order, min(rows, cols) of them. Values
/// below 1e-10 times the Frobenius norm are reported as exactly zero.
inline std::vector<double> singular_values(const Matrix& M) {
    std::vector<double> sv = M.rows() <= M.cols() ? detail::hestenes(transpose(M)) : detail::hestenes(M);
    const double cut = 1e-10 * frobenius_norm(M);
    for (double& s : sv)
        if (s < cut) s = 0.0;
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

/// min over unit y of |y M|. Zero whenever rows > cols.
inline double min_singular_value(const Matrix& M) {
    if (M.rows() == 0 || M.cols() == 0) throw dimension_error("min_singular_value: empty matrix");
    if (M.rows() > M.cols()) return 0.0;
    return singular_values(M).back();
}

/// Solves A x = b by Gaussian elimination with partial pivoting; nullopt when
/// A is numerically singular.
inline std::optional<Vector> solve(Matrix A, Vector b) {
    const std::size_t n = A.rows();
    if (A.cols() != n || b.size() != n) throw dimension_error("solve: need square system");
    const double scale = std::max(frobenius_norm(A), 1e-300);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
        if (std::abs(A(piv, k)) <= 1e-13 * scale) return std::nullopt;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = A(i, k) / A(k, k);
            for (std::size_t j = k; j < n; ++j) A(i, j) -= f * A(k, j);
            b[i] -= f * b[k];
        }
    }
    Vector x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= A(k, j) * x[j];
        x[k] = s / A(k, k);
    }
    return x;
}

} // namespace covkit
