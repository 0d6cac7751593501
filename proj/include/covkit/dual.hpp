#pragma once

/**
 * @file dual.hpp
 * @brief Forward-mode dual numbers, a + b eps with eps^2 = 0.
 */

#include <cmath>
#include <string>

#include "covkit/errors.hpp"

namespace covkit {

template <class T = double>
struct Dual {
    T val{};
    T eps{};

    constexpr Dual() = default;
    constexpr Dual(T v) : val(v) {}
    constexpr Dual(T v, T d) : val(v), eps(d) {}

    static constexpr Dual variable(T v) { return {v, T(1)}; }

    Dual& operator+=(const Dual& o) { val += o.val; eps += o.eps; return *this; }
    Dual& operator-=(const Dual& o) { val -= o.val; eps -= o.eps; return *this; }
    Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
    Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

    friend constexpr Dual operator+(const Dual& a, const Dual& b) { return {a.val + b.val, a.eps + b.eps}; }
    friend constexpr Dual operator-(const Dual& a, const Dual& b) { return {a.val - b.val, a.eps - b.eps}; }
    friend constexpr Dual operator-(const Dual& a) { return {-a.val, -a.eps}; }
    friend constexpr Dual operator*(const Dual& a, const Dual& b) {
        return {a.val * b.val, a.eps * b.val + a.val * b.eps};
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        if (b.val == T(0)) throw nondifferentiable_error("division by zero");
        return {a.val / b.val, (a.eps * b.val - a.val * b.eps) / (b.val * b.val)};
    }

    friend constexpr bool operator==(const Dual& a, const Dual& b) { return a.val == b.val; }
    friend constexpr auto operator<=>(const Dual& a, const Dual& b) { return a.val <=> b.val; }
};

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
    if (!(x.val > T(0))) throw nondifferentiable_error("sqrt argument is not positive");
    using std::sqrt;
    const T s = sqrt(x.val);
    return {s, x.eps / (T(2) * s)};
}

template <class T>
Dual<T> exp(const Dual<T>& x) {
    using std::exp;
    const T e = exp(x.val);
    return {e, x.eps * e};
}

template <class T>
Dual<T> log(const Dual<T>& x) {
    if (!(x.val > T(0))) throw nondifferentiable_error("ln argument is not positive");
    using std::log;
    return {log(x.val), x.eps / x.val};
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
    using std::cos, std::sin;
    return {sin(x.val), x.eps * cos(x.val)};
}

template <class T>
Dual<T> cos(const Dual<T>& x) {
    using std::cos, std::sin;
    return {cos(x.val), -x.eps * sin(x.val)};
}

template <class T>
Dual<T> abs(const Dual<T>& x) {
    if (x.val == T(0)) throw nondifferentiable_error("abs at zero");
    return x.val > T(0) ? x : -x;
}

inline double value_of(double x) { return x; }
template <class T>
T value_of(const Dual<T>& x) { return x.val; }

} // namespace covkit
