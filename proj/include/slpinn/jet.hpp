#pragma once

#include <cmath>

namespace slpinn {

/// Second-order forward-mode derivative triple (value, d1, d2) along a single
/// direction. d1 and d2 are the first and second directional derivatives, so
/// propagating one Jet2 per axis yields gradients and Laplacians without any
/// cross terms.
struct Jet2 {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    constexpr Jet2() = default;
    constexpr Jet2(double value, double first, double second) : v(value), d1(first), d2(second) {}

    static constexpr Jet2 constant(double c) { return {c, 0.0, 0.0}; }
    /// Coordinate seed: derivative equal to the direction component, curvature zero.
    static constexpr Jet2 seed(double value, double direction) { return {value, direction, 0.0}; }
};

constexpr Jet2 operator+(const Jet2& a, const Jet2& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
constexpr Jet2 operator-(const Jet2& a, const Jet2& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
constexpr Jet2 operator-(const Jet2& a) { return {-a.v, -a.d1, -a.d2}; }

// product rule to second order: (fg)'' = f''g + 2f'g' + fg''
constexpr Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

constexpr Jet2 operator+(const Jet2& a, double c) { return {a.v + c, a.d1, a.d2}; }
constexpr Jet2 operator+(double c, const Jet2& a) { return a + c; }
constexpr Jet2 operator-(const Jet2& a, double c) { return {a.v - c, a.d1, a.d2}; }
constexpr Jet2 operator-(double c, const Jet2& a) { return {c - a.v, -a.d1, -a.d2}; }
constexpr Jet2 operator*(const Jet2& a, double c) { return {a.v * c, a.d1 * c, a.d2 * c}; }
constexpr Jet2 operator*(double c, const Jet2& a) { return a * c; }

// quotient r = a/b from a = r*b: r' = (a' - r b')/b, r'' = (a'' - 2 r' b' - r b'')/b
constexpr Jet2 operator/(const Jet2& a, const Jet2& b) {
    const double iv = 1.0 / b.v;
    const double v = a.v * iv;
    const double d1 = (a.d1 - v * b.d1) * iv;
    const double d2 = (a.d2 - 2.0 * d1 * b.d1 - v * b.d2) * iv;
    return {v, d1, d2};
}
constexpr Jet2 operator/(const Jet2& a, double c) { return a * (1.0 / c); }
constexpr Jet2 operator/(double c, const Jet2& b) { return Jet2::constant(c) / b; }

inline Jet2 exp(const Jet2& a) {
    const double e = std::exp(a.v);
    return {e, e * a.d1, e * (a.d2 + a.d1 * a.d1)};
}

inline Jet2 sqrt(const Jet2& a) {
    const double s = std::sqrt(a.v);
    const double h1 = 0.5 / s;
    const double h2 = -0.25 / (a.v * s);
    return {s, h1 * a.d1, h2 * a.d1 * a.d1 + h1 * a.d2};
}

/// |a|, with sign(0) taken as +1. The kink at 0 is handled by one-sided
/// derivatives; callers place it on measure-zero sets only.
inline Jet2 abs(const Jet2& a) {
    const double s = (a.v < 0.0) ? -1.0 : 1.0;
    return {s * a.v, s * a.d1, s * a.d2};
}

/// Numerically stable logistic function (never exponentiates a positive argument).
inline double sigmoid(double x) {
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

/// sigmoid value and its first three derivatives, all expressed through the
/// value: s' = s(1-s), s'' = s'(1-2s), s''' = s''(1-2s) - 2 s'^2.
inline void sigmoid_stack(double x, double& s0, double& s1, double& s2, double& s3) {
    s0 = sigmoid(x);
    s1 = s0 * (1.0 - s0);
    const double w = 1.0 - 2.0 * s0;
    s2 = s1 * w;
    s3 = s2 * w - 2.0 * s1 * s1;
}

inline Jet2 sigmoid(const Jet2& a) {
    const double s = sigmoid(a.v);
    const double s1 = s * (1.0 - s);
    const double s2 = s1 * (1.0 - 2.0 * s);
    return {s, s1 * a.d1, s2 * a.d1 * a.d1 + s1 * a.d2};
}

}  // namespace slpinn
