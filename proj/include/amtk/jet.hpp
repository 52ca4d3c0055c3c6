#pragma once

// Order-2 jets: a value bundled with its first and second derivatives,
// propagated through arithmetic. Seeding with variable(x) and evaluating an
// expression over Jet2 yields f(x), f'(x), f''(x) in one pass.
//
// The composition rule for h(u) with u a jet is
//   (h(u), h'(u0)*u1, h''(u0)*u1^2 + h'(u0)*u2).
// Domain checking is the caller's job; these functions follow IEEE semantics
// outside the natural domains.

#include <cmath>
#include <cstdlib>

namespace amtk {

struct Jet2 {
    double v = 0.0;   // value
    double d1 = 0.0;  // first derivative
    double d2 = 0.0;  // second derivative

    constexpr Jet2() = default;
    constexpr Jet2(double v_, double d1_, double d2_) : v(v_), d1(d1_), d2(d2_) {}

    static constexpr Jet2 constant(double c) { return {c, 0.0, 0.0}; }
    static constexpr Jet2 variable(double x) { return {x, 1.0, 0.0}; }

    constexpr Jet2 operator-() const { return {-v, -d1, -d2}; }

    friend constexpr Jet2 operator+(const Jet2& a, const Jet2& b) {
        return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
    }
    friend constexpr Jet2 operator-(const Jet2& a, const Jet2& b) {
        return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
    }
    friend constexpr Jet2 operator*(const Jet2& a, const Jet2& b) {
        return {a.v * b.v,
                a.d1 * b.v + a.v * b.d1,
                a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
    }
    // Quotient rule rearranged so each derivative reuses the lower ones.
    friend constexpr Jet2 operator/(const Jet2& a, const Jet2& b) {
        const double q = a.v / b.v;
        const double q1 = (a.d1 - q * b.d1) / b.v;
        const double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.v;
        return {q, q1, q2};
    }

    friend constexpr Jet2 operator+(const Jet2& a, double c) { return {a.v + c, a.d1, a.d2}; }
    friend constexpr Jet2 operator+(double c, const Jet2& a) { return a + c; }
    friend constexpr Jet2 operator-(const Jet2& a, double c) { return {a.v - c, a.d1, a.d2}; }
    friend constexpr Jet2 operator-(double c, const Jet2& a) { return {c - a.v, -a.d1, -a.d2}; }
    friend constexpr Jet2 operator*(const Jet2& a, double c) { return {a.v * c, a.d1 * c, a.d2 * c}; }
    friend constexpr Jet2 operator*(double c, const Jet2& a) { return a * c; }
    friend constexpr Jet2 operator/(const Jet2& a, double c) { return {a.v / c, a.d1 / c, a.d2 / c}; }
    friend constexpr Jet2 operator/(double c, const Jet2& a) { return Jet2::constant(c) / a; }
};

inline Jet2 compose(double h, double dh, double ddh, const Jet2& u) {
    return {h, dh * u.d1, ddh * u.d1 * u.d1 + dh * u.d2};
}

inline Jet2 sin(const Jet2& u) {
    const double s = std::sin(u.v), c = std::cos(u.v);
    return compose(s, c, -s, u);
}

inline Jet2 cos(const Jet2& u) {
    const double s = std::sin(u.v), c = std::cos(u.v);
    return compose(c, -s, -c, u);
}

inline Jet2 tan(const Jet2& u) {
    const double t = std::tan(u.v);
    const double sec2 = 1.0 + t * t;
    return compose(t, sec2, 2.0 * t * sec2, u);
}

inline Jet2 exp(const Jet2& u) {
    const double e = std::exp(u.v);
    return compose(e, e, e, u);
}

inline Jet2 log(const Jet2& u) {
    const double inv = 1.0 / u.v;
    return compose(std::log(u.v), inv, -inv * inv, u);
}

inline Jet2 sqrt(const Jet2& u) {
    // A constant subtree stays clean at u.v == 0 instead of producing 0*inf.
    if (u.d1 == 0.0 && u.d2 == 0.0) return Jet2::constant(std::sqrt(u.v));
    const double r = std::sqrt(u.v);
    const double dr = 0.5 / r;
    return compose(r, dr, -0.5 * dr / u.v, u);
}

inline Jet2 atan(const Jet2& u) {
    const double w = 1.0 + u.v * u.v;
    return compose(std::atan(u.v), 1.0 / w, -2.0 * u.v / (w * w), u);
}

// |u| with the sign-0 convention at the kink; the delta term of the second
// derivative is dropped.
inline Jet2 abs(const Jet2& u) {
    const double s = u.v > 0.0 ? 1.0 : (u.v < 0.0 ? -1.0 : 0.0);
    return {std::abs(u.v), s * u.d1, s * u.d2};
}

// Integer power by binary exponentiation; works for negative bases and, for
// negative n, divides one by the positive power.
inline Jet2 ipow(const Jet2& u, long long n) {
    if (n == 0) return Jet2::constant(1.0);
    const bool invert = n < 0;
    unsigned long long e = invert ? static_cast<unsigned long long>(-(n + 1)) + 1ull
                                  : static_cast<unsigned long long>(n);
    Jet2 acc = Jet2::constant(1.0);
    Jet2 base = u;
    while (e > 0) {
        if (e & 1ull) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return invert ? Jet2::constant(1.0) / acc : acc;
}

// General power a^b = exp(b log a); requires a.v > 0.
inline Jet2 pow(const Jet2& a, const Jet2& b) {
    return exp(b * log(a));
}

}  // namespace amtk
