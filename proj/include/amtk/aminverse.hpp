#pragma once

// Inversion of the AM transform. On an interval where g is monotone and
// positive, f' = -f sqrt(f^2/g^2 - 1) integrates left to right (g
// decreasing) and f' = +f sqrt(f^2/g^2 - 1) integrates right to left (g
// increasing); the solution stays above the barrier f >= g > 0. Where g has
// critical points, a weak inverse is stitched from monotone pieces with
// initial condition f = g at each piece's integration-start endpoint (a
// critical point of g for interior pieces, where AM(f) = f forces the
// value).
//
// Pieces adjacent at a local maximum of g share their start and agree there
// exactly; at a local minimum both pieces arrive, and their values need not
// coincide.

#include <cstddef>

#include "amtk/amcore.hpp"
#include "amtk/expr.hpp"

namespace amtk {

enum class Branch { plus, minus };
enum class Direction { left_to_right, right_to_left };

const char* to_string(Branch b);
const char* to_string(Direction d);

struct InverseSegment {
    SampledCurve curve;  // x ascending regardless of integration direction
    Branch branch = Branch::minus;
    Direction direction = Direction::left_to_right;
};

struct InverseSolution {
    std::vector<InverseSegment> segments;
    double roundtrip_error = 0.0;  // sup |AM(f) - g| over interior samples
};

// Single monotone piece. Requires g > 0 on [a, b], g monotone (checked on 64
// derivative samples), and f0 >= g at the integration-start endpoint (a if g
// is decreasing or constant, b if increasing). Classical RK4 with step size
// (b-a)/ceil((b-a)/step). Stage radicands that dip negative are clamped to
// zero; an accepted solution point that undershoots the barrier within the
// one-step bias scale (radicand >= -(1e-12 + 100 h^2)) is projected back
// onto f = g, anything deeper is a hard RadicandError.
InverseSolution invert_monotone(const Expr& g, double a, double b, double f0,
                                double step);

// Splits [a, b] at the critical points of g (sign-scan of g' at resolution
// <= step, bisection-refined) and integrates each monotone piece away from
// its start endpoint with f = g there. Raises
// UnresolvedCriticalPointError when two split points are closer than step.
InverseSolution weak_invert(const Expr& g, double a, double b, double step);

// Explicit solution of f/AM(f) = r: f(x) = exp(sign * I(x)) with
// I(x) = integral over [a,x] of sqrt(r^2 - 1), accumulated by adaptive
// Simpson quadrature and sampled at n uniform points. Requires r > 1 on
// [a, b].
SampledCurve ratio_invert(const Expr& r, double a, double b, Branch sign,
                          std::size_t n);

// Generalized form with an explicit scale C on the integral, used by the
// validation tests to demonstrate that only |C| = 1 satisfies the ratio
// contract.
SampledCurve ratio_invert_scaled(const Expr& r, double a, double b, Branch sign,
                                 std::size_t n, double scale);

// sup |AM(f) - g| over interior samples of every segment, with f' estimated
// by 5-point central differences on the sample grid; the first and last two
// samples of each segment are excluded.
double verify_roundtrip(const Expr& g, const InverseSolution& sol);

// sup |sqrt(1 + (f'/f)^2) - r| over interior samples of a uniform curve,
// with f' estimated by 5-point central differences.
double verify_ratio(const Expr& r, const SampledCurve& f);

}  // namespace amtk
