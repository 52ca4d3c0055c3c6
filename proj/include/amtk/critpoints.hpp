#pragma once

// Critical points of the modulated signal F_k(x) = f(x) sin(x+k) and the
// empirical certificate that |F_k| at those points equals AM(f)(x)
// independently of the phase k. Includes the sinc-maxima table the transform
// was distilled from.

#include <cstddef>
#include <span>
#include <vector>

#include "amtk/expr.hpp"

namespace amtk {

enum class ExtremumKind { maximum, minimum, unclassified };

const char* to_string(ExtremumKind k);

struct CriticalPoint {
    double x = 0.0;                 // refined root of F_k'
    double value = 0.0;             // F_k(x)
    ExtremumKind kind = ExtremumKind::unclassified;
    double deriv_residual = 0.0;    // |F_k'(x)| after refinement
    double envelope_residual = 0.0; // | |value| - AM(f)(x) |
};

// Brackets sign changes of F_k' on a uniform grid of `grid` cells over
// [a, b], refines each bracket by bisection to width 1e-13*max(1,|x|) plus
// one guarded Newton polish, and classifies by the sign of F_k''
// (|F_k''| < 1e-10 stays unclassified). Tangential roots that do not change
// sign across a cell are missed by design. Returns points sorted by x; an
// empty result is not an error.
std::vector<CriticalPoint> find_critical_points(const Expr& f, double phase,
                                                double a, double b,
                                                std::size_t grid);

struct PhaseReport {
    double phase = 0.0;
    std::size_t points = 0;
    double max_envelope_residual = 0.0;
};

struct CertificateReport {
    std::vector<PhaseReport> phases;
    std::size_t total_points = 0;
    double max_envelope_residual = 0.0;
};

// Runs find_critical_points for each phase and reports the worst envelope
// residual across all points and phases. Deterministic for fixed inputs.
CertificateReport envelope_certificate(const Expr& f, std::span<const double> phases,
                                       double a, double b, std::size_t grid);

struct SincRow {
    double x = 0.0;        // i-th local maximum of sinc (x_0 = 0)
    double sinc = 0.0;     // sinc(x)
    double envelope = 0.0; // 1/sqrt(1 + x^2)
};

// First n local maxima of sinc(x) = sin(x)/x for x >= 0. Row 0 is the
// removable singularity (0, 1, 1); later rows solve tan(x) = x in successive
// branch intervals, keeping only the maxima. The envelope column is strictly
// decreasing.
std::vector<SincRow> sinc_maxima(std::size_t n);

// Default grid resolution: 256 cells per 2*pi of interval length.
std::size_t default_grid(double a, double b);

}  // namespace amtk
