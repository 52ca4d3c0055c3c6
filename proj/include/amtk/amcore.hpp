#pragma once

// The amplitude-modulation transform: AM(f) = f^2 / sqrt(f^2 + f'^2),
// the function whose values at the critical points of f(x)sin(x+k) match
// those critical values for every phase k.

#include <cstddef>
#include <string>
#include <vector>

#include "amtk/expr.hpp"

namespace amtk {

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;
};

// An x-sorted sample table. Points where evaluation failed (domain error or
// a non-finite value) are omitted and counted in `skipped`.
struct SampledCurve {
    std::vector<CurvePoint> points;
    std::string label;
    std::size_t skipped = 0;
};

// AM(f)(x). Returns 0 at a double zero f(x) = f'(x) = 0 (the limit forced by
// AM <= |f|). Evaluation errors propagate.
double am_transform(const Expr& f, double x);

// n uniform samples of AM(f) on [a, b]; failed points are skipped, not fatal.
SampledCurve am_curve(const Expr& f, double a, double b, std::size_t n,
                      std::string label = "am");

// f(x)/AM(f)(x) = sqrt(1 + (f'/f)^2). Requires f(x) > 0; always >= 1.
double ratio(const Expr& f, double x);

// Both sides of AM(exp(g)) = exp(g)/sqrt(1 + g'^2).
struct ExpFormSides {
    double lhs = 0.0;  // am_transform applied to exp(g)
    double rhs = 0.0;  // exp(g)/sqrt(1 + g'^2)
};
ExpFormSides am_of_exp_check(const Expr& g, double x);

}  // namespace amtk
