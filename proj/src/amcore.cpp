#include "amtk/amcore.hpp"

#include <cmath>

#include "amtk/errors.hpp"

namespace amtk {

double am_transform(const Expr& f, double x) {
    const Jet2 j = eval_jet2(f, x);
    // |f| * |f|/hypot(f, f') avoids overflow in f^2 + f'^2.
    const double h = std::hypot(j.v, j.d1);
    if (h == 0.0) return 0.0;
    const double a = std::abs(j.v);
    return a * (a / h);
}

SampledCurve am_curve(const Expr& f, double a, double b, std::size_t n, std::string label) {
    if (!(a < b)) throw PreconditionError("am_curve: requires a < b");
    if (n < 2) throw PreconditionError("am_curve: requires n >= 2");
    SampledCurve curve;
    curve.label = std::move(label);
    curve.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        try {
            const double y = am_transform(f, x);
            if (!std::isfinite(y)) {
                ++curve.skipped;
                continue;
            }
            curve.points.push_back({x, y});
        } catch (const DomainError&) {
            ++curve.skipped;
        }
    }
    return curve;
}

double ratio(const Expr& f, double x) {
    const Jet2 j = eval_jet2(f, x);
    if (!(j.v > 0.0)) {
        throw RatioBoundError("ratio: f(x) must be positive, got " + std::to_string(j.v) +
                              " at x = " + std::to_string(x));
    }
    return std::hypot(1.0, j.d1 / j.v);
}

ExpFormSides am_of_exp_check(const Expr& g, double x) {
    ExprNode wrap;
    wrap.kind = ExprKind::exp;
    wrap.a = g.ptr();
    const Expr composed(std::make_shared<const ExprNode>(std::move(wrap)));

    ExpFormSides sides;
    sides.lhs = am_transform(composed, x);
    const Jet2 j = eval_jet2(g, x);
    sides.rhs = std::exp(j.v) / std::hypot(1.0, j.d1);
    return sides;
}

}  // namespace amtk
