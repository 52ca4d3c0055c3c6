#include "amtk/elimination.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "amtk/amcore.hpp"
#include "amtk/errors.hpp"

namespace amtk {
namespace {

// ---------------------------------------------------------------------------
// Fraction-free determinant
// ---------------------------------------------------------------------------

RatPoly bareiss_determinant(std::vector<std::vector<RatPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) return RatPoly::constant(1);
    bool negate = false;
    RatPoly prev = RatPoly::constant(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return {};  // singular
            std::swap(m[k], m[swap_row]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                RatPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                auto q = RatPoly::divide_exact(num, prev);
                if (!q) throw Error("bareiss: non-exact division");
                m[i][j] = std::move(*q);
            }
            m[i][k] = RatPoly();
        }
        prev = m[k][k];
    }
    RatPoly det = m[n - 1][n - 1];
    return negate ? -det : det;
}

std::vector<std::vector<RatPoly>> sylvester_matrix(const RatPoly& a, const RatPoly& b, Var v) {
    const std::size_t da = static_cast<std::size_t>(a.degree(v));
    const std::size_t db = static_cast<std::size_t>(b.degree(v));
    const std::vector<RatPoly> ca = a.coefficients_in(v);
    const std::vector<RatPoly> cb = b.coefficients_in(v);
    const std::size_t n = da + db;
    std::vector<std::vector<RatPoly>> m(n, std::vector<RatPoly>(n));
    for (std::size_t row = 0; row < db; ++row) {
        for (std::size_t k = 0; k <= da; ++k) m[row][row + k] = ca[da - k];
    }
    for (std::size_t row = 0; row < da; ++row) {
        for (std::size_t k = 0; k <= db; ++k) m[db + row][row + k] = cb[db - k];
    }
    return m;
}

// ---------------------------------------------------------------------------
// Squarefree decomposition (Yun) in one variable
// ---------------------------------------------------------------------------

RatPoly exact_quotient(const RatPoly& a, const RatPoly& b) {
    auto q = RatPoly::divide_exact(a, b);
    if (!q) throw Error("squarefree decomposition: non-exact division");
    return *q;
}

// Multiplicity classes B1, B2, ... with A ~ prod Bi^i up to a constant;
// constant classes are skipped.
std::vector<RatPoly> squarefree_classes(const RatPoly& A, Var v) {
    std::vector<RatPoly> classes;
    const RatPoly dA = A.derivative(v);
    RatPoly g = gcd(A, dA);
    if (g.is_constant()) {
        classes.push_back(A.normalized());
        return classes;
    }
    RatPoly c = exact_quotient(A, g);
    RatPoly d = exact_quotient(dA, g) - c.derivative(v);
    while (!c.is_constant()) {
        RatPoly b = gcd(c, d);
        if (!b.is_constant()) classes.push_back(b);
        c = exact_quotient(c, b);
        d = exact_quotient(d, b) - c.derivative(v);
    }
    return classes;
}

// ---------------------------------------------------------------------------
// Numeric curve filter
// ---------------------------------------------------------------------------

// Real roots of the univariate polynomial with the given ascending double
// coefficients, by sign scan plus bisection over a Cauchy-bound interval.
std::vector<double> real_roots(const std::vector<double>& coeffs) {
    std::size_t deg = coeffs.size();
    while (deg > 0 && coeffs[deg - 1] == 0.0) --deg;
    if (deg <= 1) return {};
    const auto eval = [&](double t) {
        double acc = 0.0;
        for (std::size_t k = deg; k-- > 0;) acc = acc * t + coeffs[k];
        return acc;
    };
    double bound = 0.0;
    for (std::size_t k = 0; k + 1 < deg; ++k) {
        bound = std::max(bound, std::abs(coeffs[k] / coeffs[deg - 1]));
    }
    bound += 1.0;
    std::vector<double> roots;
    const int cells = 1024;
    double t0 = -bound, y0 = eval(t0);
    for (int i = 1; i <= cells; ++i) {
        const double t1 = -bound + 2.0 * bound * i / cells;
        const double y1 = eval(t1);
        if (y0 == 0.0) {
            roots.push_back(t0);
        } else if (y1 != 0.0 && (y0 < 0.0) != (y1 < 0.0)) {
            double lo = t0, hi = t1, ylo = y0;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double ym = eval(mid);
                if (ym == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((ylo < 0.0) != (ym < 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    ylo = ym;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        t0 = t1;
        y0 = y1;
    }
    if (y0 == 0.0) roots.push_back(t0);
    return roots;
}

struct CurveSample {
    double x = 0.0;
    std::vector<double> z;  // AM values of the real branches over x
};

// Samples the curve P(x, y) = 0: real branches y, implicit slope
// p = -Px/Py, and z = y^2/hypot(y, p).
std::vector<CurveSample> sample_curve(const RatPoly& P) {
    const RatPoly Px = P.derivative(Var::x);
    const RatPoly Py = P.derivative(Var::y);
    std::vector<CurveSample> samples;
    const int count = 48;
    for (int i = 0; i < count; ++i) {
        const double x0 = -2.4 + 4.8 * (i + 0.5) / count;
        if (std::abs(x0) < 0.15) continue;
        // Coefficients of P(x0, .) in y.
        const std::vector<RatPoly> cy = P.coefficients_in(Var::y);
        std::vector<double> coeffs(cy.size());
        for (std::size_t k = 0; k < cy.size(); ++k) {
            coeffs[k] = cy[k].eval({x0, 0.0, 0.0, 0.0});
        }
        CurveSample s;
        s.x = x0;
        for (const double y0 : real_roots(coeffs)) {
            const std::array<double, kVarCount> pt{x0, y0, 0.0, 0.0};
            const double py = Py.eval(pt);
            if (std::abs(py) < 1e-9) continue;  // singular branch point
            const double p0 = -Px.eval(pt) / py;
            const double h = std::hypot(y0, p0);
            s.z.push_back(h == 0.0 ? 0.0 : (y0 * y0) / h);
        }
        if (!s.z.empty()) samples.push_back(std::move(s));
    }
    return samples;
}

// A factor survives when it vanishes somewhere on the curve fiber for at
// least three quarters of the sampled x values.
bool vanishes_on_curve(const RatPoly& factor, const std::vector<CurveSample>& samples) {
    std::size_t hits = 0;
    for (const CurveSample& s : samples) {
        double best = 1.0;
        for (const double z0 : s.z) {
            const std::array<double, kVarCount> pt{s.x, 0.0, z0, 0.0};
            const double denom = 1.0 + factor.max_term_magnitude(pt);
            best = std::min(best, std::abs(factor.eval(pt)) / denom);
        }
        if (best <= 1e-9) ++hits;
    }
    return 4 * hits >= 3 * samples.size();
}

}  // namespace

RatPoly resultant(const RatPoly& a, const RatPoly& b, Var v) {
    if (a.is_zero() || b.is_zero()) {
        throw ZeroPolynomialError("resultant: zero polynomial input");
    }
    if (a.degree(v) < 1 || b.degree(v) < 1) {
        throw DegreeError(std::string("resultant: both inputs must have positive degree in ") +
                          kVarNames[static_cast<int>(v)]);
    }
    return bareiss_determinant(sylvester_matrix(a, b, v)).normalized();
}

RatPoly implicit_derivative_relation(const RatPoly& P) {
    if (!P.involves(Var::y)) {
        throw VariableError("implicit_derivative_relation: P does not involve y");
    }
    const RatPoly D = P.derivative(Var::x) + RatPoly::variable(Var::p) * P.derivative(Var::y);
    return D.normalized();
}

RatPoly am_annihilator(const RatPoly& P) {
    if (P.is_zero()) throw ZeroPolynomialError("am_annihilator: zero polynomial input");
    if (!P.involves(Var::y)) throw VariableError("am_annihilator: P does not involve y");
    if (P.involves(Var::z) || P.involves(Var::p)) {
        throw VariableError("am_annihilator: P must involve only x and y");
    }
    if (!gcd(P, P.derivative(Var::y)).is_constant()) {
        throw EliminationError("am_annihilator: P is not squarefree");
    }

    // Polynomialized transform relation z^2 (y^2 + p^2) = y^4 with p = f'.
    const RatPoly y2 = RatPoly::variable(Var::y, 2);
    const RatPoly E = RatPoly::variable(Var::z, 2) * (y2 + RatPoly::variable(Var::p, 2)) -
                      RatPoly::variable(Var::y, 4);
    const RatPoly D = implicit_derivative_relation(P);

    const RatPoly R1 = resultant(E, D, Var::p);
    if (R1.is_zero()) throw EliminationError("am_annihilator: elimination of p collapsed to zero");

    RatPoly A = R1.involves(Var::y) ? resultant(R1, P, Var::y) : R1;
    if (A.is_zero()) throw EliminationError("am_annihilator: elimination of y collapsed to zero");

    // Strip the z-free content, then keep each squarefree multiplicity class
    // that vanishes on the sampled curve.
    if (!A.involves(Var::z)) {
        throw EliminationError("am_annihilator: eliminant is free of z");
    }
    const auto primitive = RatPoly::divide_exact(A, [&] {
        RatPoly cont;
        for (const RatPoly& c : A.coefficients_in(Var::z)) {
            if (c.is_zero()) continue;
            cont = cont.is_zero() ? c.normalized() : gcd(cont, c);
        }
        return cont;
    }());
    A = primitive->normalized();

    std::vector<RatPoly> classes = squarefree_classes(A, Var::z);
    std::erase_if(classes, [](const RatPoly& c) { return c.is_constant(); });
    if (classes.empty()) throw EliminationError("am_annihilator: no z-dependent factor survived");

    const std::vector<CurveSample> samples = sample_curve(P);
    RatPoly out = RatPoly::constant(1);
    std::size_t kept = 0;
    for (const RatPoly& cls : classes) {
        if (samples.size() < 8 || vanishes_on_curve(cls, samples)) {
            out = out * cls;
            ++kept;
        }
    }
    if (kept == 0) {
        throw EliminationError("am_annihilator: no factor vanishes on the curve");
    }
    return out.normalized();
}

double verify_annihilator_on_curve(const RatPoly& A, const RatPoly& P) {
    if (A.involves(Var::y) || A.involves(Var::p)) {
        throw VariableError("verify_annihilator_on_curve: A must involve only x and z");
    }
    const std::vector<CurveSample> samples = sample_curve(P);
    if (samples.empty()) {
        throw EliminationError("verify_annihilator_on_curve: no real branch samples of P");
    }
    double worst = 0.0;
    for (const CurveSample& s : samples) {
        double best = 1e300;
        for (const double z0 : s.z) {
            const std::array<double, kVarCount> pt{s.x, 0.0, z0, 0.0};
            const double denom = 1.0 + A.max_term_magnitude(pt);
            best = std::min(best, std::abs(A.eval(pt)) / denom);
        }
        worst = std::max(worst, best);
    }
    return worst;
}

double verify_annihilator(const RatPoly& A, const Expr& f, double a, double b, std::size_t n) {
    if (n < 8) throw PreconditionError("verify_annihilator: requires n >= 8");
    if (!(a < b)) throw PreconditionError("verify_annihilator: requires a < b");
    if (A.involves(Var::y) || A.involves(Var::p)) {
        throw VariableError("verify_annihilator: A must involve only x and z");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        const double z = am_transform(f, x);
        const std::array<double, kVarCount> pt{x, 0.0, z, 0.0};
        const double denom = 1.0 + A.max_term_magnitude(pt);
        worst = std::max(worst, std::abs(A.eval(pt)) / denom);
    }
    return worst;
}

}  // namespace amtk
