#include "amtk/aminverse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "amtk/errors.hpp"

namespace amtk {
namespace {

constexpr double kBarrierTol = 1e-12;  // accepted-point radicand floor
constexpr int kTrendSamples = 64;      // g' samples per monotonicity check

enum class Trend { decreasing, increasing };

// Samples g' on [a, b] and classifies the trend. Throws on g <= 0 or a
// sign change of g'. Samples whose |g'| sits below 1e-9 of the largest
// sampled magnitude carry no sign evidence; piece endpoints at critical
// points of g land there with noise-level signs. A flat g classifies as
// decreasing, which routes it to the left-to-right minus branch where the
// ODE is a fixed point.
Trend classify_trend(const Expr& g, double a, double b) {
    std::array<double, kTrendSamples> deriv{};
    double scale = 0.0;
    for (int i = 0; i < kTrendSamples; ++i) {
        const double x = a + (b - a) * i / (kTrendSamples - 1);
        const Jet2 j = eval_jet2(g, x);
        if (!(j.v > 0.0)) {
            throw NonpositiveError("invert: g must be positive on the interval, g(" +
                                   std::to_string(x) + ") = " + std::to_string(j.v));
        }
        deriv[i] = j.d1;
        scale = std::max(scale, std::abs(j.d1));
    }
    bool has_pos = false, has_neg = false;
    for (const double d : deriv) {
        if (d > 1e-9 * scale) has_pos = true;
        if (d < -1e-9 * scale) has_neg = true;
    }
    if (has_pos && has_neg) {
        throw NonmonotoneError("invert: g is not monotone on [" + std::to_string(a) +
                               ", " + std::to_string(b) + "]");
    }
    return has_pos ? Trend::increasing : Trend::decreasing;
}

double radicand(double f, double gv) {
    const double q = f / gv;
    return q * q - 1.0;
}

InverseSegment integrate_piece(const Expr& g, double a, double b, double f0, double step,
                               Trend trend) {
    const Branch branch = trend == Trend::decreasing ? Branch::minus : Branch::plus;
    const Direction direction =
        trend == Trend::decreasing ? Direction::left_to_right : Direction::right_to_left;
    const double start = trend == Trend::decreasing ? a : b;
    const double sign = branch == Branch::minus ? -1.0 : 1.0;

    const double g_start = eval_value(g, start);
    if (radicand(f0, g_start) < -kBarrierTol) {
        throw InitialConditionError("invert: initial value f0 = " + std::to_string(f0) +
                                    " lies below g(" + std::to_string(start) +
                                    ") = " + std::to_string(g_start));
    }

    const auto rhs = [&](double x, double f) {
        const double gv = eval_value(g, x);
        if (!(gv > 0.0)) {
            throw NonpositiveError("invert: g(" + std::to_string(x) + ") = " +
                                   std::to_string(gv) + " during integration");
        }
        // Stage evaluations may dip below the barrier; treat them as on it.
        const double rad = std::max(radicand(f, gv), 0.0);
        return sign * f * std::sqrt(rad);
    };

    const std::size_t n = static_cast<std::size_t>(std::ceil((b - a) / step));
    const double h = ((b - a) / static_cast<double>(n)) *
                     (direction == Direction::left_to_right ? 1.0 : -1.0);

    InverseSegment seg;
    seg.branch = branch;
    seg.direction = direction;
    seg.curve.points.reserve(n + 1);
    seg.curve.points.push_back({start, f0});

    // Accepted points may undershoot the barrier by the one-step bias of the
    // clamped stages, O(h^2) while the solution hugs f = g near a seam; such
    // points are projected back onto the barrier. Anything deeper is a
    // genuine escape.
    const double barrier_slack = kBarrierTol + 100.0 * std::abs(h) * std::abs(h);

    double f = f0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = start + h * static_cast<double>(i);
        const double x1 = (i + 1 == n) ? (direction == Direction::left_to_right ? b : a)
                                       : start + h * static_cast<double>(i + 1);
        const double k1 = rhs(x, f);
        const double k2 = rhs(x + 0.5 * h, f + 0.5 * h * k1);
        const double k3 = rhs(x + 0.5 * h, f + 0.5 * h * k2);
        const double k4 = rhs(x1, f + h * k3);
        f += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double gv1 = eval_value(g, x1);
        const double rad = radicand(f, gv1);
        if (rad < 0.0) {
            if (rad < -barrier_slack) {
                throw RadicandError("invert: solution fell below the barrier f >= g at x = " +
                                    std::to_string(x1) + " (radicand " + std::to_string(rad) +
                                    ")");
            }
            f = gv1;
        }
        seg.curve.points.push_back({x1, f});
    }
    if (direction == Direction::right_to_left) {
        std::reverse(seg.curve.points.begin(), seg.curve.points.end());
    }
    return seg;
}

double fd5_derivative(const std::vector<CurvePoint>& pts, std::size_t i, double h) {
    return (pts[i - 2].y - 8.0 * pts[i - 1].y + 8.0 * pts[i + 1].y - pts[i + 2].y) / (12.0 * h);
}

}  // namespace

const char* to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

const char* to_string(Direction d) {
    return d == Direction::left_to_right ? "left_to_right" : "right_to_left";
}

InverseSolution invert_monotone(const Expr& g, double a, double b, double f0, double step) {
    if (!(a < b)) throw PreconditionError("invert_monotone: requires a < b");
    if (!(step > 0.0)) throw PreconditionError("invert_monotone: requires step > 0");
    const Trend trend = classify_trend(g, a, b);
    InverseSolution sol;
    sol.segments.push_back(integrate_piece(g, a, b, f0, step, trend));
    sol.roundtrip_error = verify_roundtrip(g, sol);
    return sol;
}

InverseSolution weak_invert(const Expr& g, double a, double b, double step) {
    if (!(a < b)) throw PreconditionError("weak_invert: requires a < b");
    if (!(step > 0.0)) throw PreconditionError("weak_invert: requires step > 0");

    // Locate the critical points of g by a sign scan of g' at resolution
    // <= step, refined by bisection. A derivative that is exactly zero on a
    // grid node is itself the critical point.
    const std::size_t cells = std::min<std::size_t>(
        std::size_t{1} << 20,
        static_cast<std::size_t>(std::ceil((b - a) / std::min(step, (b - a) / 64.0))));
    std::vector<double> criticals;
    double x0 = a;
    double d0 = eval_jet2(g, x0).d1;
    for (std::size_t i = 1; i <= cells; ++i) {
        const double x1 = (i == cells) ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(cells);
        const double d1 = eval_jet2(g, x1).d1;
        if (d0 == 0.0) {
            criticals.push_back(x0);
        } else if (d1 != 0.0 && (d0 < 0.0) != (d1 < 0.0)) {
            double lo = x0, hi = x1, dlo = d0;
            while (hi - lo > 1e-12 * std::max(1.0, std::abs(hi))) {
                const double mid = 0.5 * (lo + hi);
                const double dm = eval_jet2(g, mid).d1;
                if (dm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((dlo < 0.0) != (dm < 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    dlo = dm;
                }
            }
            criticals.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        d0 = d1;
    }

    std::vector<double> splits{a};
    for (const double c : criticals) {
        if (c <= a || c >= b) continue;
        if (c - splits.back() > 1e-9 * std::max(1.0, std::abs(c))) splits.push_back(c);
    }
    splits.push_back(b);

    for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
        if (splits[i + 1] - splits[i] < step) {
            throw UnresolvedCriticalPointError(
                "weak_invert: critical points of g at " + std::to_string(splits[i]) + " and " +
                std::to_string(splits[i + 1]) + " are closer than one integration step");
        }
    }

    InverseSolution sol;
    for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
        const double lo = splits[i], hi = splits[i + 1];
        const Trend trend = classify_trend(g, lo, hi);
        const double start = trend == Trend::decreasing ? lo : hi;
        const double f0 = eval_value(g, start);
        sol.segments.push_back(integrate_piece(g, lo, hi, f0, step, trend));
    }
    sol.roundtrip_error = verify_roundtrip(g, sol);
    return sol;
}

SampledCurve ratio_invert(const Expr& r, double a, double b, Branch sign, std::size_t n) {
    return ratio_invert_scaled(r, a, b, sign, n, 1.0);
}

SampledCurve ratio_invert_scaled(const Expr& r, double a, double b, Branch sign,
                                 std::size_t n, double scale) {
    if (!(a < b)) throw PreconditionError("ratio_invert: requires a < b");
    if (n < 2) throw PreconditionError("ratio_invert: requires n >= 2");

    const auto integrand = [&](double t) {
        const double rv = eval_value(r, t);
        if (!(rv > 1.0)) {
            throw RatioBoundError("ratio_invert: r(" + std::to_string(t) + ") = " +
                                  std::to_string(rv) + " is not > 1");
        }
        return std::sqrt(rv * rv - 1.0);
    };

    // Adaptive Simpson with Richardson correction on each refinement.
    struct Simpson {
        const decltype(integrand)& f;
        double integrate(double lo, double hi, double flo, double fmid, double fhi,
                         double whole, double eps, int depth) const {
            const double mid = 0.5 * (lo + hi);
            const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
            const double flm = f(lmid), frm = f(rmid);
            const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
            const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
            const double delta = left + right - whole;
            if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
            if (depth <= 0) {
                throw QuadratureError("ratio_invert: quadrature failed to converge on [" +
                                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
            }
            return integrate(lo, mid, flo, flm, fmid, left, 0.5 * eps, depth - 1) +
                   integrate(mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth - 1);
        }
        double run(double lo, double hi, double eps) const {
            const double mid = 0.5 * (lo + hi);
            const double flo = f(lo), fmid = f(mid), fhi = f(hi);
            const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
            return integrate(lo, hi, flo, fmid, fhi, whole, eps, 40);
        }
    };
    const Simpson quad{integrand};

    const double s = (sign == Branch::plus ? 1.0 : -1.0) * scale;
    SampledCurve curve;
    curve.label = "ratio_inverse";
    curve.points.reserve(n);
    curve.points.push_back({a, 1.0});  // exp(0)
    double acc = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        const double xp = a + (b - a) * static_cast<double>(j - 1) / static_cast<double>(n - 1);
        const double xj = a + (b - a) * static_cast<double>(j) / static_cast<double>(n - 1);
        acc += quad.run(xp, xj, 1e-13 * (xj - xp) / (b - a) + 1e-15);
        curve.points.push_back({xj, std::exp(s * acc)});
    }
    return curve;
}

double verify_roundtrip(const Expr& g, const InverseSolution& sol) {
    if (sol.segments.empty()) throw PreconditionError("verify_roundtrip: empty solution");
    double sup = 0.0;
    for (const InverseSegment& seg : sol.segments) {
        const std::vector<CurvePoint>& pts = seg.curve.points;
        if (pts.size() < 5) continue;
        const double h = pts[1].x - pts[0].x;
        for (std::size_t i = 2; i + 2 < pts.size(); ++i) {
            const double d1 = fd5_derivative(pts, i, h);
            const double fv = pts[i].y;
            const double am = (fv * fv) / std::hypot(fv, d1);
            sup = std::max(sup, std::abs(am - eval_value(g, pts[i].x)));
        }
    }
    return sup;
}

double verify_ratio(const Expr& r, const SampledCurve& f) {
    const std::vector<CurvePoint>& pts = f.points;
    if (pts.size() < 5) throw PreconditionError("verify_ratio: needs at least 5 samples");
    const double h = pts[1].x - pts[0].x;
    double sup = 0.0;
    for (std::size_t i = 2; i + 2 < pts.size(); ++i) {
        const double d1 = fd5_derivative(pts, i, h);
        const double est = std::hypot(1.0, d1 / pts[i].y);
        sup = std::max(sup, std::abs(est - eval_value(r, pts[i].x)));
    }
    return sup;
}

}  // namespace amtk
