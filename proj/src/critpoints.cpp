#include "amtk/critpoints.hpp"

#include <algorithm>
#include <cmath>

#include "amtk/amcore.hpp"
#include "amtk/errors.hpp"

namespace amtk {
namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kClassifyTol = 1e-10;

struct Modulated {
    const Expr& f;
    double phase;

    // F = f(x) sin(x+k); returns (F, F', F'').
    Jet2 operator()(double x) const {
        const Jet2 j = eval_jet2(f, x);
        const double s = std::sin(x + phase);
        const double c = std::cos(x + phase);
        return {j.v * s,
                j.v * c + j.d1 * s,
                (j.d2 - j.v) * s + 2.0 * j.d1 * c};
    }
};

double refine_root(const Modulated& F, double lo, double hi, double glo) {
    // Bisection down to a width of 1e-13*max(1,|x|).
    while (hi - lo > 1e-13 * std::max(1.0, std::abs(0.5 * (lo + hi)))) {
        const double mid = 0.5 * (lo + hi);
        const double gmid = F(mid).d1;
        if (gmid == 0.0) return mid;
        if ((glo < 0.0) != (gmid < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            glo = gmid;
        }
    }
    // One guarded Newton polish using F''.
    double x = 0.5 * (lo + hi);
    const Jet2 Fx = F(x);
    if (Fx.d2 != 0.0) {
        const double xn = x - Fx.d1 / Fx.d2;
        if (xn >= lo && xn <= hi && std::abs(F(xn).d1) <= std::abs(Fx.d1)) x = xn;
    }
    return x;
}

CriticalPoint make_point(const Expr& f, const Modulated& F, double x) {
    const Jet2 Fx = F(x);
    CriticalPoint cp;
    cp.x = x;
    cp.value = Fx.v;
    cp.deriv_residual = std::abs(Fx.d1);
    if (Fx.d2 < -kClassifyTol) cp.kind = ExtremumKind::maximum;
    else if (Fx.d2 > kClassifyTol) cp.kind = ExtremumKind::minimum;
    else cp.kind = ExtremumKind::unclassified;
    cp.envelope_residual = std::abs(std::abs(cp.value) - am_transform(f, x));
    return cp;
}

}  // namespace

const char* to_string(ExtremumKind k) {
    switch (k) {
        case ExtremumKind::maximum: return "max";
        case ExtremumKind::minimum: return "min";
        default: return "unclassified";
    }
}

std::vector<CriticalPoint> find_critical_points(const Expr& f, double phase,
                                                double a, double b,
                                                std::size_t grid) {
    if (!(a < b)) throw PreconditionError("find_critical_points: requires a < b");
    if (grid < 16) throw PreconditionError("find_critical_points: requires grid >= 16");

    const Modulated F{f, phase};
    const double h = (b - a) / static_cast<double>(grid);

    std::vector<CriticalPoint> out;
    double x0 = a;
    double g0 = F(x0).d1;
    for (std::size_t i = 0; i < grid; ++i) {
        const double x1 = (i + 1 == grid) ? b : a + h * static_cast<double>(i + 1);
        const double g1 = F(x1).d1;
        if (g0 == 0.0) {
            // Root exactly on a node; the previous cell cannot also have
            // claimed it since its endpoint sign test uses strict products.
            out.push_back(make_point(f, F, x0));
        } else if (g1 != 0.0 && (g0 < 0.0) != (g1 < 0.0)) {
            out.push_back(make_point(f, F, refine_root(F, x0, x1, g0)));
        }
        x0 = x1;
        g0 = g1;
    }
    if (g0 == 0.0) out.push_back(make_point(f, F, b));
    return out;
}

CertificateReport envelope_certificate(const Expr& f, std::span<const double> phases,
                                       double a, double b, std::size_t grid) {
    if (phases.empty()) throw PreconditionError("envelope_certificate: requires at least one phase");
    CertificateReport report;
    for (const double k : phases) {
        const std::vector<CriticalPoint> pts = find_critical_points(f, k, a, b, grid);
        PhaseReport pr;
        pr.phase = k;
        pr.points = pts.size();
        for (const CriticalPoint& cp : pts) {
            pr.max_envelope_residual = std::max(pr.max_envelope_residual, cp.envelope_residual);
        }
        report.total_points += pts.size();
        report.max_envelope_residual = std::max(report.max_envelope_residual, pr.max_envelope_residual);
        report.phases.push_back(pr);
    }
    return report;
}

std::vector<SincRow> sinc_maxima(std::size_t n) {
    if (n < 1) throw PreconditionError("sinc_maxima: requires n >= 1");
    std::vector<SincRow> rows;
    rows.push_back({0.0, 1.0, 1.0});

    // Positive critical points of sinc are the fixed points of tan(x) = x,
    // one per branch interval (m*pi, m*pi + pi/2); bracket with the
    // pole-free form u(x) = x cos x - sin x and keep maxima only.
    const Expr inv_x = parse("1/x");
    const Modulated sinc{inv_x, 0.0};
    const double pi = kTwoPi / 2.0;
    for (std::size_t m = 1; rows.size() < n; ++m) {
        const double lo = static_cast<double>(m) * pi;
        const double hi = lo + pi / 2.0;
        const double x = refine_root(sinc, lo, hi, sinc(lo).d1);
        const Jet2 Fx = sinc(x);
        if (Fx.d2 < 0.0) {
            rows.push_back({x, Fx.v, 1.0 / std::hypot(1.0, x)});
        }
    }
    return rows;
}

std::size_t default_grid(double a, double b) {
    const double cells = std::ceil((b - a) / kTwoPi * 256.0);
    return std::max<std::size_t>(16, static_cast<std::size_t>(cells));
}

}  // namespace amtk
