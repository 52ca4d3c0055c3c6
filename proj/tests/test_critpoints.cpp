#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "amtk/amcore.hpp"
#include "amtk/critpoints.hpp"
#include "amtk/errors.hpp"

using namespace amtk;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent oracle: bisection on tan(x) - x over a bracket interior to one
// branch (kept clear of the pole at the right end).
double tan_fixed_point(double lo, double hi) {
    lo += 1e-3;
    hi -= 1e-3;
    auto h = [](double t) { return std::tan(t) - t; };
    double flo = h(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = h(mid);
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

// F_k' evaluated directly, the quantity whose roots are reported.
double signal_derivative(const Expr& f, double k, double x) {
    const Jet2 j = eval_jet2(f, x);
    return j.v * std::cos(x + k) + j.d1 * std::sin(x + k);
}

}  // namespace

TEST_CASE("critical points of sinc are the tan fixed points") {
    const Expr f = parse("1/x");
    // Fixed points of tan below 20: 4.49, 7.73, 10.90, 14.07, 17.22.
    const auto pts = find_critical_points(f, 0.0, 0.1, 20.0, 2000);
    REQUIRE(pts.size() == 5);

    const double oracle1 = tan_fixed_point(kPi, 1.5 * kPi);
    CHECK(std::abs(oracle1 - 4.493409457909064) <= 1e-10);
    CHECK(std::abs(pts[0].x - oracle1) <= 1e-10);
    CHECK(std::abs(pts[1].x - tan_fixed_point(2.0 * kPi, 2.5 * kPi)) <= 1e-10);

    for (const CriticalPoint& cp : pts) {
        CHECK(cp.deriv_residual <= 1e-12);
        // F_0 = sinc here, so the critical value matches +-1/sqrt(1+x^2).
        CHECK(std::abs(std::abs(cp.value) - 1.0 / std::hypot(1.0, cp.x)) <= 1e-12);
        CHECK(cp.envelope_residual <= 1e-12);
    }
    // Minima and maxima alternate starting from a minimum.
    CHECK(pts[0].kind == ExtremumKind::minimum);
    CHECK(pts[1].kind == ExtremumKind::maximum);
    CHECK(pts[2].kind == ExtremumKind::minimum);
}

TEST_CASE("constant f reduces to the extrema of sin") {
    const auto pts = find_critical_points(parse("1"), 0.0, 0.1, 7.0, 512);
    REQUIRE(pts.size() == 2);
    CHECK(std::abs(pts[0].x - kPi / 2.0) <= 1e-12);
    CHECK(std::abs(pts[0].value - 1.0) <= 1e-13);
    CHECK(pts[0].kind == ExtremumKind::maximum);
    CHECK(std::abs(pts[1].x - 1.5 * kPi) <= 1e-12);
    CHECK(std::abs(pts[1].value + 1.0) <= 1e-13);
    CHECK(pts[1].kind == ExtremumKind::minimum);
}

TEST_CASE("exponential critical values sit on exp(x)/sqrt(2)") {
    const Expr f = parse("exp(x)");
    const auto pts = find_critical_points(f, 0.0, 0.0, 7.0, 1024);
    CHECK(pts.size() >= 2);
    for (const CriticalPoint& cp : pts) {
        CHECK(std::abs(std::abs(cp.value) - std::exp(cp.x) / std::sqrt(2.0)) <= 1e-9);
    }
    // Classification agrees with the sign of F'' recomputed directly.
    for (const CriticalPoint& cp : pts) {
        const Jet2 j = eval_jet2(f, cp.x);
        const double second = (j.d2 - j.v) * std::sin(cp.x) + 2.0 * j.d1 * std::cos(cp.x);
        if (cp.kind == ExtremumKind::maximum) CHECK(second < 0.0);
        if (cp.kind == ExtremumKind::minimum) CHECK(second > 0.0);
    }
}

TEST_CASE("bracket validity between consecutive points") {
    const Expr f = parse("exp(x)");
    const auto pts = find_critical_points(f, 0.0, 0.0, 7.0, 1024);
    REQUIRE(pts.size() >= 2);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        int changes = 0;
        const int n = 200;
        double prev = signal_derivative(f, 0.0, pts[i].x + 1e-7);
        for (int j = 1; j <= n; ++j) {
            const double x = pts[i].x + 1e-7 +
                             (pts[i + 1].x - pts[i].x - 2e-7) * static_cast<double>(j) / n;
            const double cur = signal_derivative(f, 0.0, x);
            if ((prev < 0.0) != (cur < 0.0)) ++changes;
            prev = cur;
        }
        CHECK(changes == 0);  // roots only at the reported points
    }
}

TEST_CASE("coarse grid finds every well-separated root of a brute-force scan") {
    // Independent oracle: plain sign scan of F' on a 50x finer grid plus
    // naive bisection, sharing nothing with the implementation under test.
    const Expr f = parse("1/x");
    const double k = 0.3;
    const double a = 0.5, b = 30.0;
    const std::size_t grid = 128;

    std::vector<double> brute;
    const std::size_t fine_cells = grid * 50;
    double x0 = a, g0 = signal_derivative(f, k, x0);
    for (std::size_t i = 1; i <= fine_cells; ++i) {
        const double x1 = a + (b - a) * static_cast<double>(i) / static_cast<double>(fine_cells);
        const double g1 = signal_derivative(f, k, x1);
        if (g0 != 0.0 && g1 != 0.0 && (g0 < 0.0) != (g1 < 0.0)) {
            double lo = x0, hi = x1, glo = g0;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm = signal_derivative(f, k, mid);
                if ((glo < 0.0) != (gm < 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    glo = gm;
                }
            }
            brute.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        g0 = g1;
    }

    const auto coarse = find_critical_points(f, k, a, b, grid);
    REQUIRE(coarse.size() == brute.size());
    const double sep = 2.0 * (b - a) / static_cast<double>(grid);
    for (std::size_t i = 0; i < brute.size(); ++i) {
        double nearest = 1e300;
        if (i > 0) nearest = brute[i] - brute[i - 1];
        if (i + 1 < brute.size()) nearest = std::min(nearest, brute[i + 1] - brute[i]);
        if (nearest <= sep) continue;
        bool found = false;
        for (const CriticalPoint& cp : coarse) {
            if (std::abs(cp.x - brute[i]) <= 1e-9) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("a root exactly on a grid node is reported once") {
    // F = x sin(x) has F'(0) = 0 exactly in floating point.
    const auto pts = find_critical_points(parse("x"), 0.0, -1.0, 1.0, 16);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].x == 0.0);
    CHECK(pts[0].value == 0.0);
    CHECK(pts[0].kind == ExtremumKind::minimum);
    CHECK(pts[0].deriv_residual == 0.0);
}

TEST_CASE("phase invariance certificate") {
    SUBCASE("1/x over three phases") {
        const std::vector<double> phases{0.0, 0.7, 2.1};
        const auto report = envelope_certificate(parse("1/x"), phases, 0.5, 30.0,
                                                 default_grid(0.5, 30.0));
        CHECK(report.phases.size() == 3);
        CHECK(report.max_envelope_residual <= 1e-8);
        CHECK(report.total_points > 20);
        // Deterministic: repeat run gives identical output.
        const auto again = envelope_certificate(parse("1/x"), phases, 0.5, 30.0,
                                                default_grid(0.5, 30.0));
        CHECK(again.max_envelope_residual == report.max_envelope_residual);
        CHECK(again.total_points == report.total_points);
    }
    SUBCASE("constant f") {
        const std::vector<double> phases{0.3};
        const auto report = envelope_certificate(parse("1"), phases, 0.0, 7.0, 512);
        CHECK(report.max_envelope_residual <= 1e-12);
    }
    SUBCASE("f = x against the alpha = 1 closed form") {
        const std::vector<double> phases{0.0, 1.0};
        const auto report = envelope_certificate(parse("x"), phases, 0.5, 20.0,
                                                 default_grid(0.5, 20.0));
        CHECK(report.max_envelope_residual <= 1e-8);
        // Independent closed form x^2/sqrt(x^2+1) at each point.
        const Expr f = parse("x");
        for (const double k : phases) {
            for (const CriticalPoint& cp :
                 find_critical_points(f, k, 0.5, 20.0, default_grid(0.5, 20.0))) {
                const double closed = cp.x * cp.x / std::hypot(cp.x, 1.0);
                CHECK(std::abs(std::abs(cp.value) - closed) <= 1e-8);
            }
        }
    }
}

TEST_CASE("sinc maxima table") {
    SUBCASE("first row is the removable singularity") {
        const auto rows = sinc_maxima(1);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].x == 0.0);
        CHECK(rows[0].sinc == 1.0);
        CHECK(rows[0].envelope == 1.0);
    }
    SUBCASE("second row against the independent oracle") {
        const auto rows = sinc_maxima(2);
        REQUIRE(rows.size() == 2);
        const double oracle = tan_fixed_point(2.0 * kPi, 2.5 * kPi);
        CHECK(std::abs(oracle - 7.725251836937707) <= 1e-9);
        CHECK(std::abs(rows[1].x - oracle) <= 1e-9);
        CHECK(rows[1].sinc == doctest::Approx(0.12837455352589914).epsilon(1e-10));
        CHECK(std::abs(rows[1].sinc - rows[1].envelope) <= 1e-12);
    }
    SUBCASE("ten rows: identity and strict decrease") {
        const auto rows = sinc_maxima(10);
        REQUIRE(rows.size() == 10);
        for (const SincRow& row : rows) {
            CHECK(std::abs(std::abs(row.sinc) - row.envelope) <= 1e-10);
            CHECK(row.sinc > 0.0);  // maxima of sinc are positive
        }
        for (std::size_t i = 1; i < rows.size(); ++i) {
            CHECK(rows[i].envelope < rows[i - 1].envelope);
        }
        // Maxima live in the even branch intervals: x_i ~ (2i + 1/2)pi.
        CHECK(rows[1].x > 2.0 * kPi);
        CHECK(rows[1].x < 2.5 * kPi);
        CHECK(rows[2].x > 4.0 * kPi);
        CHECK(rows[2].x < 4.5 * kPi);
    }
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(find_critical_points(parse("x"), 0.0, 1.0, 0.5, 100), PreconditionError);
    CHECK_THROWS_AS(find_critical_points(parse("x"), 0.0, 0.0, 1.0, 8), PreconditionError);
    const std::vector<double> none;
    CHECK_THROWS_AS(envelope_certificate(parse("x"), none, 0.0, 1.0, 64), PreconditionError);
    CHECK_THROWS_AS(sinc_maxima(0), PreconditionError);
    CHECK_THROWS_AS(find_critical_points(parse("log(x)"), 0.0, -2.0, -1.0, 64), DomainError);
}

TEST_CASE("default grid density") {
    CHECK(default_grid(0.0, 2.0 * kPi) == 256);
    CHECK(default_grid(0.0, 4.0 * kPi) == 512);
    CHECK(default_grid(0.0, 0.01) == 16);
}
