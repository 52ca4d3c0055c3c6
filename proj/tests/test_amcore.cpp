#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "amtk/amcore.hpp"
#include "amtk/errors.hpp"

using namespace amtk;

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kPi = 3.14159265358979323846;

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}
}  // namespace

TEST_CASE("closed forms from the worked examples") {
    CHECK(rel_err(am_transform(parse("1/x"), 1.0), 1.0 / kSqrt2) <= 1e-14);
    CHECK(rel_err(am_transform(parse("x^2"), 1.0), 1.0 / std::sqrt(5.0)) <= 1e-14);
    CHECK(rel_err(am_transform(parse("exp(x)"), 0.0), 1.0 / kSqrt2) <= 1e-14);
    CHECK(am_transform(parse("1"), 17.25) == 1.0);

    // AM(1/x) = 1/sqrt(1+x^2) pointwise.
    const Expr inv = parse("1/x");
    for (double x = 0.5; x <= 10.0; x += 0.173) {
        CHECK(rel_err(am_transform(inv, x), 1.0 / std::hypot(1.0, x)) <= 1e-13);
    }
    // AM(x^a) = x^(a+1)/sqrt(x^2+a^2).
    const Expr cube = parse("x^3");
    for (double x = 0.5; x <= 4.0; x += 0.31) {
        CHECK(rel_err(am_transform(cube, x), std::pow(x, 4) / std::sqrt(x * x + 9.0)) <= 1e-13);
    }
}

TEST_CASE("double zero returns the limit value") {
    CHECK(am_transform(parse("x^2"), 0.0) == 0.0);
    CHECK(am_transform(parse("x^3"), 0.0) == 0.0);
}

TEST_CASE("am_curve sampling") {
    SUBCASE("matches the closed form pointwise") {
        const SampledCurve c = am_curve(parse("1/x"), 0.5, 10.0, 5);
        REQUIRE(c.points.size() == 5);
        CHECK(c.skipped == 0);
        for (const CurvePoint& pt : c.points) {
            CHECK(rel_err(pt.y, 1.0 / std::hypot(1.0, pt.x)) <= 1e-13);
        }
        CHECK(c.points.front().x == 0.5);
        CHECK(c.points.back().x == 10.0);
    }
    SUBCASE("exp(-x) matches exp(-x)/sqrt(2)") {
        const SampledCurve c = am_curve(parse("exp(-x)"), 0.0, 1.0, 3);
        REQUIRE(c.points.size() == 3);
        for (const CurvePoint& pt : c.points) {
            CHECK(rel_err(pt.y, std::exp(-pt.x) / kSqrt2) <= 1e-13);
        }
    }
    SUBCASE("n = 2 gives exactly the endpoints") {
        const SampledCurve c = am_curve(parse("exp(x)"), -1.0, 1.0, 2);
        REQUIRE(c.points.size() == 2);
        CHECK(c.points[0].x == -1.0);
        CHECK(c.points[1].x == 1.0);
    }
    SUBCASE("failed points are skipped and counted") {
        const SampledCurve c = am_curve(parse("log(x)"), -1.0, 1.0, 5);
        CHECK(c.skipped == 3);  // x = -1, -0.5, 0
        REQUIRE(c.points.size() == 2);
        CHECK(c.points[0].x == 0.5);
        const SampledCurve d = am_curve(parse("1/x"), -1.0, 1.0, 3);
        CHECK(d.skipped == 1);
        CHECK(d.points.size() == 2);
        // Overflow produces non-finite values, also skipped.
        const SampledCurve e = am_curve(parse("exp(x^2)"), 0.0, 40.0, 5);
        CHECK(e.skipped > 0);
    }
    SUBCASE("x stays strictly increasing") {
        const SampledCurve c = am_curve(parse("1/x"), -1.0, 1.0, 11);
        for (std::size_t i = 1; i < c.points.size(); ++i) {
            CHECK(c.points[i - 1].x < c.points[i].x);
        }
    }
    CHECK_THROWS_AS(am_curve(parse("x"), 1.0, 0.0, 10), PreconditionError);
    CHECK_THROWS_AS(am_curve(parse("x"), 0.0, 1.0, 1), PreconditionError);
}

TEST_CASE("ratio") {
    CHECK(rel_err(ratio(parse("exp(x)"), 0.37), kSqrt2) <= 1e-14);
    CHECK(rel_err(ratio(parse("exp(x)"), -2.0), kSqrt2) <= 1e-14);
    CHECK(ratio(parse("1"), 5.0) == 1.0);
    CHECK(rel_err(ratio(parse("1/x"), 1.0), kSqrt2) <= 1e-14);
    CHECK_THROWS_AS(ratio(parse("-x"), 1.0), RatioBoundError);
    CHECK_THROWS_AS(ratio(parse("x"), 0.0), RatioBoundError);
    // ratio >= 1 always.
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.2, 3.0);
    const Expr f = parse("exp(sin(x)) + 1");
    for (int i = 0; i < 200; ++i) CHECK(ratio(f, dist(rng)) >= 1.0);
}

TEST_CASE("exp form identity") {
    {
        const ExpFormSides s = am_of_exp_check(parse("x"), 1.0);
        CHECK(rel_err(s.lhs, std::exp(1.0) / kSqrt2) <= 1e-13);
        CHECK(std::abs(s.lhs - s.rhs) <= 1e-12 * std::max(1.0, std::abs(s.rhs)));
    }
    {
        const ExpFormSides s = am_of_exp_check(parse("-x"), 0.0);
        CHECK(rel_err(s.lhs, 1.0 / kSqrt2) <= 1e-13);
        CHECK(std::abs(s.lhs - s.rhs) <= 1e-12 * std::max(1.0, std::abs(s.rhs)));
    }
    {
        const ExpFormSides s = am_of_exp_check(parse("x^2"), 0.5);
        CHECK(std::abs(s.lhs - s.rhs) <= 1e-12 * std::max(1.0, std::abs(s.rhs)));
    }
    // Property over a small pool.
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    for (const char* g : {"sin(x)", "x^2", "atan(x)", "x^3 - x"}) {
        const Expr ge = parse(g);
        for (int i = 0; i < 100; ++i) {
            const ExpFormSides s = am_of_exp_check(ge, dist(rng));
            CHECK(std::abs(s.lhs - s.rhs) <= 1e-12 * std::max(1.0, std::abs(s.rhs)));
        }
    }
}

TEST_CASE("scaling covariance and sign invariance") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> xdist(0.4, 2.5);
    std::uniform_real_distribution<double> cdist(0.1, 8.0);
    const std::vector<std::string> pool{"1/x", "exp(x)", "sin(x) + 2", "x^2 + 1", "sqrt(x + 2)"};
    for (const std::string& text : pool) {
        const Expr f = parse(text);
        for (int i = 0; i < 100; ++i) {
            const double x = xdist(rng);
            const double c = cdist(rng) * (i % 2 ? 1.0 : -1.0);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", c);
            const Expr scaled = parse(std::string(buf) + "*(" + text + ")");
            CHECK(rel_err(am_transform(scaled, x), std::abs(c) * am_transform(f, x)) <= 1e-12);
            const Expr negated = parse("-(" + text + ")");
            CHECK(am_transform(negated, x) == am_transform(f, x));
        }
    }
}

TEST_CASE("envelope bound AM <= |f| with equality only at critical points") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> xdist(0.3, 3.0);
    for (const char* text : {"1/x", "exp(x)", "sin(x) + 2", "x^2 + 1"}) {
        const Expr f = parse(text);
        for (int i = 0; i < 200; ++i) {
            const double x = xdist(rng);
            const Jet2 j = eval_jet2(f, x);
            const double am = am_transform(f, x);
            CHECK(am >= 0.0);
            CHECK(am <= std::abs(j.v) * (1.0 + 1e-14));
            if (std::abs(j.d1) > 1e-5 * std::max(1.0, std::abs(j.v))) {
                CHECK(am < std::abs(j.v) * (1.0 - 1e-11));
            }
        }
    }
    // Equality at a critical point: sin(x)+2 at pi/2.
    const double am = am_transform(parse("sin(x) + 2"), kPi / 2.0);
    CHECK(rel_err(am, 3.0) <= 1e-12);
}

TEST_CASE("non-uniqueness witness: 1/sin(x) and 1 share their transform") {
    const Expr f = parse("1/sin(x)");
    const Expr one = parse("1");
    for (int i = 0; i < 500; ++i) {
        const double x = 0.1 + (kPi - 0.2) * i / 499.0;
        CHECK(std::abs(am_transform(f, x) - 1.0) <= 1e-12);
        CHECK(am_transform(one, x) == 1.0);
    }
}
