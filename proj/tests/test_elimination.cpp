#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "amtk/elimination.hpp"
#include "amtk/errors.hpp"
#include "amtk/expr.hpp"
#include "amtk/ratpoly.hpp"

using namespace amtk;

namespace {

const RatPoly X = RatPoly::variable(Var::x);
const RatPoly Y = RatPoly::variable(Var::y);
const RatPoly Z = RatPoly::variable(Var::z);
const RatPoly P_ = RatPoly::variable(Var::p);
const RatPoly One = RatPoly::constant(1);

RatPoly random_poly_y(std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<unsigned> expd(0, 2);
    for (;;) {
        RatPoly acc;
        for (int t = 0; t < 4; ++t) {
            const int c = coeff(rng);
            if (c == 0) continue;
            acc += RatPoly::constant(c) * RatPoly::variable(Var::x, expd(rng)) *
                   RatPoly::variable(Var::y, expd(rng));
        }
        if (acc.degree(Var::y) >= 1) return acc;
    }
}

}  // namespace

TEST_CASE("resultant evaluation property") {
    // Res_y(y - c(x), P) = +-P(x, c(x)); with P = y^2 - x, c = 1 this is 1 - x.
    const RatPoly r = resultant(Y - One, Y * Y - X, Var::y);
    CHECK((r == X - One || r == One - X));
    CHECK(r == (X - One));  // content normalization fixes the sign

    const RatPoly r2 = resultant(X * Y - One, Y * Y - One, Var::y);
    CHECK(r2 == X * X - One);
}

TEST_CASE("resultant of a polynomial with itself vanishes") {
    const RatPoly q = Y * Y - X;
    CHECK(resultant(q, q, Var::y).is_zero());
    CHECK(resultant(X * Y - One, (X * Y - One) * (Y + X), Var::y).is_zero());
}

TEST_CASE("resultant multiplicativity after normalization") {
    std::mt19937 rng(4242);
    int checked = 0;
    while (checked < 60) {
        const RatPoly p = random_poly_y(rng);
        const RatPoly q = random_poly_y(rng);
        const RatPoly r = random_poly_y(rng);
        const RatPoly lhs = resultant(p * q, r, Var::y);
        const RatPoly rhs = (resultant(p, r, Var::y) * resultant(q, r, Var::y)).normalized();
        if (lhs.is_zero()) {
            CHECK(rhs.is_zero());
        } else {
            CHECK(lhs == rhs);
        }
        ++checked;
    }
}

TEST_CASE("shared factor forces a zero resultant, coprime inputs do not") {
    std::mt19937 rng(1234);
    for (int i = 0; i < 40; ++i) {
        const RatPoly common = Y - RatPoly::constant(i % 5) * X;
        const RatPoly p = common * random_poly_y(rng);
        const RatPoly q = common * random_poly_y(rng);
        CHECK(resultant(p, q, Var::y).is_zero());
    }
    CHECK(!resultant(Y - X, Y + X + One, Var::y).is_zero());
}

TEST_CASE("resultant input validation") {
    CHECK_THROWS_AS(resultant(RatPoly(), Y, Var::y), ZeroPolynomialError);
    CHECK_THROWS_AS(resultant(Y, RatPoly(), Var::y), ZeroPolynomialError);
    CHECK_THROWS_AS(resultant(X, Y, Var::y), DegreeError);
    CHECK_THROWS_AS(resultant(Y, Y, Var::x), DegreeError);
}

TEST_CASE("implicit derivative relation") {
    CHECK(implicit_derivative_relation(X * Y - One) == X * P_ + Y);
    CHECK(implicit_derivative_relation(Y * Y - X) == RatPoly::constant(2) * Y * P_ - One);
    CHECK(implicit_derivative_relation(Y - X) == P_ - One);
    CHECK_THROWS_AS(implicit_derivative_relation(X * X - One), VariableError);
}

TEST_CASE("annihilator of AM(1/x)") {
    const RatPoly A = am_annihilator(parse_poly("x*y - 1"));
    const RatPoly expected = Z * Z * (One + X * X) - One;
    // Exactly divisible by the closed-form annihilator; here it is equal.
    CHECK(RatPoly::divide_exact(A, expected.normalized()).has_value());
    CHECK(A == expected.normalized());
    CHECK(verify_annihilator(A, parse("1/x"), 0.5, 5.0, 32) <= 1e-12);
}

TEST_CASE("annihilator of AM(x)") {
    const RatPoly A = am_annihilator(parse_poly("y - x"));
    const RatPoly expected = (Z * Z * (X * X + One) - X.pow(4)).normalized();
    CHECK(RatPoly::divide_exact(A, expected).has_value());
    CHECK(A == expected);
    CHECK(verify_annihilator(A, parse("x"), 0.5, 5.0, 32) <= 1e-12);
}

TEST_CASE("annihilator of a constant function") {
    const RatPoly A = am_annihilator(parse_poly("y - 1"));
    CHECK(A == (Z * Z - One));
    CHECK(verify_annihilator(A, parse("1"), -1.0, 1.0, 16) == 0.0);
}

TEST_CASE("annihilator of AM(sqrt(x)) exercises the squarefree reduction") {
    // The raw eliminant appears squared; the result must be reduced.
    const RatPoly A = am_annihilator(parse_poly("y^2 - x"));
    const RatPoly expected =
        (RatPoly::constant(4) * X * X * Z * Z + Z * Z - RatPoly::constant(4) * X.pow(3))
            .normalized();
    CHECK(A == expected);
    CHECK(verify_annihilator(A, parse("sqrt(x)"), 0.5, 3.0, 32) <= 1e-12);
}

TEST_CASE("annihilator of AM(sqrt(x^3+1)) on a two-branch cubic curve") {
    const RatPoly A = am_annihilator(parse_poly("y^2 - x^3 - 1"));
    // Eliminant derived independently with a computer algebra system.
    const RatPoly expected = parse_poly(
        "4*x^9 - 4*x^6*z^2 + 12*x^6 - 9*x^4*z^2 - 8*x^3*z^2 + 12*x^3 - 4*z^2 + 4");
    CHECK(A == expected.normalized());
    CHECK(verify_annihilator(A, parse("sqrt(x^3 + 1)"), 0.5, 2.0, 32) <= 1e-12);
}

TEST_CASE("annihilator of AM(sqrt(2)/x)") {
    const RatPoly A = am_annihilator(parse_poly("x^2*y^2 - 2"));
    CHECK(A == parse_poly("x^2*z^2 + z^2 - 2"));
    CHECK(verify_annihilator(A, parse("sqrt(2)/x"), 0.5, 4.0, 32) <= 1e-12);
}

TEST_CASE("verify_annihilator residuals") {
    const RatPoly good = Z * Z * (One + X * X) - One;
    CHECK(verify_annihilator(good, parse("1/x"), 0.5, 5.0, 32) <= 1e-12);
    CHECK(verify_annihilator(Z - One, parse("1"), -2.0, 2.0, 16) == 0.0);
    const RatPoly bad = Z * Z - X;
    CHECK(verify_annihilator(bad, parse("1/x"), 0.5, 5.0, 32) > 1e-2);
    CHECK_THROWS_AS(verify_annihilator(good, parse("1/x"), 0.5, 5.0, 4), PreconditionError);
    CHECK_THROWS_AS(verify_annihilator(Y - One, parse("1/x"), 0.5, 5.0, 16), VariableError);
}

TEST_CASE("verify_annihilator_on_curve needs no expression") {
    const RatPoly P = X * Y - One;
    const RatPoly good = Z * Z * (One + X * X) - One;
    CHECK(verify_annihilator_on_curve(good, P) <= 1e-9);
    const RatPoly bad = Z * Z - X;
    CHECK(verify_annihilator_on_curve(bad, P) > 1e-2);
    // Branches of y^2 = x only exist for x > 0; sampling still works.
    CHECK(verify_annihilator_on_curve(am_annihilator(parse_poly("y^2 - x")),
                                      parse_poly("y^2 - x")) <= 1e-9);
}

TEST_CASE("closure under products and sums via elimination") {
    // y1 = sqrt(x) as p^2 - x, y2 = sqrt(x+1) as z^2 - (x+1).
    const RatPoly P1 = P_ * P_ - X;
    const RatPoly P2 = Z * Z - (X + One);

    SUBCASE("product y = y1*y2") {
        const RatPoly H = Y - P_ * Z;
        const RatPoly r1 = resultant(P1, H, Var::p);
        const RatPoly prod = resultant(r1, P2, Var::z);
        CHECK(!prod.is_zero());
        // Vanishes numerically on y = sqrt(x)*sqrt(x+1).
        for (double x = 0.5; x <= 3.0; x += 0.5) {
            const double y = std::sqrt(x) * std::sqrt(x + 1.0);
            const double denom = 1.0 + prod.max_term_magnitude({x, y, 0.0, 0.0});
            CHECK(std::abs(prod.eval({x, y, 0.0, 0.0})) / denom <= 1e-12);
        }
    }
    SUBCASE("sum y = y1 + y2") {
        const RatPoly H = Y - (P_ + Z);
        const RatPoly r1 = resultant(P1, H, Var::p);
        const RatPoly sum = resultant(r1, P2, Var::z);
        CHECK(!sum.is_zero());
        for (double x = 0.5; x <= 3.0; x += 0.5) {
            const double y = std::sqrt(x) + std::sqrt(x + 1.0);
            const double denom = 1.0 + sum.max_term_magnitude({x, y, 0.0, 0.0});
            CHECK(std::abs(sum.eval({x, y, 0.0, 0.0})) / denom <= 1e-12);
        }
    }
}

TEST_CASE("am_annihilator input validation") {
    CHECK_THROWS_AS(am_annihilator(RatPoly()), ZeroPolynomialError);
    CHECK_THROWS_AS(am_annihilator(X * X - One), VariableError);
    CHECK_THROWS_AS(am_annihilator(Z * Y - One), VariableError);
    // Non-squarefree input is rejected up front.
    CHECK_THROWS_AS(am_annihilator(parse_poly("y^2 - 2*x*y + x^2")), EliminationError);
}
