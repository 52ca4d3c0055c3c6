#pragma once

// Exact multivariate polynomials over arbitrary-precision rationals, in the
// fixed variable universe {x, y, z, p}. Terms live in a canonical
// graded-lex-ordered map with no zero coefficients stored; normalized() is
// the content-normalized form (integer coefficients, gcd 1, positive leading
// coefficient).
//
// The variable p houses y' (the implicit derivative), z the AM value.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace amtk {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

enum class Var : std::uint8_t { x = 0, y = 1, z = 2, p = 3 };

inline constexpr int kVarCount = 4;
inline constexpr std::array<char, kVarCount> kVarNames{'x', 'y', 'z', 'p'};

struct Monomial {
    std::array<std::uint16_t, kVarCount> e{};

    unsigned degree() const {
        unsigned d = 0;
        for (auto v : e) d += v;
        return d;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic, x most significant; greater monomials first so that
// map iteration starts at the leading term.
struct GradedLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const unsigned da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        return a.e > b.e;
    }
};

class RatPoly {
public:
    using TermMap = std::map<Monomial, BigRat, GradedLexGreater>;

    RatPoly() = default;

    static RatPoly constant(BigRat c);
    static RatPoly variable(Var v, unsigned exp = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const TermMap& terms() const { return terms_; }

    // Degree in one variable; -1 for the zero polynomial.
    int degree(Var v) const;
    unsigned total_degree() const;
    bool involves(Var v) const { return degree(v) > 0; }

    // Coefficient polynomials as a univariate in v, index = exponent of v,
    // size degree(v)+1. Zero polynomial gives an empty vector.
    std::vector<RatPoly> coefficients_in(Var v) const;

    RatPoly derivative(Var v) const;

    // Substitutes a polynomial for one variable (used for small rewrites).
    RatPoly substituted(Var v, const RatPoly& value) const;

    double eval(const std::array<double, kVarCount>& point) const;
    // Largest |coefficient * monomial| at the point, for residual scaling.
    double max_term_magnitude(const std::array<double, kVarCount>& point) const;

    // Content-normalized form: integer coefficients with gcd 1 and positive
    // leading coefficient under graded-lex. Zero stays zero.
    RatPoly normalized() const;

    RatPoly operator-() const;
    RatPoly& operator+=(const RatPoly& o);
    RatPoly& operator-=(const RatPoly& o);

    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    RatPoly operator*(const BigRat& c) const;
    RatPoly pow(unsigned n) const;

    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.terms_ == b.terms_; }

    // Exact division; nullopt when b does not divide a.
    static std::optional<RatPoly> divide_exact(const RatPoly& a, const RatPoly& b);

    void set_term(const Monomial& m, BigRat c);

private:
    TermMap terms_;
};

// Text form: sum of terms `c*x^i*y^j*z^k*p^l` with integer or a/b rational
// coefficients, e.g. "x*y - 1" or "4*x^2*z^2 + z^2 - 4*x^3".
RatPoly parse_poly(std::string_view text);
std::string to_string(const RatPoly& poly);

// Primitive GCD (content-free, positive leading coefficient); gcd of
// anything with a nonzero constant is 1. Computed by a primitive
// pseudo-remainder sequence, recursing through the variable universe.
RatPoly gcd(const RatPoly& a, const RatPoly& b);

}  // namespace amtk
