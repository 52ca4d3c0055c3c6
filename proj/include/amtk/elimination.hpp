#pragma once

// Elimination-theory pipeline: Sylvester resultants over exact polynomial
// entries (fraction-free Bareiss), implicit differentiation of P(x, y) = 0,
// and derivation of a polynomial A(x, z) annihilating z = AM(f) for an
// algebraic f.

#include <cstddef>

#include "amtk/expr.hpp"
#include "amtk/ratpoly.hpp"

namespace amtk {

// Determinant of the Sylvester matrix of a and b with respect to v, computed
// by fraction-free Bareiss elimination over the polynomial ring in the
// remaining variables; the result is content-normalized. Both inputs must
// have positive degree in v.
RatPoly resultant(const RatPoly& a, const RatPoly& b, Var v);

// Total derivative of P(x, y) = 0 with y' |-> p: dP/dx + p*dP/dy,
// content-normalized. P must involve y.
RatPoly implicit_derivative_relation(const RatPoly& P);

// Annihilator of z = AM(f) for the algebraic function y = f(x) defined by
// P(x, y) = 0 (squarefree, involving y). Forms E = z^2(y^2 + p^2) - y^4 and
// D = dP/dx + p*dP/dy, eliminates p then y, strips the z-free content,
// reduces to the squarefree part in z, and drops multiplicity classes that
// do not vanish on the sampled curve. Raises EliminationError on
// non-squarefree input, a zero resultant, or when no factor vanishes on the
// curve.
RatPoly am_annihilator(const RatPoly& P);

// Scale-normalized residual max over n sample points of
// |A(x, AM(f)(x))| / (1 + max |term|); <= ~1e-9 for a correct annihilator of
// moderate degree. A must involve only x and z.
double verify_annihilator(const RatPoly& A, const Expr& f, double a, double b,
                          std::size_t n);

// The same residual measured on the sampled real branches of P(x, y) = 0
// itself, no expression for f required: max over sampled x of the smallest
// branch residual.
double verify_annihilator_on_curve(const RatPoly& A, const RatPoly& P);

}  // namespace amtk
