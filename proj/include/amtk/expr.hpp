#pragma once

// Parsed univariate real functions: a small immutable AST with a recursive
// descent parser, a minimal-parentheses printer, and jet evaluation.
//
// Grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := ("-")? power
//   power  := atom ("^" factor)?
//   atom   := number | "x" | "pi" | "e" | ident "(" expr ")" | "(" expr ")"
//   ident  := sin|cos|tan|exp|log|sqrt|atan|abs
//
// Precedence is ^ > unary minus > *,/ > +,- and ^ is right-associative.
// A literal-integer exponent (possibly negated) is folded into an integer
// power node evaluated by repeated multiplication, so x^3 works for x < 0.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "amtk/jet.hpp"

namespace amtk {

enum class ExprKind : std::uint8_t {
    number,
    var,
    pi,
    euler,
    neg,
    sin,
    cos,
    tan,
    exp,
    log,
    sqrt,
    atan,
    abs,
    add,
    sub,
    mul,
    div,
    pow,   // general power (non-integer-literal exponent)
    ipow,  // integer-literal exponent, kept exact
};

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind = ExprKind::number;
    double number = 0.0;      // number
    std::string lexeme;       // number: the decimal literal as written
    long long exponent = 0;   // ipow
    ExprNodePtr a, b;         // children (a only for unary)
};

class Expr {
public:
    Expr() = default;
    explicit Expr(ExprNodePtr root) : root_(std::move(root)) {}

    const ExprNode& node() const { return *root_; }
    const ExprNodePtr& ptr() const { return root_; }
    bool empty() const { return root_ == nullptr; }

private:
    ExprNodePtr root_;
};

// Throws ParseError with a byte offset on malformed input or an unknown
// identifier.
Expr parse(std::string_view text);

// Minimal-parentheses rendering; parse(to_string(e)) reproduces e exactly.
std::string to_string(const Expr& e);

// Structural equality (numbers compare by their written lexeme).
bool equal(const Expr& a, const Expr& b);

// Value plus first and second derivative at x. Throws DomainError for log of
// a non-positive value, sqrt of a negative value, division by zero, and a
// non-integer power of a non-positive base.
Jet2 eval_jet2(const Expr& e, double x);

// Value-only evaluation with the same domain checks.
double eval_value(const Expr& e, double x);

}  // namespace amtk
