#include "amtk/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <utility>
#include <vector>

#include "amtk/errors.hpp"

namespace amtk {
namespace {

ExprNodePtr make_node(ExprNode n) {
    return std::make_shared<const ExprNode>(std::move(n));
}

ExprNodePtr make_leaf(ExprKind k) {
    ExprNode n;
    n.kind = k;
    return make_node(std::move(n));
}

ExprNodePtr make_unary(ExprKind k, ExprNodePtr a) {
    ExprNode n;
    n.kind = k;
    n.a = std::move(a);
    return make_node(std::move(n));
}

ExprNodePtr make_binary(ExprKind k, ExprNodePtr a, ExprNodePtr b) {
    ExprNode n;
    n.kind = k;
    n.a = std::move(a);
    n.b = std::move(b);
    return make_node(std::move(n));
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok : std::uint8_t {
    number,
    ident,
    plus,
    minus,
    star,
    slash,
    caret,
    lparen,
    rparen,
    end,
};

struct Token {
    Tok kind = Tok::end;
    std::string text;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) return {Tok::end, "", start};
        const char c = src_[pos_];
        switch (c) {
            case '+': ++pos_; return {Tok::plus, "+", start};
            case '-': ++pos_; return {Tok::minus, "-", start};
            case '*': ++pos_; return {Tok::star, "*", start};
            case '/': ++pos_; return {Tok::slash, "/", start};
            case '^': ++pos_; return {Tok::caret, "^", start};
            case '(': ++pos_; return {Tok::lparen, "(", start};
            case ')': ++pos_; return {Tok::rparen, ")", start};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(start);
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return {Tok::ident, std::string(src_.substr(start, pos_ - start)), start};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

private:
    Token lex_number(std::size_t start) {
        bool digits = false;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
            digits = true;
        }
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                digits = true;
            }
        }
        if (!digits) throw ParseError("malformed number", start);
        // Scientific suffix only when an exponent actually follows; a bare
        // trailing 'e' stays an identifier (Euler's constant).
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t probe = pos_ + 1;
            if (probe < src_.size() && (src_[probe] == '+' || src_[probe] == '-')) ++probe;
            if (probe < src_.size() && std::isdigit(static_cast<unsigned char>(src_[probe]))) {
                pos_ = probe;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
        }
        return {Tok::number, std::string(src_.substr(start, pos_ - start)), start};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    ExprNodePtr run() {
        ExprNodePtr e = parse_expr();
        if (cur_.kind != Tok::end) throw ParseError("trailing input after expression", cur_.offset);
        return e;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    bool accept(Tok k) {
        if (cur_.kind != k) return false;
        advance();
        return true;
    }

    ExprNodePtr parse_expr() {
        ExprNodePtr e = parse_term();
        for (;;) {
            if (accept(Tok::plus)) {
                e = make_binary(ExprKind::add, std::move(e), parse_term());
            } else if (accept(Tok::minus)) {
                e = make_binary(ExprKind::sub, std::move(e), parse_term());
            } else {
                return e;
            }
        }
    }

    ExprNodePtr parse_term() {
        ExprNodePtr e = parse_factor();
        for (;;) {
            if (accept(Tok::star)) {
                e = make_binary(ExprKind::mul, std::move(e), parse_factor());
            } else if (accept(Tok::slash)) {
                e = make_binary(ExprKind::div, std::move(e), parse_factor());
            } else {
                return e;
            }
        }
    }

    ExprNodePtr parse_factor() {
        if (accept(Tok::minus)) return make_unary(ExprKind::neg, parse_power());
        return parse_power();
    }

    ExprNodePtr parse_power() {
        ExprNodePtr base = parse_atom();
        if (!accept(Tok::caret)) return base;
        ExprNodePtr exp = parse_factor();
        long long n = 0;
        if (integer_literal(*exp, &n)) {
            ExprNode node;
            node.kind = ExprKind::ipow;
            node.exponent = n;
            node.a = std::move(base);
            return make_node(std::move(node));
        }
        return make_binary(ExprKind::pow, std::move(base), std::move(exp));
    }

    // A literal integer, or a directly negated literal integer ("x^-2").
    // Deeper nesting (parenthesized negations) stays a general power.
    static bool integer_literal(const ExprNode& e, long long* out) {
        const ExprNode* n = &e;
        bool negate = false;
        if (n->kind == ExprKind::neg) {
            negate = true;
            n = n->a.get();
        }
        if (n->kind != ExprKind::number) return false;
        if (n->lexeme.empty() || n->lexeme.size() > 18) return false;
        for (char c : n->lexeme) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        }
        *out = std::strtoll(n->lexeme.c_str(), nullptr, 10);
        if (negate) *out = -*out;
        return true;
    }

    ExprNodePtr parse_atom() {
        const Token t = cur_;
        switch (t.kind) {
            case Tok::number: {
                advance();
                ExprNode n;
                n.kind = ExprKind::number;
                n.lexeme = t.text;
                n.number = std::strtod(t.text.c_str(), nullptr);
                return make_node(std::move(n));
            }
            case Tok::lparen: {
                advance();
                ExprNodePtr e = parse_expr();
                if (!accept(Tok::rparen)) throw ParseError("expected ')'", cur_.offset);
                return e;
            }
            case Tok::ident:
                advance();
                return parse_ident(t);
            default:
                throw ParseError("expected a number, name, or '('", t.offset);
        }
    }

    ExprNodePtr parse_ident(const Token& t) {
        if (t.text == "x") return make_leaf(ExprKind::var);
        if (t.text == "pi") return make_leaf(ExprKind::pi);
        if (t.text == "e") return make_leaf(ExprKind::euler);

        ExprKind k;
        if (t.text == "sin") k = ExprKind::sin;
        else if (t.text == "cos") k = ExprKind::cos;
        else if (t.text == "tan") k = ExprKind::tan;
        else if (t.text == "exp") k = ExprKind::exp;
        else if (t.text == "log") k = ExprKind::log;
        else if (t.text == "sqrt") k = ExprKind::sqrt;
        else if (t.text == "atan") k = ExprKind::atan;
        else if (t.text == "abs") k = ExprKind::abs;
        else throw ParseError("unknown identifier '" + t.text + "'", t.offset);

        if (!accept(Tok::lparen)) throw ParseError("expected '(' after '" + t.text + "'", cur_.offset);
        ExprNodePtr arg = parse_expr();
        if (!accept(Tok::rparen)) throw ParseError("expected ')'", cur_.offset);
        return make_unary(k, std::move(arg));
    }

    Lexer lexer_;
    Token cur_;
};

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

// Precedence levels: +,- = 1; *,/ = 2; unary minus = 3; ^ = 4; atoms = 5.
int precedence(const ExprNode& e) {
    switch (e.kind) {
        case ExprKind::add:
        case ExprKind::sub: return 1;
        case ExprKind::mul:
        case ExprKind::div: return 2;
        case ExprKind::neg: return 3;
        case ExprKind::pow:
        case ExprKind::ipow: return 4;
        default: return 5;
    }
}

const char* function_name(ExprKind k) {
    switch (k) {
        case ExprKind::sin: return "sin";
        case ExprKind::cos: return "cos";
        case ExprKind::tan: return "tan";
        case ExprKind::exp: return "exp";
        case ExprKind::log: return "log";
        case ExprKind::sqrt: return "sqrt";
        case ExprKind::atan: return "atan";
        case ExprKind::abs: return "abs";
        default: return "";
    }
}

void print(const ExprNode& e, std::string& out);

void print_child(const ExprNode& c, int min_prec, std::string& out) {
    if (precedence(c) < min_prec) {
        out += '(';
        print(c, out);
        out += ')';
    } else {
        print(c, out);
    }
}

void print(const ExprNode& e, std::string& out) {
    switch (e.kind) {
        case ExprKind::number: out += e.lexeme; return;
        case ExprKind::var: out += 'x'; return;
        case ExprKind::pi: out += "pi"; return;
        case ExprKind::euler: out += 'e'; return;
        case ExprKind::neg:
            out += '-';
            print_child(*e.a, 4, out);  // operand slot is a power
            return;
        case ExprKind::add:
        case ExprKind::sub:
            print_child(*e.a, 1, out);
            out += e.kind == ExprKind::add ? " + " : " - ";
            print_child(*e.b, 2, out);  // right operand is a term
            return;
        case ExprKind::mul:
        case ExprKind::div:
            print_child(*e.a, 2, out);
            out += e.kind == ExprKind::mul ? '*' : '/';
            print_child(*e.b, 3, out);  // right operand is a factor
            return;
        case ExprKind::pow:
            print_child(*e.a, 5, out);  // base must be an atom
            out += '^';
            print_child(*e.b, 3, out);  // exponent slot is a factor
            return;
        case ExprKind::ipow:
            print_child(*e.a, 5, out);
            out += '^';
            out += std::to_string(e.exponent);
            return;
        default:
            out += function_name(e.kind);
            out += '(';
            print(*e.a, out);
            out += ')';
            return;
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

std::string subexpr_text(const ExprNode& e) {
    std::string s;
    print(e, s);
    return s;
}

Jet2 eval(const ExprNode& e, double x) {
    switch (e.kind) {
        case ExprKind::number: return Jet2::constant(e.number);
        case ExprKind::var: return Jet2::variable(x);
        case ExprKind::pi: return Jet2::constant(kPi);
        case ExprKind::euler: return Jet2::constant(kE);
        case ExprKind::neg: return -eval(*e.a, x);
        case ExprKind::add: return eval(*e.a, x) + eval(*e.b, x);
        case ExprKind::sub: return eval(*e.a, x) - eval(*e.b, x);
        case ExprKind::mul: return eval(*e.a, x) * eval(*e.b, x);
        case ExprKind::div: {
            const Jet2 num = eval(*e.a, x);
            const Jet2 den = eval(*e.b, x);
            if (den.v == 0.0) throw DomainError("division by zero", subexpr_text(e), x);
            return num / den;
        }
        case ExprKind::sin: return sin(eval(*e.a, x));
        case ExprKind::cos: return cos(eval(*e.a, x));
        case ExprKind::tan: return tan(eval(*e.a, x));
        case ExprKind::exp: return exp(eval(*e.a, x));
        case ExprKind::log: {
            const Jet2 u = eval(*e.a, x);
            if (u.v <= 0.0) throw DomainError("log of a non-positive value", subexpr_text(e), x);
            return log(u);
        }
        case ExprKind::sqrt: {
            const Jet2 u = eval(*e.a, x);
            if (u.v < 0.0) throw DomainError("sqrt of a negative value", subexpr_text(e), x);
            return sqrt(u);
        }
        case ExprKind::atan: return atan(eval(*e.a, x));
        case ExprKind::abs: return abs(eval(*e.a, x));
        case ExprKind::ipow: {
            const Jet2 u = eval(*e.a, x);
            if (e.exponent < 0 && u.v == 0.0) {
                throw DomainError("division by zero", subexpr_text(e), x);
            }
            return ipow(u, e.exponent);
        }
        case ExprKind::pow: {
            const Jet2 base = eval(*e.a, x);
            if (base.v <= 0.0) {
                throw DomainError("non-integer power of a non-positive base", subexpr_text(e), x);
            }
            return pow(base, eval(*e.b, x));
        }
    }
    throw Error("corrupt expression node");
}

}  // namespace

Expr parse(std::string_view text) {
    if (text.empty()) throw ParseError("empty expression", 0);
    return Expr(Parser(text).run());
}

std::string to_string(const Expr& e) {
    std::string s;
    print(e.node(), s);
    return s;
}

bool equal(const Expr& a, const Expr& b) {
    struct Rec {
        static bool eq(const ExprNode& l, const ExprNode& r) {
            if (l.kind != r.kind) return false;
            switch (l.kind) {
                case ExprKind::number: return l.lexeme == r.lexeme;
                case ExprKind::ipow: return l.exponent == r.exponent && eq(*l.a, *r.a);
                default: break;
            }
            if ((l.a == nullptr) != (r.a == nullptr)) return false;
            if ((l.b == nullptr) != (r.b == nullptr)) return false;
            if (l.a && !eq(*l.a, *r.a)) return false;
            if (l.b && !eq(*l.b, *r.b)) return false;
            return true;
        }
    };
    return Rec::eq(a.node(), b.node());
}

Jet2 eval_jet2(const Expr& e, double x) {
    return eval(e.node(), x);
}

double eval_value(const Expr& e, double x) {
    return eval(e.node(), x).v;
}

}  // namespace amtk
