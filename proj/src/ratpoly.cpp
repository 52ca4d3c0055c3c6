#include "amtk/ratpoly.hpp"

#include <cctype>
#include <cmath>
#include <utility>

#include "amtk/errors.hpp"

namespace amtk {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

RatPoly RatPoly::constant(BigRat c) {
    RatPoly out;
    if (c != 0) out.terms_.emplace(Monomial{}, std::move(c));
    return out;
}

RatPoly RatPoly::variable(Var v, unsigned exp) {
    if (exp == 0) return constant(1);
    Monomial m;
    m.e[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(exp);
    RatPoly out;
    out.terms_.emplace(m, BigRat(1));
    return out;
}

bool RatPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

int RatPoly::degree(Var v) const {
    int d = -1;
    const auto i = static_cast<std::size_t>(v);
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.e[i]));
    return d;
}

unsigned RatPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

std::vector<RatPoly> RatPoly::coefficients_in(Var v) const {
    const int d = degree(v);
    if (d < 0) return {};
    std::vector<RatPoly> out(static_cast<std::size_t>(d) + 1);
    const auto i = static_cast<std::size_t>(v);
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        const std::uint16_t k = rest.e[i];
        rest.e[i] = 0;
        out[k].terms_.emplace(rest, c);
    }
    return out;
}

RatPoly RatPoly::derivative(Var v) const {
    const auto i = static_cast<std::size_t>(v);
    RatPoly out;
    for (const auto& [m, c] : terms_) {
        if (m.e[i] == 0) continue;
        Monomial d = m;
        d.e[i] -= 1;
        out.terms_.emplace(d, BigRat(c * m.e[i]));
    }
    return out;
}

RatPoly RatPoly::substituted(Var v, const RatPoly& value) const {
    const auto i = static_cast<std::size_t>(v);
    RatPoly out;
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        const unsigned k = rest.e[i];
        rest.e[i] = 0;
        RatPoly term;
        term.terms_.emplace(rest, c);
        out += term * value.pow(k);
    }
    return out;
}

double RatPoly::eval(const std::array<double, kVarCount>& point) const {
    double acc = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = static_cast<double>(c);
        for (int i = 0; i < kVarCount; ++i) {
            for (std::uint16_t k = 0; k < m.e[i]; ++k) t *= point[i];
        }
        acc += t;
    }
    return acc;
}

double RatPoly::max_term_magnitude(const std::array<double, kVarCount>& point) const {
    double mx = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = std::abs(static_cast<double>(c));
        for (int i = 0; i < kVarCount; ++i) {
            for (std::uint16_t k = 0; k < m.e[i]; ++k) t *= std::abs(point[i]);
        }
        mx = std::max(mx, t);
    }
    return mx;
}

RatPoly RatPoly::normalized() const {
    if (terms_.empty()) return {};
    BigInt den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        den_lcm = lcm(den_lcm, denominator(c));
    }
    BigInt num_gcd = 0;
    for (const auto& [m, c] : terms_) {
        num_gcd = gcd(num_gcd, numerator(c) * (den_lcm / denominator(c)));
    }
    const BigRat leading = terms_.begin()->second;
    BigRat scale(den_lcm, num_gcd);
    if (leading < 0) scale = -scale;
    return *this * scale;
}

RatPoly RatPoly::operator-() const {
    RatPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, BigRat(-c));
    return out;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
    for (const auto& [m, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
    for (const auto& [m, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(m, BigRat(-c));
        if (!inserted) {
            it->second -= c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    RatPoly out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m;
            for (int i = 0; i < kVarCount; ++i) {
                m.e[i] = static_cast<std::uint16_t>(ma.e[i] + mb.e[i]);
            }
            auto [it, inserted] = out.terms_.try_emplace(m, BigRat(ca * cb));
            if (!inserted) {
                it->second += ca * cb;
                if (it->second == 0) out.terms_.erase(it);
            }
        }
    }
    return out;
}

RatPoly RatPoly::operator*(const BigRat& c) const {
    if (c == 0) return {};
    RatPoly out;
    for (const auto& [m, coeff] : terms_) out.terms_.emplace(m, BigRat(coeff * c));
    return out;
}

RatPoly RatPoly::pow(unsigned n) const {
    RatPoly acc = constant(1);
    RatPoly base = *this;
    while (n > 0) {
        if (n & 1u) acc = acc * base;
        if (n >>= 1) base = base * base;
    }
    return acc;
}

std::optional<RatPoly> RatPoly::divide_exact(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) return std::nullopt;
    RatPoly rem = a;
    RatPoly quot;
    const auto& [lead_m, lead_c] = *b.terms_.begin();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = *rem.terms_.begin();
        Monomial q;
        for (int i = 0; i < kVarCount; ++i) {
            if (rm.e[i] < lead_m.e[i]) return std::nullopt;
            q.e[i] = static_cast<std::uint16_t>(rm.e[i] - lead_m.e[i]);
        }
        RatPoly qterm;
        qterm.terms_.emplace(q, BigRat(rc / lead_c));
        quot += qterm;
        rem -= qterm * b;
    }
    return quot;
}

void RatPoly::set_term(const Monomial& m, BigRat c) {
    if (c == 0) {
        terms_.erase(m);
    } else {
        terms_[m] = std::move(c);
    }
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

namespace {

struct PolyParser {
    std::string_view src;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool accept(char c) {
        skip_space();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    BigInt parse_integer() {
        skip_space();
        const std::size_t start = pos;
        std::string digits;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            digits += src[pos++];
        }
        if (digits.empty()) throw ParseError("expected an integer", start);
        return BigInt(digits);
    }

    int var_index() {
        skip_space();
        if (pos >= src.size()) return -1;
        for (int i = 0; i < kVarCount; ++i) {
            if (src[pos] == kVarNames[i]) return i;
        }
        return -1;
    }

    RatPoly parse_factor() {
        skip_space();
        if (pos >= src.size()) throw ParseError("expected a coefficient or variable", pos);
        const int vi = var_index();
        if (vi >= 0) {
            ++pos;
            unsigned exp = 1;
            if (accept('^')) {
                const BigInt e = parse_integer();
                if (e < 0 || e > 0xffff) throw ParseError("exponent out of range", pos);
                exp = static_cast<unsigned>(e);
            }
            return RatPoly::variable(static_cast<Var>(vi), exp);
        }
        if (std::isdigit(static_cast<unsigned char>(src[pos]))) {
            BigInt num = parse_integer();
            if (accept('/')) {
                BigInt den = parse_integer();
                if (den == 0) throw ParseError("zero denominator", pos);
                return RatPoly::constant(BigRat(num, den));
            }
            return RatPoly::constant(BigRat(num));
        }
        throw ParseError(std::string("unexpected character '") + src[pos] + "'", pos);
    }

    RatPoly parse_term() {
        RatPoly t = parse_factor();
        while (accept('*')) t = t * parse_factor();
        return t;
    }

    RatPoly run() {
        RatPoly acc;
        bool negate = accept('-');
        if (!negate) accept('+');
        for (;;) {
            RatPoly t = parse_term();
            acc += negate ? -t : t;
            skip_space();
            if (pos >= src.size()) return acc;
            if (accept('-')) {
                negate = true;
            } else if (accept('+')) {
                negate = false;
            } else {
                throw ParseError("expected '+', '-', or end of polynomial", pos);
            }
        }
    }
};

void append_rational(std::string& out, const BigRat& c) {
    out += numerator(c).str();
    if (denominator(c) != 1) {
        out += '/';
        out += denominator(c).str();
    }
}

}  // namespace

RatPoly parse_poly(std::string_view text) {
    PolyParser parser{text};
    parser.skip_space();
    if (parser.pos >= text.size()) throw ParseError("empty polynomial", 0);
    return parser.run();
}

std::string to_string(const RatPoly& poly) {
    if (poly.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : poly.terms()) {
        const bool negative = c < 0;
        const BigRat mag = negative ? BigRat(-c) : c;
        if (first) {
            if (negative) out += '-';
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        const bool has_vars = m.degree() > 0;
        if (!has_vars || mag != 1) {
            append_rational(out, mag);
            if (has_vars) out += '*';
        }
        bool first_var = true;
        for (int i = 0; i < kVarCount; ++i) {
            if (m.e[i] == 0) continue;
            if (!first_var) out += '*';
            first_var = false;
            out += kVarNames[i];
            if (m.e[i] > 1) {
                out += '^';
                out += std::to_string(m.e[i]);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// GCD by primitive pseudo-remainder sequences
// ---------------------------------------------------------------------------

namespace {

// Highest-index variable present in either polynomial; -1 when both are
// constants.
int main_variable(const RatPoly& a, const RatPoly& b) {
    for (int i = kVarCount - 1; i >= 0; --i) {
        const Var v = static_cast<Var>(i);
        if (a.degree(v) > 0 || b.degree(v) > 0) return i;
    }
    return -1;
}

// gcd of the coefficient polynomials of `a` viewed as univariate in v.
RatPoly content_in(const RatPoly& a, Var v) {
    RatPoly acc;
    for (const RatPoly& c : a.coefficients_in(v)) {
        if (c.is_zero()) continue;
        acc = acc.is_zero() ? c.normalized() : gcd(acc, c);
        if (acc.is_constant()) break;
    }
    return acc;
}

RatPoly primitive_part(const RatPoly& a, Var v) {
    if (a.is_zero()) return a;
    const RatPoly cont = content_in(a, v);
    auto q = RatPoly::divide_exact(a, cont);
    return q->normalized();
}

// Pseudo-remainder of a by b in v (deg_v a >= deg_v b >= 1).
RatPoly pseudo_remainder(RatPoly a, const RatPoly& b, Var v) {
    const int db = b.degree(v);
    const RatPoly lead_b = b.coefficients_in(v).back();
    int da = a.degree(v);
    while (!a.is_zero() && (da = a.degree(v)) >= db) {
        const RatPoly lead_a = a.coefficients_in(v)[static_cast<std::size_t>(da)];
        a = a * lead_b - b * (lead_a * RatPoly::variable(v, static_cast<unsigned>(da - db)));
        if (a.degree(v) >= da) {
            throw Error("pseudo_remainder: degree failed to drop");
        }
    }
    return a;
}

}  // namespace

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    if (a.is_constant() || b.is_constant()) return RatPoly::constant(1);

    const int vi = main_variable(a, b);
    const Var v = static_cast<Var>(vi);
    if (a.degree(v) <= 0 || b.degree(v) <= 0) {
        // One of them is free of the top variable: the gcd divides the
        // other's content in v.
        if (a.degree(v) <= 0) return gcd(a, content_in(b, v));
        return gcd(content_in(a, v), b);
    }

    const RatPoly cont_gcd = gcd(content_in(a, v), content_in(b, v));
    RatPoly u = primitive_part(a, v);
    RatPoly w = primitive_part(b, v);
    if (u.degree(v) < w.degree(v)) std::swap(u, w);
    while (!w.is_zero() && w.degree(v) > 0) {
        RatPoly r = pseudo_remainder(u, w, v);
        u = std::move(w);
        w = r.is_zero() ? RatPoly() : primitive_part(r, v);
    }
    if (!w.is_zero()) return cont_gcd.normalized();  // v-free remainder: coprime in v
    return (cont_gcd * primitive_part(u, v)).normalized();
}

}  // namespace amtk
