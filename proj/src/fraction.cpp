#include "lattes/fraction.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace lattes {

RatFrac::RatFrac(Poly num, Poly den) {
    if (num.field() != den.field()) throw std::invalid_argument("mixed-field fraction");
    if (den.is_zero()) throw std::invalid_argument("zero denominator");
    if (num.is_zero()) {
        num_ = Poly::zero(num.field());
        den_ = Poly::one(num.field());
        return;
    }
    Poly g = gcd(num, den);
    if (g.degree() > 0) {
        num = num / g;
        den = den / g;
    }
    FieldElement lead_inv = den.leading().inverse();
    num_ = num * lead_inv;
    den_ = den * lead_inv;
}

RatFrac RatFrac::from_poly(Poly num) {
    Field f = num.field();
    if (f == nullptr) throw std::invalid_argument("fraction from null polynomial");
    RatFrac r;
    r.num_ = std::move(num);
    r.den_ = Poly::one(f);
    return r;
}

unsigned RatFrac::map_degree() const {
    return static_cast<unsigned>(std::max(num_.degree(), den_.degree()));
}

unsigned RatFrac::hamming_weight() const {
    unsigned w = 0;
    for (const auto& c : num_.coeffs()) w += !c.is_zero();
    for (const auto& c : den_.coeffs()) w += !c.is_zero();
    return w;
}

RatFrac RatFrac::compose(const RatFrac& inner) const {
    Field f = field();
    if (f != inner.field()) throw std::invalid_argument("mixed-field composition");
    const unsigned k = map_degree();
    std::vector<Poly> npow{Poly::one(f)}, dpow{Poly::one(f)};
    for (unsigned i = 1; i <= k; ++i) {
        npow.push_back(npow.back() * inner.num_);
        dpow.push_back(dpow.back() * inner.den_);
    }
    Poly num(f), den(f);
    for (unsigned i = 0; i <= k; ++i) {
        Poly mixed = npow[i] * dpow[k - i];
        if (!num_.coeff(static_cast<int>(i)).is_zero())
            num += mixed * num_.coeff(static_cast<int>(i));
        if (!den_.coeff(static_cast<int>(i)).is_zero())
            den += mixed * den_.coeff(static_cast<int>(i));
    }
    if (den.is_zero()) throw std::invalid_argument("composition hits a pole");
    return RatFrac(std::move(num), std::move(den));
}

RatFrac operator+(const RatFrac& a, const RatFrac& b) {
    return RatFrac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFrac operator-(const RatFrac& a, const RatFrac& b) {
    return RatFrac(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFrac operator*(const RatFrac& a, const RatFrac& b) {
    return RatFrac(a.num_ * b.num_, a.den_ * b.den_);
}

RatFrac operator/(const RatFrac& a, const RatFrac& b) {
    if (b.num_.is_zero()) throw std::invalid_argument("division by the zero fraction");
    return RatFrac(a.num_ * b.den_, a.den_ * b.num_);
}

RatFrac RatFrac::operator-() const {
    RatFrac r = *this;
    r.num_ = -r.num_;
    return r;
}

bool RatFrac::operator<(const RatFrac& o) const {
    if (!(num_ == o.num_)) return num_ < o.num_;
    return den_ < o.den_;
}

namespace {

// a printed polynomial needs wrapping next to '/' when it has a top-level operator
bool needs_parens(const std::string& s) {
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (depth == 0 && (c == '+' || c == '-' || c == '*' || c == '/')) return true;
    }
    return false;
}

}  // namespace

std::string RatFrac::to_string() const {
    if (num_.field() == nullptr) return "<null>";
    if (den_.is_one()) return num_.to_string();
    std::ostringstream out;
    std::string ns = num_.to_string(), ds = den_.to_string();
    out << (needs_parens(ns) ? "(" + ns + ")" : ns);
    out << "/";
    out << (needs_parens(ds) ? "(" + ds + ")" : ds);
    return out.str();
}

Poly ts_transform(const Poly& f, const RatFrac& S) {
    if (f.degree() < 1) throw std::invalid_argument("transform of a constant polynomial");
    if (f.field() != S.field()) throw std::invalid_argument("mixed-field transform");
    const int n = f.degree();
    // den^n * f(num/den) via Horner in num with den powers
    Poly acc = Poly::constant(f.coeff(n));
    Poly dpow = Poly::one(f.field());
    for (int i = n - 1; i >= 0; --i) {
        dpow = dpow * S.den();
        acc = acc * S.num();
        if (!f.coeff(i).is_zero()) acc += dpow * f.coeff(i);
    }
    if (acc.is_zero()) throw std::logic_error("numerator transform collapsed to zero");
    return acc.monic();
}

MobiusMatrix::MobiusMatrix(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    Field f = a_.field();
    if (f == nullptr || b_.field() != f || c_.field() != f || d_.field() != f)
        throw std::invalid_argument("matrix entries must share a field");
    if ((a_ * d_ - b_ * c_).is_zero()) throw std::invalid_argument("singular Mobius matrix");
    for (FieldElement* e : {&a_, &b_, &c_, &d_}) {
        if (!e->is_zero()) {
            FieldElement s = e->inverse();
            a_ = a_ * s;
            b_ = b_ * s;
            c_ = c_ * s;
            d_ = d_ * s;
            break;
        }
    }
}

MobiusMatrix MobiusMatrix::identity(Field f) {
    return MobiusMatrix(FieldElement::one(f), FieldElement::zero(f), FieldElement::zero(f),
                        FieldElement::one(f));
}

MobiusMatrix MobiusMatrix::inverse() const {
    return MobiusMatrix(d_, -b_, -c_, a_);
}

MobiusMatrix MobiusMatrix::operator*(const MobiusMatrix& o) const {
    return MobiusMatrix(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                        c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

RatFrac MobiusMatrix::to_fraction() const {
    Field f = a_.field();
    Poly num = Poly::from_coeffs(f, {b_, a_});
    Poly den = Poly::from_coeffs(f, {d_, c_});
    return RatFrac(std::move(num), std::move(den));
}

bool MobiusMatrix::operator==(const MobiusMatrix& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

void for_each_pgl2(Field f, const std::function<void(const MobiusMatrix&)>& visit) {
    const std::uint64_t q = f->order();
    const FieldElement one = FieldElement::one(f);
    // representatives with the first nonzero entry equal to 1
    for (std::uint64_t bi = 0; bi < q; ++bi)
        for (std::uint64_t ci = 0; ci < q; ++ci)
            for (std::uint64_t di = 0; di < q; ++di) {
                FieldElement b = FieldElement::from_index(f, bi);
                FieldElement c = FieldElement::from_index(f, ci);
                FieldElement d = FieldElement::from_index(f, di);
                if ((d - b * c).is_zero()) continue;
                visit(MobiusMatrix(one, b, c, d));
            }
    for (std::uint64_t ci = 1; ci < q; ++ci)
        for (std::uint64_t di = 0; di < q; ++di) {
            FieldElement c = FieldElement::from_index(f, ci);
            FieldElement d = FieldElement::from_index(f, di);
            visit(MobiusMatrix(FieldElement::zero(f), one, c, d));
        }
}

RatFrac mobius_conjugate(const RatFrac& S, const MobiusMatrix& m) {
    RatFrac mf = m.to_fraction();
    RatFrac mi = m.inverse().to_fraction();
    RatFrac out = mi.compose(S.compose(mf));
    if (out.map_degree() != S.map_degree())
        throw std::logic_error("Mobius conjugation changed the map degree");
    return out;
}

namespace {

// (hamming weight, deg num, den coeffs, num coeffs) in canonical order
bool canonical_before(const RatFrac& a, const RatFrac& b) {
    unsigned wa = a.hamming_weight(), wb = b.hamming_weight();
    if (wa != wb) return wa < wb;
    if (a.num().degree() != b.num().degree()) return a.num().degree() < b.num().degree();
    auto key = [](const RatFrac& s) {
        std::vector<std::uint64_t> k;
        for (const auto& c : s.den().coeffs()) k.push_back(c.canonical_index());
        for (const auto& c : s.num().coeffs()) k.push_back(c.canonical_index());
        return k;
    };
    return key(a) < key(b);
}

}  // namespace

bool MobiusOrbit::contains(const RatFrac& s) const {
    return std::binary_search(members.begin(), members.end(), s);
}

MobiusOrbit mobius_orbit(const RatFrac& S, std::uint64_t group_cap) {
    Field f = S.field();
    const std::uint64_t q = f->order();
    if (q * q * q - q > group_cap)
        throw budget_error("PGL2 enumeration of order q^3-q exceeds the cap for q = " +
                           std::to_string(q));
    std::set<RatFrac> seen;
    RatFrac best = S;
    for_each_pgl2(f, [&](const MobiusMatrix& m) {
        RatFrac conj = mobius_conjugate(S, m);
        if (seen.insert(conj).second) {
            if (canonical_before(conj, best)) best = conj;
        }
    });
    MobiusOrbit orbit;
    orbit.members.assign(seen.begin(), seen.end());
    orbit.canonical = best;
    return orbit;
}

RatFrac canonical_mobius_rep(const RatFrac& S, std::uint64_t group_cap) {
    return mobius_orbit(S, group_cap).canonical;
}

/*
 * Text grammar (whitespace insignificant):
 *   expr  := term (('+'|'-') term)*
 *   term  := unary (('*'|'/')? unary)*        -- juxtaposition multiplies
 *   unary := '-' unary | power
 *   power := atom ('^' INT)*
 *   atom  := INT | 'x' | 't' | '(' expr ')'
 */
namespace {

struct Token {
    enum Kind { Int, X, T, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::uint64_t value = 0;
    std::size_t pos = 0;
};

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= text_.size()) {
            tok_.kind = Token::End;
            return;
        }
        char c = text_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = 0;
            while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
                v = v * 10 + static_cast<std::uint64_t>(text_[i_] - '0');
                if (v > (1ULL << 62)) throw parse_error("integer literal too large", tok_.pos);
                ++i_;
            }
            tok_.kind = Token::Int;
            tok_.value = v;
            return;
        }
        ++i_;
        switch (c) {
            case 'x': tok_.kind = Token::X; return;
            case 't': tok_.kind = Token::T; return;
            case '+': tok_.kind = Token::Plus; return;
            case '-': tok_.kind = Token::Minus; return;
            case '*': tok_.kind = Token::Star; return;
            case '/': tok_.kind = Token::Slash; return;
            case '^': tok_.kind = Token::Caret; return;
            case '(': tok_.kind = Token::LParen; return;
            case ')': tok_.kind = Token::RParen; return;
            default: throw parse_error(std::string("unexpected character '") + c + "'", tok_.pos);
        }
    }

    std::string_view text_;
    std::size_t i_ = 0;
    Token tok_;
};

class FractionParser {
  public:
    FractionParser(Field f, std::string_view text) : field_(f), lex_(text) {}

    RatFrac run() {
        RatFrac r = expr();
        if (lex_.peek().kind != Token::End)
            throw parse_error("unexpected trailing input", lex_.peek().pos);
        return r;
    }

  private:
    static bool starts_atom(Token::Kind k) {
        return k == Token::Int || k == Token::X || k == Token::T || k == Token::LParen;
    }

    RatFrac expr() {
        RatFrac acc = term();
        for (;;) {
            Token::Kind k = lex_.peek().kind;
            if (k == Token::Plus) {
                lex_.take();
                acc = acc + term();
            } else if (k == Token::Minus) {
                lex_.take();
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    RatFrac term() {
        RatFrac acc = unary();
        for (;;) {
            Token::Kind k = lex_.peek().kind;
            if (k == Token::Star) {
                lex_.take();
                acc = acc * unary();
            } else if (k == Token::Slash) {
                std::size_t pos = lex_.peek().pos;
                lex_.take();
                RatFrac d = unary();
                if (d.num().is_zero()) throw parse_error("zero denominator", pos);
                acc = acc / d;
            } else if (starts_atom(k)) {
                acc = acc * unary();
            } else {
                return acc;
            }
        }
    }

    RatFrac unary() {
        if (lex_.peek().kind == Token::Minus) {
            lex_.take();
            return -unary();
        }
        return power();
    }

    RatFrac power() {
        RatFrac base = atom();
        while (lex_.peek().kind == Token::Caret) {
            std::size_t pos = lex_.peek().pos;
            lex_.take();
            if (lex_.peek().kind != Token::Int) throw parse_error("expected integer exponent", pos);
            std::uint64_t e = lex_.take().value;
            if (e > 100000) throw parse_error("exponent too large", pos);
            base = RatFrac(base.num().pow(static_cast<unsigned>(e)),
                           base.den().pow(static_cast<unsigned>(e)));
        }
        return base;
    }

    RatFrac atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Int:
                return RatFrac::constant(
                    FieldElement::from_integer(field_, static_cast<std::int64_t>(t.value)));
            case Token::X:
                return RatFrac::x(field_);
            case Token::T:
                if (field_->degree() < 2)
                    throw parse_error("generator t used over a prime field", t.pos);
                return RatFrac::constant(FieldElement::generator(field_));
            case Token::LParen: {
                RatFrac inner = expr();
                if (lex_.peek().kind != Token::RParen)
                    throw parse_error("expected ')'", lex_.peek().pos);
                lex_.take();
                return inner;
            }
            default:
                throw parse_error("expected a value", t.pos);
        }
    }

    Field field_;
    Lexer lex_;
};

}  // namespace

RatFrac RatFrac::parse(Field f, std::string_view text) {
    if (f == nullptr) throw std::invalid_argument("parse over null field");
    return FractionParser(f, text).run();
}

}  // namespace lattes
