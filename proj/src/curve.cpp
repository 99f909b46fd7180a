#include "lattes/curve.hpp"

#include <algorithm>
#include <sstream>

namespace lattes {

namespace {
FieldElement ci(Field f, std::int64_t v) { return FieldElement::from_integer(f, v); }
}  // namespace

Curve::Curve(Field f, FieldElement a1, FieldElement a2, FieldElement a3, FieldElement a4,
             FieldElement a6)
    : field_(f), a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)),
      a6_(std::move(a6)) {
    if (f == nullptr) throw std::invalid_argument("curve over null field");
    for (const FieldElement* e : {&a1_, &a2_, &a3_, &a4_, &a6_})
        if (e->field() != f) throw std::invalid_argument("curve coefficients of wrong field");
    if (discriminant().is_zero()) throw std::invalid_argument("singular curve");
}

Curve Curve::from_ints(Field f, const std::array<std::int64_t, 5>& a) {
    return Curve(f, FieldElement::from_integer(f, a[0]), FieldElement::from_integer(f, a[1]),
                 FieldElement::from_integer(f, a[2]), FieldElement::from_integer(f, a[3]),
                 FieldElement::from_integer(f, a[4]));
}

Curve Curve::parse(Field f, std::string_view text) {
    std::string s(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("curve text must look like [a1,a2,a3,a4,a6]");
    s = s.substr(1, s.size() - 2);
    std::vector<FieldElement> coeffs;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || (s[i] == ',' && depth == 0)) {
            Poly c = Poly::parse(f, s.substr(start, i - start));
            if (c.degree() > 0) throw std::invalid_argument("curve coefficient is not constant");
            coeffs.push_back(c.coeff(0));
            start = i + 1;
        } else if (s[i] == '(') {
            ++depth;
        } else if (s[i] == ')') {
            --depth;
        }
    }
    if (coeffs.size() != 5) throw std::invalid_argument("curve text needs five coefficients");
    return Curve(f, coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]);
}

FieldElement Curve::b2() const { return a1_ * a1_ + ci(field_, 4) * a2_; }
FieldElement Curve::b4() const { return ci(field_, 2) * a4_ + a1_ * a3_; }
FieldElement Curve::b6() const { return a3_ * a3_ + ci(field_, 4) * a6_; }
FieldElement Curve::b8() const {
    return a1_ * a1_ * a6_ + ci(field_, 4) * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ -
           a4_ * a4_;
}
FieldElement Curve::c4() const { return b2() * b2() - ci(field_, 24) * b4(); }

FieldElement Curve::discriminant() const {
    FieldElement B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - ci(field_, 8) * B4 * B4 * B4 - ci(field_, 27) * B6 * B6 +
           ci(field_, 9) * B2 * B4 * B6;
}

FieldElement Curve::j_invariant() const {
    FieldElement C4 = c4();
    return C4 * C4 * C4 * discriminant().inverse();
}

Poly Curve::rhs_cubic() const {
    return Poly::from_coeffs(field_, {a6_, a4_, a2_, FieldElement::one(field_)});
}

Poly Curve::y_line() const { return Poly::from_coeffs(field_, {a3_, a1_}); }

Poly Curve::two_torsion_poly() const {
    return Poly::from_coeffs(field_, {b6(), ci(field_, 2) * b4(), b2(), ci(field_, 4)});
}

std::uint64_t Curve::point_count() const {
    if (cached_count_ >= 0) return static_cast<std::uint64_t>(cached_count_);
    const std::uint64_t q = field_->order();
    std::uint64_t count = 1;  // infinity
    Poly cubic = rhs_cubic();
    Poly line = y_line();
    if (field_->characteristic() == 2) {
        for (std::uint64_t i = 0; i < q; ++i) {
            FieldElement x = FieldElement::from_index(field_, i);
            FieldElement L = line.eval(x), C = cubic.eval(x);
            if (L.is_zero())
                count += 1;  // y^2 = C has exactly one root
            else
                count += (absolute_trace(C * (L * L).inverse()) == 0) ? 2 : 0;
        }
    } else {
        // (2y + a1 x + a3)^2 = L^2 + 4C, so the fiber size is 1 + chi(L^2 + 4C)
        std::vector<bool> is_square(q, false);
        for (std::uint64_t i = 0; i < q; ++i) {
            FieldElement e = FieldElement::from_index(field_, i);
            is_square[(e * e).canonical_index()] = true;
        }
        for (std::uint64_t i = 0; i < q; ++i) {
            FieldElement x = FieldElement::from_index(field_, i);
            FieldElement L = line.eval(x);
            FieldElement disc = L * L + ci(field_, 4) * cubic.eval(x);
            if (disc.is_zero())
                count += 1;
            else
                count += is_square[disc.canonical_index()] ? 2 : 0;
        }
    }
    cached_count_ = static_cast<std::int64_t>(count);
    return count;
}

std::int64_t Curve::trace() const {
    return static_cast<std::int64_t>(field_->order()) + 1 -
           static_cast<std::int64_t>(point_count());
}

bool Curve::is_ordinary() const {
    return trace() % static_cast<std::int64_t>(field_->characteristic()) != 0;
}

bool Curve::operator==(const Curve& o) const {
    return field_ == o.field_ && a1_ == o.a1_ && a2_ == o.a2_ && a3_ == o.a3_ && a4_ == o.a4_ &&
           a6_ == o.a6_;
}

bool Curve::operator<(const Curve& o) const {
    if (field_ != o.field_) throw std::invalid_argument("comparing curves over different fields");
    auto key = [](const Curve& c) {
        return std::array<std::uint64_t, 5>{c.a1_.canonical_index(), c.a2_.canonical_index(),
                                            c.a3_.canonical_index(), c.a4_.canonical_index(),
                                            c.a6_.canonical_index()};
    };
    return key(*this) < key(o);
}

std::string Curve::to_string() const {
    std::ostringstream out;
    out << "[" << a1_.to_string() << "," << a2_.to_string() << "," << a3_.to_string() << ","
        << a4_.to_string() << "," << a6_.to_string() << "]";
    return out.str();
}

bool PointXY::operator==(const PointXY& o) const {
    if (infinity || o.infinity) return infinity == o.infinity;
    return x == o.x && y == o.y;
}

bool on_curve(const Curve& E, const PointXY& P) {
    if (P.infinity) return true;
    FieldElement lhs = P.y * P.y + E.a1() * P.x * P.y + E.a3() * P.y;
    FieldElement rhs = P.x * P.x * P.x + E.a2() * P.x * P.x + E.a4() * P.x + E.a6();
    return lhs == rhs;
}

PointXY point_negate(const Curve& E, const PointXY& P) {
    if (P.infinity) return P;
    return PointXY::affine(P.x, -P.y - E.a1() * P.x - E.a3());
}

PointXY point_add(const Curve& E, const PointXY& P, const PointXY& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    Field f = P.x.field();
    if (P.x == Q.x) {
        FieldElement neg_y = -Q.y - E.a1() * Q.x - E.a3();
        if (P.y == neg_y) return PointXY::at_infinity();
    }
    FieldElement lambda;
    if (P.x == Q.x) {
        FieldElement denom = ci(f, 2) * P.y + E.a1() * P.x + E.a3();
        lambda = (ci(f, 3) * P.x * P.x + ci(f, 2) * E.a2() * P.x + E.a4() - E.a1() * P.y) *
                 denom.inverse();
    } else {
        lambda = (Q.y - P.y) * (Q.x - P.x).inverse();
    }
    FieldElement nu = P.y - lambda * P.x;
    FieldElement x3 = lambda * lambda + E.a1() * lambda - E.a2() - P.x - Q.x;
    FieldElement y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
    return PointXY::affine(x3, y3);
}

PointXY scalar_mul(const Curve& E, std::uint64_t n, const PointXY& P) {
    PointXY acc = PointXY::at_infinity();
    PointXY base = P;
    while (n) {
        if (n & 1) acc = point_add(E, acc, base);
        base = point_add(E, base, base);
        n >>= 1;
    }
    return acc;
}

Curve embed_curve(const Embedding& e, const Curve& E) {
    return Curve(e.dst(), e(E.a1()), e(E.a2()), e(E.a3()), e(E.a4()), e(E.a6()));
}

std::vector<PointXY> lift_x(const Curve& E, const FieldElement& x) {
    Field f = x.field();
    FieldElement L = E.a1() * x + E.a3();
    FieldElement C = x * x * x + E.a2() * x * x + E.a4() * x + E.a6();
    std::vector<PointXY> out;
    if (f->characteristic() == 2) {
        // fields on the lifting paths stay small; scan y
        for (std::uint64_t i = 0; i < f->order(); ++i) {
            FieldElement y = FieldElement::from_index(f, i);
            if (y * y + L * y == C) out.push_back(PointXY::affine(x, y));
        }
        return out;
    }
    FieldElement disc = L * L + ci(f, 4) * C;
    auto s = sqrt_in_field(disc);
    if (!s.has_value()) return out;
    FieldElement half = ci(f, 2).inverse();
    FieldElement y1 = (-L + *s) * half;
    FieldElement y2 = (-L - *s) * half;
    out.push_back(PointXY::affine(x, y1));
    if (!(y1 == y2)) out.push_back(PointXY::affine(x, y2));
    std::sort(out.begin(), out.end(), [](const PointXY& a, const PointXY& b) { return a.y < b.y; });
    return out;
}

/*
 * Base cases (general Weierstrass, valid in every characteristic):
 *   t_2 = 1                              (psi_2 = 2y + a1 x + a3)
 *   t_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8
 *   t_4 = 2x^6 + b2 x^5 + 5 b4 x^4 + 10 b6 x^3 + 10 b8 x^2
 *         + (b2 b8 - b4 b6) x + (b4 b8 - b6^2)
 * The recurrences substitute psi_2^2 = B(x) wherever a squared y-factor
 * appears, so every stored entry is univariate in x.
 */
DivisionPolys::DivisionPolys(const Curve& E, unsigned max_index) {
    Field f = E.field();
    if (max_index < 1) max_index = 1;
    t_.resize(max_index + 1, Poly::zero(f));
    const Poly B = E.two_torsion_poly();
    const FieldElement b2 = E.b2(), b4 = E.b4(), b6 = E.b6(), b8 = E.b8();

    t_[0] = Poly::zero(f);
    t_[1] = Poly::one(f);
    if (max_index >= 2) t_[2] = Poly::one(f);
    if (max_index >= 3)
        t_[3] = Poly::from_coeffs(f, {b8, ci(f, 3) * b6, ci(f, 3) * b4, b2, ci(f, 3)});
    if (max_index >= 4)
        t_[4] = Poly::from_coeffs(f, {b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, ci(f, 10) * b8,
                                      ci(f, 10) * b6, ci(f, 5) * b4, b2, ci(f, 2)});

    const Poly B2 = B * B;
    for (unsigned n = 5; n <= max_index; ++n) {
        unsigned m = n / 2;
        if (n & 1) {
            Poly first = t_[m + 2] * t_[m] * t_[m] * t_[m];
            Poly second = t_[m - 1] * t_[m + 1] * t_[m + 1] * t_[m + 1];
            t_[n] = (m % 2 == 0) ? B2 * first - second : first - B2 * second;
        } else {
            t_[n] = t_[m] * (t_[m + 2] * t_[m - 1] * t_[m - 1] - t_[m - 2] * t_[m + 1] * t_[m + 1]);
        }
    }
}

const Poly& DivisionPolys::t(unsigned n) const {
    if (n >= t_.size()) throw std::invalid_argument("division polynomial index out of range");
    return t_[n];
}

Poly DivisionPolys::torsion_x_poly(const Curve& E, unsigned r) {
    Field f = E.field();
    if (r == 2) {
        if (f->characteristic() == 2) {
            Poly line = E.y_line();
            if (line.degree() < 1) return Poly::one(f);  // no affine two-torsion
            return line.monic();
        }
        return E.two_torsion_poly().monic();
    }
    if (r % f->characteristic() == 0)
        throw std::invalid_argument("torsion polynomial degenerate at the characteristic");
    DivisionPolys dp(E, r);
    if (dp.t(r).is_zero()) throw std::logic_error("vanishing division polynomial");
    return dp.t(r).monic();
}

RatFrac mult_xmap(const Curve& E, unsigned n) {
    if (n == 0) throw std::invalid_argument("multiplication by zero has no x-map");
    Field f = E.field();
    if (n == 1) return RatFrac::x(f);
    DivisionPolys dp(E, n + 1);
    const Poly B = E.two_torsion_poly();
    const Poly tn2 = dp.t(n) * dp.t(n);
    const Poly side = dp.t(n - 1) * dp.t(n + 1);
    Poly num(f), den(f);
    if (n & 1) {
        num = Poly::x(f) * tn2 - B * side;
        den = tn2;
    } else {
        den = tn2 * B;
        num = Poly::x(f) * den - side;
    }
    RatFrac out(num, den);
    if (out.map_degree() != n * n)
        throw std::logic_error("multiplication x-map has unexpected degree");
    return out;
}

}  // namespace lattes
