#include <algorithm>
#include <functional>
#include <set>

#include "lattes/curve.hpp"

namespace lattes {

namespace {

FieldElement ci(Field f, std::int64_t v) { return FieldElement::from_integer(f, v); }

/*
 * Function field of a curve: elements a(x) + b(x) y modulo
 * y^2 = C(x) - L(x) y with C the right-hand cubic and L = a1 x + a3.
 */
struct FnCtx {
    Field field;
    RatFrac C, L;

    explicit FnCtx(const Curve& E)
        : field(E.field()),
          C(RatFrac::from_poly(E.rhs_cubic())),
          L(RatFrac::from_poly(E.y_line())) {}
};

struct Fn {
    RatFrac a, b;

    static Fn constant(const FnCtx& ctx, const FieldElement& c) {
        return Fn{RatFrac::constant(c), RatFrac::constant(FieldElement::zero(ctx.field))};
    }
    static Fn x_coord(const FnCtx& ctx) {
        return Fn{RatFrac::x(ctx.field), RatFrac::constant(FieldElement::zero(ctx.field))};
    }
    static Fn y_coord(const FnCtx& ctx) {
        return Fn{RatFrac::constant(FieldElement::zero(ctx.field)),
                  RatFrac::constant(FieldElement::one(ctx.field))};
    }
    bool is_zero() const { return a.num().is_zero() && b.num().is_zero(); }
};

Fn fn_add(const Fn& u, const Fn& v) { return Fn{u.a + v.a, u.b + v.b}; }
Fn fn_sub(const Fn& u, const Fn& v) { return Fn{u.a - v.a, u.b - v.b}; }

Fn fn_mul(const FnCtx& ctx, const Fn& u, const Fn& v) {
    // (a1 + b1 y)(a2 + b2 y) with y^2 = C - L y
    RatFrac bb = u.b * v.b;
    return Fn{u.a * v.a + bb * ctx.C, u.a * v.b + u.b * v.a - bb * ctx.L};
}

Fn fn_inv(const FnCtx& ctx, const Fn& u) {
    // conjugate: a + b*ybar with ybar = -y - L; norm lies in F(x)
    RatFrac norm = u.a * u.a - u.a * u.b * ctx.L - u.b * u.b * ctx.C;
    if (norm.num().is_zero()) throw std::invalid_argument("inverting the zero function");
    return Fn{(u.a - u.b * ctx.L) / norm, -(u.b / norm)};
}

Fn fn_div(const FnCtx& ctx, const Fn& u, const Fn& v) { return fn_mul(ctx, u, fn_inv(ctx, v)); }

RatFrac descend_fraction(const Embedding& e, const RatFrac& s) {
    auto descend_poly = [&](const Poly& p) {
        std::vector<FieldElement> out;
        out.reserve(static_cast<std::size_t>(p.degree() + 1));
        for (int i = 0; i <= p.degree(); ++i) {
            auto pre = e.preimage(p.coeff(i));
            if (!pre.has_value())
                throw std::logic_error("coefficient does not descend to the base field");
            out.push_back(*pre);
        }
        return Poly::from_coeffs(e.src(), std::move(out));
    };
    return RatFrac(descend_poly(s.num()), descend_poly(s.den()));
}

struct KernelPoints {
    Field ext;                  // field of definition of the kernel points
    Curve curve_ext;            // E embedded over ext
    const Embedding* embedding; // base -> ext
    std::vector<PointXY> points;  // the ell-1 nonzero kernel points, i*P first
};

// Lift a generator of the order-ell subgroup cut out by the kernel polynomial
// and validate that the polynomial matches the subgroup's x-coordinates.
KernelPoints kernel_points(const Curve& E, const Poly& h, unsigned ell) {
    Field base = E.field();
    if (h.degree() < 1 || !h.is_monic())
        throw std::invalid_argument("kernel polynomial must be monic of positive degree");
    if (ell == 2) {
        if (h.degree() != 1) throw std::invalid_argument("degree-2 kernel polynomial must be linear");
    } else {
        if (2 * static_cast<unsigned>(h.degree()) + 1 != ell)
            throw std::invalid_argument("kernel polynomial degree does not match ell");
    }

    // field of the generator's x-coordinate
    auto factors = factor(h, /*seed=*/0x5e1);
    unsigned r = static_cast<unsigned>(factors.front().first.degree());
    for (const auto& [fi, mult] : factors) {
        if (mult != 1) throw std::invalid_argument("kernel polynomial is not squarefree");
        r = std::min(r, static_cast<unsigned>(fi.degree()));
    }
    Poly gen_factor = factors.front().first;
    for (const auto& [fi, mult] : factors)
        if (static_cast<unsigned>(fi.degree()) == r) {
            gen_factor = fi;
            break;
        }

    Field fx = FieldDesc::make(base->characteristic(), base->degree() * r);
    const Embedding* e = &embed(base, fx);
    Curve Ex = embed_curve(*e, E);
    std::vector<FieldElement> roots = poly_roots(embed_poly(*e, gen_factor), 0x5e1);
    if (roots.empty()) throw std::logic_error("kernel factor has no root in its splitting field");
    FieldElement alpha = roots.front();

    std::vector<PointXY> lifts = lift_x(Ex, alpha);
    if (lifts.empty()) {
        // y needs a quadratic extension on top
        Field fy = FieldDesc::make(base->characteristic(), base->degree() * r * 2);
        const Embedding& up = embed(fx, fy);
        e = &embed(base, fy);
        Ex = embed_curve(*e, E);
        alpha = up(alpha);
        lifts = lift_x(Ex, alpha);
        if (lifts.empty()) throw std::logic_error("kernel point not found in quadratic extension");
        fx = fy;
    }
    PointXY P = lifts.front();

    if (!scalar_mul(Ex, ell, P).infinity || P.infinity)
        throw std::invalid_argument("kernel polynomial root does not give an order-ell point");

    KernelPoints out{fx, Ex, e, {}};
    out.points.reserve(ell - 1);
    PointXY acc = P;
    for (unsigned i = 1; i < ell; ++i) {
        if (acc.infinity) throw std::invalid_argument("kernel point has order below ell");
        out.points.push_back(acc);
        acc = point_add(Ex, acc, P);
    }

    // the x-coordinates of P, 2P, ..., ((ell-1)/2) P are exactly the roots of h
    Poly hx = embed_poly(*e, h);
    std::set<std::uint64_t> xs;
    unsigned half = (ell == 2) ? 1 : (ell - 1) / 2;
    for (unsigned i = 0; i < half; ++i) {
        if (!hx.eval(out.points[i].x).is_zero())
            throw std::invalid_argument("kernel polynomial does not vanish on the subgroup");
        xs.insert(out.points[i].x.canonical_index());
    }
    if (xs.size() != half || static_cast<unsigned>(h.degree()) != half)
        throw std::invalid_argument("kernel polynomial does not match the subgroup");
    return out;
}

}  // namespace

std::vector<Poly> kernel_candidates(const Curve& E, unsigned ell) {
    Field f = E.field();
    const std::uint64_t p = f->characteristic();
    std::vector<Poly> out;
    if (ell < 2) throw std::invalid_argument("ell must be a prime");
    if (ell == 2) {
        Poly radical = (p == 2) ? E.y_line() : E.two_torsion_poly();
        if (radical.degree() < 1) return out;  // no affine two-torsion (char 2, a1 = 0)
        for (const FieldElement& x0 : poly_roots(radical, 0x2f)) {
            Poly h = Poly::from_coeffs(f, {-x0, FieldElement::one(f)});
            out.push_back(h);
        }
        return out;
    }
    if (ell % 2 == 0 || ell == p)
        throw std::invalid_argument("kernel candidates need ell = 2 or an odd prime != p");

    Poly t_ell = DivisionPolys::torsion_x_poly(E, ell);
    auto factors = factor(t_ell, 0x2f);
    const unsigned target = (ell - 1) / 2;

    // monic products of distinct irreducible factors with total degree (ell-1)/2
    std::vector<Poly> parts;
    for (const auto& [fi, mult] : factors) {
        (void)mult;
        parts.push_back(fi);
    }
    std::vector<Poly> candidates;
    std::function<void(std::size_t, unsigned, Poly)> build = [&](std::size_t i, unsigned deg,
                                                                 Poly acc) {
        if (deg == target) {
            candidates.push_back(acc);
            return;
        }
        if (i >= parts.size()) return;
        build(i + 1, deg, acc);
        unsigned di = static_cast<unsigned>(parts[i].degree());
        if (deg + di <= target) build(i + 1, deg + di, acc * parts[i]);
    };
    build(0, 0, Poly::one(f));

    for (const Poly& h : candidates) {
        try {
            kernel_points(E, h, ell);
            out.push_back(h);
        } catch (const std::invalid_argument&) {
            // candidate does not cut out a rational cyclic subgroup
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/*
 * Velu's isogeny from the translation sums
 *   X(P) = x(P) + sum_{T in K*} (x(P+T) - x(T)),
 *   Y(P) = y(P) + sum_{T in K*} (y(P+T) - y(T)),
 * evaluated on the generic point (x, y) in the function field over the
 * extension containing the kernel, then descended to the base field.
 * Codomain: a4 - 5v, a6 - b2 v - 7w with the classical v, w sums.
 */
XIsogeny velu(const Curve& E, const Poly& kernel_poly, unsigned ell) {
    Field base = E.field();
    KernelPoints kp = kernel_points(E, kernel_poly, ell);
    const Curve& Ex = kp.curve_ext;
    Field fx = kp.ext;
    FnCtx ctx(Ex);

    const Fn X = Fn::x_coord(ctx);
    const Fn Y = Fn::y_coord(ctx);
    Fn SX = X, SY = Y;
    for (const PointXY& T : kp.points) {
        // chord between the generic point and T
        Fn lambda = fn_div(ctx, fn_sub(Y, Fn::constant(ctx, T.y)),
                           fn_sub(X, Fn::constant(ctx, T.x)));
        Fn nu = fn_sub(Y, fn_mul(ctx, lambda, X));
        // x3 = lambda^2 + a1 lambda - a2 - x - xT
        Fn x3 = fn_sub(fn_add(fn_mul(ctx, lambda, lambda),
                              fn_mul(ctx, Fn::constant(ctx, Ex.a1()), lambda)),
                       fn_add(Fn::constant(ctx, Ex.a2() + T.x), X));
        // y3 = -(lambda + a1) x3 - nu - a3
        Fn y3 = fn_sub(fn_sub(fn_mul(ctx, fn_add(lambda, Fn::constant(ctx, Ex.a1())),
                                     Fn{-x3.a, -x3.b}),
                              nu),
                       Fn::constant(ctx, Ex.a3()));
        SX = fn_add(SX, fn_sub(x3, Fn::constant(ctx, T.x)));
        SY = fn_add(SY, fn_sub(y3, Fn::constant(ctx, T.y)));
    }
    if (!SX.b.num().is_zero()) throw std::logic_error("isogeny x-map has a y component");

    // codomain from the v, w sums over one representative per +-pair
    FieldElement v = FieldElement::zero(fx), w = FieldElement::zero(fx);
    unsigned half = (ell == 2) ? 1 : (ell - 1) / 2;
    for (unsigned i = 0; i < half; ++i) {
        const PointXY& T = kp.points[i];
        FieldElement gx = ci(fx, 3) * T.x * T.x + ci(fx, 2) * Ex.a2() * T.x + Ex.a4() -
                          Ex.a1() * T.y;
        FieldElement gy = -(ci(fx, 2) * T.y + Ex.a1() * T.x + Ex.a3());
        FieldElement vT = gy.is_zero() ? gx : ci(fx, 2) * gx - Ex.a1() * gy;
        v += vT;
        w += gy * gy + T.x * vT;
    }

    const Embedding& e = *kp.embedding;
    auto down = [&](const FieldElement& a) {
        auto pre = e.preimage(a);
        if (!pre.has_value()) throw std::logic_error("codomain coefficient does not descend");
        return *pre;
    };
    Curve codomain(base, E.a1(), E.a2(), E.a3(), down(e(E.a4()) - ci(fx, 5) * v),
                   down(e(E.a6()) - e(E.b2()) * v - ci(fx, 7) * w));

    XIsogeny phi{E,           codomain,
                 descend_fraction(e, SX.a), ell,
                 kernel_poly,  descend_fraction(e, SY.a),
                 descend_fraction(e, SY.b)};

    if (phi.xmap.map_degree() != ell) throw std::logic_error("isogeny x-map has wrong degree");
    Poly expected_den = (ell == 2) ? kernel_poly : kernel_poly * kernel_poly;
    if (!(phi.xmap.den() == expected_den))
        throw std::logic_error("isogeny denominator does not match the kernel polynomial");
    if (!verify_curve_identity(phi))
        throw std::invalid_argument("invalid kernel polynomial (identity check fails)");
    return phi;
}

bool verify_curve_identity(const XIsogeny& phi) {
    FnCtx ctx(phi.domain);
    Field f = phi.domain.field();
    Fn X{phi.xmap, RatFrac::constant(FieldElement::zero(f))};
    Fn Y{phi.y_a, phi.y_b};
    const Curve& C = phi.codomain;
    Fn lhs = fn_add(fn_mul(ctx, Y, Y),
                    fn_add(fn_mul(ctx, fn_mul(ctx, Fn::constant(ctx, C.a1()), X), Y),
                           fn_mul(ctx, Fn::constant(ctx, C.a3()), Y)));
    Fn X2 = fn_mul(ctx, X, X);
    Fn rhs = fn_add(fn_mul(ctx, X2, X),
                    fn_add(fn_mul(ctx, Fn::constant(ctx, C.a2()), X2),
                           fn_add(fn_mul(ctx, Fn::constant(ctx, C.a4()), X),
                                  Fn::constant(ctx, C.a6()))));
    return fn_sub(lhs, rhs).is_zero();
}

namespace {

// Weierstrass coordinate change x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
Curve curve_transform(const Curve& E, const FieldElement& u, const FieldElement& r,
                      const FieldElement& s, const FieldElement& t) {
    Field f = E.field();
    FieldElement iu = u.inverse();
    FieldElement iu2 = iu * iu, iu3 = iu2 * iu;
    FieldElement iu4 = iu2 * iu2, iu6 = iu3 * iu3;
    FieldElement a1 = (E.a1() + ci(f, 2) * s) * iu;
    FieldElement a2 = (E.a2() - s * E.a1() + ci(f, 3) * r - s * s) * iu2;
    FieldElement a3 = (E.a3() + r * E.a1() + ci(f, 2) * t) * iu3;
    FieldElement a4 =
        (E.a4() - s * E.a3() + ci(f, 2) * r * E.a2() - (t + r * s) * E.a1() + ci(f, 3) * r * r -
         ci(f, 2) * s * t) *
        iu4;
    FieldElement a6 =
        (E.a6() + r * E.a4() + r * r * E.a2() + r * r * r - t * E.a3() - t * t - r * t * E.a1()) *
        iu6;
    return Curve(f, a1, a2, a3, a4, a6);
}

RatFrac iso_xmap(Field f, const FieldElement& u, const FieldElement& r) {
    // (x - r)/u^2
    FieldElement iu2 = (u * u).inverse();
    Poly num = Poly::from_coeffs(f, {-r * iu2, iu2});
    return RatFrac(std::move(num), Poly::one(f));
}

}  // namespace

std::vector<RatFrac> find_isomorphisms(const Curve& E, const Curve& E2) {
    Field f = E.field();
    if (f != E2.field()) throw std::invalid_argument("isomorphisms need a common field");
    const std::uint64_t q = f->order();
    std::vector<RatFrac> out;
    if (f->characteristic() == 2) {
        for (std::uint64_t ui = 1; ui < q; ++ui)
            for (std::uint64_t ri = 0; ri < q; ++ri)
                for (std::uint64_t si = 0; si < q; ++si)
                    for (std::uint64_t ti = 0; ti < q; ++ti) {
                        FieldElement u = FieldElement::from_index(f, ui);
                        FieldElement r = FieldElement::from_index(f, ri);
                        FieldElement s = FieldElement::from_index(f, si);
                        FieldElement t = FieldElement::from_index(f, ti);
                        if (curve_transform(E, u, r, s, t) == E2) out.push_back(iso_xmap(f, u, r));
                    }
        std::sort(out.begin(), out.end());
        return out;
    }
    // char >= 3: s and t are determined by (u, r) via the a1 and a3 equations
    FieldElement half = ci(f, 2).inverse();
    for (std::uint64_t ui = 1; ui < q; ++ui)
        for (std::uint64_t ri = 0; ri < q; ++ri) {
            FieldElement u = FieldElement::from_index(f, ui);
            FieldElement r = FieldElement::from_index(f, ri);
            FieldElement s = (u * E2.a1() - E.a1()) * half;
            FieldElement u3 = u * u * u;
            FieldElement t = (u3 * E2.a3() - E.a3() - r * E.a1()) * half;
            if (curve_transform(E, u, r, s, t) == E2) out.push_back(iso_xmap(f, u, r));
        }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_cyclic_kernel_xmap(const Curve& E, const RatFrac& S) {
    const unsigned n = S.map_degree();
    if (n == 0) throw std::invalid_argument("constant fraction is not an isogeny x-map");
    const std::uint64_t p = E.field()->characteristic();
    unsigned m = n;
    for (unsigned r = 2; r * r <= m; ++r)
        while (m % r == 0) {
            m /= r;
            if (r != p) {
                Poly tor = DivisionPolys::torsion_x_poly(E, r);
                if ((S.den() % tor).is_zero()) return false;
            }
        }
    if (m > 1 && m != p) {
        Poly tor = DivisionPolys::torsion_x_poly(E, m);
        if ((S.den() % tor).is_zero()) return false;
    }
    return true;
}

std::vector<Curve> isomorphism_class_reps(Field f) {
    const std::uint64_t q = f->order();
    std::vector<Curve> reps;
    std::set<std::array<std::uint64_t, 5>> seen;
    auto key = [](const Curve& c) {
        return std::array<std::uint64_t, 5>{c.a1().canonical_index(), c.a2().canonical_index(),
                                            c.a3().canonical_index(), c.a4().canonical_index(),
                                            c.a6().canonical_index()};
    };

    if (f->characteristic() == 2) {
        // first unseen tuple in canonical order is a class representative;
        // mark its whole (u, r, s, t) orbit
        for (std::uint64_t i1 = 0; i1 < q; ++i1)
            for (std::uint64_t i2 = 0; i2 < q; ++i2)
                for (std::uint64_t i3 = 0; i3 < q; ++i3)
                    for (std::uint64_t i4 = 0; i4 < q; ++i4)
                        for (std::uint64_t i6 = 0; i6 < q; ++i6) {
                            std::array<std::uint64_t, 5> k{i1, i2, i3, i4, i6};
                            if (seen.count(k)) continue;
                            try {
                                Curve E(f, FieldElement::from_index(f, i1),
                                        FieldElement::from_index(f, i2),
                                        FieldElement::from_index(f, i3),
                                        FieldElement::from_index(f, i4),
                                        FieldElement::from_index(f, i6));
                                reps.push_back(E);
                                for (std::uint64_t ui = 1; ui < q; ++ui)
                                    for (std::uint64_t ri = 0; ri < q; ++ri)
                                        for (std::uint64_t si = 0; si < q; ++si)
                                            for (std::uint64_t ti = 0; ti < q; ++ti)
                                                seen.insert(key(curve_transform(
                                                    E, FieldElement::from_index(f, ui),
                                                    FieldElement::from_index(f, ri),
                                                    FieldElement::from_index(f, si),
                                                    FieldElement::from_index(f, ti))));
                            } catch (const std::invalid_argument&) {
                                // singular tuple
                            }
                        }
        return reps;
    }

    // char >= 3: normalize to a1 = a3 = 0; the residual transforms are (u, r)
    for (std::uint64_t i2 = 0; i2 < q; ++i2)
        for (std::uint64_t i4 = 0; i4 < q; ++i4)
            for (std::uint64_t i6 = 0; i6 < q; ++i6) {
                std::array<std::uint64_t, 5> k{0, i2, 0, i4, i6};
                if (seen.count(k)) continue;
                FieldElement zero = FieldElement::zero(f);
                FieldElement A2 = FieldElement::from_index(f, i2);
                FieldElement A4 = FieldElement::from_index(f, i4);
                FieldElement A6 = FieldElement::from_index(f, i6);
                try {
                    Curve E(f, zero, A2, zero, A4, A6);
                    reps.push_back(E);
                    for (std::uint64_t ui = 1; ui < q; ++ui)
                        for (std::uint64_t ri = 0; ri < q; ++ri)
                            seen.insert(key(curve_transform(E, FieldElement::from_index(f, ui),
                                                            FieldElement::from_index(f, ri), zero,
                                                            zero)));
                } catch (const std::invalid_argument&) {
                    // singular tuple
                }
            }
    return reps;
}

}  // namespace lattes
