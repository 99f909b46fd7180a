#include <set>

#include "doctest.h"

#include "lattes/detail/rng.hpp"
#include "lattes/fraction.hpp"

using namespace lattes;

namespace {

Poly P(Field f, const std::vector<std::int64_t>& c) { return Poly::from_int_coeffs(f, c); }

RatFrac random_reduced_fraction(Field f, detail::Rng& rng, int max_deg) {
    for (;;) {
        std::vector<FieldElement> nc, dc;
        int dn = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_deg)));
        int dd = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_deg)));
        for (int i = 0; i <= dn; ++i) nc.push_back(FieldElement::from_index(f, rng.below(f->order())));
        for (int i = 0; i <= dd; ++i) dc.push_back(FieldElement::from_index(f, rng.below(f->order())));
        Poly num = Poly::from_coeffs(f, nc), den = Poly::from_coeffs(f, dc);
        if (num.degree() < 1 || den.degree() < 1) continue;
        RatFrac s(num, den);
        if (s.map_degree() >= 1 && !s.num().is_zero()) return s;
    }
}

}  // namespace

TEST_CASE("reduction to normal form") {
    Field f2 = FieldDesc::make(2, 1);
    RatFrac s(P(f2, {0, 1, 0, 1}), P(f2, {0, 0, 1}));  // (x^3+x)/x^2
    CHECK(s.num() == P(f2, {1, 0, 1}));
    CHECK(s.den() == Poly::x(f2));

    Field f3 = FieldDesc::make(3, 1);
    RatFrac t(P(f3, {1, 0, 1}), Poly::x(f3));
    CHECK(t.num() == P(f3, {1, 0, 1}));
    CHECK(t.den() == Poly::x(f3));

    RatFrac u(P(f3, {2, 0, 2}), P(f3, {0, 2}));  // (2x^2+2)/(2x) -> (x^2+1)/x
    CHECK(u == t);
    CHECK(u.map_degree() == 2);

    CHECK_THROWS_AS(RatFrac(Poly::x(f3), Poly::zero(f3)), std::invalid_argument);
}

TEST_CASE("composition") {
    Field f3 = FieldDesc::make(3, 1);
    RatFrac q = RatFrac::parse(f3, "(x^2+1)/x");
    CHECK(q.compose(RatFrac::x(f3)) == q);
    CHECK(RatFrac::x(f3).compose(q) == q);

    RatFrac qq = q.compose(q);  // ((x^2+1)^2 + x^2)/(x(x^2+1)) = (x^4+1)/(x^3+x) mod 3
    CHECK(qq.num() == P(f3, {1, 0, 0, 0, 1}));
    CHECK(qq.den() == P(f3, {0, 1, 0, 1}));
    CHECK(qq.map_degree() == 4);

    // degree multiplicativity on random reduced pairs
    for (Field f : {FieldDesc::make(3, 1), FieldDesc::make(5, 1)}) {
        detail::Rng rng(17);
        for (int trial = 0; trial < 100; ++trial) {
            RatFrac a = random_reduced_fraction(f, rng, 3);
            RatFrac b = random_reduced_fraction(f, rng, 3);
            CHECK(a.compose(b).map_degree() == a.map_degree() * b.map_degree());
        }
    }
}

TEST_CASE("numerator transform") {
    Field f2 = FieldDesc::make(2, 1);
    RatFrac q2 = RatFrac::parse(f2, "(x^2+1)/x");
    CHECK(ts_transform(P(f2, {1, 1, 1}), q2) == P(f2, {1, 1, 1, 1, 1}));

    Field f3 = FieldDesc::make(3, 1);
    RatFrac q3 = RatFrac::parse(f3, "(x^2+1)/x");
    CHECK(ts_transform(P(f3, {1, 0, 1}), q3) == P(f3, {1, 0, 0, 0, 1}));  // x^4+1, reducible

    // degree-1 input: T(x) is the monic scaling of num(S)
    CHECK(ts_transform(Poly::x(f3), q3) == P(f3, {1, 0, 1}));

    // degree law: deg T_S(f) = deg f * map_degree(S) for irreducible f of degree >= 2
    for (unsigned d = 2; d <= 4; ++d) {
        for_each_monic_irreducible(f3, d, [&](const Poly& f) {
            CHECK(ts_transform(f, q3).degree() == static_cast<int>(2 * d));
            return true;
        });
    }
    CHECK_THROWS_AS(ts_transform(Poly::one(f3), q3), std::invalid_argument);
}

TEST_CASE("mobius conjugation") {
    Field f3 = FieldDesc::make(3, 1);
    RatFrac q = RatFrac::parse(f3, "(x^2+1)/x");
    CHECK(mobius_conjugate(q, MobiusMatrix::identity(f3)) == q);

    // m = (0 1; 1 0), i.e. M(x) = 1/x: conjugate of Q is x/(x^2+1)
    MobiusMatrix swap(FieldElement::zero(f3), FieldElement::one(f3), FieldElement::one(f3),
                      FieldElement::zero(f3));
    RatFrac conj = mobius_conjugate(q, swap);
    CHECK(conj == RatFrac::parse(f3, "x/(x^2+1)"));

    // inverse matrix undoes the action; the action composes as a right action
    detail::Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        RatFrac s = random_reduced_fraction(f3, rng, 3);
        FieldElement a = FieldElement::from_index(f3, rng.below(3));
        FieldElement b = FieldElement::from_index(f3, rng.below(3));
        FieldElement c = FieldElement::from_index(f3, rng.below(3));
        FieldElement d = FieldElement::from_index(f3, rng.below(3));
        if ((a * d - b * c).is_zero()) continue;
        MobiusMatrix m1(a, b, c, d);
        MobiusMatrix m2 = swap;
        CHECK(mobius_conjugate(mobius_conjugate(s, m1), m1.inverse()) == s);
        CHECK(mobius_conjugate(mobius_conjugate(s, m1), m2) == mobius_conjugate(s, m1 * m2));
    }
}

TEST_CASE("mobius orbits") {
    Field f2 = FieldDesc::make(2, 1);
    RatFrac s = RatFrac::parse(f2, "x/(x^2+1)");
    MobiusOrbit orbit = mobius_orbit(s);
    CHECK(orbit.members.size() == 6);
    CHECK(orbit.contains(RatFrac::parse(f2, "(x^2+1)/x")));

    // canonical representative is independent of the orbit member it came from
    for (const RatFrac& member : orbit.members)
        CHECK(canonical_mobius_rep(member) == orbit.canonical);

    // the identity fraction is central: its orbit is {x}
    MobiusOrbit xo = mobius_orbit(RatFrac::x(f2));
    CHECK(xo.members.size() == 1);

    // orbit sizes divide |PGL2| = q^3 - q
    Field f3 = FieldDesc::make(3, 1);
    detail::Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        RatFrac r = random_reduced_fraction(f3, rng, 3);
        CHECK(24 % mobius_orbit(r).members.size() == 0);
    }

    CHECK_THROWS_AS(mobius_orbit(RatFrac::x(FieldDesc::make(2, 1)), 4), budget_error);
}

TEST_CASE("pgl2 enumeration size") {
    for (Field f : {FieldDesc::make(2, 1), FieldDesc::make(3, 1), FieldDesc::make(2, 2)}) {
        std::uint64_t n = 0;
        for_each_pgl2(f, [&](const MobiusMatrix&) { ++n; });
        std::uint64_t q = f->order();
        CHECK(n == q * q * q - q);
    }
}

TEST_CASE("fraction text round trip") {
    Field f3 = FieldDesc::make(3, 1);
    RatFrac q = RatFrac::parse(f3, "(x^2+1)/x");
    CHECK(q.num() == P(f3, {1, 0, 1}));
    CHECK(q.to_string() == "(x^2+1)/x");

    Field f5 = FieldDesc::make(5, 1);
    RatFrac t1 = RatFrac::parse(f5, "(2*x^5+x)/(x^4+2)");
    CHECK(t1.num() == P(f5, {0, 1, 0, 0, 0, 2}));
    CHECK(t1.den() == P(f5, {2, 0, 0, 0, 1}));
    CHECK(RatFrac::parse(f5, "(2x^5+x)/(x^4+2)") == t1);  // '*' optional
    CHECK(RatFrac::parse(f5, t1.to_string()) == t1);

    CHECK_THROWS_AS(RatFrac::parse(f5, "x/0"), parse_error);
    CHECK_THROWS_AS(RatFrac::parse(f5, "x^2+"), parse_error);

    detail::Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        RatFrac s = random_reduced_fraction(f5, rng, 4);
        CHECK(RatFrac::parse(f5, s.to_string()) == s);
    }
    Field f4 = FieldDesc::make(2, 2);
    detail::Rng rng4(43);
    for (int trial = 0; trial < 60; ++trial) {
        RatFrac s = random_reduced_fraction(f4, rng4, 3);
        CHECK(RatFrac::parse(f4, s.to_string()) == s);
    }
}
