#include <map>
#include <set>

#include "doctest.h"

#include "lattes/detail/rng.hpp"
#include "lattes/poly.hpp"

using namespace lattes;

namespace {

Poly P(Field f, const std::vector<std::int64_t>& c) { return Poly::from_int_coeffs(f, c); }

// exhaustive trial-division oracle for small fields and degrees
bool oracle_irreducible(const Poly& f) {
    int n = f.degree();
    if (n < 1) return false;
    Field fld = f.field();
    const std::uint64_t q = fld->order();
    for (int d = 1; 2 * d <= n; ++d) {
        // all monic polynomials of degree d
        std::uint64_t total = 1;
        for (int i = 0; i < d; ++i) total *= q;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            std::vector<FieldElement> coeffs;
            for (int i = 0; i < d; ++i) {
                coeffs.push_back(FieldElement::from_index(fld, c % q));
                c /= q;
            }
            coeffs.push_back(FieldElement::one(fld));
            Poly div = Poly::from_coeffs(fld, std::move(coeffs));
            if ((f % div).is_zero()) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("basic arithmetic") {
    Field f3 = FieldDesc::make(3, 1);
    Poly x4p1 = P(f3, {1, 0, 0, 0, 1});
    CHECK(gcd(x4p1, x4p1.derivative()) == Poly::one(f3));  // x^4+1 squarefree over F_3

    Field f2 = FieldDesc::make(2, 1);
    auto [q, r] = P(f2, {0, 0, 0, 1}).divrem(Poly::x(f2));
    CHECK(q == P(f2, {0, 0, 1}));
    CHECK(r.is_zero());

    CHECK(P(f2, {1, 1, 1}).eval(FieldElement::one(f2)).is_one());  // 1+1+1 = 1 in F_2

    // divrem identity on random pairs, both prime and extension fields
    for (Field f : {FieldDesc::make(5, 1), FieldDesc::make(2, 2)}) {
        detail::Rng rng(3);
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<FieldElement> ac, bc;
            for (int i = 0; i < 8; ++i) ac.push_back(FieldElement::from_index(f, rng.below(f->order())));
            for (int i = 0; i < 4; ++i) bc.push_back(FieldElement::from_index(f, rng.below(f->order())));
            Poly a = Poly::from_coeffs(f, ac), b = Poly::from_coeffs(f, bc);
            if (b.is_zero()) continue;
            auto [qq, rr] = a.divrem(b);
            CHECK(qq * b + rr == a);
            CHECK(rr.degree() < b.degree());
        }
    }
}

TEST_CASE("irreducibility") {
    Field f2 = FieldDesc::make(2, 1);
    Field f3 = FieldDesc::make(3, 1);
    CHECK(is_irreducible(P(f2, {1, 1, 1})));
    CHECK(!is_irreducible(P(f3, {1, 0, 0, 0, 1})));      // x^4+1 = (x^2+x+2)(x^2+2x+2) mod 3
    CHECK(is_irreducible(P(f3, {1, 1, 1, 1, 1})));       // primitive 5th roots of unity, ord_5(3)=4
    CHECK_THROWS_AS(is_irreducible(Poly::one(f2)), std::invalid_argument);

    // agree with the trial-division oracle on every monic polynomial of degree <= 4
    for (Field f : {f2, f3}) {
        const std::uint64_t q = f->order();
        for (unsigned d = 1; d <= 4; ++d) {
            std::uint64_t total = 1;
            for (unsigned i = 0; i < d; ++i) total *= q;
            for (std::uint64_t code = 0; code < total; ++code) {
                std::uint64_t c = code;
                std::vector<FieldElement> coeffs;
                for (unsigned i = 0; i < d; ++i) {
                    coeffs.push_back(FieldElement::from_index(f, c % q));
                    c /= q;
                }
                coeffs.push_back(FieldElement::one(f));
                Poly cand = Poly::from_coeffs(f, std::move(coeffs));
                CHECK(is_irreducible(cand) == oracle_irreducible(cand));
            }
        }
    }
}

TEST_CASE("factorization") {
    Field f3 = FieldDesc::make(3, 1);
    auto fs = factor(P(f3, {1, 0, 0, 0, 1}));
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].first == P(f3, {2, 1, 1}));
    CHECK(fs[1].first == P(f3, {2, 2, 1}));
    CHECK(fs[0].second == 1);
    CHECK(fs[1].second == 1);

    auto sq = factor(P(f3, {0, 0, 1}));  // x^2
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].first == Poly::x(f3));
    CHECK(sq[0].second == 2);

    auto mixed = factor(P(f3, {0, 1, 0, 1}));  // x^3+x = x (x^2+1)
    REQUIRE(mixed.size() == 2);
    CHECK(mixed[0].first == Poly::x(f3));
    CHECK(mixed[1].first == P(f3, {1, 0, 1}));

    // char-p multiplicities: (x^2+x+1)^4 over F_2 and x^9 - x^3... pth powers
    Field f2 = FieldDesc::make(2, 1);
    Poly g = P(f2, {1, 1, 1});
    auto quartic = factor(g.pow(4));
    REQUIRE(quartic.size() == 1);
    CHECK(quartic[0].first == g);
    CHECK(quartic[0].second == 4);

    // product of factors^multiplicities reproduces the input (random products)
    detail::Rng rng(11);
    for (Field f : {FieldDesc::make(5, 1), FieldDesc::make(2, 2)}) {
        for (int trial = 0; trial < 40; ++trial) {
            Poly prod = Poly::one(f);
            for (int k = 0; k < 3; ++k) {
                Poly irr = random_monic_irreducible(f, 1 + static_cast<unsigned>(rng.below(3)),
                                                    rng.next());
                prod = prod * irr.pow(1 + static_cast<unsigned>(rng.below(2)));
            }
            Poly rebuilt = Poly::one(f);
            for (const auto& [fi, mult] : factor(prod, trial)) {
                CHECK(is_irreducible(fi));
                rebuilt = rebuilt * fi.pow(mult);
            }
            CHECK(rebuilt == prod.monic());
        }
    }
}

TEST_CASE("roots") {
    Field f5 = FieldDesc::make(5, 1);
    Poly f = P(f5, {0, 1}) * P(f5, {4, 1}) * P(f5, {2, 0, 1});  // x (x+4) (x^2+2)
    auto roots = poly_roots(f);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == FieldElement::from_integer(f5, 0));
    CHECK(roots[1] == FieldElement::from_integer(f5, 1));  // -4 = 1
}

TEST_CASE("irreducible enumeration and counting") {
    Field f3 = FieldDesc::make(3, 1);
    std::set<Poly> quads;
    for_each_monic_irreducible(f3, 2, [&](const Poly& p) {
        quads.insert(p);
        return true;
    });
    std::set<Poly> expected{P(f3, {1, 0, 1}), P(f3, {2, 1, 1}), P(f3, {2, 2, 1})};
    CHECK(quads == expected);

    Field f2 = FieldDesc::make(2, 1);
    unsigned count2 = 0;
    Poly only(f2);
    for_each_monic_irreducible(f2, 2, [&](const Poly& p) {
        only = p;
        ++count2;
        return true;
    });
    CHECK(count2 == 1);
    CHECK(only == P(f2, {1, 1, 1}));

    CHECK(count_monic_irreducible(f3, 6) == 116);  // (3^6 - 3^3 - 3^2 + 3)/6

    // enumerated counts match the necklace formula
    for (Field f : {FieldDesc::make(2, 1), FieldDesc::make(3, 1), FieldDesc::make(5, 1)}) {
        for (unsigned d = 1; d <= 6; ++d) {
            std::uint64_t n = 0;
            for_each_monic_irreducible(f, d, [&](const Poly&) {
                ++n;
                return true;
            });
            CHECK(n == count_monic_irreducible(f, d));
        }
    }

    CHECK_THROWS_AS(for_each_monic_irreducible(FieldDesc::make(5, 1), 12,
                                               [](const Poly&) { return true; }),
                    budget_error);
}

TEST_CASE("random irreducible sampling") {
    Field f2 = FieldDesc::make(2, 1);
    CHECK(random_monic_irreducible(f2, 2, 9) == P(f2, {1, 1, 1}));  // unique target

    Field f7 = FieldDesc::make(7, 1);
    Poly a = random_monic_irreducible(f7, 4, 123);
    Poly b = random_monic_irreducible(f7, 4, 123);
    CHECK(a == b);
    CHECK(is_irreducible(a));
    CHECK(a.degree() == 4);
    CHECK(a.is_monic());
}

TEST_CASE("resultant") {
    Field f7 = FieldDesc::make(7, 1);
    // res(f, g) = lc(f)^{deg g} * prod g(root_i) for monic f: check against direct products
    Poly f = P(f7, {3, 1}) * P(f7, {5, 1});  // roots -3, -5
    Poly g = P(f7, {1, 2, 1});
    FieldElement expected = g.eval(FieldElement::from_integer(f7, -3)) *
                            g.eval(FieldElement::from_integer(f7, -5));
    CHECK(resultant(f, g) == expected);
    // common root => 0
    CHECK(resultant(f, P(f7, {3, 1})).is_zero());
}

TEST_CASE("polynomial text round trip") {
    Field f5 = FieldDesc::make(5, 1);
    Poly p = Poly::parse(f5, "x^4+2*x^2+1");
    CHECK(p == P(f5, {1, 0, 2, 0, 1}));
    CHECK(p.to_string() == "x^4+2x^2+1");
    CHECK(Poly::parse(f5, p.to_string()) == p);

    Field f4 = FieldDesc::make(2, 2);
    Poly q = Poly::parse(f4, "(t+1)*x^2+t");
    CHECK(q.coeff(2) == FieldElement::from_coeffs(f4, {1, 1}));
    CHECK(q.coeff(0) == FieldElement::generator(f4));
    CHECK(Poly::parse(f4, q.to_string()) == q);

    CHECK_THROWS_AS(Poly::parse(f5, "x^2++1"), parse_error);
    CHECK_THROWS_AS(Poly::parse(f5, "t+1"), parse_error);  // no generator over a prime field
}
