#include "lattes/families.hpp"

#include <algorithm>

#include "lattes/detail/rng.hpp"

namespace lattes {

namespace {

FieldElement ci(Field f, std::int64_t v) { return FieldElement::from_integer(f, v); }

Poly poly_mod_inverse(const Poly& a, const Poly& mod) {
    // extended Euclid; gcd(a, mod) must be 1
    Field f = a.field();
    Poly r0 = mod, r1 = a % mod;
    Poly s0 = Poly::zero(f), s1 = Poly::one(f);
    while (!r1.is_zero() && r1.degree() > 0) {
        auto [q, r2] = r0.divrem(r1);
        Poly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.is_zero()) throw std::invalid_argument("element not invertible modulo f");
    return (s1 * r1.coeff(0).inverse()) % mod;
}

// Tr(x^j mod f) for j < deg f, from Newton's identities on the monic f.
std::vector<FieldElement> power_traces(const Poly& f) {
    Field fld = f.field();
    const int n = f.degree();
    std::vector<FieldElement> p(static_cast<std::size_t>(n), FieldElement::zero(fld));
    p[0] = ci(fld, n);
    for (int k = 1; k < n; ++k) {
        FieldElement acc = ci(fld, -k) * f.coeff(n - k);
        for (int i = 1; i < k; ++i) acc -= f.coeff(n - i) * p[static_cast<std::size_t>(k - i)];
        p[static_cast<std::size_t>(k)] = acc;
    }
    return p;
}

/*
 * Irreducibility of T_S(f) for quadratic S and irreducible f of degree n >= 2
 * without building the degree-2n polynomial: the roots of T_S(f) satisfy
 * a z^2 + b z + c = 0 over F_q[x]/(f) with a = n2 - X d2, b = n1 - X d1,
 * c = n0 - X d0, and T_S(f) is irreducible exactly when that quadratic is
 * irreducible over the degree-n extension.
 *   odd q:  disc = b^2 - 4ac must be a non-square; the quadratic character in
 *           the extension equals the base character of the norm, and the norm
 *           is the resultant Res(f, disc).
 *   q even: b = 0 forces a square; otherwise the Artin-Schreier criterion
 *           Tr_{F_{q^n}/F_2}(ac/b^2) = 1 decides irreducibility.
 */
bool transform_irreducible_quadratic(const Poly& f, const RatFrac& S) {
    Field fld = f.field();
    const std::uint64_t q = fld->order();
    FieldElement n2 = S.num().coeff(2), n1 = S.num().coeff(1), n0 = S.num().coeff(0);
    FieldElement d2 = S.den().coeff(2), d1 = S.den().coeff(1), d0 = S.den().coeff(0);
    Poly a = Poly::from_coeffs(fld, {n2, -d2});
    Poly b = Poly::from_coeffs(fld, {n1, -d1});
    Poly c = Poly::from_coeffs(fld, {n0, -d0});

    if (fld->characteristic() == 2) {
        if (b.is_zero()) return false;  // z^2 = c/a always has a root
        Poly u = (a * c * poly_mod_inverse(b * b, f)) % f;
        auto traces = power_traces(f);
        FieldElement tr = FieldElement::zero(fld);
        for (int j = 0; j <= u.degree(); ++j)
            tr += u.coeff(j) * traces[static_cast<std::size_t>(j)];
        return absolute_trace(tr) == 1;
    }

    Poly disc = b * b - (a * c) * ci(fld, 4);
    FieldElement norm = resultant(f, disc);
    if (norm.is_zero()) return false;  // repeated root
    return !norm.pow((q - 1) / 2).is_one();
}

}  // namespace

LifespanResult lifespan(const Poly& f, const RatFrac& S, unsigned K) {
    if (K < 1) throw std::invalid_argument("depth must be at least 1");
    if (f.degree() < 1 || !f.is_monic() || !is_irreducible(f))
        throw std::invalid_argument("lifespan needs a monic irreducible seed");
    if (f.field() != S.field()) throw std::invalid_argument("mixed-field lifespan");

    LifespanResult out;
    out.degrees.push_back(static_cast<unsigned>(f.degree()));
    Poly current = f;
    const bool quadratic = S.map_degree() == 2;
    for (unsigned step = 1; step <= K; ++step) {
        bool irr;
        bool constructed = false;
        Poly next = Poly::zero(f.field());
        if (quadratic && current.degree() >= 2) {
            irr = transform_irreducible_quadratic(current, S);
        } else {
            next = ts_transform(current, S);
            constructed = true;
            irr = next.degree() >= 1 && is_irreducible(next);
        }
        if (!irr) {
            out.survived = step - 1;
            out.open = false;
            out.degrees.push_back(constructed
                                      ? static_cast<unsigned>(next.degree())
                                      : static_cast<unsigned>(current.degree()) * S.map_degree());
            return out;
        }
        if (step < K) {
            if (!constructed) next = ts_transform(current, S);
            current = std::move(next);
            out.degrees.push_back(static_cast<unsigned>(current.degree()));
        } else {
            // last tested iterate: the degree law holds since the previous
            // iterate is irreducible of degree >= 2
            out.degrees.push_back(constructed
                                      ? static_cast<unsigned>(next.degree())
                                      : static_cast<unsigned>(current.degree()) * S.map_degree());
        }
    }
    out.survived = K;
    out.open = true;
    return out;
}

namespace {

DensityReport make_report(Field f, unsigned d, const RatFrac& S, unsigned K) {
    DensityReport r;
    r.field = f;
    r.d = d;
    r.S = S;
    r.K = K;
    r.buckets.assign(K + 1, 0);
    return r;
}

}  // namespace

DensityReport lifespan_histogram(Field f, unsigned d, const RatFrac& S, unsigned K,
                                 std::uint64_t budget) {
    DensityReport r = make_report(f, d, S, K);
    for_each_monic_irreducible(
        f, d,
        [&](const Poly& seed) {
            LifespanResult life = lifespan(seed, S, K);
            r.buckets[life.open ? K : life.survived] += 1;
            r.total += 1;
            return true;
        },
        budget);
    if (r.total != count_monic_irreducible(f, d))
        throw std::logic_error("histogram total does not match the irreducible count");
    return r;
}

DensityReport density_exhaustive(Field f, unsigned d, const RatFrac& S, unsigned K,
                                 std::uint64_t budget) {
    return lifespan_histogram(f, d, S, K, budget);
}

DensityReport density_sampled(Field f, unsigned d, const RatFrac& S, unsigned K,
                              std::uint64_t n_samples, std::uint64_t seed) {
    DensityReport r = make_report(f, d, S, K);
    r.sampled = true;
    r.sample_count = n_samples;
    r.seed = seed;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        std::uint64_t state = i + 0x51ab5eedULL;
        std::uint64_t sub_seed = seed ^ detail::splitmix64(state);
        Poly sample = random_monic_irreducible(f, d, sub_seed);
        LifespanResult life = lifespan(sample, S, K);
        r.buckets[life.open ? K : life.survived] += 1;
        r.total += 1;
    }
    return r;
}

bool q_seed_check(const Poly& f) {
    Field fld = f.field();
    if (fld == nullptr || fld->characteristic() != 2)
        throw std::invalid_argument("this seed predicate needs characteristic 2");
    if (f.degree() < 1 || !f.is_monic())
        throw std::invalid_argument("seed predicate needs a monic polynomial of positive degree");
    const int n = f.degree();
    if (f.coeff(0).is_zero()) throw std::invalid_argument("seed polynomial has a zero constant term");
    return absolute_trace(f.coeff(n - 1)) == 1 &&
           absolute_trace(f.coeff(1) * f.coeff(0).inverse()) == 1;
}

bool r_seed_check(const Poly& f) {
    Field fld = f.field();
    if (fld == nullptr || fld->characteristic() == 2)
        throw std::invalid_argument("this seed predicate needs odd characteristic");
    if (f.degree() < 1 || !f.is_monic())
        throw std::invalid_argument("seed predicate needs a monic polynomial of positive degree");
    const std::uint64_t q = fld->order();
    if (q % 4 == 3 && f.degree() % 2 == 1) return false;
    FieldElement prod = f.eval(FieldElement::one(fld)) * f.eval(ci(fld, -1));
    if (prod.is_zero()) return false;
    return !prod.pow((q - 1) / 2).is_one();
}

}  // namespace lattes
