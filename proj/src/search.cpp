#include "lattes/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace lattes {

RatFrac verschiebung_xmap(const Curve& E) {
    if (!E.is_ordinary())
        throw std::invalid_argument("Verschiebung is inseparable on a supersingular curve");
    Field f = E.field();
    const std::uint64_t q = f->order();
    RatFrac xq = mult_xmap(E, static_cast<unsigned>(q));

    // [q] factors through Frobenius: every exponent of the reduced fraction is
    // a multiple of q, and stripping x -> x^q leaves the Verschiebung x-map.
    auto deflate = [&](const Poly& p) {
        std::vector<FieldElement> out;
        out.reserve(static_cast<std::size_t>(p.degree() / static_cast<int>(q)) + 1);
        for (int i = 0; i <= p.degree(); ++i) {
            if (!p.coeff(i).is_zero() && i % static_cast<int>(q) != 0)
                throw std::logic_error("multiplication-by-q exponent not divisible by q");
            if (i % static_cast<int>(q) == 0) out.push_back(p.coeff(i));
        }
        return Poly::from_coeffs(f, std::move(out));
    };
    RatFrac out(deflate(xq.num()), deflate(xq.den()));
    if (out.map_degree() != q) throw std::logic_error("Verschiebung x-map has wrong degree");
    return out;
}

namespace {

void for_each_nonsingular_curve(Field f, const std::function<void(const Curve&)>& visit) {
    const std::uint64_t q = f->order();
    for (std::uint64_t i1 = 0; i1 < q; ++i1)
        for (std::uint64_t i2 = 0; i2 < q; ++i2)
            for (std::uint64_t i3 = 0; i3 < q; ++i3)
                for (std::uint64_t i4 = 0; i4 < q; ++i4)
                    for (std::uint64_t i6 = 0; i6 < q; ++i6) {
                        try {
                            Curve E(f, FieldElement::from_index(f, i1),
                                    FieldElement::from_index(f, i2),
                                    FieldElement::from_index(f, i3),
                                    FieldElement::from_index(f, i4),
                                    FieldElement::from_index(f, i6));
                            visit(E);
                        } catch (const std::invalid_argument&) {
                            // singular tuple
                        }
                    }
}

bool endo_has_cyclic_square(const Curve& E, const RatFrac& s) {
    return is_cyclic_kernel_xmap(E, s.compose(s));
}

}  // namespace

CensusResult verschiebung_census(Field f, bool force) {
    const std::uint64_t q = f->order();
    static const std::set<std::uint64_t> desk_scale{2, 3, 4, 5, 7, 8, 11};
    if (!force && !desk_scale.count(q))
        throw budget_error("Verschiebung census supports q in {2,3,4,5,7,8,11}; "
                           "pass force to override");

    // distinct Verschiebung fractions over all ordinary curves
    std::set<RatFrac> raw;
    for_each_nonsingular_curve(f, [&](const Curve& E) {
        if (!E.is_ordinary()) return;
        raw.insert(verschiebung_xmap(E));
    });

    // close under PGL2 conjugation, one orbit at a time
    std::set<RatFrac> covered;
    CensusResult result;
    for (const RatFrac& s : raw) {
        if (covered.count(s)) continue;
        MobiusOrbit orbit = mobius_orbit(s);
        covered.insert(orbit.members.begin(), orbit.members.end());
        CandidateFraction c;
        c.field = f;
        c.fraction = orbit.canonical;
        c.orbit_size = orbit.members.size();
        c.degree = orbit.canonical.map_degree();
        c.source = "verschiebung";
        c.odd_degree = (c.degree % 2) == 1;
        // deg = q^2 has no prime divisor other than p, and the p-part of a
        // separable kernel on an ordinary curve is cyclic
        c.cyclic_square = true;
        result.orbits.push_back(c);
    }
    result.total = covered.size();
    std::sort(result.orbits.begin(), result.orbits.end(),
              [](const CandidateFraction& a, const CandidateFraction& b) {
                  return a.fraction < b.fraction;
              });
    return result;
}

bool contains_equivalent(const std::vector<CandidateFraction>& candidates, const RatFrac& s) {
    RatFrac canon = canonical_mobius_rep(s);
    for (const auto& c : candidates)
        if (c.fraction == canon) return true;
    return false;
}

std::vector<CandidateFraction> endo_prime_search(Field f, unsigned ell) {
    const std::uint64_t p = f->characteristic();
    if (ell != 2 && (ell % 2 == 0 || ell == p))
        throw std::invalid_argument("prime search needs ell = 2 or an odd prime != p");

    std::map<RatFrac, CandidateFraction> found;  // canonical fraction -> record
    auto emit = [&](const RatFrac& s, const std::string& source) {
        MobiusOrbit orbit = mobius_orbit(s);
        if (found.count(orbit.canonical)) return;
        CandidateFraction c;
        c.field = f;
        c.fraction = orbit.canonical;
        c.orbit_size = orbit.members.size();
        c.degree = s.map_degree();
        c.source = source;
        c.cyclic_square = true;
        c.odd_degree = (c.degree % 2) == 1;
        found.emplace(orbit.canonical, std::move(c));
    };

    for (const Curve& E : isomorphism_class_reps(f)) {
        for (const Poly& h : kernel_candidates(E, ell)) {
            XIsogeny phi = velu(E, h, ell);
            std::vector<RatFrac> isos = find_isomorphisms(phi.codomain, E);
            if (isos.empty()) continue;  // not an endomorphism up to isomorphism
            // cyclicity of phi o phi is independent of the closing isomorphism
            // (the endomorphism ring is commutative), so one witness suffices
            if (!endo_has_cyclic_square(E, isos.front().compose(phi.xmap))) continue;
            const std::string source = "prime_endo(" + std::to_string(ell) + ")";
            // the isogeny's own x-coordinate fraction, plus every closed form
            emit(phi.xmap, source);
            for (const RatFrac& iso : isos) emit(iso.compose(phi.xmap), source);
        }
    }
    std::vector<CandidateFraction> out;
    out.reserve(found.size());
    for (auto& [k, v] : found) out.push_back(std::move(v));
    return out;
}

namespace {

struct GraphEdge {
    std::size_t target;
    RatFrac xmap;   // source rep -> target rep, isomorphism folded in
    unsigned ell;
};

}  // namespace

std::vector<CandidateFraction> endo_cycle_search(Field f, const CycleSearchParams& params) {
    const std::uint64_t p = f->characteristic();
    std::vector<Curve> reps = isomorphism_class_reps(f);

    // rational ell-isogeny edges between class representatives
    std::vector<std::vector<GraphEdge>> edges(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (unsigned ell : params.primes) {
            if (ell != 2 && (ell % 2 == 0 || ell == p)) continue;  // odd ell = p unsupported
            if (ell > params.max_degree) continue;
            for (const Poly& h : kernel_candidates(reps[i], ell)) {
                XIsogeny phi = velu(reps[i], h, ell);
                for (std::size_t j = 0; j < reps.size(); ++j) {
                    std::vector<RatFrac> isos = find_isomorphisms(phi.codomain, reps[j]);
                    for (const RatFrac& iso : isos)
                        edges[i].push_back(GraphEdge{j, iso.compose(phi.xmap), ell});
                    if (!isos.empty()) break;  // representatives are pairwise non-isomorphic
                }
            }
        }
    }

    std::map<RatFrac, CandidateFraction> found;
    // depth-first walk over bounded-degree paths returning to the start class
    std::function<void(std::size_t, std::size_t, unsigned, const RatFrac&, std::string&,
                       unsigned)>
        walk = [&](std::size_t start, std::size_t node, unsigned degree, const RatFrac& acc,
                   std::string& path, unsigned len) {
            if (len > 0 && node == start) {
                // the composite itself plus every closure by an automorphism
                std::vector<RatFrac> closed{acc};
                for (const RatFrac& aut : find_isomorphisms(reps[start], reps[start]))
                    closed.push_back(aut.compose(acc));
                for (const RatFrac& endo : closed) {
                    if (!is_cyclic_kernel_xmap(reps[start], endo)) continue;
                    // exclude plain multiplication maps
                    unsigned root = static_cast<unsigned>(std::llround(std::sqrt(degree)));
                    if (root * root == degree && endo == mult_xmap(reps[start], root)) continue;
                    MobiusOrbit orbit = mobius_orbit(endo);
                    if (!found.count(orbit.canonical)) {
                        CandidateFraction c;
                        c.field = f;
                        c.fraction = orbit.canonical;
                        c.orbit_size = orbit.members.size();
                        c.degree = degree;
                        c.source = "cycle(" + path + ")";
                        c.cyclic_square = endo_has_cyclic_square(reps[start], endo);
                        c.odd_degree = (degree % 2) == 1;
                        found.emplace(orbit.canonical, std::move(c));
                    }
                }
            }
            if (len >= params.max_path_len) return;
            for (const GraphEdge& e : edges[node]) {
                unsigned next_degree = degree * e.ell;
                if (next_degree > params.max_degree) continue;
                std::size_t before = path.size();
                if (!path.empty()) path += ";";
                path += "j=" + reps[e.target].j_invariant().to_string() + ",l=" +
                        std::to_string(e.ell);
                walk(start, e.target, next_degree, e.xmap.compose(acc), path, len + 1);
                path.resize(before);
            }
        };

    for (std::size_t i = 0; i < reps.size(); ++i) {
        std::string path;
        walk(i, i, 1, RatFrac::x(f), path, 0);
    }

    std::vector<CandidateFraction> out;
    out.reserve(found.size());
    for (auto& [k, v] : found) out.push_back(std::move(v));
    return out;
}

}  // namespace lattes
