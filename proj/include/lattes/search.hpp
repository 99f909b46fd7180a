#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lattes/curve.hpp"

namespace lattes {

/// One Mobius-equivalence class of generated fractions, with provenance.
struct CandidateFraction {
    Field field = nullptr;
    RatFrac fraction;  // canonical orbit representative
    std::uint64_t orbit_size = 0;
    unsigned degree = 0;
    std::string source;  // "verschiebung" | "prime_endo(l)" | "cycle(...)"
    bool cyclic_square = false;
    bool odd_degree = false;
};

/// Lattes map of the Verschiebung (dual Frobenius): the fraction S with
/// S(x^q) = mult_xmap(E, q).  Throws for supersingular curves.
RatFrac verschiebung_xmap(const Curve& E);

struct CensusResult {
    std::uint64_t total = 0;  // number of distinct fractions in the orbit union
    std::vector<CandidateFraction> orbits;
};

/// All Verschiebung fractions over ordinary curves over F_q, closed under
/// PGL2 conjugation.  Supported sizes: q in {2,3,4,5,7,8,11} unless `force`.
CensusResult verschiebung_census(Field f, bool force = false);

/// Membership test against a census/search output: is `s` Mobius-equivalent
/// to one of the candidates?
bool contains_equivalent(const std::vector<CandidateFraction>& candidates, const RatFrac& s);

/// Degree-ell endomorphisms (up to isomorphism and Mobius conjugation) with
/// cyclic phi o phi, found from validated kernels whose Velu codomain is
/// isomorphic to the domain.
std::vector<CandidateFraction> endo_prime_search(Field f, unsigned ell);

struct CycleSearchParams {
    unsigned max_degree = 12;
    std::vector<unsigned> primes = {2, 3, 5, 7};
    unsigned max_path_len = 6;
};

/// Composite endomorphisms from cycles in the rational isogeny graph,
/// filtered to cyclic kernels and deduplicated under Mobius conjugation.
std::vector<CandidateFraction> endo_cycle_search(Field f, const CycleSearchParams& params);

}  // namespace lattes
