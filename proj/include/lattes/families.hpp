#pragma once

#include <cstdint>
#include <vector>

#include "lattes/fraction.hpp"

namespace lattes {

/// Outcome of iterating the numerator transform on one seed polynomial.
/// survived = i means T^0..T^i are irreducible and T^{i+1} is reducible;
/// open means every transform up to depth K stayed irreducible ("at least K").
struct LifespanResult {
    unsigned survived = 0;
    bool open = false;
    std::vector<unsigned> degrees;  // degrees of the inspected iterates
};

/// Iterate T_S on monic irreducible f, testing irreducibility at each step up
/// to depth K.  Quadratic fractions use the resultant/trace criterion in the
/// quotient ring; everything else falls back to the Frobenius-power test.
LifespanResult lifespan(const Poly& f, const RatFrac& S, unsigned K = 6);

struct DensityReport {
    Field field = nullptr;
    unsigned d = 0;
    RatFrac S;
    unsigned K = 6;
    bool sampled = false;
    std::uint64_t sample_count = 0;  // 0 for exhaustive runs
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> buckets;  // survived 0, 1, ..., K-1, >= K
    std::uint64_t total = 0;

    /// Count with lifespan >= K over the examined total.
    std::uint64_t surviving() const { return buckets.back(); }
    double estimate() const {
        return total ? static_cast<double>(surviving()) / static_cast<double>(total) : 0.0;
    }
};

/// Exhaustive lifespan histogram over every monic irreducible of degree d.
DensityReport lifespan_histogram(Field f, unsigned d, const RatFrac& S, unsigned K = 6,
                                 std::uint64_t budget = 1000000);

/// Density of degree-d seeds whose family survives depth K; exhaustive mode.
DensityReport density_exhaustive(Field f, unsigned d, const RatFrac& S, unsigned K = 6,
                                 std::uint64_t budget = 1000000);

/// Sampled density estimate: n seeds drawn per-index from `seed`, so parallel
/// and serial runs agree.
DensityReport density_sampled(Field f, unsigned d, const RatFrac& S, unsigned K,
                              std::uint64_t n_samples, std::uint64_t seed);

/// Seed predicate of the classical quadratic transform over F_{2^r}:
/// tr(a_{n-1}) = tr(a_1/a_0) = 1.
bool q_seed_check(const Poly& f);

/// Seed predicate of the classical halved quadratic transform over odd F_q:
/// f(1) f(-1) a non-square, and deg f even when q = 3 mod 4.
bool r_seed_check(const Poly& f);

}  // namespace lattes
