#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "lattes/poly.hpp"

namespace lattes {

/// Reduced rational fraction N/D: gcd(N, D) = 1 and D monic.  Equal fractions
/// compare equal componentwise.
class RatFrac {
  public:
    RatFrac() = default;
    /// Reduces the pair (divides out the gcd, makes the denominator monic).
    RatFrac(Poly num, Poly den);

    static RatFrac from_poly(Poly num);
    static RatFrac x(Field f) { return from_poly(Poly::x(f)); }
    static RatFrac constant(const FieldElement& c) { return from_poly(Poly::constant(c)); }
    /// Grammar: <poly> | <poly>/<poly> | (<poly>)/(<poly>); whitespace
    /// insignificant, `*` optional, `t` names the extension generator.
    static RatFrac parse(Field f, std::string_view text);

    Field field() const { return num_.field() ? num_.field() : den_.field(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    /// max(deg num, deg den) — the degree of the induced map on P^1.
    unsigned map_degree() const;
    bool is_poly() const { return den_.degree() == 0; }
    unsigned hamming_weight() const;

    /// this(inner(x)), reduced.
    RatFrac compose(const RatFrac& inner) const;

    friend RatFrac operator+(const RatFrac& a, const RatFrac& b);
    friend RatFrac operator-(const RatFrac& a, const RatFrac& b);
    friend RatFrac operator*(const RatFrac& a, const RatFrac& b);
    friend RatFrac operator/(const RatFrac& a, const RatFrac& b);
    RatFrac operator-() const;

    bool operator==(const RatFrac& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFrac& o) const { return !(*this == o); }
    bool operator<(const RatFrac& o) const;

    std::string to_string() const;

  private:
    Poly num_, den_;
};

/// T_S(f) = den(S)^{deg f} * f(S), monic-normalized: the numerator transform
/// that carries irreducible families.
Poly ts_transform(const Poly& f, const RatFrac& S);

/// Invertible 2x2 matrix over F_q up to scalars, stored with the first
/// nonzero entry (row-major) normalized to 1.
class MobiusMatrix {
  public:
    MobiusMatrix(FieldElement a, FieldElement b, FieldElement c, FieldElement d);
    static MobiusMatrix identity(Field f);

    const FieldElement& a() const { return a_; }
    const FieldElement& b() const { return b_; }
    const FieldElement& c() const { return c_; }
    const FieldElement& d() const { return d_; }

    MobiusMatrix inverse() const;
    MobiusMatrix operator*(const MobiusMatrix& o) const;
    /// The degree-1 fraction (a x + b)/(c x + d).
    RatFrac to_fraction() const;
    bool operator==(const MobiusMatrix& o) const;

  private:
    FieldElement a_, b_, c_, d_;
};

/// Visit all q^3 - q elements of PGL2(F_q) (deterministic order).
void for_each_pgl2(Field f, const std::function<void(const MobiusMatrix&)>& visit);

/// S' = M_{m^-1} o S o M_m (a right action of PGL2).
RatFrac mobius_conjugate(const RatFrac& S, const MobiusMatrix& m);

struct MobiusOrbit {
    std::vector<RatFrac> members;  // sorted, deduplicated
    RatFrac canonical;
    bool contains(const RatFrac& s) const;
};

/// Full PGL2-conjugation orbit plus the canonical representative: least
/// (hamming weight, deg num, den coeffs, num coeffs).  Throws budget_error if
/// q^3 - q exceeds group_cap.
MobiusOrbit mobius_orbit(const RatFrac& S, std::uint64_t group_cap = 300000);

RatFrac canonical_mobius_rep(const RatFrac& S, std::uint64_t group_cap = 300000);

}  // namespace lattes
