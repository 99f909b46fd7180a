#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lattes/field.hpp"

namespace lattes {

/// Dense univariate polynomial over a field, lowest degree first, no trailing
/// zeros.  The zero polynomial has an empty coefficient list and degree -1.
class Poly {
  public:
    Poly() : field_(nullptr) {}
    explicit Poly(Field f) : field_(f) {}

    static Poly zero(Field f) { return Poly(f); }
    static Poly one(Field f);
    static Poly x(Field f);
    static Poly constant(const FieldElement& c);
    static Poly from_coeffs(Field f, std::vector<FieldElement> c);
    static Poly from_int_coeffs(Field f, const std::vector<std::int64_t>& c);
    /// Text form per the polynomial grammar, e.g. "x^4+2*x^2+1" or
    /// "(t+1)*x^2+t".  Throws parse_error.
    static Poly parse(Field f, std::string_view text);

    Field field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    bool is_monic() const;
    FieldElement coeff(int i) const;
    const FieldElement& leading() const;
    const std::vector<FieldElement>& coeffs() const { return c_; }

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }
    Poly operator*(const FieldElement& s) const;

    /// (quotient, remainder) with *this = q*b + r, deg r < deg b.
    std::pair<Poly, Poly> divrem(const Poly& b) const;
    Poly operator/(const Poly& b) const { return divrem(b).first; }
    Poly operator%(const Poly& b) const { return divrem(b).second; }

    Poly derivative() const;
    FieldElement eval(const FieldElement& at) const;
    Poly compose(const Poly& inner) const;
    Poly monic() const;
    Poly pow(unsigned e) const;
    /// Substitute x -> x^k.
    Poly inflate(unsigned k) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }
    /// Deterministic total order (degree, then coefficients from the constant
    /// term up, in canonical element order).  Operands must share a field.
    bool operator<(const Poly& o) const;

    std::string to_string(std::string_view var = "x") const;

  private:
    void strip();
    Field field_;
    std::vector<FieldElement> c_;
};

Poly gcd(const Poly& a, const Poly& b);  // monic-normalized
Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod);
FieldElement resultant(const Poly& a, const Poly& b);

bool is_irreducible(const Poly& f);

/// Irreducible factors with multiplicities, sorted; the product of
/// factor^multiplicity times the leading coefficient reproduces f.
/// Randomized splitting is derived deterministically from `seed` and f.
std::vector<std::pair<Poly, unsigned>> factor(const Poly& f, std::uint64_t seed = 0);

/// Distinct roots in the coefficient field, sorted canonically.
std::vector<FieldElement> poly_roots(const Poly& f, std::uint64_t seed = 0);

/// Number of monic irreducibles of degree d: (1/d) sum_{e|d} mu(e) q^{d/e}.
std::uint64_t count_monic_irreducible(Field f, unsigned d);

/// Visit every monic irreducible of degree d in canonical order
/// (coefficient vectors (a0,...,a_{d-1}) lexicographic, a0 most significant).
/// The visitor returns false to stop early.  Throws budget_error when
/// q^d exceeds `budget`.
void for_each_monic_irreducible(Field f, unsigned d,
                                const std::function<bool(const Poly&)>& visit,
                                std::uint64_t budget = 1000000);

/// Uniform over monic irreducibles of degree d; deterministic given seed.
Poly random_monic_irreducible(Field f, unsigned d, std::uint64_t seed);

/// Apply an embedding coefficient-wise.
Poly embed_poly(const Embedding& e, const Poly& f);

}  // namespace lattes
