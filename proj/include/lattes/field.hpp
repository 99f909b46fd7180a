#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "lattes/errors.hpp"

namespace lattes {

class FieldDesc;

/// Fields are interned: one immutable descriptor per (p, n), valid for the
/// whole program.  Pointer equality is field equality.
using Field = const FieldDesc*;

/*
 * F_{p^n} = F_p[t]/(m(t)) where m is the canonical modulus: the first monic
 * irreducible of degree n when coefficient vectors (a0,...,a_{n-1}) are
 * ordered lexicographically with integer representatives 0..p-1.  For n = 1
 * the modulus is t itself and elements are plain residues.
 */
class FieldDesc {
  public:
    static Field make(std::uint64_t p, unsigned n = 1);
    static Field parse(std::string_view text);  // "p" or "p^n"

    std::uint64_t characteristic() const { return p_; }
    unsigned degree() const { return n_; }
    std::uint64_t order() const { return order_; }
    /// Modulus coefficients over F_p, lowest degree first, length n+1, monic.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    std::string to_string() const;

    FieldDesc(const FieldDesc&) = delete;
    FieldDesc& operator=(const FieldDesc&) = delete;

  private:
    FieldDesc(std::uint64_t p, unsigned n, std::vector<std::uint64_t> modulus);

    std::uint64_t p_;
    unsigned n_;
    std::uint64_t order_;
    std::vector<std::uint64_t> modulus_;
};

class FieldElement {
  public:
    using Coeffs = boost::container::small_vector<std::uint64_t, 4>;

    FieldElement() : field_(nullptr) {}

    static FieldElement zero(Field f);
    static FieldElement one(Field f);
    static FieldElement from_integer(Field f, std::int64_t v);
    /// Coefficients in the power basis of the modulus root, lowest first.
    /// Missing entries are zero; values are reduced mod p.
    static FieldElement from_coeffs(Field f, const std::vector<std::uint64_t>& c);
    /// Inverse of canonical_index().
    static FieldElement from_index(Field f, std::uint64_t index);
    /// The class of t (the modulus root); requires degree >= 2.
    static FieldElement generator(Field f);

    Field field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;
    /// Integer value sum c_i p^i; the canonical element order compares these.
    std::uint64_t canonical_index() const;
    std::uint64_t coeff(unsigned i) const { return i < c_.size() ? c_[i] : 0; }
    /// For prime fields (n = 1): the residue itself.
    std::uint64_t residue() const { return coeff(0); }

    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(std::uint64_t e) const;
    /// x -> x^p
    FieldElement frobenius() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    /// Canonical element order; operands must share a field.
    bool operator<(const FieldElement& o) const;

    /// Prints prime-field elements as integers, extension elements as
    /// polynomials in t, e.g. "t+1".
    std::string to_string() const;

    /// Internal: wrap already-reduced coefficients without copying.
    static FieldElement from_raw(Field f, Coeffs&& c);
    const Coeffs& raw() const { return c_; }

  private:
    Field field_;
    Coeffs c_;  // length n, entries in [0, p)
};

/// a + a^p + ... + a^{p^{n-1}}, returned as a residue of F_p.
std::uint64_t absolute_trace(const FieldElement& a);

/// Canonical-least square root, or nullopt for non-squares.  sqrt(0) = 0.
std::optional<FieldElement> sqrt_in_field(const FieldElement& a);

/*
 * Coefficient-wise injective ring morphism F_{p^r} -> F_{p^{rm}}, determined
 * by the canonical-least root of the source modulus in the destination.
 * Instances are interned; obtain them through embed().
 */
class Embedding {
  public:
    Field src() const { return src_; }
    Field dst() const { return dst_; }
    const FieldElement& generator_image() const { return gen_image_; }

    FieldElement operator()(const FieldElement& a) const;
    /// Preimage of a destination element that lies in the embedded subfield.
    std::optional<FieldElement> preimage(const FieldElement& a) const;

  private:
    friend const Embedding& embed(Field, Field);
    Embedding(Field src, Field dst, FieldElement gen_image);

    Field src_;
    Field dst_;
    FieldElement gen_image_;
    mutable std::vector<std::pair<std::uint64_t, FieldElement>> reverse_;  // sorted by index
    void build_reverse() const;
};

/// Throws std::invalid_argument unless src = F_{p^r}, dst = F_{p^{rm}}.
const Embedding& embed(Field src, Field dst);

}  // namespace lattes
