#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lattes/fraction.hpp"

namespace lattes {

/// General Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
/// Must be nonsingular.  Point counts are cached (naive, q small).
class Curve {
  public:
    Curve(Field f, FieldElement a1, FieldElement a2, FieldElement a3, FieldElement a4,
          FieldElement a6);
    static Curve from_ints(Field f, const std::array<std::int64_t, 5>& a);
    /// Text form "[a1,a2,a3,a4,a6]" over the given field.
    static Curve parse(Field f, std::string_view text);

    Field field() const { return field_; }
    const FieldElement& a1() const { return a1_; }
    const FieldElement& a2() const { return a2_; }
    const FieldElement& a3() const { return a3_; }
    const FieldElement& a4() const { return a4_; }
    const FieldElement& a6() const { return a6_; }

    FieldElement b2() const;
    FieldElement b4() const;
    FieldElement b6() const;
    FieldElement b8() const;
    FieldElement c4() const;
    FieldElement discriminant() const;
    FieldElement j_invariant() const;

    std::uint64_t point_count() const;  // includes the point at infinity
    std::int64_t trace() const;         // q + 1 - #E
    bool is_ordinary() const;           // trace not divisible by p

    /// The right-hand cubic x^3 + a2 x^2 + a4 x + a6.
    Poly rhs_cubic() const;
    /// a1 x + a3 (the y-line: 2y + a1 x + a3 vanishes exactly on 2-torsion).
    Poly y_line() const;
    /// 4x^3 + b2 x^2 + 2 b4 x + b6 = (2y + a1 x + a3)^2 on the curve.
    Poly two_torsion_poly() const;

    bool operator==(const Curve& o) const;
    bool operator<(const Curve& o) const;
    std::string to_string() const;

  private:
    Field field_;
    FieldElement a1_, a2_, a3_, a4_, a6_;
    mutable std::int64_t cached_count_ = -1;
};

/// Affine point or the point at infinity.  Coordinates may live on the base
/// curve or on an embedded copy over an extension; callers pass the matching
/// curve to the point operations.
struct PointXY {
    bool infinity = true;
    FieldElement x, y;

    static PointXY at_infinity() { return PointXY{}; }
    static PointXY affine(FieldElement px, FieldElement py) {
        return PointXY{false, std::move(px), std::move(py)};
    }
    bool operator==(const PointXY& o) const;
};

bool on_curve(const Curve& E, const PointXY& P);
PointXY point_negate(const Curve& E, const PointXY& P);
PointXY point_add(const Curve& E, const PointXY& P, const PointXY& Q);
PointXY scalar_mul(const Curve& E, std::uint64_t n, const PointXY& P);

/// Coefficient-wise image of the curve under an embedding.
Curve embed_curve(const Embedding& e, const Curve& E);

/// Points of E with the given x-coordinate (0, 1 or 2 of them).
std::vector<PointXY> lift_x(const Curve& E, const FieldElement& x);

/*
 * Division polynomials in the univariate convention: psi_n = t_n * (2y+a1x+a3)
 * for even n and psi_n = t_n for odd n, where every stored t_n is a polynomial
 * in x alone.  The recurrences use (2y+a1x+a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
 */
class DivisionPolys {
  public:
    DivisionPolys(const Curve& E, unsigned max_index);
    const Poly& t(unsigned n) const;
    unsigned max_index() const { return static_cast<unsigned>(t_.size()) - 1; }
    /// Monic polynomial whose roots are exactly the x-coordinates of the
    /// nonzero r-torsion; r = 2 uses the radical of the two-torsion cubic.
    static Poly torsion_x_poly(const Curve& E, unsigned r);

  private:
    std::vector<Poly> t_;
};

/// Reduced x-coordinate map of multiplication by n; map degree n^2.
RatFrac mult_xmap(const Curve& E, unsigned n);

/// Separable isogeny described on x-coordinates, with the y-component carried
/// for verification: phi(x, y) = (xmap(x), y_a(x) + y_b(x) * y).
struct XIsogeny {
    Curve domain;
    Curve codomain;
    RatFrac xmap;
    unsigned degree = 0;
    Poly kernel_poly;  // monic, one factor per nonzero-kernel x-coordinate
    RatFrac y_a, y_b;
};

/// Formal check that (xmap, ymap) maps the generic point of the domain onto
/// the codomain, modulo the domain equation.
bool verify_curve_identity(const XIsogeny& phi);

/// Validated kernel polynomials of rational cyclic order-ell subgroups.
/// ell = 2 uses rational two-torsion; odd ell != p factors the division
/// polynomial and checks candidates by lifting points into extensions.
std::vector<Poly> kernel_candidates(const Curve& E, unsigned ell);

/// Velu isogeny with the given validated kernel polynomial.
XIsogeny velu(const Curve& E, const Poly& kernel_poly, unsigned ell);

/// x-maps (degree-1 fractions) of all isomorphisms E -> E2 over the base
/// field; empty when the curves are not isomorphic.
std::vector<RatFrac> find_isomorphisms(const Curve& E, const Curve& E2);

/// Kernel cyclicity test for the x-map S of a separable isogeny from E:
/// the kernel contains full r-torsion (for a prime r | deg S, r != p) exactly
/// when the r-torsion x-polynomial divides the reduced denominator.
bool is_cyclic_kernel_xmap(const Curve& E, const RatFrac& S);

/// One representative per F_q-isomorphism class of (nonsingular) curves.
std::vector<Curve> isomorphism_class_reps(Field f);

}  // namespace lattes
