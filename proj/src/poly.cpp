#include "lattes/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "lattes/detail/rng.hpp"
#include "lattes/fraction.hpp"

namespace lattes {

namespace {

using boost::multiprecision::cpp_int;

void require_same(Field a, Field b) {
    if (a != b) throw std::invalid_argument("mixed-field operands");
}

// Prime-field fast path: raw residues with delayed reduction.  Residues stay
// below 64, so 64-bit accumulators never overflow at the degrees we reach.
std::vector<std::uint64_t> raw_residues(const std::vector<FieldElement>& c) {
    std::vector<std::uint64_t> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = c[i].residue();
    return r;
}

}  // namespace

void Poly::strip() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::one(Field f) { return constant(FieldElement::one(f)); }

Poly Poly::x(Field f) {
    Poly p(f);
    p.c_ = {FieldElement::zero(f), FieldElement::one(f)};
    return p;
}

Poly Poly::constant(const FieldElement& c) {
    if (c.field() == nullptr) throw std::invalid_argument("constant from null element");
    Poly p(c.field());
    p.c_ = {c};
    p.strip();
    return p;
}

Poly Poly::from_coeffs(Field f, std::vector<FieldElement> c) {
    Poly p(f);
    for (const auto& e : c) require_same(e.field(), f);
    p.c_ = std::move(c);
    p.strip();
    return p;
}

Poly Poly::from_int_coeffs(Field f, const std::vector<std::int64_t>& c) {
    std::vector<FieldElement> v;
    v.reserve(c.size());
    for (std::int64_t x : c) v.push_back(FieldElement::from_integer(f, x));
    return from_coeffs(f, std::move(v));
}

Poly Poly::parse(Field f, std::string_view text) {
    RatFrac r = RatFrac::parse(f, text);
    if (r.den().degree() != 0)
        throw std::invalid_argument("expected a polynomial, got a fraction: " + std::string(text));
    return r.num();
}

bool Poly::is_one() const { return c_.size() == 1 && c_[0].is_one(); }

bool Poly::is_monic() const { return !c_.empty() && c_.back().is_one(); }

FieldElement Poly::coeff(int i) const {
    if (field_ == nullptr) throw std::invalid_argument("coefficient of null polynomial");
    if (i < 0 || i >= static_cast<int>(c_.size())) return FieldElement::zero(field_);
    return c_[static_cast<std::size_t>(i)];
}

const FieldElement& Poly::leading() const {
    if (c_.empty()) throw std::invalid_argument("leading coefficient of zero polynomial");
    return c_.back();
}

Poly operator+(const Poly& a, const Poly& b) {
    require_same(a.field_, b.field_);
    Poly r(a.field_);
    r.c_.assign(std::max(a.c_.size(), b.c_.size()), FieldElement::zero(a.field_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
    r.strip();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    require_same(a.field_, b.field_);
    Poly r(a.field_);
    r.c_.assign(std::max(a.c_.size(), b.c_.size()), FieldElement::zero(a.field_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] -= b.c_[i];
    r.strip();
    return r;
}

Poly Poly::operator-() const {
    Poly r(field_);
    r.c_.reserve(c_.size());
    for (const auto& e : c_) r.c_.push_back(-e);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same(a.field_, b.field_);
    Field f = a.field_;
    if (a.c_.empty() || b.c_.empty()) return Poly(f);
    Poly r(f);
    if (f->degree() == 1) {
        const std::uint64_t p = f->characteristic();
        auto ra = raw_residues(a.c_), rb = raw_residues(b.c_);
        std::vector<std::uint64_t> acc(ra.size() + rb.size() - 1, 0);
        for (std::size_t i = 0; i < ra.size(); ++i) {
            if (ra[i] == 0) continue;
            for (std::size_t j = 0; j < rb.size(); ++j) acc[i + j] += ra[i] * rb[j];
        }
        r.c_.reserve(acc.size());
        for (std::uint64_t v : acc)
            r.c_.push_back(FieldElement::from_raw(f, FieldElement::Coeffs{v % p}));
        r.strip();
        return r;
    }
    r.c_.assign(a.c_.size() + b.c_.size() - 1, FieldElement::zero(f));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.strip();
    return r;
}

Poly Poly::operator*(const FieldElement& s) const {
    require_same(field_, s.field());
    Poly r(field_);
    r.c_.reserve(c_.size());
    for (const auto& e : c_) r.c_.push_back(e * s);
    r.strip();
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& b) const {
    require_same(field_, b.field_);
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    Field f = field_;
    if (degree() < b.degree()) return {Poly(f), *this};
    if (f->degree() == 1) {
        const std::uint64_t p = f->characteristic();
        auto ra = raw_residues(c_);
        auto rb = raw_residues(b.c_);
        const std::uint64_t lead_inv = b.leading().inverse().residue();
        const std::size_t db = rb.size() - 1;
        std::vector<std::uint64_t> q(ra.size() - db, 0);
        for (std::size_t k = ra.size() - 1;; --k) {
            std::uint64_t c = ra[k] * lead_inv % p;
            if (c) {
                q[k - db] = c;
                const std::size_t shift = k - db;
                for (std::size_t i = 0; i <= db; ++i)
                    ra[shift + i] = (ra[shift + i] + p * p - c * rb[i]) % p;
            }
            if (k == db) break;
        }
        Poly quot(f), rem(f);
        quot.c_.reserve(q.size());
        for (std::uint64_t v : q) quot.c_.push_back(FieldElement::from_raw(f, {v}));
        rem.c_.reserve(db);
        for (std::size_t i = 0; i < db; ++i) rem.c_.push_back(FieldElement::from_raw(f, {ra[i]}));
        quot.strip();
        rem.strip();
        return {quot, rem};
    }
    Poly rem = *this;
    Poly quot(f);
    quot.c_.assign(c_.size() - b.c_.size() + 1, FieldElement::zero(f));
    FieldElement lead_inv = b.leading().inverse();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        FieldElement c = rem.leading() * lead_inv;
        std::size_t shift = rem.c_.size() - b.c_.size();
        quot.c_[shift] = c;
        for (std::size_t i = 0; i < b.c_.size(); ++i) rem.c_[i + shift] -= c * b.c_[i];
        rem.strip();
    }
    quot.strip();
    return {quot, rem};
}

Poly Poly::derivative() const {
    Poly r(field_);
    if (c_.size() < 2) return r;
    r.c_.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i] * FieldElement::from_integer(field_, static_cast<std::int64_t>(i)));
    r.strip();
    return r;
}

FieldElement Poly::eval(const FieldElement& at) const {
    require_same(field_, at.field());
    FieldElement acc = FieldElement::zero(field_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
    return acc;
}

Poly Poly::compose(const Poly& inner) const {
    require_same(field_, inner.field_);
    Poly acc(field_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * inner + constant(c_[i]);
    return acc;
}

Poly Poly::monic() const {
    if (is_zero()) throw std::invalid_argument("monic normalization of zero polynomial");
    if (is_monic()) return *this;
    return *this * leading().inverse();
}

Poly Poly::pow(unsigned e) const {
    Poly acc = one(field_);
    Poly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Poly Poly::inflate(unsigned k) const {
    if (k == 0) throw std::invalid_argument("inflate by zero");
    if (k == 1 || is_zero()) return *this;
    Poly r(field_);
    r.c_.assign((c_.size() - 1) * k + 1, FieldElement::zero(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * k] = c_[i];
    return r;
}

bool Poly::operator==(const Poly& o) const {
    require_same(field_, o.field_);
    return c_ == o.c_;
}

bool Poly::operator<(const Poly& o) const {
    require_same(field_, o.field_);
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (std::size_t i = 0; i < c_.size(); ++i) {
        std::uint64_t a = c_[i].canonical_index(), b = o.c_[i].canonical_index();
        if (a != b) return a < b;
    }
    return false;
}

std::string Poly::to_string(std::string_view var) const {
    if (field_ == nullptr) return "<null>";
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    const bool ext = field_->degree() > 1;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) out << "+";
        first = false;
        std::string cs = c_[i].to_string();
        if (i == 0) {
            out << cs;
            continue;
        }
        if (!c_[i].is_one()) {
            if (ext && cs.find_first_of("t") != std::string::npos)
                out << "(" << cs << ")*";
            else
                out << cs;
        }
        out << var;
        if (i > 1) out << "^" << i;
    }
    return out.str();
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero()) return x;
    return x.monic();
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod) {
    Poly acc = Poly::one(base.field());
    Poly b = base % mod;
    while (e) {
        if (e & 1) acc = (acc * b) % mod;
        b = (b * b) % mod;
        e >>= 1;
    }
    return acc % mod;
}

namespace {

Poly powmod_big(const Poly& base, const cpp_int& e, const Poly& mod) {
    Poly acc = Poly::one(base.field()) % mod;
    if (e == 0) return acc;
    Poly b = base % mod;
    const unsigned nbits = boost::multiprecision::msb(e) + 1;
    for (unsigned i = 0; i < nbits; ++i) {
        if (boost::multiprecision::bit_test(e, i)) acc = (acc * b) % mod;
        if (i + 1 < nbits) b = (b * b) % mod;
    }
    return acc;
}

}  // namespace

FieldElement resultant(const Poly& a, const Poly& b) {
    require_same(a.field(), b.field());
    Field f = a.field();
    if (a.is_zero() || b.is_zero()) return FieldElement::zero(f);
    Poly A = a, B = b;
    bool negate = false;
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if ((A.degree() & 1) && (B.degree() & 1)) negate = !negate;
    }
    FieldElement acc = FieldElement::one(f);
    // res(A,B) = (-1)^{degA degB} lc(B)^{degA-degR} res(B,R) with R = A mod B
    while (B.degree() > 0) {
        Poly R = A % B;
        if (R.is_zero()) return FieldElement::zero(f);
        if ((A.degree() & 1) && (B.degree() & 1)) negate = !negate;
        acc = acc * B.leading().pow(static_cast<std::uint64_t>(A.degree() - R.degree()));
        A = std::move(B);
        B = std::move(R);
    }
    acc = acc * B.coeff(0).pow(static_cast<std::uint64_t>(A.degree()));
    return negate ? -acc : acc;
}

bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) throw std::invalid_argument("irreducibility of a constant");
    const int n = f.degree();
    if (n == 1) return true;
    Field fld = f.field();
    const std::uint64_t q = fld->order();
    const Poly fm = f.monic();
    const Poly xp = Poly::x(fld);

    std::vector<int> checkpoints;
    {
        unsigned m = static_cast<unsigned>(n);
        for (unsigned d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                checkpoints.push_back(n / static_cast<int>(d));
                while (m % d == 0) m /= d;
            }
        if (m > 1) checkpoints.push_back(n / static_cast<int>(m));
        std::sort(checkpoints.begin(), checkpoints.end());
        checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
    }

    Poly h = xp % fm;
    for (int i = 1; i <= n; ++i) {
        h = powmod(h, q, fm);  // h = x^{q^i} mod f
        if (std::binary_search(checkpoints.begin(), checkpoints.end(), i)) {
            if (gcd(fm, h - xp).degree() != 0) return false;
        }
    }
    return (h - xp).is_zero();
}

namespace {

// a^{1/p} coefficient-wise: c -> c^{p^{k-1}} and exponent division by p.
Poly pth_root(const Poly& f) {
    Field fld = f.field();
    const std::uint64_t p = fld->characteristic();
    std::uint64_t root_exp = 1;
    for (unsigned i = 0; i + 1 < fld->degree(); ++i) root_exp *= p;
    std::vector<FieldElement> out;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) {
        FieldElement c = f.coeff(i);
        out.push_back(fld->degree() == 1 ? c : c.pow(root_exp));
    }
    return Poly::from_coeffs(fld, std::move(out));
}

void squarefree_accumulate(std::map<Poly, unsigned>& out, const Poly& g, unsigned mult) {
    if (g.degree() < 1) return;
    out[g.monic()] += mult;
}

// Squarefree decomposition valid in characteristic p (Yun plus p-th roots).
void squarefree_decompose(const Poly& f, unsigned mult, std::map<Poly, unsigned>& out) {
    Poly fm = f.monic();
    if (fm.degree() < 1) return;
    const std::uint64_t p = fm.field()->characteristic();
    Poly fp = fm.derivative();
    if (fp.is_zero()) {
        squarefree_decompose(pth_root(fm), mult * static_cast<unsigned>(p), out);
        return;
    }
    Poly c = gcd(fm, fp);
    Poly w = fm / c;
    unsigned i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0) squarefree_accumulate(out, z, mult * i);
        w = std::move(y);
        c = c / w;
        ++i;
    }
    if (c.degree() > 0) squarefree_decompose(c, mult, out);
}

// Split a squarefree product of degree-d irreducibles (Cantor-Zassenhaus;
// trace maps in characteristic 2).
void equal_degree_split(const Poly& f, unsigned d, detail::Rng& rng, std::vector<Poly>& out) {
    Field fld = f.field();
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f.monic());
        return;
    }
    const std::uint64_t q = fld->order();
    const std::uint64_t p = fld->characteristic();
    for (;;) {
        std::vector<FieldElement> rc;
        rc.reserve(static_cast<std::size_t>(f.degree()));
        for (int i = 0; i < f.degree(); ++i)
            rc.push_back(FieldElement::from_index(fld, rng.below(q)));
        Poly r = Poly::from_coeffs(fld, std::move(rc));
        if (r.degree() < 1) continue;
        Poly g(fld);
        if (p == 2) {
            const unsigned k = fld->degree();
            Poly t = r % f;
            Poly acc = t;
            for (unsigned i = 1; i < k * d; ++i) {
                t = (t * t) % f;
                acc = acc + t;
            }
            g = gcd(f, acc);
        } else {
            cpp_int e = boost::multiprecision::pow(cpp_int(q), d);
            e = (e - 1) / 2;
            Poly t = powmod_big(r, e, f);
            g = gcd(f, t - Poly::one(fld));
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f / g, d, rng, out);
            return;
        }
    }
}

std::uint64_t poly_fingerprint(const Poly& f) {
    std::uint64_t h = 0x243f6a8885a308d3ULL ^ f.field()->order();
    for (int i = 0; i <= f.degree(); ++i)
        h ^= f.coeff(i).canonical_index() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

std::vector<std::pair<Poly, unsigned>> factor(const Poly& f, std::uint64_t seed) {
    if (f.degree() < 1) throw std::invalid_argument("factorization of a constant");
    Field fld = f.field();
    const std::uint64_t q = fld->order();
    detail::Rng rng(seed ^ poly_fingerprint(f));

    std::map<Poly, unsigned> sqfree;
    squarefree_decompose(f, 1, sqfree);

    std::map<Poly, unsigned> factors;
    for (const auto& [g, mult] : sqfree) {
        Poly rest = g;
        Poly h = Poly::x(fld) % rest;
        unsigned d = 0;
        while (rest.degree() > 0) {
            ++d;
            if (rest.degree() < static_cast<int>(2 * d)) {
                factors[rest.monic()] += mult;
                break;
            }
            h = powmod(h, q, rest);
            Poly block = gcd(rest, h - Poly::x(fld));
            if (block.degree() > 0) {
                std::vector<Poly> irr;
                equal_degree_split(block, d, rng, irr);
                for (const auto& fi : irr) factors[fi] += mult;
                rest = rest / block;
                if (rest.degree() > 0) h = h % rest;
            }
        }
    }
    return {factors.begin(), factors.end()};
}

std::vector<FieldElement> poly_roots(const Poly& f, std::uint64_t seed) {
    if (f.degree() < 1) return {};
    Field fld = f.field();
    Poly fm = f.monic();
    Poly xq = powmod(Poly::x(fld), fld->order(), fm);
    Poly lin = gcd(fm, xq - Poly::x(fld));
    std::vector<FieldElement> roots;
    if (lin.degree() < 1) return roots;
    for (const auto& [g, mult] : factor(lin, seed)) {
        (void)mult;
        if (g.degree() == 1) roots.push_back(-g.coeff(0));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::uint64_t count_monic_irreducible(Field f, unsigned d) {
    if (d == 0) throw std::invalid_argument("degree must be positive");
    auto mu = [](unsigned m) -> int {
        int result = 1;
        for (unsigned p = 2; p * p <= m; ++p)
            if (m % p == 0) {
                m /= p;
                if (m % p == 0) return 0;
                result = -result;
            }
        if (m > 1) result = -result;
        return result;
    };
    const std::uint64_t q = f->order();
    std::int64_t total = 0;
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        int m = mu(e);
        if (m == 0) continue;
        std::uint64_t qe = 1;
        for (unsigned i = 0; i < d / e; ++i) qe *= q;
        total += m * static_cast<std::int64_t>(qe);
    }
    return static_cast<std::uint64_t>(total) / d;
}

void for_each_monic_irreducible(Field f, unsigned d,
                                const std::function<bool(const Poly&)>& visit,
                                std::uint64_t budget) {
    if (d == 0) throw std::invalid_argument("degree must be positive");
    const std::uint64_t q = f->order();
    double total = std::pow(static_cast<double>(q), static_cast<double>(d));
    if (total > static_cast<double>(budget))
        throw budget_error("enumerating q^d = " + std::to_string(static_cast<std::uint64_t>(total)) +
                           " monic polynomials exceeds the budget; use random sampling");
    std::vector<std::uint64_t> idx(d, 0);
    std::vector<FieldElement> coeffs(d + 1, FieldElement::zero(f));
    coeffs[d] = FieldElement::one(f);
    for (;;) {
        for (unsigned i = 0; i < d; ++i) coeffs[i] = FieldElement::from_index(f, idx[i]);
        Poly cand = Poly::from_coeffs(f, coeffs);
        if (is_irreducible(cand)) {
            if (!visit(cand)) return;
        }
        // lex order with a0 most significant: increment the last position first
        int pos = static_cast<int>(d) - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == q - 1)
            idx[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) return;
        ++idx[static_cast<std::size_t>(pos)];
    }
}

Poly random_monic_irreducible(Field f, unsigned d, std::uint64_t seed) {
    if (d == 0) throw std::invalid_argument("degree must be positive");
    detail::Rng rng(seed);
    const std::uint64_t q = f->order();
    for (unsigned attempt = 0; attempt < 64 * (d + 1); ++attempt) {
        std::vector<FieldElement> coeffs(d + 1, FieldElement::zero(f));
        coeffs[d] = FieldElement::one(f);
        for (unsigned i = 0; i < d; ++i) coeffs[i] = FieldElement::from_index(f, rng.below(q));
        Poly cand = Poly::from_coeffs(f, coeffs);
        if (is_irreducible(cand)) return cand;
    }
    throw std::logic_error("rejection sampling failed to find an irreducible polynomial");
}

Poly embed_poly(const Embedding& e, const Poly& f) {
    std::vector<FieldElement> out;
    out.reserve(static_cast<std::size_t>(f.degree() + 1));
    for (int i = 0; i <= f.degree(); ++i) out.push_back(e(f.coeff(i)));
    return Poly::from_coeffs(e.dst(), std::move(out));
}

}  // namespace lattes
