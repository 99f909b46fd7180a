#include "lattes/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace lattes {

namespace {

bool is_prime_u64(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Dense polynomials over F_p with raw residue coefficients, lowest degree
// first, no trailing zeros.  Only used for modulus search and element
// arithmetic; the full Poly type lives in poly.hpp.
using UPoly = std::vector<std::uint64_t>;

void ustrip(UPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int udeg(const UPoly& a) { return static_cast<int>(a.size()) - 1; }

UPoly umul(const UPoly& a, const UPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    ustrip(r);
    return r;
}

UPoly usub(UPoly a, const UPoly& b, std::uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    ustrip(a);
    return a;
}

std::uint64_t uinv_mod_p(std::uint64_t a, std::uint64_t p) {
    // extended Euclid on integers
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::invalid_argument("inversion of zero residue");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

// a mod b, b nonzero
UPoly umod(UPoly a, const UPoly& b, std::uint64_t p) {
    const std::uint64_t binv = uinv_mod_p(b.back(), p);
    while (udeg(a) >= udeg(b)) {
        std::uint64_t c = (a.back() * binv) % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] = (a[i + shift] + p - (c * b[i]) % p) % p;
        ustrip(a);
        if (a.empty()) break;
    }
    return a;
}

UPoly ugcd(UPoly a, UPoly b, std::uint64_t p) {
    while (!b.empty()) {
        UPoly r = umod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

UPoly upowmod_xpow(std::uint64_t e, const UPoly& mod, std::uint64_t p) {
    // x^e mod `mod` by square-and-multiply
    UPoly base = {0, 1};
    base = umod(base, mod, p);
    UPoly acc = {1};
    while (e) {
        if (e & 1) acc = umod(umul(acc, base, p), mod, p);
        base = umod(umul(base, base, p), mod, p);
        e >>= 1;
    }
    return acc;
}

UPoly upowmod(UPoly base, std::uint64_t e, const UPoly& mod, std::uint64_t p) {
    base = umod(std::move(base), mod, p);
    UPoly acc = {1};
    while (e) {
        if (e & 1) acc = umod(umul(acc, base, p), mod, p);
        base = umod(umul(base, base, p), mod, p);
        e >>= 1;
    }
    return acc;
}

// Rabin test for monic f over F_p.
bool uirreducible(const UPoly& f, std::uint64_t p) {
    int n = udeg(f);
    if (n < 1) return false;
    if (n == 1) return true;
    std::vector<unsigned> prime_divs;
    {
        unsigned m = static_cast<unsigned>(n);
        for (unsigned d = 2; d * d <= m; ++d)
            while (m % d == 0) {
                if (prime_divs.empty() || prime_divs.back() != d) prime_divs.push_back(d);
                m /= d;
            }
        if (m > 1) prime_divs.push_back(m);
    }
    // h_i = x^{p^i} mod f, computed by iterated Frobenius powering
    UPoly h = {0, 1};
    const UPoly x = {0, 1};
    for (int i = 1; i <= n; ++i) {
        h = upowmod(std::move(h), p, f, p);
        bool checkpoint = false;
        for (unsigned ell : prime_divs)
            if (i == n / static_cast<int>(ell)) checkpoint = true;
        if (checkpoint) {
            UPoly g = ugcd(f, usub(h, x, p), p);
            if (udeg(g) != 0) return false;
        }
    }
    return usub(h, x, p).empty();
}

struct FieldRegistry {
    std::mutex mu;
    std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<FieldDesc>> fields;
};

FieldRegistry& registry() {
    static FieldRegistry r;
    return r;
}

}  // namespace

FieldDesc::FieldDesc(std::uint64_t p, unsigned n, std::vector<std::uint64_t> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
    order_ = 1;
    for (unsigned i = 0; i < n; ++i) order_ *= p;
}

Field FieldDesc::make(std::uint64_t p, unsigned n) {
    if (!is_prime_u64(p)) throw std::invalid_argument("field characteristic must be prime");
    if (n < 1) throw std::invalid_argument("extension degree must be >= 1");
    double bits = n * std::log2(static_cast<double>(p));
    if (bits > 48) throw std::invalid_argument("field too large (p^n above 2^48)");

    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.fields.find({p, n});
    if (it != reg.fields.end()) return it->second.get();

    std::vector<std::uint64_t> modulus;
    if (n == 1) {
        modulus = {0, 1};  // t
    } else {
        // first irreducible in (a0,...,a_{n-1}) lex order, a0 most significant
        std::vector<std::uint64_t> a(n, 0);
        for (;;) {
            UPoly cand(a.begin(), a.end());
            cand.push_back(1);
            if (uirreducible(cand, p)) {
                modulus.assign(cand.begin(), cand.end());
                break;
            }
            int pos = static_cast<int>(n) - 1;
            while (pos >= 0 && a[pos] == p - 1) a[pos--] = 0;
            if (pos < 0) throw std::logic_error("no irreducible modulus found");
            ++a[pos];
        }
    }
    auto desc = std::unique_ptr<FieldDesc>(new FieldDesc(p, n, std::move(modulus)));
    Field out = desc.get();
    reg.fields.emplace(std::make_pair(p, n), std::move(desc));
    return out;
}

Field FieldDesc::parse(std::string_view text) {
    auto caret = text.find('^');
    std::uint64_t p = 0;
    unsigned n = 1;
    try {
        if (caret == std::string_view::npos) {
            p = std::stoull(std::string(text));
        } else {
            p = std::stoull(std::string(text.substr(0, caret)));
            n = static_cast<unsigned>(std::stoul(std::string(text.substr(caret + 1))));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse field '" + std::string(text) + "' (want p or p^n)");
    }
    return make(p, n);
}

std::string FieldDesc::to_string() const {
    if (n_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "^" + std::to_string(n_);
}

namespace {

void require_field(Field f) {
    if (f == nullptr) throw std::invalid_argument("operation on default-constructed field element");
}

void require_same(Field a, Field b) {
    if (a != b) throw std::invalid_argument("mixed-field operands");
}

}  // namespace

FieldElement FieldElement::zero(Field f) {
    require_field(f);
    FieldElement e;
    e.field_ = f;
    e.c_.assign(f->degree(), 0);
    return e;
}

FieldElement FieldElement::one(Field f) { return from_integer(f, 1); }

FieldElement FieldElement::from_integer(Field f, std::int64_t v) {
    FieldElement e = zero(f);
    std::int64_t p = static_cast<std::int64_t>(f->characteristic());
    std::int64_t r = v % p;
    if (r < 0) r += p;
    e.c_[0] = static_cast<std::uint64_t>(r);
    return e;
}

FieldElement FieldElement::from_coeffs(Field f, const std::vector<std::uint64_t>& c) {
    if (c.size() > f->degree()) throw std::invalid_argument("too many coefficients for field degree");
    FieldElement e = zero(f);
    for (std::size_t i = 0; i < c.size(); ++i) e.c_[i] = c[i] % f->characteristic();
    return e;
}

FieldElement FieldElement::from_index(Field f, std::uint64_t index) {
    if (index >= f->order()) throw std::invalid_argument("element index out of range");
    FieldElement e = zero(f);
    std::uint64_t p = f->characteristic();
    for (unsigned i = 0; i < f->degree(); ++i) {
        e.c_[i] = index % p;
        index /= p;
    }
    return e;
}

FieldElement FieldElement::generator(Field f) {
    require_field(f);
    if (f->degree() < 2) throw std::invalid_argument("prime field has no extension generator t");
    FieldElement e = zero(f);
    e.c_[1] = 1;
    return e;
}

FieldElement FieldElement::from_raw(Field f, Coeffs&& c) {
    FieldElement e;
    e.field_ = f;
    e.c_ = std::move(c);
    return e;
}

bool FieldElement::is_zero() const {
    require_field(field_);
    return std::all_of(c_.begin(), c_.end(), [](std::uint64_t v) { return v == 0; });
}

bool FieldElement::is_one() const {
    require_field(field_);
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](std::uint64_t v) { return v == 0; });
}

std::uint64_t FieldElement::canonical_index() const {
    require_field(field_);
    std::uint64_t p = field_->characteristic(), idx = 0;
    for (std::size_t i = c_.size(); i-- > 0;) idx = idx * p + c_[i];
    return idx;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same(a.field_, b.field_);
    std::uint64_t p = a.field_->characteristic();
    FieldElement::Coeffs c(a.c_);
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] += b.c_[i];
        if (c[i] >= p) c[i] -= p;
    }
    return FieldElement::from_raw(a.field_, std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same(a.field_, b.field_);
    std::uint64_t p = a.field_->characteristic();
    FieldElement::Coeffs c(a.c_);
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] += p - b.c_[i];
        if (c[i] >= p) c[i] -= p;
    }
    return FieldElement::from_raw(a.field_, std::move(c));
}

FieldElement FieldElement::operator-() const {
    require_field(field_);
    std::uint64_t p = field_->characteristic();
    Coeffs c(c_);
    for (auto& v : c) v = v ? p - v : 0;
    return from_raw(field_, std::move(c));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same(a.field_, b.field_);
    Field f = a.field_;
    const std::uint64_t p = f->characteristic();
    const unsigned n = f->degree();
    if (n == 1) {
        FieldElement::Coeffs c{(a.c_[0] * b.c_[0]) % p};
        return FieldElement::from_raw(f, std::move(c));
    }
    // schoolbook product, then reduction by the monic modulus
    boost::container::small_vector<std::uint64_t, 8> prod(2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i) {
        if (a.c_[i] == 0) continue;
        for (unsigned j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + a.c_[i] * b.c_[j]) % p;
    }
    const auto& m = f->modulus();
    for (unsigned k = 2 * n - 2; k >= n; --k) {
        std::uint64_t c = prod[k];
        if (c) {
            prod[k] = 0;
            for (unsigned i = 0; i < n; ++i)
                prod[k - n + i] = (prod[k - n + i] + (p - (c * m[i]) % p)) % p;
        }
        if (k == n) break;
    }
    FieldElement::Coeffs c(prod.begin(), prod.begin() + n);
    return FieldElement::from_raw(f, std::move(c));
}

FieldElement FieldElement::inverse() const {
    require_field(field_);
    if (is_zero()) throw std::invalid_argument("inversion of zero");
    const std::uint64_t p = field_->characteristic();
    if (field_->degree() == 1) {
        Coeffs c{uinv_mod_p(c_[0], p)};
        return from_raw(field_, std::move(c));
    }
    // extended Euclid on (element, modulus) over F_p
    UPoly r0(field_->modulus());
    UPoly r1(c_.begin(), c_.end());
    ustrip(r1);
    UPoly s0 = {}, s1 = {1};
    while (udeg(r1) > 0) {
        // r0 = q r1 + r2
        UPoly q;
        {
            UPoly a = r0;
            const std::uint64_t binv = uinv_mod_p(r1.back(), p);
            q.assign(a.size() >= r1.size() ? a.size() - r1.size() + 1 : 0, 0);
            while (udeg(a) >= udeg(r1)) {
                std::uint64_t c = (a.back() * binv) % p;
                std::size_t shift = a.size() - r1.size();
                q[shift] = c;
                for (std::size_t i = 0; i < r1.size(); ++i)
                    a[i + shift] = (a[i + shift] + p - (c * r1[i]) % p) % p;
                ustrip(a);
                if (a.empty()) break;
            }
            ustrip(q);
            r0 = std::move(a);
        }
        UPoly s2 = usub(s0, umul(q, s1, p), p);
        std::swap(r0, r1);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw std::logic_error("element not invertible modulo field modulus");
    std::uint64_t lead_inv = uinv_mod_p(r1[0], p);
    Coeffs c(field_->degree(), 0);
    for (std::size_t i = 0; i < s1.size(); ++i) c[i] = (s1[i] * lead_inv) % p;
    return from_raw(field_, std::move(c));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement FieldElement::pow(std::uint64_t e) const {
    require_field(field_);
    FieldElement acc = one(field_);
    FieldElement base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

FieldElement FieldElement::frobenius() const { return pow(field_->characteristic()); }

bool FieldElement::operator==(const FieldElement& o) const {
    require_same(field_, o.field_);
    return c_ == o.c_;
}

bool FieldElement::operator<(const FieldElement& o) const {
    require_same(field_, o.field_);
    return canonical_index() < o.canonical_index();
}

std::string FieldElement::to_string() const {
    require_field(field_);
    if (field_->degree() == 1) return std::to_string(c_[0]);
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) out << "+";
        first = false;
        if (i == 0) {
            out << c_[i];
        } else {
            if (c_[i] != 1) out << c_[i];
            out << "t";
            if (i > 1) out << "^" << i;
        }
    }
    if (first) out << "0";
    return out.str();
}

std::uint64_t absolute_trace(const FieldElement& a) {
    Field f = a.field();
    if (f == nullptr) throw std::invalid_argument("trace of default-constructed element");
    FieldElement acc = a, power = a;
    for (unsigned i = 1; i < f->degree(); ++i) {
        power = power.frobenius();
        acc = acc + power;
    }
    for (unsigned i = 1; i < f->degree(); ++i)
        if (acc.coeff(i) != 0) throw std::logic_error("trace did not land in the prime field");
    return acc.coeff(0);
}

std::optional<FieldElement> sqrt_in_field(const FieldElement& a) {
    Field f = a.field();
    if (f == nullptr) throw std::invalid_argument("sqrt of default-constructed element");
    if (a.is_zero()) return a;
    const std::uint64_t q = f->order();
    if (f->characteristic() == 2) {
        // squaring is a bijection: sqrt(a) = a^{q/2}
        return a.pow(q / 2);
    }
    if (!a.pow((q - 1) / 2).is_one()) return std::nullopt;  // Euler criterion
    // Tonelli-Shanks with a deterministic non-residue (first in canonical order)
    std::uint64_t s = 0, m = q - 1;
    while (m % 2 == 0) {
        m /= 2;
        ++s;
    }
    FieldElement z = FieldElement::zero(f);
    for (std::uint64_t idx = 1; idx < q; ++idx) {
        z = FieldElement::from_index(f, idx);
        if (!z.pow((q - 1) / 2).is_one() && !z.is_zero()) break;
    }
    FieldElement c = z.pow(m);
    FieldElement t = a.pow(m);
    FieldElement r = a.pow((m + 1) / 2);
    std::uint64_t e = s;
    while (!t.is_one()) {
        FieldElement t2 = t;
        std::uint64_t i = 0;
        while (!t2.is_one()) {
            t2 = t2 * t2;
            ++i;
        }
        FieldElement b = c;
        for (std::uint64_t k = 0; k + i + 1 < e; ++k) b = b * b;
        r = r * b;
        c = b * b;
        t = t * c;
        e = i;
    }
    FieldElement other = -r;
    return (other < r) ? other : r;
}

Embedding::Embedding(Field src, Field dst, FieldElement gen_image)
    : src_(src), dst_(dst), gen_image_(std::move(gen_image)) {}

FieldElement Embedding::operator()(const FieldElement& a) const {
    if (a.field() != src_) throw std::invalid_argument("embedding applied to element of wrong field");
    // Horner evaluation of the coefficient vector at the generator image
    FieldElement acc = FieldElement::zero(dst_);
    for (unsigned i = src_->degree(); i-- > 0;)
        acc = acc * gen_image_ + FieldElement::from_integer(dst_, static_cast<std::int64_t>(a.coeff(i)));
    return acc;
}

void Embedding::build_reverse() const {
    if (!reverse_.empty()) return;
    reverse_.reserve(src_->order());
    for (std::uint64_t idx = 0; idx < src_->order(); ++idx) {
        FieldElement e = FieldElement::from_index(src_, idx);
        reverse_.emplace_back((*this)(e).canonical_index(), e);
    }
    std::sort(reverse_.begin(), reverse_.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
}

std::optional<FieldElement> Embedding::preimage(const FieldElement& a) const {
    if (a.field() != dst_) throw std::invalid_argument("preimage of element of wrong field");
    if (src_->order() > (1u << 20)) throw std::invalid_argument("preimage table too large");
    build_reverse();
    std::uint64_t key = a.canonical_index();
    auto it = std::lower_bound(reverse_.begin(), reverse_.end(), key,
                               [](const auto& x, std::uint64_t k) { return x.first < k; });
    if (it == reverse_.end() || it->first != key) return std::nullopt;
    return it->second;
}

}  // namespace lattes
