#include <map>
#include <memory>
#include <mutex>

#include "lattes/field.hpp"
#include "lattes/poly.hpp"

namespace lattes {

namespace {

struct EmbeddingRegistry {
    std::mutex mu;
    std::map<std::pair<Field, Field>, std::unique_ptr<Embedding>> table;
};

EmbeddingRegistry& registry() {
    static EmbeddingRegistry r;
    return r;
}

}  // namespace

const Embedding& embed(Field src, Field dst) {
    if (src == nullptr || dst == nullptr) throw std::invalid_argument("embed of null field");
    if (src->characteristic() != dst->characteristic())
        throw std::invalid_argument("embedding requires equal characteristics");
    if (dst->degree() % src->degree() != 0)
        throw std::invalid_argument("embedding requires src degree dividing dst degree");

    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.table.find({src, dst});
    if (it != reg.table.end()) return *it->second;

    FieldElement image = FieldElement::zero(dst);
    if (src->degree() == 1) {
        // prime-field embedding is the coefficient lift; image of t = 0 is 0
    } else if (src == dst) {
        image = FieldElement::generator(dst);
    } else {
        // canonical-least root of the source modulus (F_p coefficients) in dst
        std::vector<std::int64_t> mod_coeffs;
        for (std::uint64_t c : src->modulus()) mod_coeffs.push_back(static_cast<std::int64_t>(c));
        Poly m = Poly::from_int_coeffs(dst, mod_coeffs);
        std::vector<FieldElement> roots = poly_roots(m, /*seed=*/0x11d);
        if (roots.empty()) throw std::logic_error("source modulus has no root in destination field");
        image = roots.front();  // poly_roots sorts canonically
    }
    auto emb = std::unique_ptr<Embedding>(new Embedding(src, dst, std::move(image)));
    const Embedding& out = *emb;
    reg.table.emplace(std::make_pair(src, dst), std::move(emb));
    return out;
}

}  // namespace lattes
