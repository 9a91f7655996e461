#include "sl2q/qtorus.hpp"

namespace sl2q {

TorusElement TorusElement::monomial(const LatticeVector& a, const Scalar& coeff) {
    TorusElement u;
    u.add_term(a, coeff);
    return u;
}

const Scalar* TorusElement::find(const LatticeVector& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? nullptr : &it->second;
}

void TorusElement::add_term(const LatticeVector& a, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(a, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TorusElement& TorusElement::operator+=(const TorusElement& rhs) {
    for (const auto& [a, c] : rhs.terms_) add_term(a, c);
    return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& rhs) {
    for (const auto& [a, c] : rhs.terms_) add_term(a, -c);
    return *this;
}

TorusElement TorusElement::scaled(const Scalar& factor) const {
    TorusElement out;
    for (const auto& [a, c] : terms_) out.add_term(a, c * factor);
    return out;
}

TorusElement TorusElement::operator-() const {
    TorusElement out;
    for (const auto& [a, c] : terms_) out.terms_.emplace(a, -c);
    return out;
}

TorusElement QuantumTorus::multiply(const TorusElement& u, const TorusElement& v) const {
    TorusElement out;
    for (const auto& [a, x] : u.terms()) {
        for (const auto& [b, y] : v.terms()) out.add_term(a + b, cocycle(field_, a, b) * x * y);
    }
    return out;
}

TorusElement QuantumTorus::commutator(const TorusElement& u, const TorusElement& v) const {
    TorusElement out = multiply(u, v);
    out -= multiply(v, u);
    return out;
}

Scalar QuantumTorus::constant_term(const TorusElement& u) const {
    const Scalar* c = u.find(LatticeVector(field_.rank()));
    return c ? *c : field_.zero();
}

std::pair<TorusElement, TorusElement> QuantumTorus::center_split(const TorusElement& u) const {
    std::pair<TorusElement, TorusElement> out;
    for (const auto& [a, c] : u.terms()) (in_radical(field_, a) ? out.first : out.second).add_term(a, c);
    return out;
}

}  // namespace sl2q
