#pragma once

#include <map>
#include <utility>

#include "sl2q/lattice.hpp"
#include "sl2q/scalar.hpp"

namespace sl2q {

/// Finite sum of monomials t^a, kept in lexicographic order of exponents.
class TorusElement {
public:
    using Terms = std::map<LatticeVector, Scalar, LexLess>;

    TorusElement() = default;
    static TorusElement monomial(const LatticeVector& a, const Scalar& coeff);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Coefficient of t^a, or nullptr when absent.
    const Scalar* find(const LatticeVector& a) const;

    void add_term(const LatticeVector& a, const Scalar& coeff);
    TorusElement& operator+=(const TorusElement& rhs);
    TorusElement& operator-=(const TorusElement& rhs);
    TorusElement scaled(const Scalar& factor) const;
    TorusElement operator-() const;

    friend bool operator==(const TorusElement& a, const TorusElement& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

class QuantumTorus {
public:
    explicit QuantumTorus(Field field) : field_(std::move(field)) {}

    const Field& field() const noexcept { return field_; }

    /// t^a t^b = sigma(a,b) t^{a+b}, extended bilinearly.
    TorusElement multiply(const TorusElement& u, const TorusElement& v) const;
    TorusElement commutator(const TorusElement& u, const TorusElement& v) const;
    /// Coefficient of t^0.
    Scalar constant_term(const TorusElement& u) const;
    /// (part supported on R, part supported off R).
    std::pair<TorusElement, TorusElement> center_split(const TorusElement& u) const;

private:
    Field field_;
};

}  // namespace sl2q
