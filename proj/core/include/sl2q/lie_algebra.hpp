#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sl2q/lattice.hpp"
#include "sl2q/qtorus.hpp"
#include "sl2q/scalar.hpp"

namespace sl2q {

/// Basis of sl2(C_q) + C + D.  X = E12 t^a, Y = E21 t^a, U = diag(1,-1) t^a,
/// W = diag(1,1) t^a (a not in R), C(i) central, D(i) degree derivation.
enum class Kind : std::uint8_t { X, Y, U, W, C, D };

char kind_letter(Kind k) noexcept;

struct BasisKey {
    Kind kind = Kind::U;
    LatticeVector a;  // zero vector of rank n for C and D
    int index = 0;    // 1-based, C and D only

    static BasisKey x(const LatticeVector& a) { return {Kind::X, a, 0}; }
    static BasisKey y(const LatticeVector& a) { return {Kind::Y, a, 0}; }
    static BasisKey u(const LatticeVector& a) { return {Kind::U, a, 0}; }
    static BasisKey w(const LatticeVector& a) { return {Kind::W, a, 0}; }
    static BasisKey c(int n, int i) { return {Kind::C, LatticeVector(n), i}; }
    static BasisKey d(int n, int i) { return {Kind::D, LatticeVector(n), i}; }

    bool has_exponent() const noexcept { return kind != Kind::C && kind != Kind::D; }

    /// "X:(1,0)", "C:1"
    std::string to_string() const;
    /// Inverse of to_string for rank n; throws ParseError.
    static BasisKey parse(std::string_view text, int n);

    friend bool operator==(const BasisKey& p, const BasisKey& q) noexcept {
        return p.kind == q.kind && p.a == q.a && p.index == q.index;
    }
    friend bool operator!=(const BasisKey& p, const BasisKey& q) noexcept { return !(p == q); }
    std::size_t hash() const noexcept { return a.hash() * 31u + static_cast<std::size_t>(kind) * 7u + index; }
};

/// Kind first (X < Y < U < W < C < D), then compare_lex, then index.
Ordering compare_keys(const BasisKey& p, const BasisKey& q);

struct KeyLess {
    bool operator()(const BasisKey& p, const BasisKey& q) const { return compare_keys(p, q) == Ordering::Less; }
};

class AlgebraElement {
public:
    using Terms = std::map<BasisKey, Scalar, KeyLess>;

    AlgebraElement() = default;
    AlgebraElement(const BasisKey& key, const Scalar& coeff) { add_term(key, coeff); }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    const Scalar* find(const BasisKey& key) const;

    void add_term(const BasisKey& key, const Scalar& coeff);
    AlgebraElement& operator+=(const AlgebraElement& rhs);
    AlgebraElement& operator-=(const AlgebraElement& rhs);
    AlgebraElement scaled(const Scalar& factor) const;
    AlgebraElement operator-() const;

    friend bool operator==(const AlgebraElement& p, const AlgebraElement& q) { return p.terms_ == q.terms_; }
    friend bool operator!=(const AlgebraElement& p, const AlgebraElement& q) { return !(p == q); }

    /// "U:(0,0) 1, C:1 1"; "0" when empty.
    std::string to_string() const;

private:
    Terms terms_;
};

/// beta = alpha * (root alpha) + sum a_i delta_i.
struct Root {
    int alpha = 0;
    LatticeVector a;
    friend bool operator==(const Root& p, const Root& q) { return p.alpha == q.alpha && p.a == q.a; }
};

class LieAlgebra {
public:
    explicit LieAlgebra(Field field);

    const Field& field() const noexcept { return field_; }
    const QuantumTorus& torus() const noexcept { return torus_; }
    int rank() const noexcept { return field_.rank(); }

    /// a in R, by direct evaluation of f(a, e_j).
    bool in_radical(const LatticeVector& a) const;
    /// Throws Error{InvalidKey} for W(a) with a in R, bad ranks or indices.
    void validate(const BasisKey& key) const;

    AlgebraElement bracket(const BasisKey& x, const BasisKey& y) const;
    AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const;

    /// Independent evaluation through 2x2 matrices over the quantum torus,
    /// plus the central correction sum_i ([d_i, x], y) c_i.
    AlgebraElement matrix_bracket(const AlgebraElement& x, const AlgebraElement& y) const;
    /// epsilon(tr(x y)).
    Scalar invariant_form(const AlgebraElement& x, const AlgebraElement& y) const;

    /// nullopt for Cartan elements (U(0), C, D).
    std::optional<Root> root_of(const BasisKey& key) const;
    std::vector<BasisKey> root_space_basis(const Root& beta) const;

    /// Every valid key with exponents in [-B, B]^n, plus all C(i) and D(i).
    std::vector<BasisKey> keys_in_box(int B) const;

private:
    Field field_;
    QuantumTorus torus_;
    std::vector<std::vector<long>> skew_;  // M reduced mod N (cyclotomic)
};

struct AxiomReport {
    std::size_t jacobi_pass = 0, jacobi_total = 0;
    std::size_t antisym_pass = 0, antisym_total = 0;
    std::size_t oracle_pass = 0, oracle_total = 0;

    bool ok() const noexcept {
        return jacobi_pass == jacobi_total && antisym_pass == antisym_total && oracle_pass == oracle_total;
    }
};

struct AxiomChecks {
    bool jacobi = true;
    bool antisymmetry = true;
    bool oracle = true;
};

/// Jacobi identity on every unordered triple of distinct keys in the box,
/// antisymmetry and agreement with matrix_bracket on every unordered pair.
AxiomReport check_axioms(const LieAlgebra& algebra, int B, AxiomChecks checks = {});

}  // namespace sl2q

template <>
struct std::hash<sl2q::BasisKey> {
    std::size_t operator()(const sl2q::BasisKey& k) const noexcept { return k.hash(); }
};
