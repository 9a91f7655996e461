#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sl2q/lattice.hpp"
#include "sl2q/lie_algebra.hpp"
#include "sl2q/linalg.hpp"
#include "sl2q/scalar.hpp"

namespace sl2q {

/// One PBW factor u_a or w_a.
struct Factor {
    Kind kind = Kind::U;  // U or W
    LatticeVector a;

    BasisKey key() const { return {kind, a, 0}; }
    /// "U(-1,0)"
    std::string to_string() const;

    friend bool operator==(const Factor& p, const Factor& q) noexcept { return p.kind == q.kind && p.a == q.a; }
};

/// compare_pbw on exponents, then W before U.
Ordering compare_factors(const Factor& p, const Factor& q);

/// Ordered monomial z_{a_1} ... z_{a_s} v, factors weakly increasing.
struct HeisMonomial {
    std::vector<Factor> factors;

    std::size_t length() const noexcept { return factors.size(); }
    /// "U(-1,0)W(-1,-1)v", "v" for the generator.
    std::string to_string() const;
    std::size_t hash() const noexcept;

    friend bool operator==(const HeisMonomial& p, const HeisMonomial& q) noexcept { return p.factors == q.factors; }
};

/// Shorter first, then factorwise.
struct MonomialLess {
    bool operator()(const HeisMonomial& p, const HeisMonomial& q) const;
};

using HeisVector = SparseVector<HeisMonomial, MonomialLess>;

LatticeVector degree_of(const HeisMonomial& m, int n);
std::string to_string(const HeisVector& v);

/// Factor exponents bounded by |a_i| <= B, at most L factors; degrees are
/// restricted to [-B, B]^n as well.
struct SupportBox {
    int B = 2;
    int L = 3;

    void validate() const;
    bool contains_exponent(const LatticeVector& a) const { return a.max_abs() <= B; }
};

/// Every lattice vector with coordinates in [-B, B]^n, in lexicographic order.
std::vector<LatticeVector> lattice_box(int n, int B);
/// Degrees that can carry H(lambda) in the box: zero and the negative
/// vectors of [-B, B]^n, in lexicographic order.
std::vector<LatticeVector> degree_box(int n, int B);

/// Per-degree subspaces given by echelon bases.
using GradedSpace = std::map<LatticeVector, std::vector<HeisVector>, LexLess>;

/// The Verma-type module H(lambda) for the Heisenberg subalgebra, with
/// central character lambda(c_1..c_n).
class HeisModule {
public:
    HeisModule(LieAlgebra algebra, std::vector<Scalar> central);
    ~HeisModule();
    HeisModule(const HeisModule&) = delete;
    HeisModule& operator=(const HeisModule&) = delete;

    const LieAlgebra& algebra() const noexcept { return algebra_; }
    const Field& field() const noexcept { return algebra_.field(); }
    int rank() const noexcept { return algebra_.rank(); }
    const std::vector<Scalar>& central() const noexcept { return central_; }

    HeisVector generator() const;

    /// Ordered expansion of z_{w_1} ... z_{w_k} v.  Throws NotNegative.
    HeisVector straighten(const std::vector<Factor>& word) const;

    /// Action of U, W (nonzero exponent), C and D keys.
    HeisVector act(const BasisKey& g, const HeisMonomial& m) const;
    HeisVector act(const BasisKey& g, const HeisVector& v) const;
    HeisVector act(const AlgebraElement& g, const HeisVector& v) const;

    /// Ordered monomials of degree beta with factors in the box.
    std::vector<HeisMonomial> enumerate_basis(const LatticeVector& beta, const SupportBox& box) const;
    /// All in-box monomials whose degree lies in degree_box, grouped by degree.
    std::map<LatticeVector, std::vector<HeisMonomial>, LexLess> enumerate_box(const SupportBox& box) const;

    /// Lattice vectors generating the strings of the proper submodule:
    /// negative c in the box with c in the null lattice of lambda and in some R_r.
    std::vector<LatticeVector> string_generators(const SupportBox& box) const;

    /// In-box approximation of the proper submodule generated by the strings,
    /// closed under all U/W generators with exponents in the box.  Every
    /// returned vector lies in the submodule.  Throws NonDecidableLambda,
    /// SearchBudgetExceeded when the total dimension exceeds `budget`.
    GradedSpace tilde_h_components(const SupportBox& box, std::size_t budget = 20000) const;

    /// Vectors of degree beta < 0 (in-box monomials) sent into `quotient` by
    /// every raising generator with exponents bounded by raise_bound, listed
    /// modulo `quotient`.  Degree 0 always reports the generator.
    GradedSpace singular_vectors(const GradedSpace* quotient, const SupportBox& box, int raise_bound) const;

    /// Cache statistics, for benchmarks.
    std::size_t cache_size() const;

private:
    void check_factor(const Factor& f) const;
    const HeisVector& left_mult(const Factor& f, const HeisMonomial& m) const;
    const HeisVector& raise(const Factor& f, const HeisMonomial& m) const;
    void left_mult_into(HeisVector& out, const Factor& f, const HeisVector& v, const Scalar& c) const;

    LieAlgebra algebra_;
    std::vector<Scalar> central_;
    struct Cache;
    std::unique_ptr<Cache> cache_;
};

}  // namespace sl2q
