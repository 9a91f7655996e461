#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sl2q/heis_verma.hpp"
#include "sl2q/lie_algebra.hpp"
#include "sl2q/linalg.hpp"

namespace sl2q {

/// lambda on the Cartan subalgebra: values on h = U(0), c_i, d_i.
struct Weight {
    Scalar h;
    std::vector<Scalar> c;
    std::vector<Scalar> d;

    friend bool operator==(const Weight& p, const Weight& q) { return p.h == q.h && p.c == q.c && p.d == q.d; }
};

/// y_{a_1} ... y_{a_m} z v with the a_i sorted by compare_lex.
struct MMonomial {
    std::vector<LatticeVector> ys;
    HeisMonomial heis;

    std::size_t y_count() const noexcept { return ys.size(); }
    /// "Y(1,0)Y(-1,0)U(-1,0)v"
    std::string to_string() const;
    std::size_t hash() const noexcept;

    friend bool operator==(const MMonomial& p, const MMonomial& q) noexcept { return p.ys == q.ys && p.heis == q.heis; }
};

/// More Y factors first; Y-free monomials are the largest.
struct MMonomialLess {
    bool operator()(const MMonomial& p, const MMonomial& q) const;
};

using MVector = SparseVector<MMonomial, MMonomialLess>;

LatticeVector degree_of(const MMonomial& m, int n);
std::string to_string(const MVector& v);
MVector embed(const HeisVector& v);

/// Weight slot lambda - m alpha + beta.
struct Slot {
    int m = 0;
    LatticeVector beta;

    friend bool operator==(const Slot& p, const Slot& q) { return p.m == q.m && p.beta == q.beta; }
};

struct SlotLess {
    bool operator()(const Slot& p, const Slot& q) const {
        if (p.m != q.m) return p.m < q.m;
        return compare_lex(p.beta, q.beta) == Ordering::Less;
    }
};

struct SlotReport {
    Slot slot;
    std::size_t dim_submodule = 0;
    std::size_t dim_convolution = 0;
    bool interior = false;
    bool pass = true;
};

struct FactorizationReport {
    bool hypothesis_met = false;  // some lambda(c_i) != 0
    bool pass = true;             // equality on every interior slot
    std::vector<SlotReport> slots;
};

/// The imaginary Verma module M(lambda) induced from h + q_+.
///
/// Boxes: Y exponents lie in [-B, B]^n, the Heisenberg part is an in-box
/// monomial of H(lambda) (see SupportBox), at most L Y factors, and slot
/// degrees lie in [-B, B]^n.
class VermaModule {
public:
    VermaModule(LieAlgebra algebra, Weight weight);
    ~VermaModule();
    VermaModule(const VermaModule&) = delete;
    VermaModule& operator=(const VermaModule&) = delete;

    const LieAlgebra& algebra() const noexcept { return heis_.algebra(); }
    const Field& field() const noexcept { return heis_.field(); }
    int rank() const noexcept { return heis_.rank(); }
    const Weight& weight() const noexcept { return weight_; }
    const HeisModule& heisenberg() const noexcept { return heis_; }

    MVector generator() const;

    MVector act(const BasisKey& g, const MMonomial& m) const;
    MVector act(const BasisKey& g, const MVector& v) const;
    MVector act(const AlgebraElement& g, const MVector& v) const;

    Weight weight_of(const MMonomial& m) const;
    /// Common Y count of a nonzero weight vector.  Throws NotWeightVector,
    /// PreconditionViolated for the zero vector.
    std::size_t y_length(const MVector& v) const;

    /// Number of box monomials in slot (m, beta).
    std::size_t weight_space_dimension(int m, const LatticeVector& beta, const SupportBox& box) const;
    /// Box monomials in slot (m, beta).
    std::vector<MMonomial> slot_basis(int m, const LatticeVector& beta, const SupportBox& box) const;
    /// Y multisets of size m with exponents in the box, by total degree.
    std::map<LatticeVector, std::size_t, LexLess> y_profile_counts(int m, int B) const;

    /// Echelon basis of span(vs) intersected with the Y-free subspace.
    std::vector<MVector> heisenberg_part(const std::vector<MVector>& vs) const;

    /// First A in [-B, B]^n (by max norm, then lexicographic) with x_A v != 0.
    /// Throws PreconditionViolated when y_length(v) == 0 and
    /// SearchBudgetExceeded when no A in the box works.
    BasisKey find_lowering_witness(const MVector& v, int B) const;

    /// Closure of `generator` in the box under X, Y, U, W keys with exponents
    /// in [-B, B]^n (truncated to box monomials), compared slot by slot with
    /// the convolution of Y-profile counts and its Y-free part.  Interior
    /// slots have m < L and ||beta|| < B.
    FactorizationReport check_factorization(const MVector& generator, const SupportBox& box,
                                            std::size_t budget = 200000) const;

    /// Graded dimensions of U(q_-^re) (x) (H(lambda) / H~) over box slots.
    /// Throws HypothesisUnmet when lambda(c_1) == 0.
    std::map<Slot, std::size_t, SlotLess> irreducible_quotient_dims(const SupportBox& box) const;

    /// Every slot of the box with a nonzero weight space, with its dimension.
    std::map<Slot, std::size_t, SlotLess> box_dims(const SupportBox& box) const;

private:
    const MVector& act_cached(const BasisKey& g, const MMonomial& m) const;
    MVector act_on_heis(const BasisKey& g, const HeisMonomial& h) const;
    const std::map<LatticeVector, std::vector<HeisMonomial>, LexLess>& heis_box(const SupportBox& box) const;

    Weight weight_;
    HeisModule heis_;
    struct Cache;
    std::unique_ptr<Cache> cache_;
};

}  // namespace sl2q
