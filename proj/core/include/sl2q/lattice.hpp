#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "sl2q/scalar.hpp"

namespace sl2q {

inline constexpr int kMaxRank = 8;

/// Element of Z^n, n <= kMaxRank.  Arithmetic is overflow-checked.
class LatticeVector {
public:
    LatticeVector() = default;
    explicit LatticeVector(int n);
    LatticeVector(std::initializer_list<std::int64_t> coords);
    explicit LatticeVector(const std::vector<std::int64_t>& coords);

    static LatticeVector unit(int n, int i);

    int size() const noexcept { return n_; }
    std::int64_t operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
    std::int64_t& operator[](int i) noexcept { return c_[static_cast<std::size_t>(i)]; }

    bool is_zero() const noexcept;
    /// Index of the last nonzero coordinate, or -1 for the zero vector.
    int last_nonzero() const noexcept;
    std::int64_t max_abs() const noexcept;
    std::vector<std::int64_t> to_vector() const;

    LatticeVector operator-() const;
    LatticeVector& operator+=(const LatticeVector& rhs);
    LatticeVector& operator-=(const LatticeVector& rhs);
    friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
    friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
    friend LatticeVector operator*(std::int64_t k, const LatticeVector& a);

    friend bool operator==(const LatticeVector& a, const LatticeVector& b) noexcept {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }
    friend bool operator!=(const LatticeVector& a, const LatticeVector& b) noexcept { return !(a == b); }

    /// "(1,0,-2)"
    std::string to_string() const;
    std::size_t hash() const noexcept;

private:
    std::array<std::int64_t, kMaxRank> c_{};
    int n_ = 0;
};

enum class Ordering { Less, Equal, Greater };

/// Compares at the largest index where the vectors differ.
Ordering compare_lex(const LatticeVector& a, const LatticeVector& b);

/// a < 0 in the lexicographic order.
bool is_negative(const LatticeVector& a);
bool is_positive(const LatticeVector& a);

/// PBW order on the negative cone.  Less means "precedes".  Throws
/// Error{NotNegative} unless both arguments are negative.
Ordering compare_pbw(const LatticeVector& a, const LatticeVector& b);

/// Strict weak orderings usable as map comparators.
struct LexLess {
    bool operator()(const LatticeVector& a, const LatticeVector& b) const {
        return compare_lex(a, b) == Ordering::Less;
    }
};

/// Exponents over the pairs i<j of sigma(a,b) = prod q_ji^{a_j b_i}.
PairExponents cocycle_exponents(const LatticeVector& a, const LatticeVector& b);
/// Exponents over the pairs i<j of f(a,b) = prod_{i != j} q_ij^{a_i b_j}.
PairExponents commutator_exponents(const LatticeVector& a, const LatticeVector& b);

Scalar cocycle(const Field& field, const LatticeVector& a, const LatticeVector& b);
Scalar commutator_factor(const Field& field, const LatticeVector& a, const LatticeVector& b);
bool commutes(const Field& field, const LatticeVector& a, const LatticeVector& b);

/// Canonical (Hermite normal form) basis of R_r, padded to rank n.
std::vector<LatticeVector> radical_basis(const Field& field, int r);

/// a in R_r.  Throws SupportViolation if a has support beyond r.
bool in_radical(const Field& field, const LatticeVector& a, int r);
/// a in R = R_n.
bool in_radical(const Field& field, const LatticeVector& a);
/// a in the union of the R_r, r = 1..n.
bool in_some_radical(const Field& field, const LatticeVector& a);

/// Nonzero a with sum a_i * central_i == 0.
bool in_null_lattice(const std::vector<Scalar>& central, const LatticeVector& a);

/// c = (-N_1, ..., -N_{r-1}, 1, 0, ...) with N_i > bounds[i] and f(c, b) != 1,
/// where r = bounds.size() + 1.  Candidates are scanned by increasing sum of
/// the N_i, ties by compare_lex; at most `budget` candidates are tried.
LatticeVector nonradical_witness(const Field& field, const LatticeVector& b,
                                 const std::vector<std::int64_t>& bounds, std::size_t budget = 1'000'000);

/// Upper-triangular integer row echelon form on the first `pivot_cols`
/// columns: pivots positive, entries above a pivot reduced into [0, pivot).
/// Rows that vanish on those columns are moved to the end.  Returns the
/// number of pivot rows.
std::size_t hermite_rows(std::vector<std::vector<mpz_class>>& rows, std::size_t pivot_cols);

}  // namespace sl2q

template <>
struct std::hash<sl2q::LatticeVector> {
    std::size_t operator()(const sl2q::LatticeVector& a) const noexcept { return a.hash(); }
};
