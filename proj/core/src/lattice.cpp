#include "sl2q/lattice.hpp"

#include <algorithm>
#include <cstdlib>

#include "sl2q/error.hpp"

namespace sl2q {

namespace {

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Overflow, "lattice coordinate overflow");
    return r;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Overflow, "lattice coordinate overflow");
    return r;
}

void check_rank(int n) {
    if (n < 0 || n > kMaxRank) throw Error(Errc::RankOutOfRange, "lattice rank must be in [0, 8]");
}

void check_same_rank(const LatticeVector& a, const LatticeVector& b) {
    if (a.size() != b.size()) throw Error(Errc::RankOutOfRange, "lattice vectors of different rank");
}

}  // namespace

LatticeVector::LatticeVector(int n) : n_(n) { check_rank(n); }

LatticeVector::LatticeVector(std::initializer_list<std::int64_t> coords) : n_(static_cast<int>(coords.size())) {
    check_rank(n_);
    std::copy(coords.begin(), coords.end(), c_.begin());
}

LatticeVector::LatticeVector(const std::vector<std::int64_t>& coords) : n_(static_cast<int>(coords.size())) {
    check_rank(n_);
    std::copy(coords.begin(), coords.end(), c_.begin());
}

LatticeVector LatticeVector::unit(int n, int i) {
    LatticeVector e(n);
    if (i < 0 || i >= n) throw Error(Errc::RankOutOfRange, "unit vector index out of range");
    e[i] = 1;
    return e;
}

bool LatticeVector::is_zero() const noexcept { return last_nonzero() < 0; }

int LatticeVector::last_nonzero() const noexcept {
    for (int i = n_ - 1; i >= 0; --i) {
        if (c_[i] != 0) return i;
    }
    return -1;
}

std::int64_t LatticeVector::max_abs() const noexcept {
    std::int64_t m = 0;
    for (int i = 0; i < n_; ++i) m = std::max(m, c_[i] < 0 ? -c_[i] : c_[i]);
    return m;
}

std::vector<std::int64_t> LatticeVector::to_vector() const { return {c_.begin(), c_.begin() + n_}; }

LatticeVector LatticeVector::operator-() const {
    LatticeVector r(n_);
    for (int i = 0; i < n_; ++i) r.c_[i] = mul_checked(c_[i], -1);
    return r;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& rhs) {
    check_same_rank(*this, rhs);
    for (int i = 0; i < n_; ++i) c_[i] = add_checked(c_[i], rhs.c_[i]);
    return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& rhs) { return *this += -rhs; }

LatticeVector operator*(std::int64_t k, const LatticeVector& a) {
    LatticeVector r(a.n_);
    for (int i = 0; i < a.n_; ++i) r.c_[i] = mul_checked(k, a.c_[i]);
    return r;
}

std::string LatticeVector::to_string() const {
    std::string s = "(";
    for (int i = 0; i < n_; ++i) {
        if (i) s += ",";
        s += std::to_string(c_[i]);
    }
    return s + ")";
}

std::size_t LatticeVector::hash() const noexcept {
    std::size_t h = static_cast<std::size_t>(n_);
    for (int i = 0; i < n_; ++i) h = h * 1000003u ^ static_cast<std::size_t>(c_[i]);
    return h;
}

Ordering compare_lex(const LatticeVector& a, const LatticeVector& b) {
    check_same_rank(a, b);
    for (int i = a.size() - 1; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] < b[i] ? Ordering::Less : Ordering::Greater;
    }
    return Ordering::Equal;
}

bool is_negative(const LatticeVector& a) {
    const int i = a.last_nonzero();
    return i >= 0 && a[i] < 0;
}

bool is_positive(const LatticeVector& a) {
    const int i = a.last_nonzero();
    return i >= 0 && a[i] > 0;
}

Ordering compare_pbw(const LatticeVector& a, const LatticeVector& b) {
    if (!is_negative(a) || !is_negative(b))
        throw Error(Errc::NotNegative, "PBW order is defined on the negative cone only");
    check_same_rank(a, b);
    const int ra = a.last_nonzero(), rb = b.last_nonzero();
    if (ra != rb) return ra > rb ? Ordering::Less : Ordering::Greater;
    const std::int64_t k = -a[ra], m = -b[rb];
    if (k != m) return k < m ? Ordering::Less : Ordering::Greater;
    return compare_lex(a, b);  // same last entry, so this compares the prefixes
}

PairExponents cocycle_exponents(const LatticeVector& a, const LatticeVector& b) {
    check_same_rank(a, b);
    const int n = a.size();
    PairExponents e(static_cast<std::size_t>(n * (n - 1) / 2), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) e[Field::pair_index(n, i, j)] = -mul_checked(a[j], b[i]);
    }
    return e;
}

PairExponents commutator_exponents(const LatticeVector& a, const LatticeVector& b) {
    check_same_rank(a, b);
    const int n = a.size();
    PairExponents e(static_cast<std::size_t>(n * (n - 1) / 2), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j)
            e[Field::pair_index(n, i, j)] = add_checked(mul_checked(a[i], b[j]), -mul_checked(a[j], b[i]));
    }
    return e;
}

Scalar cocycle(const Field& field, const LatticeVector& a, const LatticeVector& b) {
    return field.twist(cocycle_exponents(a, b));
}

Scalar commutator_factor(const Field& field, const LatticeVector& a, const LatticeVector& b) {
    return field.twist(commutator_exponents(a, b));
}

bool commutes(const Field& field, const LatticeVector& a, const LatticeVector& b) {
    return field.twist_is_one(commutator_exponents(a, b));
}

std::size_t hermite_rows(std::vector<std::vector<mpz_class>>& rows, std::size_t pivot_cols) {
    std::size_t p = 0;
    for (std::size_t c = 0; c < pivot_cols && p < rows.size(); ++c) {
        while (true) {
            // smallest nonzero magnitude in column c goes to row p
            std::size_t best = rows.size();
            for (std::size_t i = p; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[p], rows[best]);
            bool done = true;
            for (std::size_t i = p + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[p][c].get_mpz_t());
                for (std::size_t t = c; t < rows[i].size(); ++t) rows[i][t] -= q * rows[p][t];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (p >= rows.size() || rows[p][c] == 0) continue;
        if (rows[p][c] < 0) {
            for (auto& x : rows[p]) x = -x;
        }
        for (std::size_t i = 0; i < p; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[p][c].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t t = c; t < rows[i].size(); ++t) rows[i][t] -= q * rows[p][t];
        }
        ++p;
    }
    return p;
}

namespace {

void check_r(const Field& field, int r) {
    if (r < 1 || r > field.rank()) throw Error(Errc::RankOutOfRange, "r must satisfy 1 <= r <= n");
}

std::vector<LatticeVector> cyclotomic_radical(const Field& field, int r) {
    const auto& cfg = field.config();
    const long N = cfg.N;
    // kernel of [S | N*I] by unimodular row reduction of [S^T | N*I ; I]
    const std::size_t R = static_cast<std::size_t>(r);
    std::vector<std::vector<mpz_class>> rows(2 * R, std::vector<mpz_class>(3 * R));
    for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < R; ++j) rows[i][j] = cfg.M[j][i];
        rows[R + i][i] = N;
        rows[i][R + i] = 1;
        rows[R + i][2 * R + i] = 1;
    }
    const std::size_t rank = hermite_rows(rows, R);
    std::vector<std::vector<mpz_class>> kernel;
    for (std::size_t i = rank; i < rows.size(); ++i)
        kernel.emplace_back(rows[i].begin() + static_cast<long>(R), rows[i].begin() + static_cast<long>(2 * R));
    const std::size_t k = hermite_rows(kernel, R);
    std::vector<LatticeVector> basis;
    for (std::size_t i = 0; i < k; ++i) {
        LatticeVector v(field.rank());
        for (std::size_t j = 0; j < R; ++j) {
            if (!kernel[i][j].fits_slong_p()) throw Error(Errc::Overflow, "radical basis entry too large");
            v[static_cast<int>(j)] = kernel[i][j].get_si();
        }
        basis.push_back(v);
    }
    return basis;
}

}  // namespace

std::vector<LatticeVector> radical_basis(const Field& field, int r) {
    check_r(field, r);
    const int n = field.rank();
    switch (field.backend()) {
        case Backend::Rational: {
            std::vector<LatticeVector> basis;
            for (int i = 0; i < r; ++i) basis.push_back(LatticeVector::unit(n, i));
            return basis;
        }
        case Backend::GenericLaurent:
            if (r == 1) return {LatticeVector::unit(n, 0)};
            return {};
        case Backend::Cyclotomic: return cyclotomic_radical(field, r);
    }
    return {};
}

bool in_radical(const Field& field, const LatticeVector& a, int r) {
    check_r(field, r);
    if (a.size() != field.rank()) throw Error(Errc::RankOutOfRange, "vector rank differs from configured n");
    if (a.last_nonzero() >= r) throw Error(Errc::SupportViolation, "vector has support beyond the first r coordinates");
    for (int j = 0; j < r; ++j) {
        if (!commutes(field, a, LatticeVector::unit(field.rank(), j))) return false;
    }
    return true;
}

bool in_radical(const Field& field, const LatticeVector& a) { return in_radical(field, a, field.rank()); }

bool in_some_radical(const Field& field, const LatticeVector& a) {
    for (int r = std::max(1, a.last_nonzero() + 1); r <= field.rank(); ++r) {
        if (in_radical(field, a, r)) return true;
    }
    return false;
}

bool in_null_lattice(const std::vector<Scalar>& central, const LatticeVector& a) {
    if (a.is_zero()) return false;
    if (static_cast<int>(central.size()) != a.size())
        throw Error(Errc::RankOutOfRange, "central character has wrong length");
    Scalar sum = central.front().zero_like();
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] != 0) sum += central[static_cast<std::size_t>(i)].scaled(mpq_class(static_cast<long>(a[i])));
    }
    return sum.is_zero();
}

LatticeVector nonradical_witness(const Field& field, const LatticeVector& b, const std::vector<std::int64_t>& bounds,
                                 std::size_t budget) {
    const int n = field.rank();
    const int r = static_cast<int>(bounds.size()) + 1;
    check_r(field, r);
    for (auto k : bounds) {
        if (k < 1) throw Error(Errc::PreconditionViolated, "witness bounds must be positive");
    }
    if (in_radical(field, b, r)) throw Error(Errc::InRadical, "b lies in R_r; no witness exists");

    std::size_t tried = 0;
    std::vector<std::int64_t> excess(bounds.size(), 0);
    for (std::int64_t total = 0;; ++total) {
        // every split of `total` into r-1 nonnegative parts
        std::vector<LatticeVector> layer;
        std::function<void(std::size_t, std::int64_t)> split = [&](std::size_t i, std::int64_t left) {
            if (i + 1 >= excess.size()) {
                if (!excess.empty()) excess[i] = left;
                LatticeVector c(n);
                for (std::size_t t = 0; t < excess.size(); ++t) c[static_cast<int>(t)] = -(bounds[t] + 1 + excess[t]);
                c[r - 1] = 1;
                layer.push_back(c);
                return;
            }
            for (std::int64_t x = 0; x <= left; ++x) {
                excess[i] = x;
                split(i + 1, left - x);
            }
        };
        if (excess.empty() && total > 0) break;
        split(0, total);
        std::sort(layer.begin(), layer.end(), LexLess{});
        for (const auto& c : layer) {
            if (tried++ >= budget)
                throw Error(Errc::SearchBudgetExceeded,
                            "no witness among the first " + std::to_string(budget) + " candidates");
            if (!commutes(field, c, b)) return c;
        }
    }
    throw Error(Errc::SearchBudgetExceeded, "candidate space exhausted");
}

}  // namespace sl2q
