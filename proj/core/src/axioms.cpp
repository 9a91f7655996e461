#include <algorithm>
#include <unordered_map>

#include "bracket_table.hpp"
#include "sl2q/error.hpp"
#include "sl2q/lie_algebra.hpp"

namespace sl2q {

namespace {

// Exact arithmetic in the group ring Q[G] with dyadic coefficients, where G
// is Z/N (cyclotomic) or the free abelian group on the pair parameters
// (generic).  Every structure constant is a dyadic combination of values of
// sigma and f, so this ring is closed under everything the table does.  A
// value is zero in the scalar field iff its image under G -> C^* vanishes,
// which for Z/N is tested by reduction modulo the cyclotomic polynomial.
class GroupRing {
public:
    struct Value {
        std::vector<std::pair<std::int64_t, std::int64_t>> terms;  // (group element, numerator), sorted
        int shift = 0;                                              // denominator 2^shift
    };

    explicit GroupRing(const LieAlgebra& L) : L_(L), n_(L.rank()) {
        const Field& F = L.field();
        switch (F.backend()) {
            case Backend::Cyclotomic:
                cyclic_ = true;
                N_ = F.config().N;
                M_ = F.config().M;
                ring_ = &CyclotomicRing::of(static_cast<int>(N_));
                break;
            case Backend::GenericLaurent: {
                const int pairs = F.pair_count();
                if (pairs > 0) {
                    bits_ = 63 / pairs;
                    if (bits_ < 10) throw Error(Errc::PreconditionViolated, "axiom sweep supports generic rank <= 4");
                }
                break;
            }
            case Backend::Rational: trivial_ = true; break;
        }
    }

    Value zero() const { return {}; }
    Value one() const { return from_int(1); }
    Value from_int(long v) const {
        Value out;
        if (v != 0) out.terms.emplace_back(0, v);
        return out;
    }

    Value add(const Value& p, const Value& q) const {
        Value out;
        out.shift = std::max(p.shift, q.shift);
        out.terms.reserve(p.terms.size() + q.terms.size());
        for (const auto& [g, c] : p.terms) out.terms.emplace_back(g, lift(c, out.shift - p.shift));
        for (const auto& [g, c] : q.terms) out.terms.emplace_back(g, lift(c, out.shift - q.shift));
        normalize(out);
        return out;
    }
    Value neg(Value p) const {
        for (auto& t : p.terms) t.second = -t.second;
        return p;
    }
    Value sub(const Value& p, const Value& q) const { return add(p, neg(q)); }
    Value mul(const Value& p, const Value& q) const {
        Value out;
        out.shift = p.shift + q.shift;
        out.terms.reserve(p.terms.size() * q.terms.size());
        for (const auto& [g, c] : p.terms) {
            for (const auto& [h, d] : q.terms) {
                std::int64_t x;
                if (__builtin_mul_overflow(c, d, &x)) throw Error(Errc::Overflow, "group ring coefficient overflow");
                out.terms.emplace_back(combine(g, h), x);
            }
        }
        normalize(out);
        return out;
    }
    Value half(Value p) const {
        ++p.shift;
        normalize(p);
        return p;
    }

    Value cocycle(const LatticeVector& a, const LatticeVector& b) const {
        if (cyclic_) {
            long k = 0;
            for (int i = 0; i < n_; ++i)
                for (int j = i + 1; j < n_; ++j) k = (k - M_[i][j] * ((a[j] * b[i]) % N_)) % N_;
            return element(k);
        }
        if (trivial_) return element(0);
        return element(pack(cocycle_exponents(a, b)));
    }
    Value commutator(const LatticeVector& a, const LatticeVector& b) const {
        if (cyclic_) {
            long k = 0;
            for (int i = 0; i < n_; ++i)
                for (int j = i + 1; j < n_; ++j) k = (k + M_[i][j] * ((a[i] * b[j] - a[j] * b[i]) % N_)) % N_;
            return element(k);
        }
        if (trivial_) return element(0);
        return element(pack(commutator_exponents(a, b)));
    }

    bool is_zero(const Value& v) const {
        if (v.terms.empty()) return true;
        if (!cyclic_) return false;  // free group ring: normalized nonzero means nonzero
        std::vector<std::int64_t> acc(static_cast<std::size_t>(ring_->degree()), 0);
        for (const auto& [g, c] : v.terms) {
            const auto& row = ring_->power(g);
            for (std::size_t t = 0; t < acc.size(); ++t) {
                std::int64_t x;
                if (__builtin_mul_overflow(c, row[t], &x) || __builtin_add_overflow(acc[t], x, &acc[t]))
                    throw Error(Errc::Overflow, "group ring coefficient overflow");
            }
        }
        return std::all_of(acc.begin(), acc.end(), [](std::int64_t x) { return x == 0; });
    }

    bool in_radical(const LatticeVector& a) const { return L_.in_radical(a); }

private:
    static std::int64_t lift(std::int64_t c, int by) {
        std::int64_t x = c;
        for (int i = 0; i < by; ++i) {
            if (__builtin_mul_overflow(x, 2, &x)) throw Error(Errc::Overflow, "group ring coefficient overflow");
        }
        return x;
    }

    std::int64_t combine(std::int64_t g, std::int64_t h) const {
        if (cyclic_) return (g + h) % N_;
        return g + h;  // packing is additive
    }

    Value element(long g) const {
        if (cyclic_) g = ((g % N_) + N_) % N_;
        Value v;
        v.terms.emplace_back(g, 1);
        return v;
    }

    std::int64_t pack(const PairExponents& e) const {
        std::int64_t g = 0;
        const std::int64_t limit = std::int64_t{1} << (bits_ - 4);
        for (std::size_t p = 0; p < e.size(); ++p) {
            if (e[p] <= -limit || e[p] >= limit) throw Error(Errc::Overflow, "pair exponent out of packing range");
            g += e[p] * (std::int64_t{1} << (bits_ * static_cast<int>(p)));
        }
        return g;
    }

    void normalize(Value& v) const {
        auto& t = v.terms;
        std::sort(t.begin(), t.end());
        std::size_t w = 0;
        for (std::size_t r = 0; r < t.size();) {
            std::int64_t g = t[r].first, c = 0;
            for (; r < t.size() && t[r].first == g; ++r) {
                if (__builtin_add_overflow(c, t[r].second, &c)) throw Error(Errc::Overflow, "group ring coefficient overflow");
            }
            if (c != 0) t[w++] = {g, c};
        }
        t.resize(w);
        if (t.empty()) {
            v.shift = 0;
            return;
        }
        while (v.shift > 0 && std::all_of(t.begin(), t.end(), [](const auto& x) { return x.second % 2 == 0; })) {
            for (auto& x : t) x.second /= 2;
            --v.shift;
        }
    }

    const LieAlgebra& L_;
    int n_;
    bool cyclic_ = false;
    bool trivial_ = false;
    long N_ = 1;
    std::vector<std::vector<long>> M_;
    const CyclotomicRing* ring_ = nullptr;
    int bits_ = 63;
};

using Terms = detail::BracketTerms<GroupRing>;

// Jacobi sums are evaluated with plain integers: every table value has
// denominator at most 2, so a product of two has denominator at most 4 and
// the numerators over 4 are accumulated per (output slot, group element).
// All non-central terms of one Jacobi sum share the degree a+b+c, so the
// output key is determined by its kind (slots 0..3) or central index (4+i).
struct Entry {
    std::int32_t key;  // extended key index (inner) or output slot (outer)
    std::int64_t g;
    std::int64_t num;  // numerator over 2
};

class JacobiSweep {
public:
    JacobiSweep(const LieAlgebra& L, const GroupRing& R, int B)
        : L_(L), R_(R), n_(L.rank()), span_(4 * B + 1), B2_(2 * B) {
        cells_ = 1;
        for (int i = 0; i < n_; ++i) cells_ *= span_;
        keys_ = L.keys_in_box(B);
        const auto& F = L.field();
        cyclic_ = F.backend() == Backend::Cyclotomic;
        if (cyclic_) {
            N_ = F.config().N;
            ring_ = &CyclotomicRing::of(static_cast<int>(N_));
            if (ring_->degree() > 64) throw Error(Errc::PreconditionViolated, "axiom sweep supports phi(N) <= 64");
        }
        const std::size_t K = keys_.size();
        const std::size_t ext = 4 * cells_ + static_cast<std::size_t>(n_);
        outer_.resize(K * ext);
        outer_done_.assign(K * ext, 0);
        pair_.resize(K * K);
        for (std::size_t i = 0; i < K; ++i)
            for (std::size_t j = i + 1; j < K; ++j) {
                Terms t;
                detail::table_bracket(R_, keys_[i], keys_[j], t);
                for (const auto& [k, v] : t) append(pair_[i * K + j], ext_index(k), v);
            }
        ext_ = ext;
    }

    std::size_t size() const { return keys_.size(); }

    bool holds(std::size_t i, std::size_t j, std::size_t l) {
        const std::size_t K = keys_.size();
        cyc_.assign(static_cast<std::size_t>(4 + n_) * static_cast<std::size_t>(N_), 0);
        free_.clear();
        add(i, pair_[j * K + l], 1);   // [x,[y,z]]
        add(j, pair_[i * K + l], -1);  // [y,[z,x]] = -[y,[x,z]]
        add(l, pair_[i * K + j], 1);   // [z,[x,y]]
        if (cyclic_) {
            for (int slot = 0; slot < 4 + n_; ++slot) {
                std::int64_t acc[64] = {};
                const auto d = static_cast<std::size_t>(ring_->degree());
                bool any = false;
                for (long g = 0; g < N_; ++g) {
                    const auto c = cyc_[static_cast<std::size_t>(slot * N_ + g)];
                    if (c == 0) continue;
                    any = true;
                    const auto& row = ring_->power(g);
                    for (std::size_t t = 0; t < d; ++t) acc[t] += c * row[t];
                }
                if (any && !std::all_of(acc, acc + d, [](std::int64_t x) { return x == 0; })) return false;
            }
            return true;
        }
        std::sort(free_.begin(), free_.end(), [](const Entry& p, const Entry& q) {
            return p.key != q.key ? p.key < q.key : p.g < q.g;
        });
        for (std::size_t r = 0; r < free_.size();) {
            std::int64_t c = 0;
            std::size_t t = r;
            for (; t < free_.size() && free_[t].key == free_[r].key && free_[t].g == free_[r].g; ++t) c += free_[t].num;
            if (c != 0) return false;
            r = t;
        }
        return true;
    }

private:
    std::int32_t ext_index(const BasisKey& k) const {
        if (k.kind == Kind::C) return static_cast<std::int32_t>(4 * cells_) + k.index - 1;
        if (k.kind == Kind::D) throw Error(Errc::InternalTableInconsistency, "degree key in bracket output");
        std::size_t idx = 0;
        for (int i = n_ - 1; i >= 0; --i) idx = idx * static_cast<std::size_t>(span_) + static_cast<std::size_t>(k.a[i] + B2_);
        return static_cast<std::int32_t>(static_cast<std::size_t>(k.kind) * cells_ + idx);
    }

    BasisKey ext_key(std::int32_t e) const {
        if (static_cast<std::size_t>(e) >= 4 * cells_) return BasisKey::c(n_, e - static_cast<std::int32_t>(4 * cells_) + 1);
        const auto kind = static_cast<Kind>(static_cast<std::size_t>(e) / cells_);
        std::size_t idx = static_cast<std::size_t>(e) % cells_;
        LatticeVector a(n_);
        for (int i = 0; i < n_; ++i) {
            a[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(span_)) - B2_;
            idx /= static_cast<std::size_t>(span_);
        }
        return {kind, a, 0};
    }

    static void append(std::vector<Entry>& out, std::int32_t key, const GroupRing::Value& v) {
        if (v.shift > 1) throw Error(Errc::InternalTableInconsistency, "structure constant with denominator above 2");
        for (const auto& [g, c] : v.terms) out.push_back({key, g, v.shift == 0 ? 2 * c : c});
    }

    const std::vector<Entry>& outer(std::size_t i, std::int32_t e) {
        const std::size_t at = i * ext_ + static_cast<std::size_t>(e);
        if (!outer_done_[at]) {
            Terms t;
            detail::table_bracket(R_, keys_[i], ext_key(e), t);
            for (const auto& [k, v] : t) {
                const std::int32_t slot = k.kind == Kind::C ? 4 + k.index - 1 : static_cast<std::int32_t>(k.kind);
                append(outer_[at], slot, v);
            }
            outer_done_[at] = 1;
        }
        return outer_[at];
    }

    void add(std::size_t i, const std::vector<Entry>& inner, int sign) {
        for (const auto& in : inner) {
            for (const auto& o : outer(i, in.key)) {
                const std::int64_t num = sign * in.num * o.num;
                if (cyclic_) {
                    const auto g = (in.g + o.g) % N_;
                    cyc_[static_cast<std::size_t>(o.key * N_ + g)] += num;
                } else {
                    free_.push_back({o.key, in.g + o.g, num});
                }
            }
        }
    }

    const LieAlgebra& L_;
    const GroupRing& R_;
    int n_;
    int span_;
    int B2_;
    std::size_t cells_ = 1;
    std::size_t ext_ = 0;
    std::vector<BasisKey> keys_;
    bool cyclic_ = false;
    long N_ = 1;
    const CyclotomicRing* ring_ = nullptr;
    std::vector<std::vector<Entry>> pair_;
    std::vector<std::vector<Entry>> outer_;
    std::vector<char> outer_done_;
    std::vector<std::int64_t> cyc_;
    std::vector<Entry> free_;
};

}  // namespace

AxiomReport check_axioms(const LieAlgebra& L, int B, AxiomChecks checks) {
    AxiomReport report;
    const auto keys = L.keys_in_box(B);
    const std::size_t K = keys.size();
    if (checks.jacobi) {
        GroupRing R(L);
        JacobiSweep sweep(L, R, B);
        for (std::size_t i = 0; i < K; ++i)
            for (std::size_t j = i + 1; j < K; ++j)
                for (std::size_t l = j + 1; l < K; ++l) {
                    ++report.jacobi_total;
                    if (sweep.holds(i, j, l)) ++report.jacobi_pass;
                }
    }
    if (!checks.antisymmetry && !checks.oracle) return report;

    for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = i; j < K; ++j) {
            const AlgebraElement xy = L.bracket(keys[i], keys[j]);
            if (checks.antisymmetry) {
                ++report.antisym_total;
                if (xy == -L.bracket(keys[j], keys[i])) ++report.antisym_pass;
            }
            if (!checks.oracle || !keys[i].has_exponent() || !keys[j].has_exponent()) continue;
            ++report.oracle_total;
            const AlgebraElement x(keys[i], L.field().one()), y(keys[j], L.field().one());
            if (xy == L.matrix_bracket(x, y)) ++report.oracle_pass;
        }
    }
    return report;
}

}  // namespace sl2q
