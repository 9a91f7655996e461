#include "sl2q/heis_verma.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "sl2q/error.hpp"

namespace sl2q {

std::string Factor::to_string() const { return std::string(1, kind_letter(kind)) + a.to_string(); }

Ordering compare_factors(const Factor& p, const Factor& q) {
    const Ordering o = compare_pbw(p.a, q.a);
    if (o != Ordering::Equal) return o;
    if (p.kind == q.kind) return Ordering::Equal;
    return p.kind == Kind::W ? Ordering::Less : Ordering::Greater;
}

std::string HeisMonomial::to_string() const {
    std::string s;
    for (const auto& f : factors) s += f.to_string();
    return s + "v";
}

std::size_t HeisMonomial::hash() const noexcept {
    std::size_t h = factors.size();
    for (const auto& f : factors) h = h * 1000003u ^ (f.a.hash() * 2 + (f.kind == Kind::W ? 1 : 0));
    return h;
}

bool MonomialLess::operator()(const HeisMonomial& p, const HeisMonomial& q) const {
    if (p.factors.size() != q.factors.size()) return p.factors.size() < q.factors.size();
    for (std::size_t i = 0; i < p.factors.size(); ++i) {
        const Ordering o = compare_factors(p.factors[i], q.factors[i]);
        if (o != Ordering::Equal) return o == Ordering::Less;
    }
    return false;
}

LatticeVector degree_of(const HeisMonomial& m, int n) {
    LatticeVector d(n);
    for (const auto& f : m.factors) d += f.a;
    return d;
}

std::string to_string(const HeisVector& v) {
    if (v.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : v) {
        if (!s.empty()) s += " + ";
        s += "(" + c.to_string() + ")*" + m.to_string();
    }
    return s;
}

void SupportBox::validate() const {
    if (B < 1 || L < 1) throw Error(Errc::InvalidConfig, "support box bounds must be positive");
}

std::vector<LatticeVector> lattice_box(int n, int B) {
    std::vector<LatticeVector> out;
    LatticeVector a(n);
    for (int i = 0; i < n; ++i) a[i] = -B;
    while (true) {
        out.push_back(a);
        int i = 0;
        while (i < n && a[i] == B) a[i++] = -B;
        if (i == n) break;
        ++a[i];
    }
    return out;
}

std::vector<LatticeVector> degree_box(int n, int B) {
    std::vector<LatticeVector> out;
    for (const auto& a : lattice_box(n, B)) {
        if (!is_positive(a)) out.push_back(a);
    }
    return out;
}

namespace {

struct PairKey {
    Factor f;
    HeisMonomial m;
    friend bool operator==(const PairKey& p, const PairKey& q) noexcept { return p.f == q.f && p.m == q.m; }
};

struct PairHash {
    std::size_t operator()(const PairKey& k) const noexcept {
        return k.m.hash() * 31u + k.f.a.hash() * 7u + (k.f.kind == Kind::W ? 1 : 0);
    }
};

HeisMonomial tail(const HeisMonomial& m) {
    return HeisMonomial{std::vector<Factor>(m.factors.begin() + 1, m.factors.end())};
}

bool in_degree_box(const LatticeVector& d, int B) { return d.max_abs() <= B && !is_positive(d); }

}  // namespace

struct HeisModule::Cache {
    std::mutex mu;
    std::unordered_map<PairKey, HeisVector, PairHash> lower;
    std::unordered_map<PairKey, HeisVector, PairHash> upper;
};

HeisModule::HeisModule(LieAlgebra algebra, std::vector<Scalar> central)
    : algebra_(std::move(algebra)), central_(std::move(central)), cache_(std::make_unique<Cache>()) {
    if (static_cast<int>(central_.size()) != rank())
        throw Error(Errc::InvalidConfig, "central character must have one value per coordinate");
    for (const auto& c : central_) {
        if (!field().contains(c)) throw Error(Errc::BackendMismatch, "central value outside the scalar field");
    }
}

HeisModule::~HeisModule() = default;

HeisVector HeisModule::generator() const {
    HeisVector v;
    v.emplace(HeisMonomial{}, field().one());
    return v;
}

std::size_t HeisModule::cache_size() const {
    std::lock_guard lock(cache_->mu);
    return cache_->lower.size() + cache_->upper.size();
}

void HeisModule::check_factor(const Factor& f) const {
    if (f.kind != Kind::U && f.kind != Kind::W)
        throw Error(Errc::KindViolation, "PBW factors are U or W, got " + f.to_string());
    if (!is_negative(f.a)) throw Error(Errc::NotNegative, "factor exponent not negative: " + f.to_string());
    algebra_.validate(f.key());
}

void HeisModule::left_mult_into(HeisVector& out, const Factor& f, const HeisVector& v, const Scalar& c) const {
    for (const auto& [m, x] : v) axpy(out, c * x, left_mult(f, m));
}

const HeisVector& HeisModule::left_mult(const Factor& f, const HeisMonomial& m) const {
    PairKey key{f, m};
    {
        std::lock_guard lock(cache_->mu);
        auto it = cache_->lower.find(key);
        if (it != cache_->lower.end()) return it->second;
    }
    HeisVector out;
    if (m.factors.empty() || compare_factors(f, m.factors.front()) != Ordering::Greater) {
        HeisMonomial p;
        p.factors.reserve(m.factors.size() + 1);
        p.factors.push_back(f);
        p.factors.insert(p.factors.end(), m.factors.begin(), m.factors.end());
        out.emplace(std::move(p), field().one());
    } else {
        // f z_1 rest = z_1 (f rest) + [f, z_1] rest
        const Factor& first = m.factors.front();
        const HeisMonomial rest = tail(m);
        left_mult_into(out, first, left_mult(f, rest), field().one());
        const AlgebraElement br = algebra_.bracket(f.key(), first.key());
        for (const auto& [k, c] : br.terms()) {
            if (!k.has_exponent() || !is_negative(k.a))
                throw Error(Errc::InternalTableInconsistency, "negative bracket left the negative part");
            axpy(out, c, left_mult(Factor{k.kind, k.a}, rest));
        }
    }
    std::lock_guard lock(cache_->mu);
    return cache_->lower.emplace(std::move(key), std::move(out)).first->second;
}

const HeisVector& HeisModule::raise(const Factor& f, const HeisMonomial& m) const {
    static const HeisVector empty;
    if (m.factors.empty()) return empty;
    PairKey key{f, m};
    {
        std::lock_guard lock(cache_->mu);
        auto it = cache_->upper.find(key);
        if (it != cache_->upper.end()) return it->second;
    }
    // z_b z_1 rest = [z_b, z_1] rest + z_1 (z_b rest)
    HeisVector out;
    const Factor& first = m.factors.front();
    const HeisMonomial rest = tail(m);
    const AlgebraElement br = algebra_.bracket(f.key(), first.key());
    for (const auto& [k, c] : br.terms()) {
        if (k.kind == Kind::C) {
            accumulate(out, rest, c * central_[static_cast<std::size_t>(k.index - 1)]);
        } else if (k.has_exponent() && is_positive(k.a)) {
            axpy(out, c, raise(Factor{k.kind, k.a}, rest));
        } else if (k.has_exponent() && is_negative(k.a)) {
            axpy(out, c, left_mult(Factor{k.kind, k.a}, rest));
        } else {
            throw Error(Errc::InternalTableInconsistency, "unexpected term " + k.to_string() + " in a Heisenberg bracket");
        }
    }
    left_mult_into(out, first, raise(f, rest), field().one());
    std::lock_guard lock(cache_->mu);
    return cache_->upper.emplace(std::move(key), std::move(out)).first->second;
}

HeisVector HeisModule::straighten(const std::vector<Factor>& word) const {
    for (const auto& f : word) check_factor(f);
    HeisVector v = generator();
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        HeisVector next;
        left_mult_into(next, *it, v, field().one());
        v = std::move(next);
    }
    return v;
}

HeisVector HeisModule::act(const BasisKey& g, const HeisMonomial& m) const {
    HeisVector out;
    switch (g.kind) {
        case Kind::C:
            if (g.index < 1 || g.index > rank()) throw Error(Errc::InvalidKey, "bad index in " + g.to_string());
            accumulate(out, m, central_[static_cast<std::size_t>(g.index - 1)]);
            return out;
        case Kind::D:
            if (g.index < 1 || g.index > rank()) throw Error(Errc::InvalidKey, "bad index in " + g.to_string());
            accumulate(out, m, field().from_int(degree_of(m, rank())[g.index - 1]));
            return out;
        case Kind::X:
        case Kind::Y: throw Error(Errc::KindViolation, g.to_string() + " is not in the Heisenberg subalgebra");
        default: break;
    }
    if (g.a.size() != rank()) throw Error(Errc::InvalidKey, "rank mismatch in " + g.to_string());
    if (g.a.is_zero()) throw Error(Errc::ZeroExponent, g.to_string() + " is not in the Heisenberg subalgebra");
    algebra_.validate(g);
    const Factor f{g.kind, g.a};
    return is_negative(g.a) ? left_mult(f, m) : raise(f, m);
}

HeisVector HeisModule::act(const BasisKey& g, const HeisVector& v) const {
    HeisVector out;
    for (const auto& [m, c] : v) axpy(out, c, act(g, m));
    return out;
}

HeisVector HeisModule::act(const AlgebraElement& g, const HeisVector& v) const {
    HeisVector out;
    for (const auto& [k, c] : g.terms()) axpy(out, c, act(k, v));
    return out;
}

namespace {

std::vector<Factor> box_factors(const LieAlgebra& L, int B, const std::vector<LatticeVector>& exponents) {
    std::vector<Factor> out;
    for (const auto& a : exponents) {
        if (!is_negative(a) || a.max_abs() > B) continue;
        if (!L.in_radical(a)) out.push_back({Kind::W, a});
        out.push_back({Kind::U, a});
    }
    std::sort(out.begin(), out.end(),
              [](const Factor& p, const Factor& q) { return compare_factors(p, q) == Ordering::Less; });
    return out;
}

// Nondecreasing factor sequences of length <= L.  With a target only
// monomials of that degree are reported; sums of negative vectors are
// negative, so a remainder that is positive can never be reached.
void monomial_search(const std::vector<Factor>& factors, std::size_t start, int L, std::vector<Factor>& current,
                     const LatticeVector& partial, const LatticeVector* target,
                     const std::function<void(const HeisMonomial&, const LatticeVector&)>& emit, int B) {
    if (target) {
        if (partial == *target) emit(HeisMonomial{current}, partial);
    } else {
        emit(HeisMonomial{current}, partial);
    }
    if (static_cast<int>(current.size()) == L) return;
    const int n = partial.size();
    for (std::size_t i = start; i < factors.size(); ++i) {
        const LatticeVector next = partial + factors[i].a;
        if (target) {
            if (is_positive(*target - next)) continue;
        } else if (next[n - 1] < -B) {
            continue;  // last coordinates only decrease
        }
        current.push_back(factors[i]);
        monomial_search(factors, i, L, current, next, target, emit, B);
        current.pop_back();
    }
}

}  // namespace

std::vector<HeisMonomial> HeisModule::enumerate_basis(const LatticeVector& beta, const SupportBox& box) const {
    box.validate();
    if (beta.size() != rank()) throw Error(Errc::RankOutOfRange, "degree has wrong rank");
    std::vector<HeisMonomial> out;
    if (is_positive(beta)) return out;
    const auto factors = box_factors(algebra_, box.B, lattice_box(rank(), box.B));
    std::vector<Factor> current;
    monomial_search(factors, 0, box.L, current, LatticeVector(rank()), &beta,
                    [&](const HeisMonomial& m, const LatticeVector&) { out.push_back(m); }, box.B);
    std::sort(out.begin(), out.end(), MonomialLess{});
    return out;
}

std::map<LatticeVector, std::vector<HeisMonomial>, LexLess> HeisModule::enumerate_box(const SupportBox& box) const {
    box.validate();
    std::map<LatticeVector, std::vector<HeisMonomial>, LexLess> out;
    const auto factors = box_factors(algebra_, box.B, lattice_box(rank(), box.B));
    std::vector<Factor> current;
    monomial_search(
        factors, 0, box.L, current, LatticeVector(rank()), nullptr,
        [&](const HeisMonomial& m, const LatticeVector& d) {
            if (in_degree_box(d, box.B)) out[d].push_back(m);
        },
        box.B);
    for (auto& [d, v] : out) std::sort(v.begin(), v.end(), MonomialLess{});
    return out;
}

std::vector<LatticeVector> HeisModule::string_generators(const SupportBox& box) const {
    box.validate();
    if (field().backend() == Backend::GenericLaurent) {
        for (const auto& c : central_) {
            if (!c.as_rational())
                throw Error(Errc::NonDecidableLambda, "central values must be constants, got " + c.to_string());
        }
    }
    std::vector<LatticeVector> out;
    for (const auto& c : lattice_box(rank(), box.B)) {
        if (is_negative(c) && in_null_lattice(central_, c) && in_some_radical(field(), c)) out.push_back(c);
    }
    return out;
}

namespace {

using HeisSpace = Subspace<HeisMonomial, MonomialLess>;

LatticeVector primitive(const LatticeVector& c) {
    std::int64_t g = 0;
    for (int i = 0; i < c.size(); ++i) g = std::gcd(g, c[i] < 0 ? -c[i] : c[i]);
    LatticeVector p(c.size());
    for (int i = 0; i < c.size(); ++i) p[i] = c[i] / g;
    return p;
}

LatticeVector homogeneous_degree(const HeisVector& v, int n) { return degree_of(v.begin()->first, n); }

std::vector<BasisKey> heisenberg_actors(const LieAlgebra& L, int B, bool raising_only) {
    std::vector<BasisKey> out;
    for (const auto& b : lattice_box(L.rank(), B)) {
        if (b.is_zero() || (raising_only && !is_positive(b))) continue;
        out.push_back(BasisKey::u(b));
        if (!L.in_radical(b)) out.push_back(BasisKey::w(b));
    }
    return out;
}

}  // namespace

GradedSpace HeisModule::tilde_h_components(const SupportBox& box, std::size_t budget) const {
    const auto gens = string_generators(box);
    const int n = rank();

    std::map<LatticeVector, HeisSpace, LexLess> spaces;
    for (const auto& d : degree_box(n, box.B)) spaces.emplace(d, HeisSpace(field()));
    std::deque<HeisVector> work;
    std::size_t total = 0;
    auto add = [&](const HeisVector& v) {
        if (v.empty()) return;
        const LatticeVector d = homogeneous_degree(v, n);
        auto it = spaces.find(d);
        if (it == spaces.end()) return;
        if (it->second.insert(v)) {
            work.push_back(v);
            if (++total > budget)
                throw Error(Errc::SearchBudgetExceeded, "submodule closure exceeded " + std::to_string(budget) + " vectors");
        }
    };

    // nonzero-degree monomials in the string factors, one direction at a time
    std::map<LatticeVector, std::vector<LatticeVector>, LexLess> directions;
    for (const auto& c : gens) directions[primitive(c)].push_back(c);
    for (const auto& [p, members] : directions) {
        const auto factors = box_factors(algebra_, box.B, members);
        std::vector<Factor> current;
        monomial_search(
            factors, 0, box.L, current, LatticeVector(n), nullptr,
            [&](const HeisMonomial& m, const LatticeVector&) {
                if (m.factors.empty()) return;
                HeisVector v;
                v.emplace(m, field().one());
                add(v);
            },
            box.B);
    }

    const auto actors = heisenberg_actors(algebra_, box.B, false);
    while (!work.empty()) {
        const HeisVector v = std::move(work.front());
        work.pop_front();
        const LatticeVector d = homogeneous_degree(v, n);
        for (const auto& g : actors) {
            const LatticeVector target = d + g.a;
            if (!in_degree_box(target, box.B)) continue;
            add(act(g, v));
        }
    }

    GradedSpace out;
    for (const auto& [d, s] : spaces) out.emplace(d, s.basis());
    return out;
}

namespace {

struct SlotKey {
    std::size_t actor;
    HeisMonomial m;
};

struct SlotLess {
    bool operator()(const SlotKey& p, const SlotKey& q) const {
        if (p.actor != q.actor) return p.actor < q.actor;
        return MonomialLess{}(p.m, q.m);
    }
};

}  // namespace

GradedSpace HeisModule::singular_vectors(const GradedSpace* quotient, const SupportBox& box, int raise_bound) const {
    box.validate();
    if (raise_bound < 1) throw Error(Errc::InvalidConfig, "raise bound must be positive");
    const int n = rank();

    std::map<LatticeVector, HeisSpace, LexLess> quotient_spaces;
    if (quotient) {
        for (const auto& [d, basis] : *quotient) {
            auto& s = quotient_spaces.emplace(d, HeisSpace(field())).first->second;
            for (const auto& v : basis) s.insert(v);
        }
    }
    auto reduce_mod = [&](const LatticeVector& d, HeisVector v) {
        auto it = quotient_spaces.find(d);
        return it == quotient_spaces.end() ? v : it->second.reduce(std::move(v));
    };

    const auto raisers = heisenberg_actors(algebra_, raise_bound, true);
    GradedSpace out;
    out.emplace(LatticeVector(n), std::vector<HeisVector>{generator()});
    for (const auto& beta : degree_box(n, box.B)) {
        if (beta.is_zero()) continue;
        const auto S = enumerate_basis(beta, box);
        if (S.empty()) continue;
        Subspace<SlotKey, SlotLess> system(field(), S.size());
        std::vector<HeisVector> kernel;
        for (const auto& s : S) {
            SparseVector<SlotKey, SlotLess> row;
            for (std::size_t j = 0; j < raisers.size(); ++j) {
                const LatticeVector target = beta + raisers[j].a;
                if (is_positive(target)) continue;
                const HeisVector w = reduce_mod(target, raise(Factor{raisers[j].kind, raisers[j].a}, s));
                for (const auto& [m, c] : w) row.emplace(SlotKey{j, m}, c);
            }
            if (auto combo = system.insert_tracked(std::move(row))) {
                HeisVector k;
                for (std::size_t i = 0; i < S.size(); ++i) accumulate(k, S[i], (*combo)[i]);
                kernel.push_back(std::move(k));
            }
        }
        if (kernel.empty()) continue;
        HeisSpace seen(field());
        if (auto it = quotient_spaces.find(beta); it != quotient_spaces.end()) {
            for (const auto& v : it->second.basis()) seen.insert(v);
        }
        std::vector<HeisVector> found;
        for (const auto& k : kernel) {
            HeisVector r = seen.reduce(k);
            if (r.empty()) continue;
            seen.insert(r);
            found.push_back(std::move(r));
        }
        if (!found.empty()) out.emplace(beta, std::move(found));
    }
    return out;
}

}  // namespace sl2q
