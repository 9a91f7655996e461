#include "sl2q/imaginary_verma.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <unordered_map>

#include "sl2q/error.hpp"

namespace sl2q {

std::string MMonomial::to_string() const {
    std::string s;
    for (const auto& a : ys) s += "Y" + a.to_string();
    return s + heis.to_string();
}

std::size_t MMonomial::hash() const noexcept {
    std::size_t h = heis.hash();
    for (const auto& a : ys) h = h * 1000033u ^ a.hash();
    return h * 31u + ys.size();
}

bool MMonomialLess::operator()(const MMonomial& p, const MMonomial& q) const {
    if (p.ys.size() != q.ys.size()) return p.ys.size() > q.ys.size();
    for (std::size_t i = 0; i < p.ys.size(); ++i) {
        const Ordering o = compare_lex(p.ys[i], q.ys[i]);
        if (o != Ordering::Equal) return o == Ordering::Less;
    }
    return MonomialLess{}(p.heis, q.heis);
}

LatticeVector degree_of(const MMonomial& m, int n) {
    LatticeVector d = degree_of(m.heis, n);
    for (const auto& a : m.ys) d += a;
    return d;
}

std::string to_string(const MVector& v) {
    if (v.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : v) {
        if (!s.empty()) s += " + ";
        s += "(" + c.to_string() + ")*" + m.to_string();
    }
    return s;
}

MVector embed(const HeisVector& v) {
    MVector out;
    for (const auto& [m, c] : v) out.emplace(MMonomial{{}, m}, c);
    return out;
}

namespace {

struct ActKey {
    BasisKey g;
    MMonomial m;
    friend bool operator==(const ActKey& p, const ActKey& q) noexcept { return p.g == q.g && p.m == q.m; }
};

struct ActHash {
    std::size_t operator()(const ActKey& k) const noexcept { return k.m.hash() * 131u + k.g.hash(); }
};

MMonomial with_y(const MMonomial& m, const LatticeVector& a) {
    MMonomial out = m;
    const auto pos = std::upper_bound(out.ys.begin(), out.ys.end(), a, LexLess{});
    out.ys.insert(pos, a);
    return out;
}

void add_with_y(MVector& out, const MVector& v, const LatticeVector& a, const Scalar& c) {
    for (const auto& [m, x] : v) accumulate(out, with_y(m, a), c * x);
}

bool lex_sorted_less(const LatticeVector& a, const LatticeVector& b) {
    const auto ma = a.max_abs(), mb = b.max_abs();
    if (ma != mb) return ma < mb;
    return compare_lex(a, b) == Ordering::Less;
}

}  // namespace

struct VermaModule::Cache {
    std::mutex mu;
    std::unordered_map<ActKey, MVector, ActHash> act;
    std::map<std::pair<int, int>, std::map<LatticeVector, std::vector<HeisMonomial>, LexLess>> heis_boxes;
};

VermaModule::VermaModule(LieAlgebra algebra, Weight weight)
    : weight_(std::move(weight)), heis_(std::move(algebra), weight_.c), cache_(std::make_unique<Cache>()) {
    if (static_cast<int>(weight_.d.size()) != rank())
        throw Error(Errc::InvalidConfig, "weight needs one d value per coordinate");
    if (!field().contains(weight_.h)) throw Error(Errc::BackendMismatch, "h value outside the scalar field");
    for (const auto& x : weight_.d) {
        if (!field().contains(x)) throw Error(Errc::BackendMismatch, "d value outside the scalar field");
    }
}

VermaModule::~VermaModule() = default;

MVector VermaModule::generator() const { return embed(heis_.generator()); }

MVector VermaModule::act_on_heis(const BasisKey& g, const HeisMonomial& h) const {
    switch (g.kind) {
        case Kind::X: return {};  // X's commute past the z's into X's and kill v
        case Kind::Y: {
            MVector out;
            out.emplace(MMonomial{{g.a}, h}, field().one());
            return out;
        }
        default: break;
    }
    if (g.kind == Kind::U && g.a.is_zero()) {
        MVector out;
        accumulate(out, MMonomial{{}, h}, weight_.h);
        return out;
    }
    return embed(heis_.act(g, h));
}

const MVector& VermaModule::act_cached(const BasisKey& g, const MMonomial& m) const {
    ActKey key{g, m};
    {
        std::lock_guard lock(cache_->mu);
        auto it = cache_->act.find(key);
        if (it != cache_->act.end()) return it->second;
    }
    MVector out;
    const int n = rank();
    switch (g.kind) {
        case Kind::C:
            accumulate(out, m, weight_.c[static_cast<std::size_t>(g.index - 1)]);
            break;
        case Kind::D:
            accumulate(out, m,
                       weight_.d[static_cast<std::size_t>(g.index - 1)] + field().from_int(degree_of(m, n)[g.index - 1]));
            break;
        case Kind::Y: accumulate(out, with_y(m, g.a), field().one()); break;
        default:
            if (g.kind == Kind::U && g.a.is_zero()) {
                accumulate(out, m, weight_.h - field().from_int(2 * static_cast<long>(m.ys.size())));
                break;
            }
            if (m.ys.empty()) {
                out = act_on_heis(g, m.heis);
                break;
            }
            {
                // g y_a V = [g, y_a] V + y_a (g V)
                const LatticeVector a = m.ys.front();
                MMonomial rest = m;
                rest.ys.erase(rest.ys.begin());
                const AlgebraElement br = algebra().bracket(g, BasisKey::y(a));
                for (const auto& [k, c] : br.terms()) axpy(out, c, act_cached(k, rest));
                add_with_y(out, act_cached(g, rest), a, field().one());
            }
            break;
    }
    std::lock_guard lock(cache_->mu);
    return cache_->act.emplace(std::move(key), std::move(out)).first->second;
}

MVector VermaModule::act(const BasisKey& g, const MMonomial& m) const {
    algebra().validate(g);
    return act_cached(g, m);
}

MVector VermaModule::act(const BasisKey& g, const MVector& v) const {
    algebra().validate(g);
    MVector out;
    for (const auto& [m, c] : v) axpy(out, c, act_cached(g, m));
    return out;
}

MVector VermaModule::act(const AlgebraElement& g, const MVector& v) const {
    MVector out;
    for (const auto& [k, c] : g.terms()) axpy(out, c, act(k, v));
    return out;
}

Weight VermaModule::weight_of(const MMonomial& m) const {
    Weight w = weight_;
    w.h -= field().from_int(2 * static_cast<long>(m.ys.size()));
    const LatticeVector d = degree_of(m, rank());
    for (int i = 0; i < rank(); ++i) w.d[static_cast<std::size_t>(i)] += field().from_int(d[i]);
    return w;
}

std::size_t VermaModule::y_length(const MVector& v) const {
    if (v.empty()) throw Error(Errc::PreconditionViolated, "the zero vector has no Y length");
    const auto& first = v.begin()->first;
    const LatticeVector d = degree_of(first, rank());
    for (const auto& [m, c] : v) {
        if (m.ys.size() != first.ys.size() || degree_of(m, rank()) != d)
            throw Error(Errc::NotWeightVector, "monomials " + first.to_string() + " and " + m.to_string() +
                                                   " have different weights");
    }
    return first.ys.size();
}

const std::map<LatticeVector, std::vector<HeisMonomial>, LexLess>& VermaModule::heis_box(const SupportBox& box) const {
    {
        std::lock_guard lock(cache_->mu);
        auto it = cache_->heis_boxes.find({box.B, box.L});
        if (it != cache_->heis_boxes.end()) return it->second;
    }
    auto groups = heis_.enumerate_box(box);
    std::lock_guard lock(cache_->mu);
    return cache_->heis_boxes.emplace(std::make_pair(box.B, box.L), std::move(groups)).first->second;
}

namespace {

void y_multisets(const std::vector<LatticeVector>& values, std::size_t start, int m, std::vector<LatticeVector>& current,
                 const std::function<void(const std::vector<LatticeVector>&)>& emit) {
    if (static_cast<int>(current.size()) == m) {
        emit(current);
        return;
    }
    for (std::size_t i = start; i < values.size(); ++i) {
        current.push_back(values[i]);
        y_multisets(values, i, m, current, emit);
        current.pop_back();
    }
}

LatticeVector sum_of(const std::vector<LatticeVector>& ys, int n) {
    LatticeVector s(n);
    for (const auto& a : ys) s += a;
    return s;
}

}  // namespace

std::map<LatticeVector, std::size_t, LexLess> VermaModule::y_profile_counts(int m, int B) const {
    if (m < 0) throw Error(Errc::PreconditionViolated, "Y count must be nonnegative");
    std::map<LatticeVector, std::size_t, LexLess> out;
    std::vector<LatticeVector> current;
    y_multisets(lattice_box(rank(), B), 0, m, current,
                [&](const std::vector<LatticeVector>& ys) { ++out[sum_of(ys, rank())]; });
    return out;
}

std::size_t VermaModule::weight_space_dimension(int m, const LatticeVector& beta, const SupportBox& box) const {
    box.validate();
    if (m < 0) throw Error(Errc::PreconditionViolated, "Y count must be nonnegative");
    const auto& groups = heis_box(box);
    std::size_t total = 0;
    for (const auto& [s, count] : y_profile_counts(m, box.B)) {
        auto it = groups.find(beta - s);
        if (it != groups.end()) total += count * it->second.size();
    }
    return total;
}

std::vector<MMonomial> VermaModule::slot_basis(int m, const LatticeVector& beta, const SupportBox& box) const {
    box.validate();
    if (m < 0) throw Error(Errc::PreconditionViolated, "Y count must be nonnegative");
    const auto& groups = heis_box(box);
    std::vector<MMonomial> out;
    std::vector<LatticeVector> current;
    y_multisets(lattice_box(rank(), box.B), 0, m, current, [&](const std::vector<LatticeVector>& ys) {
        auto it = groups.find(beta - sum_of(ys, rank()));
        if (it == groups.end()) return;
        for (const auto& h : it->second) out.push_back(MMonomial{ys, h});
    });
    std::sort(out.begin(), out.end(), MMonomialLess{});
    return out;
}

std::vector<MVector> VermaModule::heisenberg_part(const std::vector<MVector>& vs) const {
    Subspace<MMonomial, MMonomialLess> span(field());
    for (const auto& v : vs) span.insert(v);
    std::vector<MVector> out;
    for (const auto& row : span.basis()) {
        if (row.begin()->first.ys.empty()) out.push_back(row);
    }
    return out;
}

BasisKey VermaModule::find_lowering_witness(const MVector& v, int B) const {
    const std::size_t m = y_length(v);
    if (m == 0) throw Error(Errc::PreconditionViolated, "vector has no Y factors");
    auto candidates = lattice_box(rank(), B);
    std::stable_sort(candidates.begin(), candidates.end(), lex_sorted_less);
    for (const auto& A : candidates) {
        const BasisKey x = BasisKey::x(A);
        const MVector w = act(x, v);
        if (w.empty()) continue;
        if (y_length(w) != m - 1) throw Error(Errc::InternalTableInconsistency, "X did not remove exactly one Y factor");
        return x;
    }
    throw Error(Errc::SearchBudgetExceeded, "no lowering X(A) with ||A|| <= " + std::to_string(B));
}

namespace {

bool heis_in_box(const HeisMonomial& h, const SupportBox& box) {
    if (static_cast<int>(h.length()) > box.L) return false;
    for (const auto& f : h.factors) {
        if (f.a.max_abs() > box.B) return false;
    }
    return true;
}

}  // namespace

FactorizationReport VermaModule::check_factorization(const MVector& generator, const SupportBox& box,
                                                     std::size_t budget) const {
    box.validate();
    const int n = rank();
    FactorizationReport report;
    for (const auto& c : weight_.c) report.hypothesis_met = report.hypothesis_met || !c.is_zero();

    auto in_box = [&](const MMonomial& m) {
        if (static_cast<int>(m.ys.size()) > box.L) return false;
        for (const auto& a : m.ys) {
            if (a.max_abs() > box.B) return false;
        }
        if (!heis_in_box(m.heis, box)) return false;
        if (degree_of(m.heis, n).max_abs() > box.B) return false;
        return degree_of(m, n).max_abs() <= box.B;
    };

    using Space = Subspace<MMonomial, MMonomialLess>;
    std::map<Slot, Space, SlotLess> spaces;
    // a slot spanned by all of its box monomials cannot grow further
    std::map<Slot, std::size_t, SlotLess> capacity = box_dims(box);
    auto full = [&](const Slot& slot) {
        auto it = spaces.find(slot);
        return it != spaces.end() && it->second.dimension() == capacity[slot];
    };
    std::deque<std::pair<Slot, MVector>> work;
    std::size_t total = 0;
    auto add = [&](const MVector& v) {
        std::map<Slot, MVector, SlotLess> parts;
        for (const auto& [m, c] : v) {
            if (in_box(m)) parts[Slot{static_cast<int>(m.ys.size()), degree_of(m, n)}].emplace(m, c);
        }
        for (auto& [slot, part] : parts) {
            if (full(slot)) continue;
            auto it = spaces.try_emplace(slot, field()).first;
            if (it->second.insert(part)) {
                work.emplace_back(slot, std::move(part));
                if (++total > budget)
                    throw Error(Errc::SearchBudgetExceeded, "closure exceeded " + std::to_string(budget) + " vectors");
            }
        }
    };

    std::vector<BasisKey> actors;
    for (const auto& a : lattice_box(n, box.B)) {
        actors.push_back(BasisKey::x(a));
        actors.push_back(BasisKey::y(a));
        if (a.is_zero()) continue;
        actors.push_back(BasisKey::u(a));
        if (!algebra().in_radical(a)) actors.push_back(BasisKey::w(a));
    }

    add(generator);
    while (!work.empty()) {
        const auto [slot, v] = std::move(work.front());
        work.pop_front();
        for (const auto& g : actors) {
            const int m = slot.m + (g.kind == Kind::X ? -1 : g.kind == Kind::Y ? 1 : 0);
            const LatticeVector beta = slot.beta + g.a;
            if (m < 0 || m > box.L || beta.max_abs() > box.B) continue;
            if (m == 0 && is_positive(beta)) continue;
            if (full(Slot{m, beta})) continue;
            add(act(g, v));
        }
    }

    std::map<LatticeVector, std::size_t, LexLess> hat;
    for (const auto& [slot, s] : spaces) {
        if (slot.m == 0) hat[slot.beta] = heisenberg_part(s.basis()).size();
    }
    for (int m = 0; m <= box.L; ++m) {
        const auto profile = y_profile_counts(m, box.B);
        for (const auto& beta : lattice_box(n, box.B)) {
            SlotReport r;
            r.slot = Slot{m, beta};
            auto it = spaces.find(r.slot);
            r.dim_submodule = it == spaces.end() ? 0 : it->second.dimension();
            for (const auto& [s, count] : profile) {
                auto h = hat.find(beta - s);
                if (h != hat.end()) r.dim_convolution += count * h->second;
            }
            if (r.dim_submodule == 0 && r.dim_convolution == 0) continue;
            r.interior = m < box.L && beta.max_abs() < box.B;
            r.pass = r.dim_submodule == r.dim_convolution;
            if (r.interior && !r.pass) report.pass = false;
            report.slots.push_back(std::move(r));
        }
    }
    return report;
}

std::map<Slot, std::size_t, SlotLess> VermaModule::box_dims(const SupportBox& box) const {
    box.validate();
    std::map<Slot, std::size_t, SlotLess> out;
    for (int m = 0; m <= box.L; ++m) {
        for (const auto& beta : lattice_box(rank(), box.B)) {
            const std::size_t d = weight_space_dimension(m, beta, box);
            if (d != 0) out.emplace(Slot{m, beta}, d);
        }
    }
    return out;
}

std::map<Slot, std::size_t, SlotLess> VermaModule::irreducible_quotient_dims(const SupportBox& box) const {
    box.validate();
    if (weight_.c.front().is_zero()) throw Error(Errc::HypothesisUnmet, "lambda(c_1) = 0");
    const auto tilde = heis_.tilde_h_components(box);
    const auto& groups = heis_box(box);
    std::map<LatticeVector, std::size_t, LexLess> quotient;
    for (const auto& [gamma, monomials] : groups) {
        Subspace<HeisMonomial, MonomialLess> span(field());
        std::size_t sub = 0;
        if (auto it = tilde.find(gamma); it != tilde.end()) {
            for (const auto& v : it->second) span.insert(v);
            sub = span.dimension();
        }
        for (const auto& h : monomials) {
            HeisVector v;
            v.emplace(h, field().one());
            span.insert(std::move(v));
        }
        quotient[gamma] = span.dimension() - sub;
    }
    std::map<Slot, std::size_t, SlotLess> out;
    for (int m = 0; m <= box.L; ++m) {
        const auto profile = y_profile_counts(m, box.B);
        for (const auto& beta : lattice_box(rank(), box.B)) {
            std::size_t total = 0, any = 0;
            for (const auto& [s, count] : profile) {
                auto q = quotient.find(beta - s);
                if (q == quotient.end()) continue;
                ++any;
                total += count * q->second;
            }
            if (any != 0) out.emplace(Slot{m, beta}, total);
        }
    }
    return out;
}

}  // namespace sl2q
