#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sl2q/error.hpp"
#include "sl2q/imaginary_verma.hpp"

using namespace sl2q;

namespace {

Weight weight(const Field& F, long h, std::vector<long> c) {
    Weight w;
    w.h = F.from_int(h);
    for (long x : c) {
        w.c.push_back(F.from_int(x));
        w.d.push_back(F.zero());
    }
    return w;
}

MMonomial mm(std::vector<LatticeVector> ys, std::vector<Factor> heis = {}) {
    std::sort(ys.begin(), ys.end(), [](const auto& p, const auto& q) { return compare_lex(p, q) == Ordering::Less; });
    return {std::move(ys), HeisMonomial{std::move(heis)}};
}

MVector single(const Field& F, const MMonomial& m, long c = 1) {
    MVector v;
    v.emplace(m, F.from_int(c));
    return v;
}

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Overflow;
}

/// Count of monomials y_{s_1}..y_{s_m} z v in slot (m, beta): Y multisets
/// from one generating function, Heisenberg parts from another, convolved.
long slot_count(const Field& F, int m, const LatticeVector& beta, int B, int L) {
    const int n = F.rank();
    std::vector<std::pair<LatticeVector, int>> ygens, hgens;
    std::vector<std::vector<long>> M = F.config().backend == Backend::Cyclotomic
                                           ? F.config().M
                                           : std::vector<std::vector<long>>(n, std::vector<long>(n, 0));
    const int N = F.config().backend == Backend::Cyclotomic ? F.config().N : 1;
    for (const auto& a : oracle::box(n, n, B)) {
        ygens.emplace_back(a, 1);
        bool negative = false;
        for (int i = n - 1; i >= 0; --i)
            if (a[i] != 0) {
                negative = a[i] < 0;
                break;
            }
        if (negative) hgens.emplace_back(a, oracle::brute_in_radical(M, N, a, n) ? 1 : 2);
    }
    auto upto = oracle::generating_function_counts(ygens, m);
    if (m > 0) {
        for (const auto& [d, c] : oracle::generating_function_counts(ygens, m - 1)) upto[d] -= c;
    }
    const auto heis = oracle::generating_function_counts(hgens, L);
    long total = 0;
    for (const auto& [s, c] : upto) {
        std::vector<std::int64_t> g(static_cast<std::size_t>(n));
        bool inside = true;
        for (int i = 0; i < n; ++i) {
            g[static_cast<std::size_t>(i)] = beta[i] - s[static_cast<std::size_t>(i)];
            inside = inside && std::abs(g[static_cast<std::size_t>(i)]) <= B;
        }
        if (!inside) continue;
        const auto it = heis.find(g);
        if (it != heis.end()) total += c * it->second;
    }
    return total;
}

}  // namespace

TEST_CASE("monomial printing and degrees") {
    const auto m = mm({{1, 0}, {-1, 0}}, {{Kind::U, {-1, 0}}});
    CHECK(m.to_string() == "Y(-1,0)Y(1,0)U(-1,0)v");
    CHECK(degree_of(m, 2) == LatticeVector{-1, 0});
    CHECK(m.y_count() == 2);
}

TEST_CASE("action examples") {
    for (const auto& F : {oracle::rank2(3, 1), oracle::rational_field(2)}) {
        VermaModule V(LieAlgebra(F), weight(F, 3, {1, -1}));
        const auto v = V.generator();
        const auto yv = V.act(BasisKey::y({0, 0}), v);
        CHECK(yv == single(F, mm({{0, 0}})));
        CHECK(V.act(BasisKey::x({0, 0}), yv) == scaled(v, F.from_int(3)));
        CHECK(V.act(BasisKey::u({0, 0}), v) == scaled(v, F.from_int(3)));
        CHECK(V.act(BasisKey::u({0, 0}), yv) == scaled(yv, F.from_int(1)));
        CHECK(V.act(BasisKey::x({1, 0}), v).empty());
        CHECK(V.act(BasisKey::c(2, 2), v) == scaled(v, F.from_int(-1)));
        CHECK(V.act(BasisKey::d(2, 1), v).empty());
        // y_a commute among themselves
        const auto y12 = V.act(BasisKey::y({1, 0}), V.act(BasisKey::y({0, 1}), v));
        const auto y21 = V.act(BasisKey::y({0, 1}), V.act(BasisKey::y({1, 0}), v));
        CHECK(y12 == y21);
        CHECK(y12 == single(F, mm({{1, 0}, {0, 1}})));
    }
}

TEST_CASE("representation property on the full algebra") {
    for (const auto& F : {oracle::rank2(3, 1), oracle::rational_field(1)}) {
        LieAlgebra L(F);
        const int n = F.rank();
        VermaModule V(L, weight(F, 3, std::vector<long>(static_cast<std::size_t>(n), n == 1 ? 2 : 1)));
        auto keys = L.keys_in_box(1);
        std::vector<MMonomial> monos;
        for (int m = 0; m <= 1; ++m)
            for (const auto& beta : lattice_box(n, 1))
                for (const auto& x : V.slot_basis(m, beta, {1, 1})) monos.push_back(x);
        REQUIRE(monos.size() > 5);
        std::mt19937 rng(11);
        std::uniform_int_distribution<std::size_t> pk(0, keys.size() - 1), pm(0, monos.size() - 1);
        for (int trial = 0; trial < 1500; ++trial) {
            const auto& g1 = keys[pk(rng)];
            const auto& g2 = keys[pk(rng)];
            const auto v = single(F, monos[pm(rng)]);
            auto lhs = V.act(g2, V.act(g1, v));
            axpy(lhs, -F.one(), V.act(g1, V.act(g2, v)));
            const auto rhs = V.act(L.bracket(g2, g1), v);
            if (lhs != rhs) FAIL_CHECK(g1.to_string() << " " << g2.to_string() << " " << to_string(v));
        }
    }
}

TEST_CASE("weights") {
    auto F = oracle::rank2(3, 1);
    LieAlgebra L(F);
    VermaModule V(L, weight(F, 3, {1, -1}));
    const auto lam = V.weight();
    CHECK(V.weight_of(mm({})) == lam);
    const auto w = V.weight_of(mm({{2, 0}}));
    CHECK(w.h == F.from_int(1));
    CHECK(w.c == lam.c);
    CHECK(w.d == std::vector<Scalar>{F.from_int(2), F.zero()});
    const auto u = V.weight_of(mm({}, {{Kind::U, {-1, 0}}}));
    CHECK(u.h == lam.h);
    CHECK(u.d == std::vector<Scalar>{F.from_int(-1), F.zero()});

    // acting by a root vector shifts the weight by its root
    std::vector<MMonomial> monos;
    for (int m = 0; m <= 2; ++m)
        for (const auto& beta : lattice_box(2, 1))
            for (const auto& x : V.slot_basis(m, beta, {1, 2})) monos.push_back(x);
    for (const auto& g : L.keys_in_box(1)) {
        const auto root = L.root_of(g);
        for (const auto& m : monos) {
            const auto before = V.weight_of(m);
            for (const auto& [t, c] : V.act(g, m)) {
                const auto after = V.weight_of(t);
                const long alpha = root ? root->alpha : 0;
                const LatticeVector a = root ? root->a : LatticeVector(2);
                CHECK(after.h == before.h + F.from_int(2 * alpha));
                CHECK(after.c == before.c);
                for (int i = 0; i < 2; ++i) CHECK(after.d[static_cast<std::size_t>(i)] == before.d[static_cast<std::size_t>(i)] + F.from_int(a[i]));
            }
        }
    }
}

TEST_CASE("Y length") {
    auto F = oracle::rank2(3, 1);
    VermaModule V(LieAlgebra(F), weight(F, 3, {1, -1}));
    CHECK(V.y_length(V.generator()) == 0);
    CHECK(V.y_length(single(F, mm({{1, 0}, {-1, 0}}))) == 2);
    CHECK(V.y_length(single(F, mm({{0, 0}}, {{Kind::U, {-1, 0}}}))) == 1);
    auto mixed = single(F, mm({{1, 0}}));
    mixed.emplace(mm({{1, 0}, {0, 0}}), F.one());
    CHECK(code_of([&] { V.y_length(mixed); }) == Errc::NotWeightVector);
    CHECK(code_of([&] { V.y_length(MVector{}); }) == Errc::PreconditionViolated);
}

TEST_CASE("weight space dimensions") {
    auto F1 = oracle::rational_field(1);
    VermaModule V1(LieAlgebra(F1), weight(F1, 0, {1}));
    CHECK(V1.weight_space_dimension(0, {0}, {2, 2}) == 1);
    const auto d2 = V1.weight_space_dimension(1, {0}, {2, 2});
    CHECK(d2 == static_cast<std::size_t>(slot_count(F1, 1, {0}, 2, 2)));
    CHECK(d2 == 4);
    CHECK(V1.weight_space_dimension(1, {0}, {3, 2}) >= d2);

    for (const auto& F : {oracle::rank2(3, 1), oracle::rational_field(2)}) {
        VermaModule V(LieAlgebra(F), weight(F, 0, {1, 0}));
        CHECK(V.weight_space_dimension(0, {0, 0}, {2, 2}) == 1);
        for (int m = 0; m <= 2; ++m)
            for (const auto& beta : lattice_box(2, 2)) {
                const auto got = V.weight_space_dimension(m, beta, {2, 2});
                CHECK(static_cast<long>(got) == slot_count(F, m, beta, 2, 2));
                CHECK(V.slot_basis(m, beta, {2, 2}).size() == got);
            }
    }
}

TEST_CASE("Heisenberg part") {
    auto F = oracle::rank2(3, 1);
    VermaModule V(LieAlgebra(F), weight(F, 3, {1, -1}));
    const auto v = V.generator();
    CHECK(V.heisenberg_part({v}) == std::vector<MVector>{v});
    CHECK(V.heisenberg_part({single(F, mm({{0, 0}}))}).empty());

    const auto u = single(F, mm({}, {{Kind::U, {-1, 0}}}));
    auto mixed = u;
    mixed.emplace(mm({{1, 0}, {-2, 0}}), F.from_int(2));
    const auto yonly = single(F, mm({{1, 0}, {-2, 0}}), 5);
    const auto hp = V.heisenberg_part({mixed, yonly});
    REQUIRE(hp.size() == 1);
    Subspace<MMonomial, MMonomialLess> s(F);
    s.insert(hp.front());
    CHECK(s.contains(u));

    // contained in the span and idempotent
    std::vector<MVector> vs{mixed, yonly, V.act(BasisKey::y({0, 1}), u), V.act(BasisKey::x({0, -1}), single(F, mm({{0, 1}})))};
    Subspace<MMonomial, MMonomialLess> span(F);
    for (const auto& x : vs) span.insert(x);
    const auto part = V.heisenberg_part(vs);
    for (const auto& x : part) {
        CHECK(span.contains(x));
        for (const auto& [m, c] : x) CHECK(m.y_count() == 0);
    }
    CHECK(V.heisenberg_part(part).size() == part.size());
}

TEST_CASE("lowering witnesses") {
    auto F = oracle::rank2(3, 1);
    VermaModule V(LieAlgebra(F), weight(F, 3, {1, -1}));
    CHECK(V.find_lowering_witness(single(F, mm({{0, 0}})), 2) == BasisKey::x({0, 0}));
    CHECK(code_of([&] { V.find_lowering_witness(V.generator(), 2); }) == Errc::PreconditionViolated);

    std::vector<MVector> samples;
    for (int m = 1; m <= 2; ++m)
        for (const auto& beta : lattice_box(2, 1))
            for (const auto& x : V.slot_basis(m, beta, {1, 2})) samples.push_back(single(F, x));
    // a combination too
    samples.push_back(single(F, mm({{1, 0}})));
    axpy(samples.back(), F.from_int(3), single(F, mm({{0, 0}}, {{Kind::U, {1, 0}}})));
    for (const auto& v : samples) {
        const std::size_t m = V.y_length(v);
        const auto A = V.find_lowering_witness(v, 2);
        CHECK(A.kind == Kind::X);
        const auto w = V.act(A, v);
        REQUIRE(!w.empty());
        CHECK(V.y_length(w) == m - 1);
    }

    // the scan stops at the first working exponent: no smaller-norm X works
    const auto v = single(F, mm({{1, 0}}));
    const auto A = V.find_lowering_witness(v, 2);
    for (const auto& a : lattice_box(2, 2))
        if (a.max_abs() < A.a.max_abs()) CHECK(V.act(BasisKey::x(a), v).empty());
}

TEST_CASE("factorization of submodules") {
    auto F1 = oracle::rational_field(1);
    VermaModule V1(LieAlgebra(F1), weight(F1, 0, {1}));
    const auto r0 = V1.check_factorization(V1.generator(), {2, 2});
    CHECK(r0.hypothesis_met);
    CHECK(r0.pass);
    for (const auto& s : r0.slots) {
        if (s.interior) CHECK(s.dim_submodule == V1.weight_space_dimension(s.slot.m, s.slot.beta, {2, 2}));
    }
    const auto r1 = V1.check_factorization(single(F1, mm({}, {{Kind::U, {-1}}})), {2, 2});
    CHECK(r1.pass);
    bool top = false;
    for (const auto& s : r1.slots)
        if (s.slot.m == 0 && s.slot.beta.is_zero()) top = s.dim_submodule == 1;
    CHECK(top);

    // with zero central charge U(-1)v is singular and generates a proper submodule
    VermaModule V0(LieAlgebra(F1), weight(F1, 0, {0}));
    const auto rz = V0.check_factorization(single(F1, mm({}, {{Kind::U, {-1}}})), {2, 2});
    CHECK_FALSE(rz.hypothesis_met);
    REQUIRE_FALSE(rz.slots.empty());
    for (const auto& s : rz.slots) {
        if (s.slot.m == 0 && s.slot.beta.is_zero()) CHECK(s.dim_submodule == 0);
    }

    auto F = oracle::rank2(3, 1);
    VermaModule V(LieAlgebra(F), weight(F, 0, {1, 0}));
    CHECK(V.check_factorization(single(F, mm({}, {{Kind::U, {0, -1}}})), {2, 1}).pass);
}

TEST_CASE("irreducible quotient dimensions") {
    auto F1 = oracle::rational_field(1);
    VermaModule V1(LieAlgebra(F1), weight(F1, 0, {1}));
    const auto l1 = V1.irreducible_quotient_dims({2, 2});
    CHECK(l1.at(Slot{0, {0}}) == 1);
    CHECK(l1.at(Slot{0, {-2}}) == 2);
    CHECK(l1 == V1.box_dims({2, 2}));

    VermaModule V0(LieAlgebra(F1), weight(F1, 0, {0}));
    CHECK(code_of([&] { V0.irreducible_quotient_dims({2, 2}); }) == Errc::HypothesisUnmet);

    auto F = oracle::rank2(3, 1);
    VermaModule V(LieAlgebra(F), weight(F, 0, {1, -1}));
    const SupportBox box{3, 2};
    const auto l = V.irreducible_quotient_dims(box);
    const auto m = V.box_dims(box);
    const Slot corner{0, {-3, -3}};
    CHECK(l.at(corner) < m.at(corner));
    CHECK(l.at(Slot{0, {0, 0}}) == 1);
    for (const auto& [slot, d] : l) CHECK(d <= m.at(slot));
}
