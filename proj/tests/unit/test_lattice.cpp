#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sl2q/error.hpp"
#include "sl2q/lattice.hpp"

using namespace sl2q;

TEST_CASE("lexicographic order compares at the largest differing index") {
    CHECK(compare_lex({5, -1}, {0, 0}) == Ordering::Less);
    CHECK(compare_lex({-3, 1}, {0, 0}) == Ordering::Greater);
    CHECK(compare_lex({0, 0}, {0, 0}) == Ordering::Equal);
    CHECK(is_negative({5, -1}));
    CHECK(!is_negative({0, 0}));
    CHECK(is_positive({-3, 1}));
}

TEST_CASE("PBW order on the negative cone") {
    CHECK(compare_pbw({-1, 0}, {-2, 0}) == Ordering::Less);
    CHECK(compare_pbw({5, -1}, {3, -2}) == Ordering::Less);
    CHECK(compare_pbw({2, -1}, {3, -1}) == Ordering::Less);
    // deeper last nonzero position precedes
    CHECK(compare_pbw({7, -1}, {-1, 0}) == Ordering::Less);
    CHECK(compare_pbw({-1, 0}, {7, -1}) == Ordering::Greater);
    try {
        compare_pbw({1, 0}, {-1, 0});
        FAIL("expected NotNegative");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotNegative);
    }
}

TEST_CASE("both orders are total orders on a box") {
    auto all = oracle::box(3, 3, 2);
    std::vector<LatticeVector> neg;
    std::copy_if(all.begin(), all.end(), std::back_inserter(neg), [](const auto& a) { return is_negative(a); });
    auto check_total = [](const std::vector<LatticeVector>& v, auto cmp) {
        for (const auto& a : v)
            for (const auto& b : v) {
                const auto ab = cmp(a, b), ba = cmp(b, a);
                CHECK((ab == Ordering::Equal) == (a == b));
                CHECK((ab == Ordering::Less) == (ba == Ordering::Greater));
            }
        std::mt19937 rng(3);
        std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
        for (int t = 0; t < 20000; ++t) {
            const auto &a = v[pick(rng)], &b = v[pick(rng)], &c = v[pick(rng)];
            if (cmp(a, b) == Ordering::Less && cmp(b, c) == Ordering::Less) CHECK(cmp(a, c) == Ordering::Less);
        }
    };
    check_total(all, compare_lex);
    check_total(neg, compare_pbw);
}

TEST_CASE("cocycle and commutator factor values") {
    auto F4 = oracle::rank2(4, 1);
    CHECK(cocycle(F4, {0, 0}, {3, -2}) == F4.one());
    CHECK(cocycle(F4, {1, 1}, {1, 0}) == F4.root_of_unity(-1));
    CHECK(oracle::close(oracle::evaluate(cocycle(F4, {1, 1}, {1, 0}), 4), {0, -1}));
    auto F3 = oracle::rank2(3, 1);
    CHECK(commutator_factor(F3, {1, 0}, {0, 1}) == F3.root_of_unity(1));

    auto G = oracle::generic_field(2);
    CHECK(cocycle(G, {0, 1}, {1, 0}) == G.q(1, 2).inverse());
    CHECK(commutator_factor(G, {1, 0}, {0, 1}) == G.q(1, 2));
}

TEST_CASE("cocycle and commutator factor agree with a numerical product") {
    std::mt19937 rng(5);
    for (int N : {2, 3, 4, 6}) {
        for (int n : {2, 3}) {
            auto M = oracle::random_skew(n, N, rng);
            auto F = oracle::cyclotomic_field(n, N, M);
            auto pts = oracle::box(n, n, 2);
            for (int t = 0; t < 300; ++t) {
                const auto& a = pts[rng() % pts.size()];
                const auto& b = pts[rng() % pts.size()];
                CHECK(oracle::close(oracle::evaluate(cocycle(F, a, b), N), oracle::cocycle(M, N, a, b)));
                CHECK(oracle::close(oracle::evaluate(commutator_factor(F, a, b), N), oracle::commutator(M, N, a, b)));
            }
        }
    }
}

TEST_CASE("bimultiplicativity and antisymmetry of the commutator factor") {
    std::mt19937 rng(13);
    std::vector<Field> fields{oracle::generic_field(3), oracle::rank2(6, 5)};
    for (int N : {2, 3, 4}) fields.push_back(oracle::cyclotomic_field(3, N, oracle::random_skew(3, N, rng)));
    std::uniform_int_distribution<std::int64_t> d(-6, 6);
    for (const auto& F : fields) {
        auto rnd = [&] {
            LatticeVector v(F.rank());
            for (int i = 0; i < F.rank(); ++i) v[i] = d(rng);
            return v;
        };
        for (int t = 0; t < 300; ++t) {
            auto a = rnd(), a2 = rnd(), b = rnd(), b2 = rnd();
            CHECK(commutator_factor(F, a + a2, b) == commutator_factor(F, a, b) * commutator_factor(F, a2, b));
            CHECK(commutator_factor(F, a, b + b2) == commutator_factor(F, a, b) * commutator_factor(F, a, b2));
            CHECK(cocycle(F, a + a2, b) == cocycle(F, a, b) * cocycle(F, a2, b));
            CHECK(cocycle(F, a, b + b2) == cocycle(F, a, b) * cocycle(F, a, b2));
            CHECK(commutator_factor(F, b, a) == commutator_factor(F, a, b).inverse());
            CHECK(commutator_factor(F, a, b) == cocycle(F, a, b) * cocycle(F, b, a).inverse());
            CHECK(commutator_factor(F, a, a).is_one());
            CHECK(commutator_factor(F, a, -a).is_one());
        }
    }
}

TEST_CASE("radical basis for q_12 = zeta_3") {
    auto F = oracle::rank2(3, 1);
    CHECK(radical_basis(F, 2) == std::vector<LatticeVector>{{3, 0}, {0, 3}});
    CHECK(radical_basis(F, 1) == std::vector<LatticeVector>{{1, 0}});
    CHECK(in_radical(F, {0, 0}, 2));
    CHECK(!in_radical(F, {1, 1}, 2));
    CHECK(in_radical(F, {3, 0}, 2));
    CHECK(radical_basis(oracle::generic_field(2), 2).empty());
    CHECK(radical_basis(oracle::generic_field(3), 1) == std::vector<LatticeVector>{{1, 0, 0}});
    try {
        in_radical(F, {0, 1}, 1);
        FAIL("expected SupportViolation");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SupportViolation);
    }
    CHECK_THROWS_AS(radical_basis(F, 3), Error);
}

TEST_CASE("radical basis agrees with brute force") {
    std::mt19937 rng(17);
    for (int N : {2, 3, 4, 6}) {
        for (int n : {2, 3}) {
            for (int trial = 0; trial < 3; ++trial) {
                auto M = oracle::random_skew(n, N, rng);
                auto F = oracle::cyclotomic_field(n, N, M);
                for (int r = 1; r <= n; ++r) {
                    const auto basis = radical_basis(F, r);
                    // the basis spans a full-rank sublattice of Z^r containing N Z^r
                    CHECK(static_cast<int>(basis.size()) == r);
                    for (const auto& v : basis) CHECK(oracle::brute_in_radical(M, N, v, r));
                    for (const auto& a : oracle::box(n, r, N)) {
                        const bool brute = oracle::brute_in_radical(M, N, a, r);
                        CHECK(in_radical(F, a, r) == brute);
                        // membership in the span of the triangular basis
                        LatticeVector rest = a;
                        for (std::size_t k = 0; k < basis.size(); ++k) {
                            int p = 0;
                            while (basis[k][p] == 0) ++p;
                            if (rest[p] % basis[k][p] != 0) break;
                            rest -= (rest[p] / basis[k][p]) * basis[k];
                        }
                        CHECK(rest.is_zero() == brute);
                    }
                }
            }
        }
    }
}

TEST_CASE("null lattice membership") {
    auto R = oracle::rational_field(2);
    std::vector<Scalar> lam{R.from_int(1), R.from_int(-1)};
    CHECK(in_null_lattice(lam, {2, 2}));
    CHECK(!in_null_lattice(lam, {0, 0}));
    CHECK(!in_null_lattice({R.from_int(1), R.zero()}, {1, 0}));
}

TEST_CASE("nonradical witness") {
    auto F = oracle::rank2(3, 1);
    const LatticeVector c = nonradical_witness(F, {1, 0}, {1});
    CHECK(c == LatticeVector{-2, 1});
    CHECK(oracle::commutator_power({{0, 1}, {2, 0}}, 3, c, {1, 0}) != 0);

    auto G = oracle::generic_field(2);
    const LatticeVector g = nonradical_witness(G, {0, 1}, {1});
    CHECK(g == LatticeVector{-2, 1});
    CHECK(commutator_factor(G, g, {0, 1}) == G.parse("q12^-2"));

    try {
        nonradical_witness(F, {3, 3}, {1});
        FAIL("expected InRadical");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InRadical);
    }

    // larger rank: every returned witness satisfies the bounds and f != 1
    std::mt19937 rng(23);
    auto M = oracle::random_skew(3, 4, rng);
    auto F3 = oracle::cyclotomic_field(3, 4, M);
    for (const auto& b : oracle::box(3, 3, 2)) {
        if (in_radical(F3, b, 3)) continue;
        const auto w = nonradical_witness(F3, b, {2, 1});
        CHECK(w[0] < -2);
        CHECK(w[1] < -1);
        CHECK(w[2] == 1);
        CHECK(oracle::commutator_power(M, 4, w, b) != 0);
    }
}
