// Runs every acceptance criterion once and prints one PASS/FAIL line each.
// Usage: sl2q_acceptance [--cli PATH --configs DIR] [--only K]

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "sl2q/error.hpp"
#include "sl2q/heis_verma.hpp"
#include "sl2q/imaginary_verma.hpp"
#include "sl2q/lattice.hpp"
#include "sl2q/lie_algebra.hpp"
#include "sl2q/qtorus.hpp"

using namespace sl2q;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0 = none
    std::function<Outcome()> run;
};

std::string cli_path, configs_dir;

/// Tallies failures and keeps the first one for the report.
struct Tally {
    std::size_t checked = 0, failed = 0;
    std::string first;

    void check(bool ok, const std::string& what) {
        ++checked;
        if (ok) return;
        if (failed++ == 0) first = what;
    }
    Outcome outcome(const std::string& detail) const {
        std::ostringstream s;
        s << detail << ", " << checked - failed << "/" << checked;
        if (failed) s << ", first failure: " << first;
        return {failed == 0, s.str()};
    }
};

std::vector<Field> cyclotomic_sample(int n, std::mt19937& rng) {
    std::vector<Field> out;
    for (int N : {2, 3, 4, 6}) out.push_back(oracle::cyclotomic_field(n, N, oracle::random_skew(n, N, rng)));
    return out;
}

std::vector<Scalar> ints(const Field& F, std::vector<long> v) {
    std::vector<Scalar> out;
    for (long x : v) out.push_back(F.from_int(x));
    return out;
}

Weight weight(const Field& F, long h, std::vector<long> c) {
    Weight w{F.from_int(h), ints(F, c), {}};
    w.d.assign(c.size(), F.zero());
    return w;
}

std::string describe(const Field& F) {
    std::ostringstream s;
    s << to_string(F.backend()) << " n=" << F.rank();
    if (F.backend() == Backend::Cyclotomic) s << " N=" << F.config().N;
    return s.str();
}

// ---------------------------------------------------------------------------

Outcome algebra_axioms() {
    std::mt19937 rng(2024);
    Tally t;
    std::size_t jacobi = 0;
    for (int n = 1; n <= 3; ++n) {
        auto fields = cyclotomic_sample(n, rng);
        fields.push_back(oracle::generic_field(n));
        for (const auto& F : fields) {
            const auto rep = check_axioms(LieAlgebra(F), 2, AxiomChecks{true, true, false});
            jacobi += rep.jacobi_total;
            t.check(rep.jacobi_pass == rep.jacobi_total && rep.antisym_pass == rep.antisym_total, describe(F));
        }
    }
    return t.outcome(std::to_string(jacobi) + " Jacobi triples, configs passing");
}

Outcome oracle_equivalence() {
    std::mt19937 rng(2024);
    Tally t;
    std::size_t pairs = 0;
    for (int n = 1; n <= 3; ++n) {
        auto fields = cyclotomic_sample(n, rng);
        fields.push_back(oracle::generic_field(n));
        for (const auto& F : fields) {
            const auto rep = check_axioms(LieAlgebra(F), 2, AxiomChecks{false, false, true});
            pairs += rep.oracle_total;
            t.check(rep.oracle_pass == rep.oracle_total, describe(F));
        }
    }
    return t.outcome(std::to_string(pairs) + " pairs, configs passing");
}

Outcome commutator_factor_laws() {
    std::mt19937 rng(7);
    Tally t;
    std::vector<Field> fields;
    for (int n = 2; n <= 3; ++n) {
        for (auto& F : cyclotomic_sample(n, rng)) fields.push_back(F);
        fields.push_back(oracle::generic_field(n));
    }
    for (const auto& F : fields) {
        const int n = F.rank();
        std::uniform_int_distribution<std::int64_t> d(-6, 6);
        auto random_vector = [&] {
            LatticeVector v(n);
            for (int i = 0; i < n; ++i) v[i] = d(rng);
            return v;
        };
        const bool numeric = F.backend() == Backend::Cyclotomic;
        for (int k = 0; k < 10000; ++k) {
            const auto a = random_vector(), a2 = random_vector(), b = random_vector(), b2 = random_vector();
            const auto fab = commutator_factor(F, a, b);
            bool ok = commutator_factor(F, a + a2, b) == fab * commutator_factor(F, a2, b) &&
                      commutator_factor(F, a, b + b2) == fab * commutator_factor(F, a, b2) &&
                      commutator_factor(F, b, a) * fab == F.one() && commutator_factor(F, a, a) == F.one() &&
                      commutator_factor(F, a, -a) == F.one();
            if (numeric && k % 10 == 0)
                ok = ok && oracle::close(oracle::evaluate(fab, F.config().N),
                                         oracle::commutator(F.config().M, F.config().N, a, b));
            t.check(ok, describe(F) + " a=" + a.to_string() + " b=" + b.to_string());
        }
    }
    return t.outcome(std::to_string(fields.size()) + " configs, random quadruples");
}

/// a in the integer span of an echelon basis, by back substitution.
bool in_span(LatticeVector a, const std::vector<LatticeVector>& basis) {
    for (const auto& row : basis) {
        int p = 0;
        while (p < row.size() && row[p] == 0) ++p;
        if (p == row.size()) continue;
        if (a[p] % row[p] != 0) return false;
        a -= (a[p] / row[p]) * row;
    }
    return a.is_zero();
}

Outcome radical_correctness() {
    std::mt19937 rng(11);
    Tally t;
    {
        const auto basis = radical_basis(oracle::rank2(3, 1), 2);
        t.check(basis == std::vector<LatticeVector>{{3, 0}, {0, 3}}, "n=2 N=3 m=1 basis is not 3Z^2");
    }
    for (int n = 2; n <= 3; ++n) {
        for (int N : {2, 3, 4, 6}) {
            for (int rep = 0; rep < 2; ++rep) {
                const auto M = oracle::random_skew(n, N, rng);
                const auto F = oracle::cyclotomic_field(n, N, M);
                for (int r = 1; r <= n; ++r) {
                    const auto basis = radical_basis(F, r);
                    for (const auto& a : oracle::box(n, r, N)) {
                        const bool brute = oracle::brute_in_radical(M, N, a, r);
                        t.check(brute == in_span(a, basis) && brute == in_radical(F, a, r),
                                describe(F) + " r=" + std::to_string(r) + " a=" + a.to_string());
                    }
                }
            }
        }
    }
    return t.outcome("box vectors agreeing");
}

Outcome torus_consistency() {
    std::mt19937 rng(5);
    Tally t;
    std::vector<Field> fields{oracle::rank2(3, 1), oracle::generic_field(2), oracle::generic_field(3)};
    for (auto& F : cyclotomic_sample(3, rng)) fields.push_back(F);
    for (const auto& F : fields) {
        const int n = F.rank();
        QuantumTorus T(F);
        auto mono = [&](const LatticeVector& a) { return TorusElement::monomial(a, F.one()); };
        const auto small = oracle::box(n, n, 1);
        for (const auto& a : small)
            for (const auto& b : small)
                for (const auto& c : small) {
                    const auto left = T.multiply(T.multiply(mono(a), mono(b)), mono(c));
                    const auto right = T.multiply(mono(a), T.multiply(mono(b), mono(c)));
                    t.check(left == right, describe(F) + " associativity " + a.to_string() + b.to_string() + c.to_string());
                }
        for (const auto& a : oracle::box(n, n, 2))
            for (const auto& b : small) {
                const auto lhs = T.commutator(mono(a), mono(b));
                const auto coeff = cocycle(F, b, a) * (commutator_factor(F, a, b) - F.one());
                const auto rhs = TorusElement::monomial(a + b, coeff);
                bool ok = lhs == rhs;
                if (F.backend() == Backend::Cyclotomic) {
                    const auto& M = F.config().M;
                    const int N = F.config().N;
                    const auto want = oracle::cocycle(M, N, b, a) * (oracle::commutator(M, N, a, b) - 1.0);
                    ok = ok && oracle::close(oracle::evaluate(coeff, N), want);
                }
                t.check(ok, describe(F) + " commutator " + a.to_string() + b.to_string());
            }
    }
    return t.outcome("triples and pairs");
}

Outcome basis_counting() {
    Tally t;
    const SupportBox box{2, 4};
    for (const auto& F : {oracle::rational_field(1), oracle::rank2(3, 1), oracle::generic_field(2)}) {
        const int n = F.rank();
        LieAlgebra L(F);
        HeisModule H(L, std::vector<Scalar>(static_cast<std::size_t>(n), F.one()));
        std::vector<std::pair<LatticeVector, int>> gens;
        for (const auto& a : degree_box(n, box.B)) {
            if (a.is_zero()) continue;
            // multiplicity 2 off the radical: f(a, e_j) != 1 for some j
            bool central = true;
            for (int j = 0; j < n; ++j) central = central && commutator_factor(F, a, LatticeVector::unit(n, j)) == F.one();
            gens.emplace_back(a, central ? 1 : 2);
        }
        const auto counts = oracle::generating_function_counts(gens, box.L);
        for (const auto& beta : degree_box(n, box.B)) {
            const auto it = counts.find(beta.to_vector());
            const long want = it == counts.end() ? 0 : it->second;
            const long got = static_cast<long>(H.enumerate_basis(beta, box).size());
            t.check(got == want, describe(F) + " beta=" + beta.to_string() + " got " + std::to_string(got) +
                                     " want " + std::to_string(want));
        }
    }
    {
        auto F = oracle::rational_field(1);
        HeisModule H(LieAlgebra(F), ints(F, {1}));
        t.check(H.enumerate_basis({-3}, {3, 3}).size() == 3, "n=1 degree (-3) does not have 3 monomials");
    }
    return t.outcome("degrees matching");
}

Outcome representation_property() {
    Tally t;
    std::mt19937 rng(3);
    for (const auto& F : {oracle::rank2(3, 1), oracle::generic_field(2), oracle::rational_field(1)}) {
        const int n = F.rank();
        LieAlgebra L(F);
        const auto keys = L.keys_in_box(1);
        std::uniform_int_distribution<std::size_t> pk(0, keys.size() - 1);
        {
            HeisModule H(L, std::vector<Scalar>(static_cast<std::size_t>(n), F.one()));
            std::vector<BasisKey> tkeys;
            for (const auto& k : keys) {
                if (k.kind == Kind::X || k.kind == Kind::Y) continue;
                if ((k.kind == Kind::U || k.kind == Kind::W) && k.a.is_zero()) continue;
                tkeys.push_back(k);
            }
            std::vector<HeisMonomial> monos;
            for (const auto& [d, ms] : H.enumerate_box({2, 2}))
                for (const auto& m : ms) monos.push_back(m);
            std::uniform_int_distribution<std::size_t> pt(0, tkeys.size() - 1), pm(0, monos.size() - 1);
            for (int k = 0; k < 1000; ++k) {
                const auto& g1 = tkeys[pt(rng)];
                const auto& g2 = tkeys[pt(rng)];
                HeisVector v;
                v.emplace(monos[pm(rng)], F.one());
                auto lhs = H.act(g2, H.act(g1, v));
                axpy(lhs, -F.one(), H.act(g1, H.act(g2, v)));
                t.check(lhs == H.act(L.bracket(g2, g1), v),
                        "heis " + describe(F) + " " + g1.to_string() + " " + g2.to_string() + " on " + to_string(v));
            }
        }
        {
            VermaModule V(L, weight(F, 3, std::vector<long>(static_cast<std::size_t>(n), 1)));
            std::vector<MMonomial> monos;
            for (int m = 0; m <= 2; ++m)
                for (const auto& beta : lattice_box(n, 1))
                    for (const auto& x : V.slot_basis(m, beta, {1, 2})) monos.push_back(x);
            std::uniform_int_distribution<std::size_t> pm(0, monos.size() - 1);
            for (int k = 0; k < 1000; ++k) {
                const auto& g1 = keys[pk(rng)];
                const auto& g2 = keys[pk(rng)];
                MVector v;
                v.emplace(monos[pm(rng)], F.one());
                auto lhs = V.act(g2, V.act(g1, v));
                axpy(lhs, -F.one(), V.act(g1, V.act(g2, v)));
                t.check(lhs == V.act(L.bracket(g2, g1), v),
                        "full " + describe(F) + " " + g1.to_string() + " " + g2.to_string() + " on " + to_string(v));
            }
        }
    }
    return t.outcome("sampled commutators");
}

Outcome submodule_degree_zero() {
    Tally t;
    auto F = oracle::rank2(3, 1);
    HeisModule H(LieAlgebra(F), ints(F, {1, -1}));
    const SupportBox box{3, 3};
    const auto th = H.tilde_h_components(box);
    t.check(th.at(LatticeVector{0, 0}).empty(), "degree 0 component is nonzero");
    Subspace<HeisMonomial, MonomialLess> corner(F);
    for (const auto& v : th.at(LatticeVector{-3, -3})) corner.insert(v);
    HeisVector u;
    u.emplace(HeisMonomial{{Factor{Kind::U, {-3, -3}}}}, F.one());
    t.check(corner.contains(u), "U(-3,-3)v missing from the submodule");
    std::size_t total = 0;
    for (const auto& [d, b] : th) total += b.size();
    return t.outcome("B=3 L=3, total dimension " + std::to_string(total));
}

Outcome irreducibility_probe() {
    Tally t;
    auto below_zero = [](const GradedSpace& g) {
        std::size_t k = 0;
        for (const auto& [d, b] : g)
            if (!d.is_zero()) k += b.size();
        return k;
    };
    {
        auto F = oracle::rational_field(1);
        HeisModule H(LieAlgebra(F), ints(F, {1}));
        const SupportBox box{3, 3};
        const auto th = H.tilde_h_components(box);
        t.check(below_zero(H.singular_vectors(&th, box, 3)) == 0, "n=1 lambda(c_1)=1 has singular vectors");
    }
    {
        auto F = oracle::rank2(3, 1);
        HeisModule H(LieAlgebra(F), ints(F, {1, 0}));
        const SupportBox box{3, 2};
        const auto th = H.tilde_h_components(box);
        t.check(below_zero(H.singular_vectors(&th, box, 3)) == 0, "n=2 lambda(c)=(1,0) has singular vectors");
    }
    {
        auto F = oracle::rational_field(1);
        HeisModule H(LieAlgebra(F), ints(F, {0}));
        const auto sv = H.singular_vectors(nullptr, {3, 3}, 3);
        HeisVector u;
        u.emplace(HeisMonomial{{Factor{Kind::U, {-1}}}}, F.one());
        const auto it = sv.find(LatticeVector{-1});
        t.check(it != sv.end() && it->second == std::vector<HeisVector>{u}, "control U(-1)v not reported");
    }
    return t.outcome("instances");
}

Outcome lowering_probe() {
    Tally t;
    std::mt19937 rng(17);
    auto F = oracle::rank2(3, 1);
    VermaModule V(LieAlgebra(F), weight(F, 3, {1, -1}));
    const SupportBox box{1, 3};
    std::vector<std::pair<int, LatticeVector>> slots;
    for (int m = 1; m <= 3; ++m)
        for (const auto& beta : lattice_box(2, 1))
            if (!V.slot_basis(m, beta, box).empty()) slots.emplace_back(m, beta);
    std::uniform_int_distribution<std::size_t> ps(0, slots.size() - 1);
    std::uniform_int_distribution<long> pc(-4, 4);
    for (int k = 0; k < 100; ++k) {
        const auto& [m, beta] = slots[ps(rng)];
        MVector v;
        for (const auto& x : V.slot_basis(m, beta, box)) {
            const long c = pc(rng);
            if (c != 0) v.emplace(x, F.from_int(c));
        }
        if (v.empty()) v.emplace(V.slot_basis(m, beta, box).front(), F.one());
        try {
            const auto A = V.find_lowering_witness(v, 2);
            const auto w = V.act(A, v);
            t.check(!w.empty() && V.y_length(w) == static_cast<std::size_t>(m) - 1, "drop is not 1 for " + to_string(v));
        } catch (const Error& e) {
            t.check(false, std::string(e.what()) + " for " + to_string(v));
        }
    }
    return t.outcome("random weight vectors");
}

Outcome factorization_check() {
    Tally t;
    auto report = [&](const VermaModule& V, const MVector& gen, const SupportBox& box, const std::string& what) {
        const auto r = V.check_factorization(gen, box);
        std::size_t interior = 0;
        for (const auto& s : r.slots) interior += s.interior;
        t.check(r.hypothesis_met && r.pass && interior > 0, what);
    };
    auto F1 = oracle::rational_field(1);
    VermaModule V1(LieAlgebra(F1), weight(F1, 0, {1}));
    report(V1, V1.generator(), {2, 2}, "n=1 generator");
    MVector u;
    u.emplace(MMonomial{{}, HeisMonomial{{Factor{Kind::U, {-1}}}}}, F1.one());
    report(V1, u, {2, 2}, "n=1 U(-1)v");
    auto F = oracle::rank2(3, 1);
    VermaModule V(LieAlgebra(F), weight(F, 0, {1, 0}));
    MVector w;
    w.emplace(MMonomial{{}, HeisMonomial{{Factor{Kind::U, {0, -1}}}}}, F.one());
    report(V, w, {2, 2}, "n=2 N=3 U(0,-1)v");
    return t.outcome("generators passing on interior slots");
}

Outcome quotient_dims() {
    Tally t;
    auto run = [&](const VermaModule& V, const SupportBox& box, const std::string& what) {
        const auto l = V.irreducible_quotient_dims(box);
        const auto m = V.box_dims(box);
        const auto top = l.find(Slot{0, LatticeVector(V.rank())});
        t.check(top != l.end() && top->second == 1, what + ": top slot is not 1");
        for (const auto& [slot, d] : l) {
            const auto it = m.find(slot);
            t.check(it != m.end() && d <= it->second, what + ": slot exceeds M");
        }
    };
    auto F1 = oracle::rational_field(1);
    run(VermaModule(LieAlgebra(F1), weight(F1, 0, {1})), {2, 2}, "n=1");
    auto F = oracle::rank2(3, 1);
    run(VermaModule(LieAlgebra(F), weight(F, 0, {1, -1})), {3, 2}, "n=2 N=3 lambda(c)=(1,-1)");
    run(VermaModule(LieAlgebra(F), weight(F, 0, {1, 0})), {2, 2}, "n=2 N=3 lambda(c)=(1,0)");
    return t.outcome("slots");
}

std::pair<int, std::string> capture(const std::string& command) {
    std::string out;
    FILE* p = popen((command + " 2>&1").c_str(), "r");
    if (p == nullptr) return {-1, ""};
    std::array<char, 4096> buf{};
    std::size_t k;
    while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), k);
    return {pclose(p), out};
}

Outcome cli_determinism() {
    if (cli_path.empty() || configs_dir.empty()) return {false, "--cli and --configs not given"};
    struct Config {
        const char* file;
        int n;
    };
    const std::vector<Config> configs{{"rank1_level0.json", 1},      {"rank1_level1.json", 1},
                                      {"rank2_cube_root.json", 2},   {"rank2_cube_root_c10.json", 2},
                                      {"rank2_generic.json", 2}};
    auto commands = [](int n) {
        const std::string z = n == 1 ? "(0)" : "(0,0)", e1 = n == 1 ? "(1)" : "(1,0)", m1 = n == 1 ? "(-1)" : "(-1,0)";
        const std::string low = n == 1 ? "(-2)" : "(0,-1)";
        std::vector<std::string> out{
            "bracket 'X:" + e1 + "' 'Y:" + m1 + "'",
            "torus-mul '" + e1 + " 2, " + m1 + "' '" + e1 + "'",
            "radical 1",
            "lambda-lattice '" + e1 + "'",
            "hdim '" + low + "'",
            "hdim",
            "hact 'U:" + e1 + "' 'U" + m1 + "v'",
            "tilde-h",
            "singular",
            "singular --quotient",
            "mdim 1 '" + z + "'",
            "mdim",
            "mact 'X:" + z + "' 'Y" + z + "v'",
            "prop3 'Y" + e1 + "v 2, Y" + z + "U" + e1 + "v'",
            "theorem2 'U" + m1 + "v'",
            "ldims",
            "axioms --box 1",
        };
        if (n == 2) {
            out.emplace_back("witness '(0,1)' '(1)'");
        } else {
            out.emplace_back("witness '(1)' '()'");
        }
        return out;
    };
    Tally t;
    std::set<std::string> seen;
    for (const auto& c : configs) {
        for (const auto& cmd : commands(c.n)) {
            seen.insert(cmd.substr(0, cmd.find(' ')));
            const std::string line = cli_path + " --config " + configs_dir + "/" + c.file + " " + cmd;
            const auto first = capture(line);
            const auto second = capture(line);
            t.check(first == second && !first.second.empty(), std::string(c.file) + ": " + cmd);
        }
    }
    return t.outcome(std::to_string(seen.size()) + " subcommands, runs identical");
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--cli") cli_path = argv[i + 1];
        else if (flag == "--configs") configs_dir = argv[i + 1];
        else if (flag == "--only") only = std::atoi(argv[i + 1]);
        else {
            std::cerr << "unknown argument " << flag << "\n";
            return 2;
        }
    }

    const std::vector<Criterion> criteria{
        {1, "algebra axioms", 60, algebra_axioms},
        {2, "bracket oracle equivalence", 30, oracle_equivalence},
        {3, "commutator factor laws", 0, commutator_factor_laws},
        {4, "radical correctness", 0, radical_correctness},
        {5, "torus consistency", 0, torus_consistency},
        {6, "Heisenberg basis counting", 0, basis_counting},
        {7, "representation property", 0, representation_property},
        {8, "string submodule misses degree 0", 120, submodule_degree_zero},
        {9, "singular vector probe", 0, irreducibility_probe},
        {10, "Y length lowering", 0, lowering_probe},
        {11, "submodule factorization", 300, factorization_check},
        {12, "irreducible quotient dimensions", 0, quotient_dims},
        {13, "CLI determinism", 0, cli_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0 && secs > c.budget_s) {
            o.pass = false;
            o.detail += ", over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget";
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.1f s", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " (" << timing
                  << ")" << std::endl;
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
