#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "session.hpp"
#include "sl2q/error.hpp"
#include "sl2q/lattice.hpp"
#include "sl2q/qtorus.hpp"

using namespace sl2q;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kHypothesis = 2;
constexpr int kBudget = 3;
constexpr int kCheckFailed = 4;

struct Report {
    json body = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    int status = kOk;
};

void emit(const cli::Session& s, const std::string& command, const Report& r) {
    if (s.format == cli::Format::Json) {
        json out;
        out["command"] = command;
        out["config"] = s.digest;
        for (const auto& [k, v] : r.body.items()) out[k] = v;
        std::cout << out.dump() << "\n";
        return;
    }
    std::cout << "# " << command << " config=" << s.digest << "\n";
    for (std::size_t i = 0; i < r.columns.size(); ++i) std::cout << (i ? "\t" : "") << r.columns[i];
    std::cout << "\n";
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "\t" : "") << row[i];
        std::cout << "\n";
    }
}

json ints(const LatticeVector& a) { return a.to_vector(); }

json factor_json(char letter, const LatticeVector& a) {
    json f = json::array({std::string(1, letter)});
    for (auto x : a.to_vector()) f.push_back(x);
    return f;
}

json heis_factors(const HeisMonomial& m) {
    json out = json::array();
    for (const auto& f : m.factors) out.push_back(factor_json(kind_letter(f.kind), f.a));
    return out;
}

json vector_json(const HeisVector& v) {
    json out = json::array();
    for (const auto& [m, c] : v) out.push_back({{"monomial", heis_factors(m)}, {"coeff", c.to_string()}});
    return out;
}

json vector_json(const MVector& v) {
    json out = json::array();
    for (const auto& [m, c] : v) {
        json fs = json::array();
        for (const auto& a : m.ys) fs.push_back(factor_json('Y', a));
        for (auto& f : heis_factors(m.heis)) fs.push_back(f);
        out.push_back({{"monomial", fs}, {"coeff", c.to_string()}});
    }
    return out;
}

json element_json(const AlgebraElement& x) {
    json out = json::array();
    for (const auto& [k, c] : x.terms()) {
        json t = {{"kind", std::string(1, kind_letter(k.kind))}};
        if (k.has_exponent()) {
            t["exponent"] = ints(k.a);
        } else {
            t["index"] = k.index;
        }
        t["coeff"] = c.to_string();
        out.push_back(t);
    }
    return out;
}

template <class Vector>
void vector_rows(Report& r, const Vector& v) {
    r.columns = {"monomial", "coeff"};
    for (const auto& [m, c] : v) r.rows.push_back({m.to_string(), c.to_string()});
}

std::string torus_string(const TorusElement& u) {
    if (u.is_zero()) return "0";
    std::string out;
    for (const auto& [a, c] : u.terms()) {
        if (!out.empty()) out += ", ";
        out += a.to_string() + " " + c.to_string();
    }
    return out;
}

/// Runs fn(i) for i < count on SL2Q_THREADS workers; results stay indexed.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn fn) {
    std::vector<T> out(count);
    const unsigned workers = std::min<std::size_t>(cli::thread_count(), std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    auto run = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

struct Args {
    cli::Overrides overrides;
    std::string config;
    std::string k1, k2, u, v, vec, rvec, bounds, beta, g, word, gen;
    int r = 1;
    int m = -1;
    int axiom_box = -1;
    int raise_bound = -1;
    bool quotient = false;
};

Report cmd_bracket(const cli::Session& s, const Args& a) {
    const auto x = cli::parse_element(a.k1, s.field);
    const auto y = cli::parse_element(a.k2, s.field);
    const auto table = s.algebra.bracket(x, y);
    const auto oracle = s.algebra.matrix_bracket(x, y);
    const bool match = table == oracle;
    Report r;
    r.body["bracket"] = table.to_string();
    r.body["terms"] = element_json(table);
    r.body["oracle"] = oracle.to_string();
    r.body["match"] = match;
    r.body["summary"] = table.to_string() + " | oracle: " + (match ? "match" : "mismatch");
    r.columns = {"bracket", "oracle", "match"};
    r.rows.push_back({table.to_string(), oracle.to_string(), match ? "match" : "mismatch"});
    r.status = match ? kOk : kCheckFailed;
    return r;
}

Report cmd_torus_mul(const cli::Session& s, const Args& a) {
    const auto u = cli::parse_torus(a.u, s.field);
    const auto v = cli::parse_torus(a.v, s.field);
    const auto p = s.algebra.torus().multiply(u, v);
    Report r;
    json terms = json::array();
    r.columns = {"exponent", "coeff"};
    for (const auto& [e, c] : p.terms()) {
        terms.push_back({{"exponent", ints(e)}, {"coeff", c.to_string()}});
        r.rows.push_back({e.to_string(), c.to_string()});
    }
    r.body["product"] = terms;
    r.body["text"] = torus_string(p);
    return r;
}

Report cmd_radical(const cli::Session& s, const Args& a) {
    const auto basis = radical_basis(s.field, a.r);
    Report r;
    json b = json::array();
    r.columns = {"vector"};
    for (const auto& v : basis) {
        b.push_back(ints(v));
        r.rows.push_back({v.to_string()});
    }
    r.body["r"] = a.r;
    r.body["basis"] = b;
    return r;
}

Report cmd_lambda_lattice(const cli::Session& s, const Args& a) {
    const auto v = cli::parse_vector(a.rvec, s.rank());
    const bool in = in_null_lattice(s.weight.c, v);
    Report r;
    r.body["rvec"] = ints(v);
    r.body["in_lambda_lattice"] = in;
    r.columns = {"rvec", "in_lambda_lattice"};
    r.rows.push_back({v.to_string(), in ? "true" : "false"});
    return r;
}

Report cmd_witness(const cli::Session& s, const Args& a) {
    const auto b = cli::parse_vector(a.v, s.rank());
    const auto bounds = cli::parse_ints(a.bounds);
    const auto c = nonradical_witness(s.field, b, bounds);
    const auto f = commutator_factor(s.field, c, b);
    Report r;
    r.body["b"] = ints(b);
    r.body["bounds"] = bounds;
    r.body["witness"] = ints(c);
    r.body["f"] = f.to_string();
    r.columns = {"b", "witness", "f"};
    r.rows.push_back({b.to_string(), c.to_string(), f.to_string()});
    return r;
}

Report cmd_hdim(const cli::Session& s, const Args& a) {
    HeisModule H(s.algebra, s.weight.c);
    Report r;
    r.body["box"] = s.doc["box"];
    if (!a.beta.empty()) {
        const auto beta = cli::parse_vector(a.beta, s.rank());
        if (!beta.is_zero() && !is_negative(beta)) throw Error(Errc::NotNegative, "degree must be negative or zero");
        const auto basis = H.enumerate_basis(beta, s.box);
        json names = json::array();
        r.columns = {"monomial"};
        for (const auto& m : basis) {
            names.push_back(m.to_string());
            r.rows.push_back({m.to_string()});
        }
        r.body["degree"] = ints(beta);
        r.body["dim"] = basis.size();
        r.body["monomials"] = names;
        return r;
    }
    const auto degrees = degree_box(s.rank(), s.box.B);
    const auto dims = parallel_map<std::size_t>(degrees.size(),
                                                [&](std::size_t i) { return H.enumerate_basis(degrees[i], s.box).size(); });
    json table = json::array();
    r.columns = {"degree", "dim"};
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        table.push_back({{"degree", ints(degrees[i])}, {"dim", dims[i]}});
        r.rows.push_back({degrees[i].to_string(), std::to_string(dims[i])});
    }
    r.body["dims"] = table;
    return r;
}

Report cmd_hact(const cli::Session& s, const Args& a) {
    HeisModule H(s.algebra, s.weight.c);
    const auto g = cli::parse_element(a.g, s.field);
    const auto v = cli::parse_heis_vector(a.word, H);
    const auto w = H.act(g, v);
    Report r;
    r.body["input"] = vector_json(v);
    r.body["result"] = vector_json(w);
    r.body["text"] = to_string(w);
    vector_rows(r, w);
    return r;
}

void graded_report(Report& r, const GradedSpace& g, const char* key, bool vectors) {
    json table = json::array();
    r.columns = vectors ? std::vector<std::string>{"degree", "dim", "vector"} : std::vector<std::string>{"degree", "dim"};
    for (const auto& [d, basis] : g) {
        json row = {{"degree", ints(d)}, {"dim", basis.size()}};
        if (vectors) {
            json vs = json::array();
            for (const auto& v : basis) {
                vs.push_back(vector_json(v));
                r.rows.push_back({d.to_string(), std::to_string(basis.size()), to_string(v)});
            }
            if (basis.empty()) r.rows.push_back({d.to_string(), "0", ""});
            row["vectors"] = vs;
        } else {
            r.rows.push_back({d.to_string(), std::to_string(basis.size())});
        }
        table.push_back(row);
    }
    r.body[key] = table;
}

Report cmd_tilde_h(const cli::Session& s, const Args&) {
    HeisModule H(s.algebra, s.weight.c);
    const auto gens = H.string_generators(s.box);
    const auto th = H.tilde_h_components(s.box);
    Report r;
    json gj = json::array();
    for (const auto& c : gens) gj.push_back(ints(c));
    r.body["box"] = s.doc["box"];
    r.body["generators"] = gj;
    std::size_t total = 0;
    for (const auto& [d, b] : th) total += b.size();
    r.body["total_dim"] = total;
    graded_report(r, th, "components", false);
    return r;
}

Report cmd_singular(const cli::Session& s, const Args& a) {
    HeisModule H(s.algebra, s.weight.c);
    const int raise = a.raise_bound > 0 ? a.raise_bound : s.box.B;
    std::optional<GradedSpace> th;
    if (a.quotient) th = H.tilde_h_components(s.box);
    const auto sv = H.singular_vectors(th ? &*th : nullptr, s.box, raise);
    Report r;
    r.body["box"] = s.doc["box"];
    r.body["raise_bound"] = raise;
    r.body["quotient"] = a.quotient;
    bool found = false;
    for (const auto& [d, b] : sv) found = found || (!d.is_zero() && !b.empty());
    r.body["below_zero"] = found;
    graded_report(r, sv, "degrees", true);
    return r;
}

Report cmd_mdim(const cli::Session& s, const Args& a) {
    VermaModule V(s.algebra, s.weight);
    Report r;
    r.body["box"] = s.doc["box"];
    if (a.m >= 0) {
        if (a.beta.empty()) throw Error(Errc::ParseError, "mdim needs both m and beta");
        const auto beta = cli::parse_vector(a.beta, s.rank());
        const auto d = V.weight_space_dimension(a.m, beta, s.box);
        r.body["m"] = a.m;
        r.body["degree"] = ints(beta);
        r.body["dim"] = d;
        r.columns = {"m", "degree", "dim"};
        r.rows.push_back({std::to_string(a.m), beta.to_string(), std::to_string(d)});
        return r;
    }
    std::vector<Slot> slots;
    for (int m = 0; m <= s.box.L; ++m)
        for (const auto& beta : lattice_box(s.rank(), s.box.B)) slots.push_back({m, beta});
    const auto dims = parallel_map<std::size_t>(
        slots.size(), [&](std::size_t i) { return V.weight_space_dimension(slots[i].m, slots[i].beta, s.box); });
    json table = json::array();
    r.columns = {"m", "degree", "dim"};
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (dims[i] == 0) continue;
        table.push_back({{"m", slots[i].m}, {"degree", ints(slots[i].beta)}, {"dim", dims[i]}});
        r.rows.push_back({std::to_string(slots[i].m), slots[i].beta.to_string(), std::to_string(dims[i])});
    }
    r.body["dims"] = table;
    return r;
}

Report cmd_mact(const cli::Session& s, const Args& a) {
    VermaModule V(s.algebra, s.weight);
    const auto g = cli::parse_element(a.g, s.field);
    const auto v = cli::parse_m_vector(a.word, V);
    const auto w = V.act(g, v);
    Report r;
    r.body["input"] = vector_json(v);
    r.body["result"] = vector_json(w);
    r.body["text"] = to_string(w);
    vector_rows(r, w);
    return r;
}

Report cmd_prop3(const cli::Session& s, const Args& a) {
    VermaModule V(s.algebra, s.weight);
    const auto v = cli::parse_m_vector(a.vec, V);
    const auto m = V.y_length(v);
    const auto A = V.find_lowering_witness(v, s.box.B);
    const auto w = V.act(A, v);
    const auto after = V.y_length(w);
    Report r;
    r.body["vector"] = to_string(v);
    r.body["y_length"] = m;
    r.body["witness"] = A.to_string();
    r.body["result"] = vector_json(w);
    r.body["y_length_after"] = after;
    r.columns = {"witness", "y_length", "y_length_after", "result"};
    r.rows.push_back({A.to_string(), std::to_string(m), std::to_string(after), to_string(w)});
    return r;
}

json slot_json(const Slot& s) { return {{"m", s.m}, {"degree", ints(s.beta)}}; }

Report cmd_theorem2(const cli::Session& s, const Args& a) {
    VermaModule V(s.algebra, s.weight);
    const auto gen = cli::parse_m_vector(a.gen, V);
    if (gen.empty()) throw Error(Errc::PreconditionViolated, "generator is zero");
    const auto rep = V.check_factorization(gen, s.box);
    Report r;
    r.body["box"] = s.doc["box"];
    r.body["generator"] = to_string(gen);
    r.body["hypothesis_met"] = rep.hypothesis_met;
    r.body["pass"] = rep.pass;
    json slots = json::array();
    r.columns = {"m", "degree", "dim_N", "dim_convolution", "interior", "pass"};
    for (const auto& x : rep.slots) {
        slots.push_back({{"slot", slot_json(x.slot)},
                         {"dim_N", x.dim_submodule},
                         {"dim_convolution", x.dim_convolution},
                         {"interior", x.interior},
                         {"pass", x.pass}});
        r.rows.push_back({std::to_string(x.slot.m), x.slot.beta.to_string(), std::to_string(x.dim_submodule),
                          std::to_string(x.dim_convolution), x.interior ? "true" : "false", x.pass ? "PASS" : "FAIL"});
    }
    r.body["slots"] = slots;
    r.status = !rep.hypothesis_met ? kHypothesis : rep.pass ? kOk : kCheckFailed;
    return r;
}

Report cmd_ldims(const cli::Session& s, const Args&) {
    VermaModule V(s.algebra, s.weight);
    Report r;
    r.body["box"] = s.doc["box"];
    std::map<Slot, std::size_t, SlotLess> l;
    try {
        l = V.irreducible_quotient_dims(s.box);
    } catch (const Error& e) {
        if (e.code() != Errc::HypothesisUnmet) throw;
        r.body["status"] = "hypothesis-unmet";
        r.body["message"] = e.what();
        r.columns = {"status", "message"};
        r.rows.push_back({"hypothesis-unmet", e.what()});
        r.status = kHypothesis;
        return r;
    }
    const auto mdims = V.box_dims(s.box);
    json table = json::array();
    r.columns = {"m", "degree", "dim_L", "dim_M"};
    for (const auto& [slot, d] : l) {
        const auto it = mdims.find(slot);
        const std::size_t dm = it == mdims.end() ? 0 : it->second;
        table.push_back({{"slot", slot_json(slot)}, {"dim_L", d}, {"dim_M", dm}});
        r.rows.push_back({std::to_string(slot.m), slot.beta.to_string(), std::to_string(d), std::to_string(dm)});
    }
    r.body["dims"] = table;
    return r;
}

Report cmd_axioms(const cli::Session& s, const Args& a) {
    const int B = a.axiom_box > 0 ? a.axiom_box : s.box.B;
    const auto rep = check_axioms(s.algebra, B);
    auto frac = [](std::size_t p, std::size_t t) { return std::to_string(p) + "/" + std::to_string(t); };
    const std::string status = rep.ok() ? "PASS" : "FAIL";
    Report r;
    r.body["box"] = B;
    r.body["jacobi"] = {{"pass", rep.jacobi_pass}, {"total", rep.jacobi_total}};
    r.body["antisym"] = {{"pass", rep.antisym_pass}, {"total", rep.antisym_total}};
    r.body["oracle"] = {{"pass", rep.oracle_pass}, {"total", rep.oracle_total}};
    r.body["summary"] = status + " jacobi=" + frac(rep.jacobi_pass, rep.jacobi_total) +
                        " antisym=" + frac(rep.antisym_pass, rep.antisym_total) +
                        " oracle=" + frac(rep.oracle_pass, rep.oracle_total);
    r.columns = {"status", "jacobi", "antisym", "oracle"};
    r.rows.push_back({status, frac(rep.jacobi_pass, rep.jacobi_total), frac(rep.antisym_pass, rep.antisym_total),
                      frac(rep.oracle_pass, rep.oracle_total)});
    r.status = rep.ok() ? kOk : kCheckFailed;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations in sl2 over a quantum torus and its Verma-type modules"};
    app.require_subcommand(1);
    app.fallthrough();
    Args a;
    int bound = 0, maxlen = 0;
    std::string format;
    app.add_option("-c,--config", a.config, "JSON session config")->required()->check(CLI::ExistingFile);
    app.add_option("--bound", bound, "override box.B")->check(CLI::PositiveNumber);
    app.add_option("--maxlen", maxlen, "override box.L")->check(CLI::PositiveNumber);
    app.add_option("--format", format, "override output format")->check(CLI::IsMember({"json", "tsv"}));

    using Handler = Report (*)(const cli::Session&, const Args&);
    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto add = [&](const char* name, const char* help, Handler h) {
        auto* sub = app.add_subcommand(name, help);
        commands.emplace_back(sub, h);
        return sub;
    };

    auto* c = add("bracket", "bracket of two algebra elements, with the matrix oracle", cmd_bracket);
    c->add_option("k1", a.k1, "e.g. X:(1,0)")->required();
    c->add_option("k2", a.k2, "e.g. Y:(-1,0)")->required();
    c = add("torus-mul", "product in the quantum torus", cmd_torus_mul);
    c->add_option("u", a.u, "terms '(a) coeff, ...'")->required();
    c->add_option("v", a.v)->required();
    c = add("radical", "basis of the radical R_r", cmd_radical);
    c->add_option("r", a.r)->required()->check(CLI::PositiveNumber);
    c = add("lambda-lattice", "membership in the null lattice of lambda(c)", cmd_lambda_lattice);
    c->add_option("rvec", a.rvec)->required();
    c = add("witness", "c with f(c,b) != 1 and prescribed lower bounds", cmd_witness);
    c->add_option("b", a.v)->required();
    c->add_option("bounds", a.bounds, "e.g. (1,2)")->required();
    c = add("hdim", "Heisenberg module dimensions in the box", cmd_hdim);
    c->add_option("beta", a.beta, "degree; all degrees when omitted");
    c = add("hact", "act on a Heisenberg module vector", cmd_hact);
    c->add_option("g", a.g)->required();
    c->add_option("word", a.word, "e.g. 'U(-1,0)W(-1,-1)v'")->required();
    add("tilde-h", "in-box submodule generated by the strings", cmd_tilde_h);
    c = add("singular", "singular vectors below degree 0", cmd_singular);
    c->add_flag("--quotient", a.quotient, "work modulo the string submodule");
    c->add_option("--raise-bound", a.raise_bound, "default: box.B")->check(CLI::PositiveNumber);
    c = add("mdim", "imaginary Verma weight space dimensions in the box", cmd_mdim);
    c->add_option("m", a.m)->check(CLI::NonNegativeNumber);
    c->add_option("beta", a.beta);
    c = add("mact", "act on an imaginary Verma module vector", cmd_mact);
    c->add_option("g", a.g)->required();
    c->add_option("word", a.word, "e.g. 'Y(1,0)U(-1,0)v'")->required();
    c = add("prop3", "X(A) lowering the Y length of a weight vector", cmd_prop3);
    c->add_option("v", a.vec)->required();
    c = add("theorem2", "submodule closure against the tensor factorization", cmd_theorem2);
    c->add_option("gen", a.gen)->required();
    add("ldims", "graded dimensions of the irreducible quotient", cmd_ldims);
    c = add("axioms", "Jacobi, antisymmetry and oracle sweep", cmd_axioms);
    c->add_option("--box", a.axiom_box, "exponent bound; default box.B")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    if (bound > 0) a.overrides.bound = bound;
    if (maxlen > 0) a.overrides.maxlen = maxlen;
    if (!format.empty()) a.overrides.format = format;

    try {
        const auto session = cli::load_session(a.config, a.overrides);
        for (const auto& [sub, handler] : commands) {
            if (!sub->parsed()) continue;
            const Report r = handler(session, a);
            emit(session, sub->get_name(), r);
            return r.status;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case Errc::SearchBudgetExceeded: return kBudget;
            case Errc::HypothesisUnmet: return kHypothesis;
            default: return kUsage;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
