#include "session.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "sl2q/error.hpp"

namespace cli {

using sl2q::Errc;
using sl2q::Error;
using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(Errc::InvalidConfig, what); }
[[noreturn]] void parse_error(const std::string& what) { throw Error(Errc::ParseError, what); }

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string scalar_text(const json& v, const std::string& where) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    config_error(where + " must be a string or an integer");
}

void known_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
    for (const auto& [k, v] : obj.items()) {
        bool ok = false;
        for (const char* x : keys) ok = ok || k == x;
        if (!ok) config_error("unknown key '" + k + "' in " + where);
    }
}

int int_field(const json& doc, const char* key, int fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number_integer()) config_error(std::string(key) + " must be an integer");
    return doc[key].get<int>();
}

}  // namespace

std::string fnv1a_digest(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

unsigned thread_count() {
    const char* env = std::getenv("SL2Q_THREADS");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024) config_error("SL2Q_THREADS must be an integer in [1, 1024]");
    return static_cast<unsigned>(v);
}

Session load_session(const std::string& path, const Overrides& overrides) {
    std::ifstream in(path);
    if (!in) config_error("cannot read config file " + path);
    json raw;
    try {
        raw = json::parse(in);
    } catch (const json::parse_error& e) {
        config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!raw.is_object()) config_error("config must be a JSON object");
    known_keys(raw, {"n", "backend", "N", "M", "lambda", "box", "format"}, "config");

    json doc;
    const int n = int_field(raw, "n", 0);
    if (n < 1) config_error("n must be a positive integer");
    doc["n"] = n;

    sl2q::ScalarConfig sc;
    sc.n = n;
    const std::string backend = raw.value("backend", std::string("cyclotomic"));
    doc["backend"] = backend;
    if (backend == "cyclotomic") {
        sc.backend = sl2q::Backend::Cyclotomic;
        sc.N = int_field(raw, "N", 0);
        if (!raw.contains("M")) config_error("cyclotomic backend needs the exponent matrix M");
        try {
            sc.M = raw["M"].get<std::vector<std::vector<long>>>();
        } catch (const json::exception&) {
            config_error("M must be an n x n integer matrix");
        }
        doc["N"] = sc.N;
        doc["M"] = sc.M;
    } else if (backend == "generic") {
        sc.backend = sl2q::Backend::GenericLaurent;
    } else if (backend == "rational") {
        sc.backend = sl2q::Backend::Rational;
    } else {
        config_error("backend must be one of cyclotomic, generic, rational");
    }
    sl2q::Field field(sc);  // validates the skew matrix

    const json lam = raw.value("lambda", json::object());
    if (!lam.is_object()) config_error("lambda must be an object");
    known_keys(lam, {"h", "c", "d"}, "lambda");
    sl2q::Weight w;
    w.h = field.parse(scalar_text(lam.value("h", json(0)), "lambda.h"));
    json lam_out;
    lam_out["h"] = w.h.to_string();
    for (const char* part : {"c", "d"}) {
        json values = lam.value(part, json::array());
        if (!values.is_array()) config_error(std::string("lambda.") + part + " must be an array");
        if (values.empty()) values = json(std::vector<int>(static_cast<std::size_t>(n), 0));
        if (static_cast<int>(values.size()) != n)
            config_error(std::string("lambda.") + part + " needs exactly n entries");
        auto& dest = part[0] == 'c' ? w.c : w.d;
        json printed = json::array();
        for (const auto& v : values) {
            dest.push_back(field.parse(scalar_text(v, std::string("lambda.") + part)));
            printed.push_back(dest.back().to_string());
        }
        lam_out[part] = printed;
    }
    doc["lambda"] = lam_out;

    const json box = raw.value("box", json::object());
    if (!box.is_object()) config_error("box must be an object");
    known_keys(box, {"B", "L"}, "box");
    sl2q::SupportBox b;
    b.B = int_field(box, "B", b.B);
    b.L = int_field(box, "L", b.L);
    if (overrides.bound) b.B = *overrides.bound;
    if (overrides.maxlen) b.L = *overrides.maxlen;
    b.validate();
    doc["box"] = {{"B", b.B}, {"L", b.L}};

    std::string fmt = raw.value("format", std::string("json"));
    if (overrides.format) fmt = *overrides.format;
    if (fmt != "json" && fmt != "tsv") config_error("format must be json or tsv");
    doc["format"] = fmt;

    sl2q::LieAlgebra algebra(field);
    const std::string digest = fnv1a_digest(doc.dump());
    return Session{doc, field, algebra, w, b, fmt == "json" ? Format::Json : Format::Tsv, digest};
}

std::vector<std::int64_t> parse_ints(const std::string& text) {
    std::string s = trim(text);
    if (!s.empty() && (s.front() == '(' || s.front() == '[')) {
        const char close = s.front() == '(' ? ')' : ']';
        if (s.back() != close) parse_error("unbalanced brackets in '" + text + "'");
        s = s.substr(1, s.size() - 2);
    }
    std::vector<std::int64_t> out;
    if (trim(s).empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(t, &used);
        } catch (const std::exception&) {
            parse_error("expected an integer, got '" + t + "'");
        }
        if (used != t.size()) parse_error("expected an integer, got '" + t + "'");
        out.push_back(v);
    }
    return out;
}

sl2q::LatticeVector parse_vector(const std::string& text, int n) {
    const auto v = parse_ints(text);
    if (static_cast<int>(v.size()) != n)
        parse_error("'" + text + "' must have " + std::to_string(n) + " coordinates");
    return sl2q::LatticeVector(v);
}

std::vector<std::pair<std::string, std::string>> split_terms(const std::string& text) {
    std::vector<std::string> pieces;
    int depth = 0;
    std::string cur;
    for (char c : text) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (depth < 0) parse_error("unbalanced parentheses in '" + text + "'");
        if (c == ',' && depth == 0) {
            pieces.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) parse_error("unbalanced parentheses in '" + text + "'");
    pieces.push_back(cur);

    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& p : pieces) {
        const std::string t = trim(p);
        if (t.empty()) parse_error("empty term in '" + text + "'");
        // head: identifier characters and balanced groups, up to blank space
        std::size_t i = 0;
        int d = 0;
        while (i < t.size()) {
            const char c = t[i];
            if (c == '(') ++d;
            if (c == ')') --d;
            if (d == 0 && std::isspace(static_cast<unsigned char>(c))) break;
            ++i;
        }
        const std::string coeff = trim(t.substr(i));
        out.emplace_back(t.substr(0, i), coeff.empty() ? "1" : coeff);
    }
    return out;
}

sl2q::AlgebraElement parse_element(const std::string& text, const sl2q::Field& field) {
    sl2q::AlgebraElement out;
    for (const auto& [head, coeff] : split_terms(text))
        out.add_term(sl2q::BasisKey::parse(head, field.rank()), field.parse(coeff));
    return out;
}

sl2q::TorusElement parse_torus(const std::string& text, const sl2q::Field& field) {
    sl2q::TorusElement out;
    for (const auto& [head, coeff] : split_terms(text))
        out.add_term(parse_vector(head, field.rank()), field.parse(coeff));
    return out;
}

std::vector<sl2q::BasisKey> parse_word(const std::string& text, int n) {
    std::vector<sl2q::BasisKey> out;
    std::size_t i = 0;
    const std::string s = trim(text);
    while (i < s.size()) {
        const char letter = s[i];
        if (letter == 'v' && i + 1 == s.size()) break;
        sl2q::Kind kind;
        switch (letter) {
            case 'X': kind = sl2q::Kind::X; break;
            case 'Y': kind = sl2q::Kind::Y; break;
            case 'U': kind = sl2q::Kind::U; break;
            case 'W': kind = sl2q::Kind::W; break;
            default: parse_error("unexpected '" + std::string(1, letter) + "' in word '" + text + "'");
        }
        const auto close = s.find(')', i);
        if (i + 1 >= s.size() || s[i + 1] != '(' || close == std::string::npos)
            parse_error("expected LETTER(a_1,...,a_n) in word '" + text + "'");
        out.push_back({kind, parse_vector(s.substr(i + 1, close - i), n), 0});
        i = close + 1;
    }
    return out;
}

namespace {

template <class Module, class Vector>
Vector evaluate_terms(const std::string& text, const Module& M) {
    Vector out;
    for (const auto& [head, coeff] : split_terms(text)) {
        Vector v = M.generator();
        const auto word = parse_word(head, M.rank());
        for (auto it = word.rbegin(); it != word.rend(); ++it) v = M.act(*it, v);
        sl2q::axpy(out, M.field().parse(coeff), v);
    }
    return out;
}

}  // namespace

sl2q::HeisVector parse_heis_vector(const std::string& text, const sl2q::HeisModule& H) {
    return evaluate_terms<sl2q::HeisModule, sl2q::HeisVector>(text, H);
}

sl2q::MVector parse_m_vector(const std::string& text, const sl2q::VermaModule& V) {
    return evaluate_terms<sl2q::VermaModule, sl2q::MVector>(text, V);
}

}  // namespace cli
