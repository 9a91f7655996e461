#include "sl2q/lie_algebra.hpp"

#include <algorithm>
#include <cctype>

#include "bracket_table.hpp"
#include "sl2q/error.hpp"

namespace sl2q {

char kind_letter(Kind k) noexcept {
    switch (k) {
        case Kind::X: return 'X';
        case Kind::Y: return 'Y';
        case Kind::U: return 'U';
        case Kind::W: return 'W';
        case Kind::C: return 'C';
        case Kind::D: return 'D';
    }
    return '?';
}

std::string BasisKey::to_string() const {
    std::string s(1, kind_letter(kind));
    s += ':';
    if (has_exponent())
        s += a.to_string();
    else
        s += std::to_string(index);
    return s;
}

namespace {

[[noreturn]] void bad_key(std::string_view text, const char* why) {
    throw Error(Errc::ParseError, "basis key '" + std::string(text) + "': " + why);
}

std::int64_t parse_int(std::string_view text, std::string_view s) {
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    if (i == s.size()) bad_key(text, "expected an integer");
    std::int64_t v = 0;
    for (; i < s.size(); ++i) {
        const char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) break;
        if (!std::isdigit(static_cast<unsigned char>(ch))) bad_key(text, "expected an integer");
        if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, ch - '0', &v)) bad_key(text, "integer too large");
    }
    for (; i < s.size(); ++i) {
        if (!std::isspace(static_cast<unsigned char>(s[i]))) bad_key(text, "trailing characters");
    }
    return neg ? -v : v;
}

}  // namespace

BasisKey BasisKey::parse(std::string_view text, int n) {
    std::size_t colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0) bad_key(text, "expected KIND:ARG");
    std::string_view head = text.substr(0, colon), arg = text.substr(colon + 1);
    while (!head.empty() && std::isspace(static_cast<unsigned char>(head.front()))) head.remove_prefix(1);
    if (head.size() != 1) bad_key(text, "kind must be one of X Y U W C D");
    Kind kind;
    switch (head[0]) {
        case 'X': kind = Kind::X; break;
        case 'Y': kind = Kind::Y; break;
        case 'U': kind = Kind::U; break;
        case 'W': kind = Kind::W; break;
        case 'C': kind = Kind::C; break;
        case 'D': kind = Kind::D; break;
        default: bad_key(text, "kind must be one of X Y U W C D");
    }
    if (kind == Kind::C || kind == Kind::D) {
        const auto i = parse_int(text, arg);
        if (i < 1 || i > n) bad_key(text, "index out of range");
        return {kind, LatticeVector(n), static_cast<int>(i)};
    }
    const auto open = arg.find('('), close = arg.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
        bad_key(text, "expected an exponent like (1,0)");
    std::string_view body = arg.substr(open + 1, close - open - 1);
    std::vector<std::int64_t> coords;
    while (true) {
        const auto comma = body.find(',');
        coords.push_back(parse_int(text, body.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    if (static_cast<int>(coords.size()) != n) bad_key(text, "exponent has the wrong rank");
    return {kind, LatticeVector(coords), 0};
}

Ordering compare_keys(const BasisKey& p, const BasisKey& q) {
    if (p.kind != q.kind) return p.kind < q.kind ? Ordering::Less : Ordering::Greater;
    if (p.has_exponent()) return compare_lex(p.a, q.a);
    if (p.index != q.index) return p.index < q.index ? Ordering::Less : Ordering::Greater;
    return Ordering::Equal;
}

// ---------------------------------------------------------------------------

const Scalar* AlgebraElement::find(const BasisKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? nullptr : &it->second;
}

void AlgebraElement::add_term(const BasisKey& key, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k, -c);
    return *this;
}

AlgebraElement AlgebraElement::scaled(const Scalar& factor) const {
    AlgebraElement out;
    for (const auto& [k, c] : terms_) out.add_term(k, c * factor);
    return out;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

std::string AlgebraElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
        if (!s.empty()) s += ", ";
        s += k.to_string() + " " + c.to_string();
    }
    return s;
}

// ---------------------------------------------------------------------------

namespace {

struct ScalarRing {
    using Value = Scalar;
    const LieAlgebra& L;

    Value zero() const { return L.field().zero(); }
    Value one() const { return L.field().one(); }
    Value from_int(long v) const { return L.field().from_int(v); }
    Value add(const Value& p, const Value& q) const { return p + q; }
    Value sub(const Value& p, const Value& q) const { return p - q; }
    Value mul(const Value& p, const Value& q) const { return p * q; }
    Value neg(const Value& p) const { return -p; }
    Value half(const Value& p) const { return p.scaled(mpq_class(1, 2)); }
    Value cocycle(const LatticeVector& a, const LatticeVector& b) const { return sl2q::cocycle(L.field(), a, b); }
    Value commutator(const LatticeVector& a, const LatticeVector& b) const {
        return commutator_factor(L.field(), a, b);
    }
    bool is_zero(const Value& v) const { return v.is_zero(); }
    bool in_radical(const LatticeVector& a) const { return L.in_radical(a); }
};

struct Mat2 {
    TorusElement m[2][2];
};

}  // namespace

LieAlgebra::LieAlgebra(Field field) : field_(std::move(field)), torus_(field_) {
    if (field_.backend() == Backend::Cyclotomic) skew_ = field_.config().M;
}

bool LieAlgebra::in_radical(const LatticeVector& a) const {
    const int n = rank();
    if (a.size() != n) throw Error(Errc::RankOutOfRange, "vector rank differs from configured n");
    switch (field_.backend()) {
        case Backend::Rational: return true;
        case Backend::GenericLaurent: return n == 1 || a.is_zero();
        case Backend::Cyclotomic: {
            const long N = field_.config().N;
            for (int j = 0; j < n; ++j) {
                long s = 0;
                for (int i = 0; i < n; ++i) s = (s + skew_[i][j] * (a[i] % N)) % N;
                if (s != 0) return false;
            }
            return true;
        }
    }
    return true;
}

void LieAlgebra::validate(const BasisKey& key) const {
    const int n = rank();
    if (key.a.size() != n) throw Error(Errc::InvalidKey, key.to_string() + " has the wrong rank");
    if (!key.has_exponent()) {
        if (key.index < 1 || key.index > n) throw Error(Errc::InvalidKey, key.to_string() + " index out of range");
        if (!key.a.is_zero()) throw Error(Errc::InvalidKey, "central and degree keys carry no exponent");
        return;
    }
    if (key.index != 0) throw Error(Errc::InvalidKey, key.to_string() + " carries a stray index");
    if (key.kind == Kind::W && in_radical(key.a))
        throw Error(Errc::InvalidKey, key.to_string() + ": W(a) does not exist for a in the radical");
}

AlgebraElement LieAlgebra::bracket(const BasisKey& x, const BasisKey& y) const {
    validate(x);
    validate(y);
    detail::BracketTerms<ScalarRing> terms;
    ScalarRing R{*this};
    detail::table_bracket(R, x, y, terms);
    AlgebraElement out;
    for (const auto& [k, v] : terms) out.add_term(k, v);
    return out;
}

AlgebraElement LieAlgebra::bracket(const AlgebraElement& x, const AlgebraElement& y) const {
    AlgebraElement out;
    for (const auto& [kx, cx] : x.terms()) {
        for (const auto& [ky, cy] : y.terms()) out += bracket(kx, ky).scaled(cx * cy);
    }
    return out;
}

namespace {

Mat2 to_matrix(const LieAlgebra& L, const AlgebraElement& x) {
    Mat2 m;
    for (const auto& [k, c] : x.terms()) {
        L.validate(k);
        switch (k.kind) {
            case Kind::X: m.m[0][1].add_term(k.a, c); break;
            case Kind::Y: m.m[1][0].add_term(k.a, c); break;
            case Kind::U:
                m.m[0][0].add_term(k.a, c);
                m.m[1][1].add_term(k.a, -c);
                break;
            case Kind::W:
                m.m[0][0].add_term(k.a, c);
                m.m[1][1].add_term(k.a, c);
                break;
            default: throw Error(Errc::UnsupportedKeys, "matrix evaluation needs X, Y, U, W keys only");
        }
    }
    return m;
}

Mat2 multiply(const QuantumTorus& T, const Mat2& p, const Mat2& q) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r.m[i][j] += T.multiply(p.m[i][k], q.m[k][j]);
    return r;
}

// [d_i, x]
AlgebraElement degree_derivative(const AlgebraElement& x, int i, const Field& F) {
    AlgebraElement out;
    for (const auto& [k, c] : x.terms()) {
        if (k.has_exponent() && k.a[i] != 0) out.add_term(k, c * F.from_int(k.a[i]));
    }
    return out;
}

}  // namespace

Scalar LieAlgebra::invariant_form(const AlgebraElement& x, const AlgebraElement& y) const {
    const Mat2 p = to_matrix(*this, x), q = to_matrix(*this, y);
    TorusElement trace;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) trace += torus_.multiply(p.m[i][k], q.m[k][i]);
    return torus_.constant_term(trace);
}

AlgebraElement LieAlgebra::matrix_bracket(const AlgebraElement& x, const AlgebraElement& y) const {
    const Mat2 mx = to_matrix(*this, x), my = to_matrix(*this, y);
    Mat2 p = multiply(torus_, mx, my);
    const Mat2 q = multiply(torus_, my, mx);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) p.m[i][j] -= q.m[i][j];

    AlgebraElement out;
    for (const auto& [c, v] : p.m[0][1].terms()) out.add_term(BasisKey::x(c), v);
    for (const auto& [c, v] : p.m[1][0].terms()) out.add_term(BasisKey::y(c), v);
    // diagonal (A, B) = u-part (A-B)/2 + w-part (A+B)/2
    TorusElement u_part = p.m[0][0], w_part = p.m[0][0];
    u_part -= p.m[1][1];
    w_part += p.m[1][1];
    const mpq_class half(1, 2);
    for (const auto& [c, v] : u_part.terms()) out.add_term(BasisKey::u(c), v.scaled(half));
    for (const auto& [c, v] : w_part.terms()) {
        if (in_radical(c))
            throw Error(Errc::InternalTableInconsistency, "matrix commutator has a trace part at radical degree");
        out.add_term(BasisKey::w(c), v.scaled(half));
    }
    for (int i = 0; i < rank(); ++i)
        out.add_term(BasisKey::c(rank(), i + 1), invariant_form(degree_derivative(x, i, field_), y));
    return out;
}

std::optional<Root> LieAlgebra::root_of(const BasisKey& key) const {
    validate(key);
    switch (key.kind) {
        case Kind::X: return Root{1, key.a};
        case Kind::Y: return Root{-1, key.a};
        case Kind::U:
        case Kind::W:
            if (key.a.is_zero()) return std::nullopt;
            return Root{0, key.a};
        default: return std::nullopt;
    }
}

std::vector<BasisKey> LieAlgebra::root_space_basis(const Root& beta) const {
    if (beta.a.size() != rank()) throw Error(Errc::NotARoot, "root has the wrong rank");
    switch (beta.alpha) {
        case 1: return {BasisKey::x(beta.a)};
        case -1: return {BasisKey::y(beta.a)};
        case 0:
            if (beta.a.is_zero()) throw Error(Errc::NotARoot, "0 is not a root");
            if (in_radical(beta.a)) return {BasisKey::u(beta.a)};
            return {BasisKey::u(beta.a), BasisKey::w(beta.a)};
        default: throw Error(Errc::NotARoot, "alpha coefficient must be -1, 0 or 1");
    }
}

std::vector<BasisKey> LieAlgebra::keys_in_box(int B) const {
    const int n = rank();
    std::vector<LatticeVector> pts;
    LatticeVector v(n);
    for (int i = 0; i < n; ++i) v[i] = -B;
    while (true) {
        pts.push_back(v);
        int i = 0;
        while (i < n && v[i] == B) v[i++] = -B;
        if (i == n) break;
        ++v[i];
    }
    std::sort(pts.begin(), pts.end(), LexLess{});
    std::vector<BasisKey> keys;
    for (Kind k : {Kind::X, Kind::Y, Kind::U, Kind::W}) {
        for (const auto& a : pts) {
            if (k == Kind::W && in_radical(a)) continue;
            keys.push_back({k, a, 0});
        }
    }
    for (int i = 1; i <= n; ++i) keys.push_back(BasisKey::c(n, i));
    for (int i = 1; i <= n; ++i) keys.push_back(BasisKey::d(n, i));
    return keys;
}

}  // namespace sl2q
