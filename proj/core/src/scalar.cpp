#include "sl2q/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <mutex>
#include <numeric>
#include <sstream>

#include "sl2q/error.hpp"

namespace sl2q {

const char* to_string(Backend backend) noexcept {
    switch (backend) {
        case Backend::Rational: return "rational";
        case Backend::Cyclotomic: return "cyclotomic";
        case Backend::GenericLaurent: return "generic";
    }
    return "?";
}

void ScalarConfig::validate() const {
    if (n < 1) throw Error(Errc::InvalidConfig, "rank n must be >= 1");
    if (N < 1) throw Error(Errc::InvalidConfig, "root of unity order N must be >= 1");
    if (backend != Backend::Cyclotomic) return;
    if (static_cast<int>(M.size()) != n)
        throw Error(Errc::InvalidConfig, "exponent matrix must have n rows");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(M[i].size()) != n)
            throw Error(Errc::InvalidConfig, "exponent matrix must be square");
    }
    for (int i = 0; i < n; ++i) {
        if (M[i][i] % N != 0)
            throw Error(Errc::InvalidConfig, "diagonal of the exponent matrix must vanish mod N");
        for (int j = i + 1; j < n; ++j) {
            if ((M[i][j] + M[j][i]) % N != 0)
                throw Error(Errc::InvalidConfig, "exponent matrix must be skew-symmetric mod N");
        }
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic rings

namespace {

using IntPoly = std::vector<mpz_class>;  // lowest degree first

void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division by a monic polynomial.
IntPoly divide_exact(IntPoly num, const IntPoly& den) {
    trim(num);
    const std::size_t dd = den.size() - 1;
    if (num.size() < den.size()) return {};
    IntPoly quot(num.size() - dd, 0);
    for (std::size_t k = num.size(); k-- > dd;) {
        mpz_class c = num[k];
        if (c == 0) continue;
        quot[k - dd] = c;
        for (std::size_t t = 0; t <= dd; ++t) num[k - dd + t] -= c * den[t];
    }
    trim(num);
    if (!num.empty()) throw Error(Errc::InternalTableInconsistency, "cyclotomic division left a remainder");
    trim(quot);
    return quot;
}

IntPoly cyclotomic_polynomial(int order, std::map<int, IntPoly>& memo) {
    if (auto it = memo.find(order); it != memo.end()) return it->second;
    IntPoly p(order + 1, 0);
    p[0] = -1;
    p[order] = 1;
    for (int d = 1; d < order; ++d) {
        if (order % d == 0) p = divide_exact(p, cyclotomic_polynomial(d, memo));
    }
    memo.emplace(order, p);
    return p;
}

long to_long_checked(const mpz_class& z) {
    if (!z.fits_slong_p()) throw Error(Errc::Overflow, "cyclotomic coefficient exceeds machine range");
    return z.get_si();
}

}  // namespace

CyclotomicRing::CyclotomicRing(int order) : order_(order) {
    std::map<int, IntPoly> memo;
    IntPoly phi = cyclotomic_polynomial(order, memo);
    degree_ = static_cast<int>(phi.size()) - 1;
    for (const auto& c : phi) phi_.push_back(to_long_checked(c));

    // x^k mod Phi_N for k = 0 .. N-1
    std::vector<mpz_class> cur(degree_, 0);
    cur[0] = 1;
    if (degree_ == 0) throw Error(Errc::InternalTableInconsistency, "degenerate cyclotomic polynomial");
    for (int k = 0; k < order_; ++k) {
        std::vector<long> row(degree_);
        for (int t = 0; t < degree_; ++t) row[t] = to_long_checked(cur[t]);
        powers_.push_back(std::move(row));
        // multiply by x and reduce
        mpz_class top = cur[degree_ - 1];
        for (int t = degree_ - 1; t > 0; --t) cur[t] = cur[t - 1];
        cur[0] = 0;
        if (top != 0) {
            for (int t = 0; t < degree_; ++t) cur[t] -= top * phi[t];
        }
    }
}

const CyclotomicRing& CyclotomicRing::of(int order) {
    if (order < 1) throw Error(Errc::InvalidConfig, "cyclotomic order must be >= 1");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<CyclotomicRing>> rings;
    std::lock_guard lock(mutex);
    auto& slot = rings[order];
    if (!slot) slot.reset(new CyclotomicRing(order));
    return *slot;
}

const std::vector<long>& CyclotomicRing::power(long k) const noexcept {
    long r = k % order_;
    if (r < 0) r += order_;
    return powers_[static_cast<std::size_t>(r)];
}

// ---------------------------------------------------------------------------
// Scalar

namespace {

[[noreturn]] void mismatch(const char* what) { throw Error(Errc::BackendMismatch, what); }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Overflow, "Laurent exponent overflow");
    return r;
}

bool all_zero(const std::vector<mpq_class>& v) {
    return std::all_of(v.begin(), v.end(), [](const mpq_class& c) { return c == 0; });
}

bool is_zero_exponent(const PairExponents& e) {
    return std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace

Scalar Scalar::cyclotomic(const CyclotomicRing& ring, std::vector<mpq_class> coeffs) {
    if (static_cast<int>(coeffs.size()) != ring.degree())
        throw Error(Errc::InternalTableInconsistency, "cyclotomic payload has wrong length");
    for (auto& c : coeffs) c.canonicalize();
    return Scalar(Cyclo{&ring, std::move(coeffs)});
}

Scalar Scalar::cyclotomic_power(const CyclotomicRing& ring, long k, const mpq_class& coeff) {
    const auto& row = ring.power(k);
    mpq_class c = coeff;
    c.canonicalize();
    std::vector<mpq_class> coeffs(row.size());
    for (std::size_t t = 0; t < row.size(); ++t) {
        if (row[t] != 0) coeffs[t] = c * row[t];
    }
    return Scalar(Cyclo{&ring, std::move(coeffs)});
}

Scalar Scalar::laurent(int pairs, std::map<PairExponents, mpq_class> terms) {
    for (auto it = terms.begin(); it != terms.end();) {
        if (static_cast<int>(it->first.size()) != pairs)
            throw Error(Errc::InternalTableInconsistency, "Laurent exponent has wrong length");
        it->second.canonicalize();
        if (it->second == 0)
            it = terms.erase(it);
        else
            ++it;
    }
    return Scalar(Laurent{pairs, std::move(terms)});
}

Scalar Scalar::laurent_monomial(PairExponents exponent, mpq_class coeff) {
    const int pairs = static_cast<int>(exponent.size());
    std::map<PairExponents, mpq_class> terms;
    coeff.canonicalize();
    if (coeff != 0) terms.emplace(std::move(exponent), std::move(coeff));
    return Scalar(Laurent{pairs, std::move(terms)});
}

Backend Scalar::backend() const noexcept {
    switch (v_.index()) {
        case 0: return Backend::Rational;
        case 1: return Backend::Cyclotomic;
        default: return Backend::GenericLaurent;
    }
}

bool Scalar::is_zero() const noexcept {
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q == 0;
    if (auto* c = std::get_if<Cyclo>(&v_)) return all_zero(c->coeffs);
    return std::get<Laurent>(v_).terms.empty();
}

bool Scalar::is_one() const noexcept {
    auto r = as_rational();
    return r && *r == 1;
}

std::optional<mpq_class> Scalar::as_rational() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q;
    if (auto* c = std::get_if<Cyclo>(&v_)) {
        for (std::size_t t = 1; t < c->coeffs.size(); ++t) {
            if (c->coeffs[t] != 0) return std::nullopt;
        }
        return c->coeffs[0];
    }
    const auto& l = std::get<Laurent>(v_);
    if (l.terms.empty()) return mpq_class(0);
    if (l.terms.size() == 1 && is_zero_exponent(l.terms.begin()->first)) return l.terms.begin()->second;
    return std::nullopt;
}

Scalar Scalar::zero_like() const {
    if (std::holds_alternative<mpq_class>(v_)) return Scalar();
    if (auto* c = std::get_if<Cyclo>(&v_))
        return Scalar(Cyclo{c->ring, std::vector<mpq_class>(c->coeffs.size())});
    return Scalar(Laurent{std::get<Laurent>(v_).pairs, {}});
}

Scalar Scalar::one_like() const {
    if (std::holds_alternative<mpq_class>(v_)) return Scalar(mpq_class(1));
    if (auto* c = std::get_if<Cyclo>(&v_)) return cyclotomic_power(*c->ring, 0);
    const int pairs = std::get<Laurent>(v_).pairs;
    return laurent_monomial(PairExponents(pairs, 0), 1);
}

Scalar Scalar::scaled(const mpq_class& factor_in) const {
    mpq_class factor = factor_in;
    factor.canonicalize();
    if (factor == 0) return zero_like();
    Scalar out = *this;
    if (auto* q = std::get_if<mpq_class>(&out.v_)) {
        *q *= factor;
    } else if (auto* c = std::get_if<Cyclo>(&out.v_)) {
        for (auto& x : c->coeffs) x *= factor;
    } else {
        for (auto& [e, x] : std::get<Laurent>(out.v_).terms) x *= factor;
    }
    return out;
}

Scalar Scalar::operator-() const { return scaled(mpq_class(-1)); }

Scalar& Scalar::operator+=(const Scalar& rhs) {
    if (v_.index() != rhs.v_.index()) mismatch("cannot add scalars of different backends");
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        *q += std::get<mpq_class>(rhs.v_);
    } else if (auto* c = std::get_if<Cyclo>(&v_)) {
        const auto& r = std::get<Cyclo>(rhs.v_);
        if (c->ring != r.ring) mismatch("cannot add cyclotomic scalars of different orders");
        for (std::size_t t = 0; t < c->coeffs.size(); ++t) {
            if (r.coeffs[t] != 0) c->coeffs[t] += r.coeffs[t];
        }
    } else {
        auto& l = std::get<Laurent>(v_);
        const auto& r = std::get<Laurent>(rhs.v_);
        if (l.pairs != r.pairs) mismatch("cannot add Laurent scalars of different ranks");
        for (const auto& [e, x] : r.terms) {
            auto [it, inserted] = l.terms.emplace(e, x);
            if (!inserted) {
                it->second += x;
                if (it->second == 0) l.terms.erase(it);
            }
        }
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar operator*(const Scalar& lhs, const Scalar& rhs) {
    if (lhs.v_.index() != rhs.v_.index()) mismatch("cannot multiply scalars of different backends");
    if (auto* q = std::get_if<mpq_class>(&lhs.v_)) return Scalar(mpq_class(*q * std::get<mpq_class>(rhs.v_)));
    if (auto* a = std::get_if<Scalar::Cyclo>(&lhs.v_)) {
        const auto& b = std::get<Scalar::Cyclo>(rhs.v_);
        if (a->ring != b.ring) mismatch("cannot multiply cyclotomic scalars of different orders");
        const int d = a->ring->degree();
        std::vector<mpq_class> prod(2 * d - 1);
        for (int i = 0; i < d; ++i) {
            if (a->coeffs[i] == 0) continue;
            for (int j = 0; j < d; ++j) {
                if (b.coeffs[j] != 0) prod[i + j] += a->coeffs[i] * b.coeffs[j];
            }
        }
        std::vector<mpq_class> out(prod.begin(), prod.begin() + d);
        for (int k = d; k < 2 * d - 1; ++k) {
            if (prod[k] == 0) continue;
            const auto& row = a->ring->power(k);
            for (int t = 0; t < d; ++t) {
                if (row[t] != 0) out[t] += prod[k] * row[t];
            }
        }
        return Scalar(Scalar::Cyclo{a->ring, std::move(out)});
    }
    const auto& a = std::get<Scalar::Laurent>(lhs.v_);
    const auto& b = std::get<Scalar::Laurent>(rhs.v_);
    if (a.pairs != b.pairs) mismatch("cannot multiply Laurent scalars of different ranks");
    std::map<PairExponents, mpq_class> terms;
    for (const auto& [ea, xa] : a.terms) {
        for (const auto& [eb, xb] : b.terms) {
            PairExponents e(ea.size());
            for (std::size_t t = 0; t < e.size(); ++t) e[t] = checked_add(ea[t], eb[t]);
            mpq_class x = xa * xb;
            auto [it, inserted] = terms.emplace(std::move(e), x);
            if (!inserted) {
                it->second += x;
                if (it->second == 0) terms.erase(it);
            }
        }
    }
    return Scalar(Scalar::Laurent{a.pairs, std::move(terms)});
}

Scalar& Scalar::operator*=(const Scalar& rhs) { return *this = *this * rhs; }

bool operator==(const Scalar& lhs, const Scalar& rhs) {
    if (lhs.v_.index() != rhs.v_.index()) return false;
    if (auto* q = std::get_if<mpq_class>(&lhs.v_)) return *q == std::get<mpq_class>(rhs.v_);
    if (auto* a = std::get_if<Scalar::Cyclo>(&lhs.v_)) {
        const auto& b = std::get<Scalar::Cyclo>(rhs.v_);
        return a->ring == b.ring && a->coeffs == b.coeffs;
    }
    const auto& a = std::get<Scalar::Laurent>(lhs.v_);
    const auto& b = std::get<Scalar::Laurent>(rhs.v_);
    return a.pairs == b.pairs && a.terms == b.terms;
}

Scalar Scalar::galois(long j) const {
    const auto* c = std::get_if<Cyclo>(&v_);
    if (!c) mismatch("Galois action is defined for cyclotomic scalars only");
    const long N = c->ring->order();
    if (std::gcd(((j % N) + N) % N, N) != 1)
        throw Error(Errc::PreconditionViolated, "Galois exponent must be a unit mod N");
    Scalar out = zero_like();
    auto& oc = std::get<Cyclo>(out.v_).coeffs;
    for (std::size_t k = 0; k < c->coeffs.size(); ++k) {
        if (c->coeffs[k] == 0) continue;
        const auto& row = c->ring->power(j * static_cast<long>(k));
        for (std::size_t t = 0; t < row.size(); ++t) {
            if (row[t] != 0) oc[t] += c->coeffs[k] * row[t];
        }
    }
    return out;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    if (auto* q = std::get_if<mpq_class>(&v_)) return Scalar(mpq_class(1 / *q));
    if (auto* c = std::get_if<Cyclo>(&v_)) {
        // u^{-1} = (prod of the nontrivial conjugates) / norm(u)
        const long N = c->ring->order();
        Scalar others = one_like();
        for (long j = 2; j < N; ++j) {
            if (std::gcd(j, N) == 1) others *= galois(j);
        }
        auto norm = (*this * others).as_rational();
        if (!norm || *norm == 0) throw Error(Errc::InternalTableInconsistency, "cyclotomic norm is not rational");
        return others.scaled(1 / *norm);
    }
    const auto& l = std::get<Laurent>(v_);
    if (l.terms.size() != 1)
        throw Error(Errc::NonInvertible, "only monomials are invertible in the Laurent ring");
    const auto& [e, x] = *l.terms.begin();
    PairExponents inv(e.size());
    for (std::size_t t = 0; t < e.size(); ++t) {
        if (e[t] == INT64_MIN) throw Error(Errc::Overflow, "Laurent exponent overflow");
        inv[t] = -e[t];
    }
    return laurent_monomial(std::move(inv), 1 / x);
}

namespace {

int rank_from_pairs(int pairs) {
    int n = 1;
    while (n * (n - 1) / 2 < pairs) ++n;
    return n;
}

// Appends `coeff*monomial` in literal syntax; an empty monomial means a constant.
void append_term(std::string& out, const mpq_class& coeff, const std::string& monomial) {
    const bool negative = coeff < 0;
    mpq_class mag = negative ? mpq_class(-coeff) : coeff;
    if (out.empty()) {
        if (negative) out += "-";
    } else {
        out += negative ? " - " : " + ";
    }
    if (monomial.empty()) {
        out += mag.get_str();
    } else if (mag == 1) {
        out += monomial;
    } else {
        out += mag.get_str() + "*" + monomial;
    }
}

}  // namespace

std::string Scalar::to_string() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return q->get_str();
    std::string out;
    if (auto* c = std::get_if<Cyclo>(&v_)) {
        for (std::size_t k = 0; k < c->coeffs.size(); ++k) {
            if (c->coeffs[k] == 0) continue;
            append_term(out, c->coeffs[k], k == 0 ? std::string() : "z^" + std::to_string(k));
        }
    } else {
        const auto& l = std::get<Laurent>(v_);
        const int n = rank_from_pairs(l.pairs);
        for (const auto& [e, x] : l.terms) {
            std::string mono;
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    const auto p = e[Field::pair_index(n, i, j)];
                    if (p == 0) continue;
                    if (!mono.empty()) mono += "*";
                    mono += "q" + std::to_string(i + 1) + std::to_string(j + 1) + "^" + std::to_string(p);
                }
            }
            append_term(out, x, mono);
        }
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Field

Field::Field(ScalarConfig config) {
    config.validate();
    auto impl = std::make_shared<Impl>();
    impl->pairs = config.n * (config.n - 1) / 2;
    if (config.backend == Backend::Cyclotomic) {
        impl->ring = &CyclotomicRing::of(config.N);
        for (auto& row : config.M) {
            for (auto& m : row) m = ((m % config.N) + config.N) % config.N;
        }
    }
    impl->config = std::move(config);
    impl_ = std::move(impl);
}

int Field::pair_index(int n, int i, int j) noexcept { return i * (2 * n - i - 1) / 2 + (j - i - 1); }

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }
Scalar Field::from_int(long value) const { return from_rational(mpq_class(value)); }

Scalar Field::from_rational(const mpq_class& value_in) const {
    mpq_class value = value_in;
    value.canonicalize();
    switch (backend()) {
        case Backend::Rational: return Scalar(value);
        case Backend::Cyclotomic: return Scalar::cyclotomic_power(*impl_->ring, 0, value);
        case Backend::GenericLaurent: return Scalar::laurent_monomial(PairExponents(impl_->pairs, 0), value);
    }
    return Scalar(value);
}

Scalar Field::root_of_unity(long k) const {
    if (backend() != Backend::Cyclotomic) mismatch("roots of unity require the cyclotomic backend");
    return Scalar::cyclotomic_power(*impl_->ring, k);
}

Scalar Field::q(int i, int j) const {
    const int n = rank();
    if (i < 1 || j < 1 || i > n || j > n) throw Error(Errc::RankOutOfRange, "q index out of range");
    if (i == j) return one();
    switch (backend()) {
        case Backend::Rational: return one();
        case Backend::Cyclotomic: return root_of_unity(config().M[i - 1][j - 1]);
        case Backend::GenericLaurent: {
            PairExponents e(impl_->pairs, 0);
            if (i < j)
                e[pair_index(n, i - 1, j - 1)] = 1;
            else
                e[pair_index(n, j - 1, i - 1)] = -1;
            return Scalar::laurent_monomial(std::move(e));
        }
    }
    return one();
}

namespace {

long twist_power(const ScalarConfig& cfg, const PairExponents& e) {
    const long N = cfg.N;
    long k = 0;
    for (int i = 0; i < cfg.n; ++i) {
        for (int j = i + 1; j < cfg.n; ++j) {
            const long m = cfg.M[i][j];
            if (m == 0) continue;
            long x = static_cast<long>(e[Field::pair_index(cfg.n, i, j)] % N);
            k = (k + m * x) % N;
        }
    }
    return ((k % N) + N) % N;
}

}  // namespace

Scalar Field::twist(const PairExponents& e) const {
    switch (backend()) {
        case Backend::Rational: return one();
        case Backend::Cyclotomic: return root_of_unity(twist_power(config(), e));
        case Backend::GenericLaurent: return Scalar::laurent_monomial(e);
    }
    return one();
}

bool Field::twist_is_one(const PairExponents& e) const {
    switch (backend()) {
        case Backend::Rational: return true;
        case Backend::Cyclotomic: return twist_power(config(), e) == 0;
        case Backend::GenericLaurent: return is_zero_exponent(e);
    }
    return true;
}

bool Field::contains(const Scalar& x) const noexcept {
    const auto& p = x.payload();
    switch (backend()) {
        case Backend::Rational: return std::holds_alternative<mpq_class>(p);
        case Backend::Cyclotomic: {
            auto* c = std::get_if<Scalar::Cyclo>(&p);
            return c && c->ring == impl_->ring;
        }
        case Backend::GenericLaurent: {
            auto* l = std::get_if<Scalar::Laurent>(&p);
            return l && l->pairs == impl_->pairs;
        }
    }
    return false;
}

bool Field::is_field() const noexcept { return backend() != Backend::GenericLaurent || impl_->pairs == 0; }

// ---------------------------------------------------------------------------
// Literal parser

namespace {

class LiteralParser {
public:
    LiteralParser(const Field& field, std::string_view text) : field_(field), s_(text) {}

    Scalar parse() {
        Scalar value = expression();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return value;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw Error(Errc::ParseError, "scalar literal '" + std::string(s_) + "': " + why);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(s_.substr(start, pos_ - start));
    }

    long exponent() {
        if (!accept('^')) return 1;
        bool negative = false;
        if (accept('-'))
            negative = true;
        else
            accept('+');
        mpz_class v(digits());
        if (!v.fits_slong_p()) fail("exponent too large");
        return negative ? -v.get_si() : v.get_si();
    }

    Scalar expression() {
        skip();
        bool negative = false;
        if (accept('-'))
            negative = true;
        else
            accept('+');
        Scalar value = term();
        if (negative) value = -value;
        while (true) {
            if (accept('+')) {
                value += term();
            } else if (accept('-')) {
                value -= term();
            } else {
                break;
            }
        }
        return value;
    }

    Scalar term() {
        Scalar value = factor();
        while (accept('*')) value *= factor();
        return value;
    }

    Scalar factor() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Scalar inner = expression();
            if (!accept(')')) fail("missing ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpq_class value{mpz_class(digits())};
            if (accept('/')) {
                mpz_class den(digits());
                if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator in literal");
                value /= den;
            }
            return field_.from_rational(value);
        }
        if (c == 'z') {
            ++pos_;
            return field_.root_of_unity(exponent());
        }
        if (c == 'q') {
            ++pos_;
            if (pos_ + 2 > s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))
                fail("expected two digit indices after 'q'");
            const int i = s_[pos_] - '0';
            const int j = s_[pos_ + 1] - '0';
            pos_ += 2;
            const long k = exponent();
            const int n = field_.rank();
            if (i < 1 || j < 1 || i > n || j > n) fail("q index out of range");
            if (i == j) return field_.one();
            const int lo = std::min(i, j) - 1, hi = std::max(i, j) - 1;
            PairExponents e(field_.pair_count(), 0);
            e[Field::pair_index(n, lo, hi)] = i < j ? k : -k;
            return field_.twist(e);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const Field& field_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Scalar Field::parse(std::string_view text) const { return LiteralParser(*this, text).parse(); }

}  // namespace sl2q
