#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sl2q {

enum class Backend { Rational, Cyclotomic, GenericLaurent };

const char* to_string(Backend backend) noexcept;

/// Parameters of the scalar field and of the commutation matrix q.
///
/// Cyclotomic: q_ij = zeta_N^{M[i][j]}.  GenericLaurent: the q_ij (i<j) are
/// independent formal parameters and M is ignored.  Rational: every q_ij = 1
/// (the commutative torus).
struct ScalarConfig {
    Backend backend = Backend::Rational;
    int N = 1;
    int n = 1;
    std::vector<std::vector<long>> M;

    /// Throws Error{InvalidConfig} unless N >= 1, n >= 1, M is n x n (when
    /// cyclotomic) and M is skew-symmetric modulo N with zero diagonal.
    void validate() const;
};

/// Exponent vector over the unordered pairs i<j, indexed by `pair_index`.
using PairExponents = std::vector<std::int64_t>;

/// Q(zeta_N) with its canonical basis 1, zeta, ..., zeta^{phi(N)-1}.
/// Instances are interned per order and live for the whole program.
class CyclotomicRing {
public:
    static const CyclotomicRing& of(int order);

    int order() const noexcept { return order_; }
    int degree() const noexcept { return degree_; }
    /// Coefficients of the N-th cyclotomic polynomial, lowest degree first.
    const std::vector<long>& minimal_polynomial() const noexcept { return phi_; }
    /// Canonical coordinates of zeta^k; k is taken modulo N.
    const std::vector<long>& power(long k) const noexcept;

    CyclotomicRing(const CyclotomicRing&) = delete;
    CyclotomicRing& operator=(const CyclotomicRing&) = delete;

private:
    explicit CyclotomicRing(int order);

    int order_;
    int degree_;
    std::vector<long> phi_;
    std::vector<std::vector<long>> powers_;
};

/// Exact scalar.  The payload is always canonical, so equality is payload
/// equality.
class Scalar {
public:
    struct Cyclo {
        const CyclotomicRing* ring;
        std::vector<mpq_class> coeffs;  // length ring->degree()
    };
    struct Laurent {
        int pairs;
        std::map<PairExponents, mpq_class> terms;  // no zero coefficients
    };

    Scalar() : v_(mpq_class(0)) {}
    explicit Scalar(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }

    static Scalar cyclotomic(const CyclotomicRing& ring, std::vector<mpq_class> coeffs);
    static Scalar cyclotomic_power(const CyclotomicRing& ring, long k, const mpq_class& coeff = 1);
    static Scalar laurent(int pairs, std::map<PairExponents, mpq_class> terms);
    static Scalar laurent_monomial(PairExponents exponent, mpq_class coeff = 1);

    Backend backend() const noexcept;
    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    /// The value as a rational number, if it lies in Q.
    std::optional<mpq_class> as_rational() const;

    Scalar zero_like() const;
    Scalar one_like() const;
    Scalar scaled(const mpq_class& factor) const;
    Scalar inverse() const;
    /// Galois action zeta -> zeta^j (cyclotomic only, gcd(j, N) = 1).
    Scalar galois(long j) const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(const Scalar& lhs, const Scalar& rhs);
    friend bool operator==(const Scalar& lhs, const Scalar& rhs);

    /// Literal syntax: "p/q", "1/2*z^1 + z^2", "q12^3*q13^-1".
    std::string to_string() const;

    const std::variant<mpq_class, Cyclo, Laurent>& payload() const noexcept { return v_; }

private:
    explicit Scalar(std::variant<mpq_class, Cyclo, Laurent> v) : v_(std::move(v)) {}

    std::variant<mpq_class, Cyclo, Laurent> v_;
};

/// A configured scalar field together with the commutation parameters q_ij.
/// Cheap to copy.
class Field {
public:
    explicit Field(ScalarConfig config);

    const ScalarConfig& config() const noexcept { return impl_->config; }
    Backend backend() const noexcept { return impl_->config.backend; }
    int rank() const noexcept { return impl_->config.n; }
    int pair_count() const noexcept { return impl_->pairs; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long value) const;
    Scalar from_rational(const mpq_class& value) const;

    /// zeta_N^k (cyclotomic backend only).
    Scalar root_of_unity(long k) const;
    /// q_ij with 1-based indices.
    Scalar q(int i, int j) const;
    /// prod_{i<j} q_ij^{e_ij}.
    Scalar twist(const PairExponents& e) const;
    bool twist_is_one(const PairExponents& e) const;

    /// True when x belongs to this field (backend, order and rank agree).
    bool contains(const Scalar& x) const noexcept;
    /// Linear algebra over the scalars needs inverses of arbitrary nonzero
    /// elements; the Laurent ring has them only when there are no parameters.
    bool is_field() const noexcept;

    Scalar parse(std::string_view text) const;

    /// 0-based index of the pair (i, j), i < j, among n(n-1)/2 pairs.
    static int pair_index(int n, int i, int j) noexcept;

private:
    struct Impl {
        ScalarConfig config;
        int pairs = 0;
        const CyclotomicRing* ring = nullptr;
    };
    std::shared_ptr<const Impl> impl_;
};

}  // namespace sl2q
