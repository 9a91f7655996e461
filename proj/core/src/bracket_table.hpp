#pragma once

// Structure constants of sl2(C_q) + C + D, written once over an abstract
// coefficient ring.  A Ring provides
//   Value zero(), one(), from_int(long)
//   Value add(Value, Value), sub(..), mul(..), neg(Value), half(Value)
//   Value cocycle(a, b), commutator(a, b)
//   bool is_zero(Value), bool in_radical(a)

#include <utility>
#include <vector>

#include "sl2q/error.hpp"
#include "sl2q/lie_algebra.hpp"

namespace sl2q::detail {

template <class Ring>
using BracketTerms = std::vector<std::pair<BasisKey, typename Ring::Value>>;

template <class Ring>
void push_nonzero(const Ring& R, BracketTerms<Ring>& out, const BasisKey& key, typename Ring::Value v) {
    if (!R.is_zero(v)) out.emplace_back(key, std::move(v));
}

// W(c) does not exist for c in R; the coefficient must vanish there.
template <class Ring>
void push_w(const Ring& R, BracketTerms<Ring>& out, const LatticeVector& c, typename Ring::Value v) {
    if (R.in_radical(c)) {
        if (!R.is_zero(v))
            throw Error(Errc::InternalTableInconsistency, "nonzero W coefficient at radical degree " + c.to_string());
        return;
    }
    push_nonzero(R, out, BasisKey::w(c), std::move(v));
}

template <class Ring>
void push_central(const Ring& R, BracketTerms<Ring>& out, const LatticeVector& a, const typename Ring::Value& scale) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] != 0) push_nonzero(R, out, BasisKey::c(a.size(), i + 1), R.mul(scale, R.from_int(a[i])));
    }
}

/// Appends [x, y] to `out`.  Keys are assumed valid.
template <class Ring>
void table_bracket(const Ring& R, const BasisKey& x, const BasisKey& y, BracketTerms<Ring>& out) {
    const Kind kx = x.kind, ky = y.kind;
    if (kx == Kind::C || ky == Kind::C) return;
    if (kx == Kind::D && ky == Kind::D) return;
    if (kx == Kind::D) {
        push_nonzero(R, out, y, R.from_int(y.a[x.index - 1]));
        return;
    }
    if (ky == Kind::D) {
        push_nonzero(R, out, x, R.from_int(-x.a[y.index - 1]));
        return;
    }
    if (kx > ky) {
        const std::size_t start = out.size();
        table_bracket(R, y, x, out);
        for (std::size_t i = start; i < out.size(); ++i) out[i].second = R.neg(out[i].second);
        return;
    }
    if (kx == ky && (kx == Kind::X || kx == Kind::Y)) return;

    const LatticeVector& a = x.a;
    const LatticeVector& b = y.a;
    const LatticeVector c = a + b;
    const auto s = R.cocycle(b, a);
    const auto f = R.commutator(a, b);
    const auto f_plus = R.add(f, R.one());
    const auto f_minus = R.sub(f, R.one());

    switch (kx) {
        case Kind::X:
            switch (ky) {
                case Kind::Y:
                    push_nonzero(R, out, BasisKey::u(c), R.half(R.mul(s, f_plus)));
                    push_w(R, out, c, R.half(R.mul(s, f_minus)));
                    if (c.is_zero()) push_central(R, out, a, R.cocycle(a, b));
                    return;
                case Kind::U: push_nonzero(R, out, BasisKey::x(c), R.neg(R.mul(s, f_plus))); return;
                case Kind::W: push_nonzero(R, out, BasisKey::x(c), R.mul(s, f_minus)); return;
                default: break;
            }
            break;
        case Kind::Y:
            switch (ky) {
                case Kind::U: push_nonzero(R, out, BasisKey::y(c), R.mul(s, f_plus)); return;
                case Kind::W: push_nonzero(R, out, BasisKey::y(c), R.mul(s, f_minus)); return;
                default: break;
            }
            break;
        case Kind::U:
            if (ky == Kind::U) {
                push_w(R, out, c, R.mul(s, f_minus));
                if (c.is_zero()) push_central(R, out, a, R.add(R.cocycle(a, b), R.cocycle(a, b)));
                return;
            }
            if (ky == Kind::W) {
                const auto v = R.mul(s, f_minus);
                if (R.in_radical(c)) {
                    if (!R.is_zero(v))
                        throw Error(Errc::InternalTableInconsistency, "nonzero [U,W] at radical degree " + c.to_string());
                    return;
                }
                push_nonzero(R, out, BasisKey::u(c), v);
                return;
            }
            break;
        case Kind::W:
            if (ky == Kind::W) {
                push_w(R, out, c, R.mul(s, f_minus));
                if (c.is_zero()) push_central(R, out, a, R.add(R.cocycle(a, b), R.cocycle(a, b)));
                return;
            }
            break;
        default: break;
    }
    throw Error(Errc::InternalTableInconsistency, "unhandled bracket pair");
}

}  // namespace sl2q::detail
