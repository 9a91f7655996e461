#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sl2q/scalar.hpp"

namespace sl2q {

template <class Key, class Less>
using SparseVector = std::map<Key, Scalar, Less>;

/// v[key] += c, dropping zeros.
template <class Key, class Less>
void accumulate(SparseVector<Key, Less>& v, const Key& key, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = v.try_emplace(key, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
}

/// v += c * w
template <class Key, class Less>
void axpy(SparseVector<Key, Less>& v, const Scalar& c, const SparseVector<Key, Less>& w) {
    if (c.is_zero()) return;
    for (const auto& [k, x] : w) accumulate(v, k, c * x);
}

template <class Key, class Less>
SparseVector<Key, Less> scaled(const SparseVector<Key, Less>& v, const Scalar& c) {
    SparseVector<Key, Less> out;
    if (c.is_zero()) return out;
    for (const auto& [k, x] : v) {
        Scalar y = c * x;
        if (!y.is_zero()) out.emplace_hint(out.end(), k, std::move(y));
    }
    return out;
}

/// Incremental row echelon basis of a subspace of a sparse coordinate space.
/// The pivot of a row is its smallest key and every other key of the row is
/// larger.  Over a field rows are normalized to pivot coefficient 1; over the
/// Laurent ring elimination is fraction free (cross multiplication).
/// Optionally each row carries a dense combination vector recording how it
/// was obtained from the inserted vectors, which yields kernels.
template <class Key, class Less>
class Subspace {
public:
    using Vector = SparseVector<Key, Less>;

    explicit Subspace(const Field& field, std::size_t tracked = 0)
        : field_(field), divide_(field.is_field()), tracked_(tracked) {}

    std::size_t dimension() const noexcept { return rows_.size(); }
    const std::vector<Vector>& basis() const noexcept { return rows_; }

    /// Remainder of v modulo the span; zero iff v lies in the span.
    Vector reduce(Vector v) const {
        std::vector<Scalar> none;
        reduce_impl(v, none, false);
        return v;
    }

    bool contains(const Vector& v) const { return reduce(v).empty(); }

    /// Adds v; true if the dimension grew.
    bool insert(Vector v) {
        std::vector<Scalar> combo;
        if (tracked_ != 0) {
            combo.assign(tracked_, field_.zero());
            combo[inserted_] = field_.one();
        }
        ++inserted_;
        return !insert_impl(std::move(v), std::move(combo)).has_value();
    }

    /// Like insert, but when v is dependent returns the combination of the
    /// inserted vectors (indexed in insertion order) that vanishes.
    std::optional<std::vector<Scalar>> insert_tracked(Vector v) {
        std::vector<Scalar> combo(tracked_, field_.zero());
        combo.at(inserted_) = field_.one();
        ++inserted_;
        return insert_impl(std::move(v), std::move(combo));
    }

private:
    void reduce_impl(Vector& v, std::vector<Scalar>& combo, bool track) const {
        auto it = v.begin();
        while (it != v.end()) {
            const auto p = pivot_.find(it->first);
            if (p == pivot_.end()) {
                ++it;
                continue;
            }
            const Key key = it->first;
            const Vector& row = rows_[p->second];
            const Scalar c = it->second;
            if (divide_) {
                // pivot coefficient is 1
                axpy(v, -c, row);
                if (track) add_combo(combo, -c, combos_[p->second]);
            } else {
                const Scalar& pc = row.begin()->second;
                v = scaled(v, pc);
                axpy(v, -c, row);
                if (track) {
                    for (auto& x : combo) x *= pc;
                    add_combo(combo, -c, combos_[p->second]);
                }
            }
            it = v.upper_bound(key);
        }
    }

    static void add_combo(std::vector<Scalar>& combo, const Scalar& c, const std::vector<Scalar>& other) {
        for (std::size_t i = 0; i < combo.size(); ++i) {
            if (!other[i].is_zero()) combo[i] += c * other[i];
        }
    }

    std::optional<std::vector<Scalar>> insert_impl(Vector v, std::vector<Scalar> combo) {
        const bool track = !combo.empty();
        reduce_impl(v, combo, track);
        if (v.empty()) return combo;
        if (divide_) {
            const Scalar inv = v.begin()->second.inverse();
            v = scaled(v, inv);
            if (track)
                for (auto& x : combo) x *= inv;
        }
        pivot_.emplace(v.begin()->first, rows_.size());
        rows_.push_back(std::move(v));
        if (track) combos_.push_back(std::move(combo));
        return std::nullopt;
    }

    Field field_;
    bool divide_;
    std::size_t tracked_;
    std::size_t inserted_ = 0;
    std::vector<Vector> rows_;
    std::vector<std::vector<Scalar>> combos_;
    std::map<Key, std::size_t, Less> pivot_;
};

}  // namespace sl2q
