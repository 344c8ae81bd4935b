#pragma once

#include "symderiv/errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace symderiv {

// Sorted sparse vectors; indices strictly increasing, no stored zeros.
template <class I>
using QVec = std::vector<std::pair<I, mpq_class>>;
template <class I>
using ZVec = std::vector<std::pair<I, mpz_class>>;

template <class I>
QVec<I> to_qvec(const ZVec<I>& v) {
    QVec<I> r;
    r.reserve(v.size());
    for (const auto& [i, c] : v) r.emplace_back(i, mpq_class(c));
    return r;
}

// Scales v to a primitive integer vector with positive leading entry.
template <class I>
ZVec<I> primitive(const QVec<I>& v) {
    mpz_class l = 1;
    for (const auto& [i, c] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    ZVec<I> r;
    r.reserve(v.size());
    mpz_class g = 0;
    for (const auto& [i, c] : v) {
        mpz_class z = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
        r.emplace_back(i, std::move(z));
    }
    if (r.empty()) return r;
    if (r.front().second < 0) g = -g;
    for (auto& [i, c] : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return r;
}

template <class I>
void make_primitive(ZVec<I>& r) {
    if (r.empty()) return;
    mpz_class g = 0;
    for (const auto& [i, c] : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    if (r.front().second < 0) g = -g;
    if (g == 1) return;
    for (auto& [i, c] : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// a*x - b*y for sorted sparse integer vectors.
template <class I>
ZVec<I> combine(const mpz_class& a, const ZVec<I>& x, const mpz_class& b, const ZVec<I>& y) {
    ZVec<I> r;
    r.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    mpz_class t;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            r.emplace_back(x[i].first, a * x[i].second);
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            r.emplace_back(y[j].first, -b * y[j].second);
            ++j;
        } else {
            t = a * x[i].second - b * y[j].second;
            if (t != 0) r.emplace_back(x[i].first, t);
            ++i, ++j;
        }
    }
    return r;
}

template <class I>
mpz_class entry(const ZVec<I>& v, const I& idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx, [](const auto& p, const I& k) { return p.first < k; });
    return it != v.end() && it->first == idx ? it->second : mpz_class(0);
}

// Row echelon form by fraction-free elimination; each row is primitive with
// a positive leading entry and the leading indices are pairwise distinct.
template <class I>
class Echelon {
public:
    std::size_t rank() const { return rows_.size(); }
    const std::map<I, ZVec<I>>& rows() const { return rows_; }

    // Reduces v until its leading index is not a pivot; returns the residue
    // (empty iff v lies in the span).
    ZVec<I> reduce(ZVec<I> v) const {
        while (!v.empty()) {
            auto it = rows_.find(v.front().first);
            if (it == rows_.end()) break;
            const auto& r = it->second;
            mpz_class a = r.front().second, b = v.front().second, g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            a /= g;
            b /= g;
            v = combine(a, v, b, r);
            make_primitive(v);
        }
        return v;
    }

    bool contains(const QVec<I>& v) const { return reduce(primitive(v)).empty(); }
    bool contains(const ZVec<I>& v) const { return reduce(v).empty(); }

    bool insert(const QVec<I>& v) { return insert(primitive(v)); }
    bool insert(ZVec<I> v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        make_primitive(v);
        rows_.emplace(v.front().first, std::move(v));
        return true;
    }

    // Clears every pivot column outside its own row (reduced echelon form).
    void fully_reduce() {
        for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
            const I& p = it->first;
            const ZVec<I>& pr = it->second;
            for (auto jt = rows_.begin(); jt->first < p; ++jt) {
                mpz_class b = entry(jt->second, p);
                if (b == 0) continue;
                mpz_class a = pr.front().second, g;
                mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                a /= g;
                b /= g;
                jt->second = combine(a, jt->second, b, pr);
                make_primitive(jt->second);
            }
        }
    }

    std::vector<ZVec<I>> basis() const {
        std::vector<ZVec<I>> out;
        for (const auto& [p, r] : rows_) out.push_back(r);
        return out;
    }

private:
    std::map<I, ZVec<I>> rows_;
};

// Linear relations among the given vectors: each returned coefficient list c
// (one entry per input) satisfies sum_i c_i v_i = 0, and together they form
// a basis of the relation space.
template <class I>
std::vector<std::vector<mpq_class>> relations(const std::vector<QVec<I>>& vs) {
    struct Row {
        ZVec<I> v;
        ZVec<std::size_t> combo;
    };
    std::map<I, Row> rows;
    std::vector<std::vector<mpq_class>> out;
    for (std::size_t n = 0; n < vs.size(); ++n) {
        // Track the combination alongside by scaling both with the same factors.
        QVec<I> q = vs[n];
        mpz_class l = 1;
        for (const auto& [i, c] : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        Row cur;
        for (const auto& [i, c] : q) cur.v.emplace_back(i, c.get_num() * (l / c.get_den()));
        cur.combo.emplace_back(n, l);
        while (!cur.v.empty()) {
            auto it = rows.find(cur.v.front().first);
            if (it == rows.end()) break;
            const Row& r = it->second;
            mpz_class a = r.v.front().second, b = cur.v.front().second, g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            a /= g;
            b /= g;
            cur.v = combine(a, cur.v, b, r.v);
            cur.combo = combine(a, cur.combo, b, r.combo);
            mpz_class c = 0;
            for (const auto& [i, x] : cur.v) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
            for (const auto& [i, x] : cur.combo) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
            if (c > 1) {
                for (auto& [i, x] : cur.v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
                for (auto& [i, x] : cur.combo) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
            }
        }
        if (cur.v.empty()) {
            std::vector<mpq_class> rel(vs.size(), 0);
            for (const auto& [i, x] : cur.combo) rel[i] = x;
            out.push_back(std::move(rel));
        } else {
            I key = cur.v.front().first;
            rows.emplace(key, std::move(cur));
        }
    }
    return out;
}

// Dense rational matrix helpers used on small square systems.
using QMatrix = std::vector<std::vector<mpq_class>>;

// Basis of the null space {x : A x = 0}, A given as rows.
std::vector<std::vector<mpq_class>> nullspace(QMatrix a, std::size_t cols);
// Rank of a dense rational matrix.
std::size_t matrix_rank(QMatrix a);
// Solves A X = B for square invertible A; throws InternalInconsistency when singular.
QMatrix solve(QMatrix a, QMatrix b);

// Echelon form over Z/p for a 62-bit prime; used only to pick pivots.
class ModEchelon {
public:
    static constexpr std::uint64_t kPrime = 4611686018427387847ULL;  // 2^62 - 57

    explicit ModEchelon(std::size_t dim) : dim_(dim) {}
    // Returns true and stores the row if v is independent of the stored rows.
    bool insert(const std::vector<std::pair<std::size_t, std::int64_t>>& v);
    std::size_t rank() const { return pivots_.size(); }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    static std::uint64_t reduce_signed(std::int64_t x);
    static std::uint64_t mul(std::uint64_t a, std::uint64_t b);
    static std::uint64_t inv(std::uint64_t a);

private:
    std::size_t dim_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace symderiv
