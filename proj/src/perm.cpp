#include "symderiv/perm.hpp"

#include "symderiv/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace symderiv {

Perm identity_perm(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

Perm compose(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw DimensionMismatch("composing permutations of different degrees");
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

CycleType perm_cycle_type(const Perm& p) {
    std::vector<int> lens;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) seen[j] = 1, ++len;
        lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return Partition(lens);
}

int perm_sign(const Perm& p) { return cycle_sign(perm_cycle_type(p)); }

Perm cycle_perm(int i, int n) {
    if (i < 1 || i > n) throw IndexError("cycle length out of range");
    Perm p = identity_perm(n);
    for (int a = 0; a < i; ++a) p[a] = (a + 1) % i;
    return p;
}

Perm transposition(int a, int b, int n) {
    if (a < 1 || b < 1 || a > n || b > n) throw IndexError("transposition out of range");
    Perm p = identity_perm(n);
    std::swap(p[a - 1], p[b - 1]);
    return p;
}

Perm parse_perm(const std::string& s, int n) {
    Perm p = identity_perm(n);
    if (s.find('(') != std::string::npos) {
        std::size_t pos = 0;
        while ((pos = s.find('(', pos)) != std::string::npos) {
            std::size_t end = s.find(')', pos);
            if (end == std::string::npos) throw std::invalid_argument("unbalanced cycle notation");
            std::stringstream ss(s.substr(pos + 1, end - pos - 1));
            std::vector<int> cyc;
            int x;
            while (ss >> x) cyc.push_back(x - 1);
            for (std::size_t i = 0; i < cyc.size(); ++i) p.at(cyc[i]) = cyc[(i + 1) % cyc.size()];
            pos = end + 1;
        }
    } else {
        std::stringstream ss(s);
        int x, i = 0;
        while (ss >> x) p.at(i++) = x - 1;
        if (i != n) throw DimensionMismatch("one-line permutation of the wrong length");
    }
    Perm check = p;
    std::sort(check.begin(), check.end());
    if (check != identity_perm(n)) throw std::invalid_argument("not a permutation: " + s);
    return p;
}

std::string perm_str(const Perm& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(p[i] + 1);
    }
    return s;
}

GroupAlgebraOperator GroupAlgebraOperator::identity(int n) { return single(identity_perm(n)); }

GroupAlgebraOperator GroupAlgebraOperator::single(const Perm& p, const mpz_class& c) {
    GroupAlgebraOperator r(static_cast<int>(p.size()));
    r.add(p, c);
    return r;
}

void GroupAlgebraOperator::add(const Perm& p, const mpz_class& c) {
    if (static_cast<int>(p.size()) != n_) throw DimensionMismatch("permutation degree differs from operator degree");
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(p, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

GroupAlgebraOperator GroupAlgebraOperator::operator*(const GroupAlgebraOperator& o) const {
    GroupAlgebraOperator r(n_);
    for (const auto& [a, x] : terms_)
        for (const auto& [b, y] : o.terms_) r.add(compose(a, b), x * y);
    return r;
}

GroupAlgebraOperator GroupAlgebraOperator::operator+(const GroupAlgebraOperator& o) const {
    GroupAlgebraOperator r = *this;
    for (const auto& [p, c] : o.terms_) r.add(p, c);
    return r;
}

GroupAlgebraOperator GroupAlgebraOperator::operator-(const GroupAlgebraOperator& o) const {
    GroupAlgebraOperator r = *this;
    for (const auto& [p, c] : o.terms_) r.add(p, -c);
    return r;
}

GroupAlgebraOperator GroupAlgebraOperator::scaled(const mpz_class& c) const {
    GroupAlgebraOperator r(n_);
    for (const auto& [p, x] : terms_) r.add(p, x * c);
    return r;
}

GroupAlgebraOperator GroupAlgebraOperator::twisted() const {
    GroupAlgebraOperator r(n_);
    for (const auto& [p, x] : terms_) r.add(p, x * perm_sign(p));
    return r;
}

GroupAlgebraOperator OperatorProduct::expand() const {
    GroupAlgebraOperator r = GroupAlgebraOperator::identity(n);
    for (const auto& f : factors) r = r * f;
    return r;
}

OperatorProduct lie_projector(int k, int n) {
    OperatorProduct op{n, {}};
    for (int j = k; j >= 2; --j)
        op.factors.push_back(GroupAlgebraOperator::identity(n) - GroupAlgebraOperator::single(cycle_perm(j, n)));
    return op;
}

GroupAlgebraOperator cyclic_sum(int k, int n) {
    GroupAlgebraOperator r(n);
    Perm s = cycle_perm(k, n), pw = identity_perm(n);
    for (int j = 1; j <= k; ++j) {
        pw = compose(s, pw);
        r.add(pw, 1);
    }
    return r;
}

OperatorProduct lie_projector_twisted(int k, int n) {
    OperatorProduct op = lie_projector(k, n);
    for (auto& f : op.factors) f = f.twisted();
    return op;
}

GroupAlgebraOperator cyclic_sum_twisted(int k, int n) { return cyclic_sum(k, n).twisted(); }

OperatorProduct derivation_projector(int n) {
    OperatorProduct op{n, {}};
    op.factors.push_back(cyclic_sum(n, n));
    op.factors.push_back(GroupAlgebraOperator::single(cycle_perm(n, n)));
    for (auto& f : lie_projector(n - 1, n).factors) op.factors.push_back(f);
    op.factors.push_back(GroupAlgebraOperator::single(inverse(cycle_perm(n, n))));
    return op;
}

OperatorProduct derivation_projector_twisted(int n) {
    OperatorProduct op = derivation_projector(n);
    for (auto& f : op.factors) f = f.twisted();
    return op;
}

}  // namespace symderiv
