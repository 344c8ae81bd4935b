#pragma once

#include "symderiv/partitions.hpp"

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace symderiv {

// Permutation of {0..n-1} as an image list: p[i] is the image of i. The
// action on slots (tensors) and vertices (chord diagrams) sends position i to
// position p[i]; composition (a*b)(i) = a(b(i)), so b acts first.
using Perm = std::vector<int>;

Perm identity_perm(int n);
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
int perm_sign(const Perm& p);
CycleType perm_cycle_type(const Perm& p);
// The cycle (1 2 ... i) embedded in S_n.
Perm cycle_perm(int i, int n);
// Transposition of 1-based positions a and b in S_n.
Perm transposition(int a, int b, int n);
// Parses one-line "2 3 1" or cycle notation "(1 2 3)(4 5)" with 1-based labels.
Perm parse_perm(const std::string& s, int n);
std::string perm_str(const Perm& p);

// Integer combination of permutations of a fixed degree.
class GroupAlgebraOperator {
public:
    explicit GroupAlgebraOperator(int n = 0) : n_(n) {}
    static GroupAlgebraOperator identity(int n);
    static GroupAlgebraOperator single(const Perm& p, const mpz_class& c = 1);

    int degree() const { return n_; }
    const std::map<Perm, mpz_class>& terms() const { return terms_; }
    void add(const Perm& p, const mpz_class& c);

    GroupAlgebraOperator operator*(const GroupAlgebraOperator& o) const;
    GroupAlgebraOperator operator+(const GroupAlgebraOperator& o) const;
    GroupAlgebraOperator operator-(const GroupAlgebraOperator& o) const;
    GroupAlgebraOperator scaled(const mpz_class& c) const;
    // Multiplies each coefficient by the sign of its permutation.
    GroupAlgebraOperator twisted() const;

private:
    int n_;
    std::map<Perm, mpz_class> terms_;
};

// An operator kept as a product; factors()[0] is applied last.
struct OperatorProduct {
    int n = 0;
    std::vector<GroupAlgebraOperator> factors;
    GroupAlgebraOperator expand() const;
};

// p_k = (1 - s_k)(1 - s_{k-1})...(1 - s_2) acting on slots 1..k of n.
OperatorProduct lie_projector(int k, int n);
// S_k = sum_{j=1..k} s_k^j.
GroupAlgebraOperator cyclic_sum(int k, int n);
// Sign-twisted versions used on chord diagrams.
OperatorProduct lie_projector_twisted(int k, int n);
GroupAlgebraOperator cyclic_sum_twisted(int k, int n);
// S_n o s_n o p_{n-1} o s_n^{-1} (image: derivations inside H^{(x)n}).
OperatorProduct derivation_projector(int n);
// Its sign twist, the operator applied to chord diagrams.
OperatorProduct derivation_projector_twisted(int n);

}  // namespace symderiv
