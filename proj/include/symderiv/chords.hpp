#pragma once

#include "symderiv/linalg.hpp"
#include "symderiv/partitions.hpp"
#include "symderiv/perm.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace symderiv {

// Perfect matching of {1..n}, kept in canonical form: pairs (i_l, j_l) with
// i_1 < i_2 < ... and i_l < j_l.
class ChordDiagram {
public:
    ChordDiagram() = default;
    static ChordDiagram from_pairs(const std::vector<std::pair<int, int>>& pairs);
    // 0-based partner list: partner[v] is the vertex matched with v.
    static ChordDiagram from_partner(const std::vector<int>& partner);
    // "(12)(34)" with single digits, or "(1 2)(3 4)" / "(9,10)" when spaced.
    static ChordDiagram parse(const std::string& s);

    int points() const { return static_cast<int>(partner_.size()); }
    int chords() const { return points() / 2; }
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    const std::vector<int>& partner() const { return partner_; }
    std::string str() const;

    friend bool operator==(const ChordDiagram& a, const ChordDiagram& b) { return a.partner_ == b.partner_; }

private:
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> partner_;
};

// (n-1)!!, the number of diagrams on n points.
std::uint64_t diagram_count(int n);
std::vector<ChordDiagram> enumerate_diagrams(int n);
// 0-based position in the lexicographic enumeration.
std::uint32_t rank_of(const std::vector<int>& partner);
// 1-based index as used in published listings.
std::size_t index_of(const ChordDiagram& c);
ChordDiagram diagram_at(int n, std::size_t index);
int diagram_sign(const ChordDiagram& c);
ChordDiagram act(const Perm& g, const ChordDiagram& c);

// Number of connected components of the union of two matchings.
int components(const ChordDiagram& a, const ChordDiagram& b);
mpz_class pairing(const ChordDiagram& a, const ChordDiagram& b, int g);
GenusPolynomial pairing_poly(const ChordDiagram& a, const ChordDiagram& b);

// Sparse rational vector over the diagrams on n points, keyed by 0-based rank.
class ChordVector {
public:
    explicit ChordVector(int n = 0) : n_(n) {}
    static ChordVector unit(const ChordDiagram& c, const mpq_class& coeff = 1);
    static ChordVector from_dense(int n, const std::vector<mpq_class>& values);

    int points() const { return n_; }
    const std::map<std::uint32_t, mpq_class>& entries() const { return e_; }
    bool is_zero() const { return e_.empty(); }
    mpq_class at_rank(std::uint32_t r) const;
    // 1-based index access.
    mpq_class operator[](std::size_t index) const { return at_rank(static_cast<std::uint32_t>(index - 1)); }

    void add(std::uint32_t rank, const mpq_class& c);
    ChordVector operator+(const ChordVector& o) const;
    ChordVector operator-(const ChordVector& o) const;
    ChordVector operator*(const mpq_class& s) const;
    bool operator==(const ChordVector& o) const { return n_ == o.n_ && e_ == o.e_; }

    QVec<std::uint32_t> qvec() const;
    static ChordVector from_qvec(int n, const QVec<std::uint32_t>& v);
    static ChordVector from_zvec(int n, const ZVec<std::uint32_t>& v);
    std::vector<mpq_class> dense() const;
    // All (n-1)!! coefficients in lexicographic order, space separated.
    std::string dense_text() const;
    // {"n":8,"entries":[[index,num,den],...]} with 1-based indices.
    std::string json() const;
    static ChordVector from_json(const std::string& text);

private:
    int n_;
    std::map<std::uint32_t, mpq_class> e_;
};

ChordVector act(const Perm& g, const ChordVector& v);
ChordVector apply(const GroupAlgebraOperator& op, const ChordVector& v);
ChordVector apply(const OperatorProduct& op, const ChordVector& v);

// Rank permutation induced by g on diagrams: table[r] = rank of g.(diagram r).
std::vector<std::uint32_t> index_table(const Perm& g);

std::vector<std::vector<mpz_class>> gram_matrix(int n, int g);
std::vector<std::vector<GenusPolynomial>> gram_matrix_poly(int n);
// Gram matrix times v.
ChordVector gram_apply(const ChordVector& v, int g);
mpq_class gram_form(const ChordVector& a, const ChordVector& b, int g);

// Image of the Young symmetrizer of shape 2*la (rows filled 1..n in order,
// row symmetrizer after column antisymmetrizer) closed under the symmetric
// group: the eigenspace E_la on n = 2|la| points.
std::vector<ChordVector> eigenspace_basis(const Partition& la, int n);

// Number of matchings fixed by a permutation of the given cycle type.
mpz_class fixed_matchings(const CycleType& rho);
// dim F_la computed as a trace of the twisted derivation projector against
// the character of the isotypic type 2*la.
mpz_class projection_dimension_by_trace(const Partition& la, int n);
// Rank of the twisted derivation projector on all diagrams (trace / n(n-1)).
mpz_class projector_rank_by_trace(int n);

// Explicit F_la: image of the twisted derivation projector split into
// isotypic parts; canonical reduced echelon basis.
std::vector<ChordVector> derivation_projection(const Partition& la, int n);
// Same space computed literally as the projector applied to eigenspace_basis.
std::vector<ChordVector> derivation_projection_from_eigenspace(const Partition& la, int n);
// All F_la for la |- n/2, keyed by la; 2k = n - 2.
std::map<Partition, std::vector<ChordVector>, RevLex> p_stable_basis(int two_k);
// Dimensions of the explicit split (also available where vectors are not
// materialised, n = 14 with allow_large).
std::map<Partition, std::size_t, RevLex> derivation_projection_dims(int n, bool allow_large = false);

// Largest point count for which explicit chord vectors are built by default.
constexpr int kExplicitChordLimit = 12;

}  // namespace symderiv
