#pragma once

#include "symderiv/chords.hpp"
#include "symderiv/linalg.hpp"
#include "symderiv/partitions.hpp"
#include "symderiv/perm.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace symderiv {

// Letters of the symplectic basis are coded x_i -> 2(i-1), y_i -> 2i-1, so
// that the numeric order is x_1 < y_1 < x_2 < y_2 < ...
// A word of length n packs its letters into 4-bit nibbles, first letter most
// significant; for a fixed length numeric order is lexicographic order.
using Word = std::uint64_t;

constexpr int kMaxGenus = 8;
constexpr int kMaxWordLength = 16;

constexpr int letter_x(int i) { return 2 * (i - 1); }
constexpr int letter_y(int i) { return 2 * i - 1; }
constexpr int letter_index(int code) { return code / 2 + 1; }
constexpr bool letter_is_y(int code) { return code % 2 == 1; }
// The letter whose intersection with code is nonzero.
constexpr int letter_dual(int code) { return code ^ 1; }
// u.v on basis letters: x_i.y_i = 1 = -(y_i.x_i), all others 0.
constexpr int intersection(int a, int b) {
    if ((a ^ 1) != b) return 0;
    return letter_is_y(a) ? -1 : 1;
}
int parse_letter(const std::string& s);
std::string letter_str(int code);

Word make_word(const std::vector<int>& letters);
inline int word_letter(Word w, int n, int pos) { return static_cast<int>((w >> (4 * (n - 1 - pos))) & 0xF); }
std::vector<int> word_letters(Word w, int n);
std::string word_str(Word w, int n);
// Parses "x1y1x2" into letters.
std::vector<int> parse_word(const std::string& s);

// Exact tensor in H^{(x)n} at genus g, stored as a sorted word list.
class SparseTensor {
public:
    using Terms = std::vector<std::pair<Word, mpq_class>>;

    explicit SparseTensor(int g = 1, int n = 0);
    static SparseTensor letter(int g, int code);
    static SparseTensor word(int g, const std::vector<int>& letters, const mpq_class& c = 1);
    static SparseTensor scalar(int g, const mpq_class& c);
    // Takes ownership of an unsorted accumulation, dropping zeros.
    static SparseTensor from_map(int g, int n, std::unordered_map<Word, mpq_class>&& m);
    static SparseTensor from_terms(int g, int n, Terms terms);

    int genus() const { return g_; }
    int degree() const { return n_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    mpq_class coeff(Word w) const;

    SparseTensor operator+(const SparseTensor& o) const;
    SparseTensor operator-(const SparseTensor& o) const;
    SparseTensor operator-() const;
    SparseTensor operator*(const mpq_class& s) const;
    bool operator==(const SparseTensor& o) const { return g_ == o.g_ && n_ == o.n_ && terms_ == o.terms_; }

    // Same words viewed at another genus; throws if a letter does not fit.
    SparseTensor with_genus(int g) const;
    std::string str() const;
    // {"g":..,"n":..,"terms":[["x1y1",num,den],...]}
    std::string json() const;
    static SparseTensor from_json(const std::string& text);

private:
    int g_;
    int n_;
    Terms terms_;
};

class TensorAccumulator {
public:
    TensorAccumulator(int g, int n) : g_(g), n_(n) {}
    void add(Word w, const mpq_class& c);
    void add(const SparseTensor& t, const mpq_class& c = 1);
    SparseTensor finish();

private:
    int g_, n_;
    std::unordered_map<Word, mpq_class> m_;
};

SparseTensor tensor(const SparseTensor& a, const SparseTensor& b);
SparseTensor tensor(const std::vector<SparseTensor>& factors);

SparseTensor omega(int g);
SparseTensor phi(const ChordDiagram& c, int g);
SparseTensor phi(const ChordVector& v, int g);
mpq_class alpha(const ChordDiagram& c, const SparseTensor& t);
ChordVector kappa(const SparseTensor& t);
std::vector<mpq_class> kappa_D(const SparseTensor& t, const std::vector<ChordDiagram>& detector);
// K_ij with 1-based slots i < j.
SparseTensor contract(const SparseTensor& t, int i, int j);
mpq_class tensor_pairing(const SparseTensor& a, const SparseTensor& b);

SparseTensor lie_bracket(const SparseTensor& a, const SparseTensor& b);
// [u_1,[u_2,[...,[u_{m-1},u_m]...]]].
SparseTensor left_normed(const std::vector<SparseTensor>& us);
SparseTensor left_normed_letters(int g, const std::vector<int>& letters);
// Left bracketing map w_1...w_n -> [[...[w_1,w_2],...],w_n].
SparseTensor theta(const SparseTensor& t);
// The same map applied to slots 2..n with slot 1 kept in front.
SparseTensor theta_tail(const SparseTensor& t);
// c with theta(t) = c t; NotLie if t is not an eigenvector.
mpq_class dsw_degree(const SparseTensor& t);
bool is_lie(const SparseTensor& t);

SparseTensor iota(const SparseTensor& t);
// Moves the letter in slot i to slot g[i].
SparseTensor permute(const Perm& g, const SparseTensor& t);
SparseTensor apply(const GroupAlgebraOperator& op, const SparseTensor& t);
SparseTensor apply(const OperatorProduct& op, const SparseTensor& t);
// Slot i -> i+1, the last slot moving to the front.
SparseTensor rotate(const SparseTensor& t);
// Drops words containing letters of index > g.
SparseTensor restrict_genus(const SparseTensor& t, int g);

// x_i - y_i letter counts.
std::vector<int> word_weight(Word w, int n, int g);
SparseTensor weight_part(const SparseTensor& t, const std::vector<int>& weight);

// Element of sp(2g) acting on H by a letter substitution and on tensors as a
// derivation.
struct SpGenerator {
    std::string name;
    // images[code] = list of (letter, coefficient).
    std::vector<std::vector<std::pair<int, int>>> images;
};
std::vector<SpGenerator> sp_raising(int g);
std::vector<SpGenerator> sp_lowering(int g);
SparseTensor apply_derivation(const SpGenerator& d, const SparseTensor& t);
bool is_sp_invariant(const SparseTensor& t);

// Span of tensors of fixed genus and degree, in echelon form.
class Subspace {
public:
    Subspace(int g = 1, int n = 0) : g_(g), n_(n) {}
    int genus() const { return g_; }
    int degree() const { return n_; }
    bool insert(const SparseTensor& t);
    bool contains(const SparseTensor& t) const;
    std::size_t dim() const { return e_.rank(); }
    std::vector<SparseTensor> basis() const;
    const Echelon<Word>& echelon() const { return e_; }
    void fully_reduce() { e_.fully_reduce(); }

private:
    int g_, n_;
    Echelon<Word> e_;
};

QVec<Word> to_qvec(const SparseTensor& t);
SparseTensor from_qvec(int g, int n, const QVec<Word>& v);

// Combinations sum c_i ts[i] lying in the span of the images of a linear map
// given by its values; relations are returned as coefficient lists.
std::vector<std::vector<mpq_class>> kernel_of_images(const std::vector<std::vector<SparseTensor>>& images);

// V intersected with the span of phi over all chord diagrams.
Subspace sp_invariants(const Subspace& v);
// Vectors of V of weight `target` killed by every raising operator.
Subspace highest_weight_vectors(const Subspace& v, const Partition& target);

// u (x) [v,w] + v (x) [w,u] + w (x) [u,v].
SparseTensor wedge3(int g, int u, int v, int w);

}  // namespace symderiv
