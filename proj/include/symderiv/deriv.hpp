#pragma once

#include "symderiv/chords.hpp"
#include "symderiv/tensors.hpp"

#include <map>
#include <optional>
#include <vector>

namespace symderiv {

// A degree-k derivation is stored as its tensor of length k+2 (an element of
// H (x) L(k+1)).
inline int derivation_degree(const SparseTensor& t) { return t.degree() - 2; }

// S_n o (1 (x) p_{n-1}) on a tensor of length n >= 3.
SparseTensor h_project(const SparseTensor& t);
// Cyclically invariant with a Lie tail: (1 (x) theta) t = (n-1) t.
bool is_in_h(const SparseTensor& t);
// Cyclic sum of u_1 (x) [u_2,[u_3,[...,[u_{k+1},u_{k+2}]...]]].
SparseTensor lie_spider(int g, const std::vector<int>& letters);
SparseTensor bracket(const SparseTensor& a, const SparseTensor& b);

// [x_1,[x_1,...,[x_1,y_1]...]] with l copies of x_1.
SparseTensor x_bracket(int g, int l);
// Highest weight generator of the genus-one derivation algebra, degree 2k.
SparseTensor epsilon(int two_k, int g = 1);

// Rotation-minimal representative of each word, coefficients summed.
SparseTensor cyclic_canonical(const SparseTensor& t);
struct CyclicWord {
    Word word;
    mpq_class coeff;
};
std::vector<CyclicWord> cyclic_words(const SparseTensor& t);
// K_12 followed by the projection to cyclic coinvariants (canonical form).
SparseTensor enomoto_satoh(const SparseTensor& t);

// Span of [h_1,[h_2,...,[h_{k-2}, omega]...]] restricted to one torus weight.
Subspace ideal_weight_space(int g, int k, const std::vector<int>& weight);
// All weights; refused above a fixed ambient size.
Subspace ideal_basis(int g, int k);
// Membership of a Lie element of degree k in the ideal generated by omega.
bool in_ideal(const SparseTensor& xi);
// Membership in j(k) = h(k) intersected with H (x) I(k+1): in h, and the tail
// attached to each first letter lies in the ideal.
bool in_j(const SparseTensor& t);

// Elements of H (x) I(k+1) killed by the bracket (cyclically invariant ones),
// computed weight by weight; k <= 6.
Subspace j_space(int g, int k);

// Sp-invariant parts computed directly on tensors at a concrete genus.
// h(k)^Sp: invariant tensors of length k+2 in h.
std::vector<SparseTensor> h_invariants(int g, int k);
// L(k)^Sp and I(k)^Sp inside H^{(x)k}.
std::vector<SparseTensor> lie_invariants(int g, int k);
std::vector<SparseTensor> ideal_invariants(int g, int k);
// j(k)^Sp = h(k)^Sp intersected with H (x) I(k+1).
std::vector<SparseTensor> j_invariants(int g, int k);

struct InvariantDims {
    std::size_t h = 0, j = 0, h_star = 0, L = 0, h_g = 0;
};
// One genus row of the unstable table for an even degree k <= 6.
InvariantDims unstable_invariant_dims(int g, int k);

// Phi of the canonical F bases for 2k, grouped by the H_lambda label
// (lambda = conjugate of the F label), labels in reverse lexicographic order.
struct LabelledElement {
    Partition label;
    ChordVector chords;
    SparseTensor tensor;
};
std::vector<LabelledElement> v_basis(int two_k, int g);
// v / mu_{label'}(g); UnstableGenus when that eigenvalue vanishes. With
// `only`, restricts to one label (and checks its eigenvalue even when the
// label carries no vectors).
std::vector<LabelledElement> normalized_basis(int two_k, int g, std::optional<Partition> only = std::nullopt);

// Orthogonal components of an Sp-invariant element of h(2k): for each H
// label lambda, the chord vector c_lambda in F_{lambda'} with
// t_lambda = Phi(c_lambda) and t = sum t_lambda. NotInvariant otherwise.
std::map<Partition, ChordVector, RevLex> ortho_coordinates(const SparseTensor& t);
// Same decomposition applied to the invariant part of any element of h(2k).
std::map<Partition, ChordVector, RevLex> invariant_part_coordinates(const SparseTensor& t);

// The degree-10 genus-one element whose bracket with epsilon_4 lies in the
// kernel of the Enomoto-Satoh map, built from u_j = Phi(P U_j).
// standard: P = S'_12 o s_12 o p'_11 o s_12^{-1} with the signed Phi and
// alpha used everywhere else.
// published: P = S'_12 o p'_11 (Lie projector on slots 1..11), with U_j and
// the detector taken in the unsigned chord basis (U_j enters as sgn(U_j) U_j
// and the detector row D is sgn(D) alpha_D); this reproduces the printed
// detector matrix and relation.
enum class Sigma5Convention { standard, published };
struct Sigma5Result {
    std::vector<SparseTensor> u;                // u_1, u_2, u_3
    std::vector<std::vector<mpq_class>> matrix;  // row i: detector D_i on u_1..u_3
    std::size_t rank = 0;                        // rank of u_1..u_3
    std::size_t kernel_dim = 0;                  // relations among ES([epsilon_4, u_j])
    std::vector<mpq_class> relation;             // primitive; set when kernel_dim == 1
    SparseTensor element;                        // sum relation_i u_i
};
Sigma5Result genus1_sigma5(const std::vector<ChordDiagram>& u_diagrams, const std::vector<ChordDiagram>& detector,
                           Sigma5Convention convention = Sigma5Convention::published);

// Highest weight vector of the [3,1,1] summand of h(3) at genus g >= 3,
// normalised to a primitive integer tensor with positive leading coefficient.
SparseTensor h3_highest_weight(int g);

}  // namespace symderiv
