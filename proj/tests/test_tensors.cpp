#include "symderiv/chords.hpp"
#include "symderiv/deriv.hpp"
#include "symderiv/errors.hpp"
#include "symderiv/fixtures.hpp"
#include "symderiv/linalg.hpp"
#include "symderiv/tensors.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>

using namespace symderiv;

namespace {

const int X1 = letter_x(1), Y1 = letter_y(1), X2 = letter_x(2), Y2 = letter_y(2), X3 = letter_x(3), Y3 = letter_y(3);

SparseTensor L(int g, int c) { return SparseTensor::letter(g, c); }

SparseTensor W(int g, const std::vector<int>& letters, const mpq_class& c = 1) { return SparseTensor::word(g, letters, c); }

// Sign of the permutation i_1 j_1 i_2 j_2 ... by counting inversions.
int oracle_sign(const ChordDiagram& c) {
    std::vector<int> seq;
    for (auto [i, j] : c.pairs()) {
        seq.push_back(i);
        seq.push_back(j);
    }
    int inv = 0;
    for (std::size_t a = 0; a < seq.size(); ++a)
        for (std::size_t b = a + 1; b < seq.size(); ++b) inv += seq[a] > seq[b];
    return inv % 2 ? -1 : 1;
}

// Phi by direct expansion: every chord (i,j) carries x_m at i, y_m at j with
// sign +1 or y_m at i, x_m at j with sign -1.
std::map<std::vector<int>, long> oracle_phi(const ChordDiagram& c, int g) {
    std::map<std::vector<int>, long> out;
    std::vector<int> word(static_cast<std::size_t>(c.points()));
    const auto& pairs = c.pairs();
    std::function<void(std::size_t, long)> rec = [&](std::size_t s, long coeff) {
        if (s == pairs.size()) {
            out[word] += coeff * oracle_sign(c);
            return;
        }
        auto [i, j] = pairs[s];
        for (int m = 1; m <= g; ++m) {
            word[static_cast<std::size_t>(i - 1)] = letter_x(m);
            word[static_cast<std::size_t>(j - 1)] = letter_y(m);
            rec(s + 1, coeff);
            word[static_cast<std::size_t>(i - 1)] = letter_y(m);
            word[static_cast<std::size_t>(j - 1)] = letter_x(m);
            rec(s + 1, -coeff);
        }
    };
    rec(0, 1);
    return out;
}

int oracle_intersection(int a, int b) {
    if (a / 2 != b / 2 || a == b) return 0;
    return a % 2 == 0 ? 1 : -1;
}

mpq_class oracle_alpha(const ChordDiagram& c, const SparseTensor& t) {
    mpq_class s = 0;
    for (const auto& [w, coeff] : t.terms()) {
        auto letters = word_letters(w, t.degree());
        long p = oracle_sign(c);
        for (auto [i, j] : c.pairs()) p *= oracle_intersection(letters[static_cast<std::size_t>(i - 1)], letters[static_cast<std::size_t>(j - 1)]);
        s += coeff * p;
    }
    return s;
}

// Every word of length n at genus g.
std::vector<std::vector<int>> all_words(int g, int n) {
    std::vector<std::vector<int>> out{{}};
    for (int i = 0; i < n; ++i) {
        std::vector<std::vector<int>> next;
        for (const auto& w : out)
            for (int c = 0; c < 2 * g; ++c) {
                auto v = w;
                v.push_back(c);
                next.push_back(v);
            }
        out = next;
    }
    return out;
}

std::size_t tensor_rank(const std::vector<SparseTensor>& ts) {
    if (ts.empty()) return 0;
    Subspace s(ts[0].genus(), ts[0].degree());
    for (const auto& t : ts) s.insert(t);
    return s.dim();
}

bool proportional(const SparseTensor& a, const SparseTensor& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    mpq_class r = b.terms().front().second / a.terms().front().second;
    return a * r == b;
}

std::vector<mpq_class> scaled(mpq_class s, const std::vector<long>& v) {
    std::vector<mpq_class> out;
    for (long x : v) out.push_back(s * x);
    return out;
}

}  // namespace

TEST(Tensors, WordEncoding) {
    EXPECT_EQ(X1, 0);
    EXPECT_EQ(Y1, 1);
    EXPECT_EQ(X2, 2);
    EXPECT_EQ(parse_word("x1y2x3"), (std::vector<int>{X1, Y2, X3}));
    EXPECT_EQ(word_str(make_word({X1, Y2, X3}), 3), "x1y2x3");
    EXPECT_LT(make_word({X1, Y1}), make_word({Y1, X1}));
}

TEST(Tensors, Omega) {
    EXPECT_EQ(omega(1), W(1, {X1, Y1}) - W(1, {Y1, X1}));
    EXPECT_EQ(omega(2).size(), 4u);
    for (int g = 1; g <= 4; ++g) EXPECT_EQ(tensor_pairing(omega(g), omega(g)), 2 * g);
    EXPECT_EQ(tensor_pairing(omega(3), omega(3)), 6);
}

TEST(Tensors, Intersection) {
    EXPECT_EQ(intersection(X1, Y1), 1);
    EXPECT_EQ(intersection(Y2, X2), -1);
    EXPECT_EQ(intersection(X1, X2), 0);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) EXPECT_EQ(intersection(a, b), oracle_intersection(a, b));
}

TEST(Tensors, PhiExamples) {
    EXPECT_EQ(phi(ChordDiagram::parse("(12)"), 1), omega(1));
    SparseTensor p = phi(ChordDiagram::parse("(13)(24)"), 1);
    EXPECT_EQ(p.coeff(make_word({X1, X1, Y1, Y1})), -1);
}

TEST(Tensors, PhiMatchesDirectExpansion) {
    for (int n = 2; n <= 6; n += 2)
        for (int g = 1; g <= 3; ++g)
            for (const auto& c : enumerate_diagrams(n)) {
                EXPECT_EQ(diagram_sign(c), oracle_sign(c));
                std::unordered_map<Word, mpq_class> m;
                for (const auto& [w, v] : oracle_phi(c, g)) m[make_word(w)] += v;
                EXPECT_EQ(phi(c, g), SparseTensor::from_map(g, n, std::move(m))) << c.str();
            }
}

TEST(Tensors, PhiAntiEquivariance) {
    Perm gamma = transposition(1, 2, 4);
    auto c = ChordDiagram::parse("(12)(34)");
    EXPECT_EQ(phi(act(gamma, c), 2), permute(gamma, phi(c, 2)) * perm_sign(gamma));
    for (const auto& d : enumerate_diagrams(6))
        for (int a = 1; a <= 6; ++a)
            for (int b = a + 1; b <= 6; ++b) {
                Perm t = transposition(a, b, 6);
                EXPECT_EQ(phi(act(t, d), 2), -permute(t, phi(d, 2)));
            }
}

TEST(Tensors, AlphaExamples) {
    auto c12 = ChordDiagram::parse("(12)");
    EXPECT_EQ(alpha(c12, W(1, {X1, Y1})), 1);
    for (int g = 1; g <= 4; ++g) EXPECT_EQ(alpha(c12, omega(g)), 2 * g);
    EXPECT_THROW(alpha(c12, W(1, {X1, Y1, X1})), DimensionMismatch);
}

TEST(Tensors, AlphaMatchesDirectEvaluation) {
    std::mt19937 rng(7);
    for (int n = 2; n <= 6; n += 2) {
        TensorAccumulator acc(2, n);
        auto words = all_words(2, n);
        for (int i = 0; i < 40; ++i)
            acc.add(make_word(words[rng() % words.size()]), mpq_class(static_cast<long>(rng() % 11) - 5));
        SparseTensor t = acc.finish();
        for (const auto& c : enumerate_diagrams(n)) EXPECT_EQ(alpha(c, t), oracle_alpha(c, t));
    }
}

TEST(Tensors, AlphaPhiDuality) {
    for (int n = 2; n <= 6; n += 2)
        for (int g = 1; g <= 3; ++g) {
            auto ds = enumerate_diagrams(n);
            for (const auto& a : ds)
                for (const auto& b : ds) {
                    SparseTensor pb = phi(b, g);
                    EXPECT_EQ(alpha(a, pb), mpq_class(pairing(a, b, g)));
                    EXPECT_EQ(tensor_pairing(phi(a, g), pb), mpq_class(pairing(a, b, g)));
                }
        }
}

TEST(Tensors, PairingOnEightPoints) {
    auto ds = enumerate_diagrams(8);
    for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 7}, {13, 42}, {104, 55}})
        EXPECT_EQ(tensor_pairing(phi(ds[static_cast<std::size_t>(i)], 2), phi(ds[static_cast<std::size_t>(j)], 2)),
                  mpq_class(pairing(ds[static_cast<std::size_t>(i)], ds[static_cast<std::size_t>(j)], 2)));
    for (const auto& c : ds) EXPECT_GT(tensor_pairing(phi(c, 2), phi(c, 2)), 0);
    EXPECT_THROW(tensor_pairing(omega(2), W(2, {X1})), DimensionMismatch);
}

TEST(Tensors, PhiRankMatchesGramRank) {
    for (int n = 2; n <= 6; n += 2)
        for (int g = 1; g <= 4; ++g) {
            std::vector<SparseTensor> images;
            for (const auto& c : enumerate_diagrams(n)) images.push_back(phi(c, g));
            QMatrix gram;
            for (const auto& row : gram_matrix(n, g)) {
                std::vector<mpq_class> r;
                for (const auto& v : row) r.emplace_back(v);
                gram.push_back(r);
            }
            std::size_t rank = tensor_rank(images);
            EXPECT_EQ(rank, matrix_rank(gram)) << n << " " << g;
            if (g >= n / 2) EXPECT_EQ(rank, diagram_count(n));
        }
}

TEST(Tensors, KappaOnEigenspaces) {
    for (int n = 4; n <= 8; n += 2)
        for (const auto& la : enumerate_partitions(n / 2))
            for (int g : {2, 3}) {
                mpq_class mu(eigenvalue_poly(la)(g));
                for (const auto& v : eigenspace_basis(la, n)) EXPECT_EQ(kappa(phi(v, g)), v * mu) << la.str();
            }
    EXPECT_TRUE(kappa(SparseTensor(2, 4)).is_zero());
    EXPECT_THROW(kappa(W(2, {X1, Y1, X2})), DegreeParity);
}

TEST(Tensors, KappaOnProjectedSpace) {
    Partition la{2, 2};
    mpq_class mu(eigenvalue_poly(la)(3));
    auto f = derivation_projection(la, 8);
    ASSERT_FALSE(f.empty());
    for (const auto& v : f) EXPECT_EQ(kappa(phi(v, 3)), v * mu);
}

TEST(Tensors, KappaDetectorOnFixtureVectors) {
    auto dir = default_fixtures_dir();
    auto det = FixtureFile::load(dir / "h6_detector.txt").diagrams("detector");
    auto cs = load_chord_vectors(dir / "h6_invariant_basis.txt", 8);
    ASSERT_EQ(cs.size(), 5u);
    int g = 3;
    EXPECT_EQ(kappa_D(phi(cs[0].vector, g), det), scaled(2 * g * (2 * g + 1) * (2 * g + 2) * (2 * g + 3), {18, -2, -16, 11, -3}));
    EXPECT_EQ(kappa_D(phi(cs[0].vector, g), det), scaled(3024, {18, -2, -16, 11, -3}));
    EXPECT_EQ(kappa_D(phi(cs[3].vector, g), det), scaled((2 * g - 2) * (2 * g - 1) * 2 * g * (2 * g + 1), {-2, -4, -2, 1, 1}));
}

TEST(Tensors, KappaIsStable) {
    for (int n = 2; n <= 6; n += 2)
        for (int g = 1; g <= 3; ++g)
            for (const auto& c : enumerate_diagrams(n)) {
                SparseTensor t = phi(c, g);
                EXPECT_EQ(kappa(t), kappa(t.with_genus(g + 1)));
                EXPECT_EQ(restrict_genus(phi(c, g + 1), g), t);
            }
}

TEST(Tensors, Contract) {
    for (int g = 1; g <= 3; ++g) EXPECT_EQ(contract(omega(g), 1, 2), SparseTensor::scalar(g, 2 * g));
    EXPECT_TRUE(contract(W(2, {X1, X1, Y2}), 1, 2).is_zero());
    EXPECT_EQ(contract(W(2, {X1, X2, Y1}), 1, 3), W(2, {X2}));
    EXPECT_EQ(contract(W(2, {Y1, X2, X1}), 1, 3), W(2, {X2}, -1));
    EXPECT_THROW(contract(omega(2), 2, 1), IndexError);
    EXPECT_THROW(contract(omega(2), 1, 3), IndexError);
    EXPECT_THROW(contract(omega(2), 0, 2), IndexError);
}

TEST(Tensors, LieBracketAndDegree) {
    EXPECT_EQ(left_normed_letters(1, {X1, Y1}), omega(1));
    EXPECT_EQ(lie_bracket(L(2, X1), L(2, Y1)), W(2, {X1, Y1}) - W(2, {Y1, X1}));
    EXPECT_EQ(dsw_degree(left_normed_letters(2, {X1, X2, Y1})), 3);
    EXPECT_THROW(dsw_degree(W(2, {X1, X2})), NotLie);
    EXPECT_FALSE(is_lie(W(2, {X1, X2})));
    EXPECT_TRUE(is_lie(left_normed_letters(2, {X1, Y2, X2, Y1})));
    EXPECT_EQ(left_normed({L(2, X1), L(2, Y1), L(2, X2)}), lie_bracket(L(2, X1), lie_bracket(L(2, Y1), L(2, X2))));
}

TEST(Tensors, Jacobi) {
    std::mt19937 rng(11);
    auto random_lie = [&](int deg) {
        SparseTensor t(2, deg);
        for (int r = 0; r < 3; ++r) {
            std::vector<int> ls;
            for (int i = 0; i < deg; ++i) ls.push_back(static_cast<int>(rng() % 4));
            t = deg == 1 ? t + L(2, ls[0]) * (r + 1) : t + left_normed_letters(2, ls) * (r + 1);
        }
        return t;
    };
    for (int trial = 0; trial < 12; ++trial) {
        SparseTensor a = random_lie(1 + trial % 4), b = random_lie(1 + (trial / 2) % 4), c = random_lie(1 + (trial / 3) % 4);
        SparseTensor j = lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) + lie_bracket(c, lie_bracket(a, b));
        EXPECT_TRUE(j.is_zero());
        SparseTensor ab = lie_bracket(a, b);
        if (!ab.is_zero()) EXPECT_EQ(dsw_degree(ab), a.degree() + b.degree());
    }
}

TEST(Tensors, Iota) {
    EXPECT_EQ(iota(L(1, X1)), L(1, Y1));
    EXPECT_EQ(iota(L(1, Y1)), -L(1, X1));
    for (int g = 1; g <= 3; ++g) EXPECT_EQ(iota(omega(g)), omega(g));
    SparseTensor t = W(3, {X1, Y2, X3}) + W(3, {Y3, Y3, X2}, 2);
    EXPECT_EQ(iota(iota(t)), -t);
    EXPECT_EQ(iota(iota(omega(3))), omega(3));
}

TEST(Tensors, SpInvariantsOfDegreeTwo) {
    Subspace v(2, 2);
    for (const auto& w : all_words(2, 2)) v.insert(W(2, w));
    Subspace inv = sp_invariants(v);
    ASSERT_EQ(inv.dim(), 1u);
    EXPECT_TRUE(proportional(inv.basis()[0], omega(2)));
    EXPECT_TRUE(is_sp_invariant(omega(2)));
    EXPECT_FALSE(is_sp_invariant(W(2, {X1, Y2})));
}

TEST(Tensors, HighestWeightInDegreeThree) {
    int g = 3;
    Subspace v(g, 5);
    std::vector<int> base{X1, X1, X1, X2, X3};
    std::sort(base.begin(), base.end());
    do {
        v.insert(h_project(W(g, base)));
    } while (std::next_permutation(base.begin(), base.end()));
    Subspace hw = highest_weight_vectors(v, Partition{3, 1, 1});
    ASSERT_EQ(hw.dim(), 1u);
    SparseTensor xi = h3_highest_weight(g);
    EXPECT_TRUE(proportional(hw.basis()[0], xi));
    EXPECT_TRUE(is_in_h(xi));
    for (const auto& d : sp_raising(g)) EXPECT_TRUE(apply_derivation(d, xi).is_zero()) << d.name;
}

TEST(Tensors, SpInvariantsOfH6) {
    int g = 3;
    Subspace v(g, 8);
    for (const auto& c : enumerate_diagrams(8)) v.insert(h_project(phi(c, g)));
    Subspace inv = sp_invariants(v);
    EXPECT_EQ(inv.dim(), 5u);
    EXPECT_EQ(v.dim(), 5u);
}

TEST(Tensors, Wedge3) {
    int g = 3;
    SparseTensor w = wedge3(g, X1, X2, X3);
    EXPECT_EQ(w.size(), 6u);
    for (const auto& [word, c] : w.terms()) EXPECT_EQ(abs(c), 1);
    EXPECT_EQ(wedge3(g, X2, X1, X3), -w);
    EXPECT_EQ(wedge3(g, X1, X3, X2), -w);
    EXPECT_EQ(wedge3(g, X2, X3, X1), w);
    EXPECT_TRUE(is_in_h(wedge3(g, X1, X2, Y1)));
    EXPECT_TRUE(is_in_h(w));
    EXPECT_EQ(lie_spider(g, {X1, X2, Y3}), wedge3(g, X1, X2, Y3));
}

TEST(Tensors, Serialization) {
    SparseTensor t = W(3, {X1, Y2, X3}, mpq_class(-3, 7)) + W(3, {Y3, Y3, X2}, 2);
    EXPECT_EQ(SparseTensor::from_json(t.json()), t);
    EXPECT_EQ(SparseTensor::from_json(phi(ChordDiagram::parse("(13)(24)"), 2).json()), phi(ChordDiagram::parse("(13)(24)"), 2));
    EXPECT_EQ(SparseTensor::from_json(SparseTensor(2, 4).json()), SparseTensor(2, 4));
}

TEST(Tensors, GenusChecks) {
    EXPECT_THROW(W(1, {X2}), Error);
    EXPECT_THROW(W(3, {X3}).with_genus(2), Error);
    EXPECT_EQ(W(2, {X2}).with_genus(3), W(3, {X2}));
}
