#include "symderiv/chords.hpp"
#include "symderiv/errors.hpp"
#include "symderiv/fixtures.hpp"
#include "symderiv/linalg.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>

using namespace symderiv;

namespace {

using Flat = std::vector<int>;

// All matchings of {1..n} as flattened (i1 j1 i2 j2 ...) in canonical form.
void matchings(std::vector<int> free, Flat cur, std::vector<Flat>& out) {
    if (free.empty()) {
        out.push_back(cur);
        return;
    }
    int a = free.front();
    for (std::size_t i = 1; i < free.size(); ++i) {
        auto rest = free;
        int b = rest[i];
        rest.erase(rest.begin() + static_cast<long>(i));
        rest.erase(rest.begin());
        auto next = cur;
        next.push_back(a);
        next.push_back(b);
        matchings(rest, next, out);
    }
}

std::vector<Flat> all_matchings(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    std::vector<Flat> out;
    matchings(v, {}, out);
    std::sort(out.begin(), out.end());
    return out;
}

Flat flatten(const ChordDiagram& c) {
    Flat f;
    for (auto [i, j] : c.pairs()) {
        f.push_back(i);
        f.push_back(j);
    }
    return f;
}

int inversion_sign(const Flat& f) {
    int inv = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) inv += f[i] > f[j];
    return inv % 2 ? -1 : 1;
}

int union_components(const Flat& a, const Flat& b) {
    int n = static_cast<int>(a.size());
    std::vector<int> parent(static_cast<std::size_t>(n + 1));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); };
    for (const Flat* m : {&a, &b})
        for (std::size_t i = 0; i < m->size(); i += 2) parent[static_cast<std::size_t>(find((*m)[i]))] = find((*m)[i + 1]);
    int r = 0;
    for (int v = 1; v <= n; ++v) r += find(v) == v;
    return r;
}

mpz_class pow_z(long b, int e) {
    mpz_class r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

QMatrix to_q(const std::vector<std::vector<mpz_class>>& m) {
    QMatrix q;
    for (const auto& row : m) q.emplace_back(row.begin(), row.end());
    return q;
}

std::size_t span_dim(const std::vector<ChordVector>& vs) {
    Echelon<std::uint32_t> e;
    for (const auto& v : vs) e.insert(v.qvec());
    return e.rank();
}

}  // namespace

TEST(Chords, Enumeration) {
    EXPECT_EQ(enumerate_diagrams(8).size(), 105u);
    auto two = enumerate_diagrams(2);
    ASSERT_EQ(two.size(), 1u);
    EXPECT_EQ(two[0].str(), "(12)");
    EXPECT_EQ(index_of(ChordDiagram::parse("(12)(36)(47)(58)")), 8u);
    for (int n = 2; n <= 10; n += 2) {
        auto got = enumerate_diagrams(n);
        auto want = all_matchings(n);
        ASSERT_EQ(got.size(), want.size());
        EXPECT_EQ(diagram_count(n), want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            EXPECT_EQ(flatten(got[i]), want[i]);
            EXPECT_EQ(index_of(got[i]), i + 1);
            EXPECT_EQ(diagram_at(n, i + 1), got[i]);
        }
    }
}

TEST(Chords, Signs) {
    EXPECT_EQ(diagram_sign(ChordDiagram::parse("(12)(34)")), 1);
    EXPECT_EQ(diagram_sign(ChordDiagram::parse("(13)(24)")), -1);
    EXPECT_EQ(diagram_sign(ChordDiagram::parse("(14)(23)")), 1);
    for (const auto& c : enumerate_diagrams(8)) EXPECT_EQ(diagram_sign(c), inversion_sign(flatten(c)));
}

TEST(Chords, Action) {
    auto c = ChordDiagram::parse("(12)(34)");
    auto v = ChordVector::unit(c, 3) + ChordVector::unit(ChordDiagram::parse("(13)(24)"), -2);
    EXPECT_EQ(act(identity_perm(4), v), v);
    EXPECT_EQ(act(transposition(1, 2, 4), c), c);
    EXPECT_EQ(act(cycle_perm(4, 4), c), ChordDiagram::parse("(14)(23)"));
    EXPECT_THROW(act(identity_perm(6), v), DimensionMismatch);
    // apply folds act over the operator's terms.
    GroupAlgebraOperator op = GroupAlgebraOperator::identity(4) + GroupAlgebraOperator::single(cycle_perm(4, 4), 2);
    EXPECT_EQ(apply(op, v), v + act(cycle_perm(4, 4), v) * 2);
}

TEST(Chords, Pairing) {
    for (const auto& c : enumerate_diagrams(6)) EXPECT_EQ(pairing(c, c, 5), pow_z(10, 3));
    EXPECT_EQ(pairing(ChordDiagram::parse("(12)(34)"), ChordDiagram::parse("(13)(24)"), 4), -8);
    EXPECT_EQ(pairing(ChordDiagram::parse("(12)"), ChordDiagram::parse("(12)"), 3), 6);
    auto ds = enumerate_diagrams(8);
    for (const auto& a : ds)
        for (const auto& b : ds) {
            int r = union_components(flatten(a), flatten(b));
            EXPECT_EQ(components(a, b), r);
            for (int g = 1; g <= 3; ++g) {
                mpz_class want = pow_z(2 * g, r) * ((4 - r) % 2 ? -1 : 1);
                EXPECT_EQ(pairing(a, b, g), want);
                EXPECT_EQ(pairing_poly(a, b)(g), want);
            }
        }
}

TEST(Chords, GramMatrix) {
    auto m2 = gram_matrix(2, 7);
    ASSERT_EQ(m2.size(), 1u);
    EXPECT_EQ(m2[0][0], 14);
    auto m4 = gram_matrix(4, 1);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m4[i][j], i == j ? 4 : -2);
    for (int n = 2; n <= 8; n += 2)
        for (int g = 1; g <= 3; ++g) {
            auto m = gram_matrix(n, g);
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = 0; j < m.size(); ++j) EXPECT_EQ(m[i][j], m[j][i]);
        }
}

TEST(Chords, FixtureEigenvector) {
    auto c = load_chord_vectors(default_fixtures_dir() / "h6_invariant_basis.txt", 8);
    ASSERT_EQ(c.size(), 5u);
    EXPECT_EQ(gram_apply(c[0].vector, 3), c[0].vector * mpq_class(6 * 7 * 8 * 9));
}

TEST(Chords, SmallEigenspaces) {
    auto e2 = eigenspace_basis(Partition{2}, 4), e11 = eigenspace_basis(Partition{1, 1}, 4);
    EXPECT_EQ(span_dim(e2), 1u);
    EXPECT_EQ(span_dim(e11), 2u);
    for (int g : {1, 2, 5}) {
        for (const auto& v : e2) EXPECT_EQ(gram_apply(v, g), v * mpq_class(2 * g * (2 * g - 2)));
        for (const auto& v : e11) EXPECT_EQ(gram_apply(v, g), v * mpq_class(2 * g * (2 * g + 1)));
    }
}

TEST(Chords, EigenspaceDecomposition) {
    for (int n = 2; n <= 10; n += 2) {
        std::vector<ChordVector> all;
        std::size_t total = 0;
        for (const auto& la : enumerate_partitions(n / 2)) {
            auto e = eigenspace_basis(la, n);
            total += span_dim(e);
            all.insert(all.end(), e.begin(), e.end());
            if (n <= 8)
                for (int g : {1, 2, 3}) {
                    mpq_class mu(eigenvalue_poly(la)(g));
                    EXPECT_GE(mu, 0);
                    for (const auto& v : e) EXPECT_EQ(gram_apply(v, g), v * mu);
                }
        }
        EXPECT_EQ(total, diagram_count(n));
        EXPECT_EQ(span_dim(all), diagram_count(n));
    }
}

TEST(Chords, EigenspacesAreOrthogonal) {
    for (int n = 4; n <= 8; n += 2) {
        auto ls = enumerate_partitions(n / 2);
        for (std::size_t i = 0; i < ls.size(); ++i)
            for (std::size_t j = i + 1; j < ls.size(); ++j) {
                auto a = eigenspace_basis(ls[i], n), b = eigenspace_basis(ls[j], n);
                for (int g : {2, 5})
                    for (const auto& x : a)
                        for (const auto& y : b) EXPECT_EQ(gram_form(x, y, g), 0);
            }
    }
}

TEST(Chords, GramRankMatchesNonzeroEigenvalues) {
    for (int n = 2; n <= 8; n += 2)
        for (int g = 1; g <= 3; ++g) {
            std::size_t want = 0;
            for (const auto& la : enumerate_partitions(n / 2))
                if (eigenvalue_poly(la)(g) != 0) want += span_dim(eigenspace_basis(la, n));
            EXPECT_EQ(matrix_rank(to_q(gram_matrix(n, g))), want) << n << " g=" << g;
        }
}

TEST(Chords, DerivationProjections) {
    EXPECT_EQ(derivation_projection(Partition{2, 2}, 8).size(), 1u);
    EXPECT_EQ(derivation_projection(Partition{1, 1, 1, 1}, 8).size(), 1u);
    std::size_t total = 0;
    for (const auto& la : enumerate_partitions(4)) {
        auto f = derivation_projection(la, 8);
        total += f.size();
        EXPECT_EQ(span_dim(derivation_projection_from_eigenspace(la, 8)), f.size());
    }
    EXPECT_EQ(total, 5u);
}

TEST(Chords, ProjectionDimensionsMatchCharacterFormula) {
    for (int n = 4; n <= 12; n += 2) {
        int k = n / 2 - 1;
        auto dims = derivation_projection_dims(n);
        for (const auto& la : enumerate_partitions(k + 1)) {
            std::size_t got = dims.count(la) ? dims.at(la) : 0;
            EXPECT_EQ(mpz_class(static_cast<unsigned long>(got)), dim_H_lambda(conjugate(la), k)) << la.str();
            EXPECT_EQ(projection_dimension_by_trace(la, n), dim_H_lambda(conjugate(la), k));
        }
    }
}

TEST(Chords, StableBases) {
    auto b6 = p_stable_basis(6);
    std::map<Partition, std::size_t, RevLex> sizes;
    for (const auto& [la, vs] : b6) sizes[conjugate(la)] = vs.size();
    EXPECT_EQ(sizes[(Partition{4})], 1u);
    EXPECT_EQ(sizes[(Partition{3, 1})], 2u);
    EXPECT_EQ(sizes[(Partition{2, 2})], 1u);
    EXPECT_EQ(sizes[(Partition{2, 1, 1})], 1u);
    EXPECT_EQ(sizes[(Partition{1, 1, 1, 1})], 0u);
    std::size_t n2 = 0, n10 = 0;
    for (const auto& [la, vs] : p_stable_basis(2)) n2 += vs.size();
    for (const auto& [la, vs] : p_stable_basis(10)) n10 += vs.size();
    EXPECT_EQ(n2, 1u);
    EXPECT_EQ(n10, 108u);
}

TEST(Chords, SizePolicy) {
    EXPECT_THROW(derivation_projection_dims(14), SizePolicy);
    EXPECT_THROW(derivation_projection(Partition{8}, 16), SizePolicy);
}

TEST(Chords, Serialization) {
    auto v = ChordVector::unit(diagram_at(8, 3), mpq_class(5, 7)) + ChordVector::unit(diagram_at(8, 100), -2);
    EXPECT_EQ(v.json(), R"({"n":8,"entries":[[3,5,7],[100,-2,1]]})");
    EXPECT_EQ(ChordVector::from_json(v.json()), v);
    EXPECT_EQ(v[3], mpq_class(5, 7));
    EXPECT_EQ(v.dense().size(), 105u);
}
