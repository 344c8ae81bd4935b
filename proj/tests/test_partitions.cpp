#include "oracles.hpp"

#include "symderiv/errors.hpp"
#include "symderiv/partitions.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace symderiv;

namespace {

Partition P(const oracle::Parts& p) { return Partition(p); }

mpz_class Z(long long v) { return mpz_class(static_cast<long>(v)); }

GenusPolynomial product(const std::vector<std::pair<int, int>>& factors) {
    GenusPolynomial r = GenusPolynomial::constant(1);
    for (auto [a, b] : factors) r = r * GenusPolynomial::linear(a, b);
    return r;
}

}  // namespace

TEST(Partitions, EnumerationCounts) {
    EXPECT_EQ(enumerate_partitions(4).size(), 5u);
    auto zero = enumerate_partitions(0);
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_TRUE(zero[0].empty());
    EXPECT_EQ(zero[0].str(), "[0]");
    EXPECT_EQ(enumerate_partitions(11, 2).size(), 6u);
}

TEST(Partitions, EnumerationMatchesBruteForceInOrder) {
    for (int n = 0; n <= 12; ++n) {
        auto got = enumerate_partitions(n);
        auto want = oracle::partitions(n);
        ASSERT_EQ(got.size(), want.size()) << n;
        for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].parts(), want[i]);
        for (int h = 1; h <= 4; ++h) {
            std::size_t count = 0;
            for (const auto& p : want) count += p.size() <= static_cast<std::size_t>(h);
            EXPECT_EQ(enumerate_partitions(n, h).size(), count);
        }
    }
}

TEST(Partitions, Conjugate) {
    EXPECT_EQ(conjugate(Partition{3, 1}), (Partition{2, 1, 1}));
    EXPECT_EQ(conjugate(Partition{2, 2}), (Partition{2, 2}));
    EXPECT_EQ(conjugate(Partition{4}), (Partition{1, 1, 1, 1}));
    for (int n = 0; n <= 12; ++n)
        for (const auto& la : enumerate_partitions(n)) {
            EXPECT_EQ(conjugate(conjugate(la)), la);
            EXPECT_EQ(conjugate(la).size(), n);
        }
}

TEST(Partitions, DoubleFloors) {
    EXPECT_EQ(double_floor(Partition{3, 1}), (Partition{3, 3, 1, 1}));
    EXPECT_TRUE(is_double_floor(Partition{2, 2, 1, 1}));
    EXPECT_EQ(inverse_double_floor(Partition{2, 2, 1, 1}), (Partition{2, 1}));
    EXPECT_FALSE(is_double_floor(Partition{2, 1}));
    EXPECT_THROW(inverse_double_floor(Partition{2, 1}), NotDoubleFloor);
    EXPECT_TRUE(is_double_floor(Partition()));
    for (int n = 0; n <= 8; ++n)
        for (const auto& la : enumerate_partitions(n)) EXPECT_EQ(inverse_double_floor(double_floor(la)), la);
}

TEST(Partitions, Mobius) {
    EXPECT_EQ(mobius(1), 1);
    EXPECT_EQ(mobius(6), 1);
    EXPECT_EQ(mobius(12), 0);
    for (int n = 1; n <= 200; ++n) EXPECT_EQ(mobius(n), oracle::mobius(n)) << n;
}

TEST(Partitions, ClassSizes) {
    EXPECT_EQ(class_size(Partition{1, 1, 1}), 1);
    EXPECT_EQ(class_size(Partition{3}), 2);
    EXPECT_EQ(class_size(Partition{2, 2}), 3);
    for (int n = 1; n <= 7; ++n)
        for (const auto& [rho, count] : oracle::class_sizes(n)) EXPECT_EQ(class_size(P(rho)), Z(count));
}

TEST(Partitions, CharacterExamples) {
    for (const auto& rho : enumerate_partitions(5)) {
        EXPECT_EQ(sn_character(Partition{5}, rho), 1);
        EXPECT_EQ(sn_character(Partition{1, 1, 1, 1, 1}, rho), cycle_sign(rho));
    }
    EXPECT_EQ(sn_character(Partition{2, 2}, Partition{1, 1, 1, 1}), 2);
    EXPECT_THROW(sn_character(Partition{2, 1}, Partition{2, 2}), DimensionMismatch);
}

TEST(Partitions, CharactersMatchFrobeniusFormula) {
    for (int n = 1; n <= 6; ++n)
        for (const auto& la : oracle::partitions(n))
            for (const auto& rho : oracle::partitions(n))
                EXPECT_EQ(sn_character(P(la), P(rho)), Z(oracle::frobenius_character(la, rho)));
}

TEST(Partitions, CharacterOrthogonality) {
    for (int n = 1; n <= 10; ++n) {
        mpz_class sum = 0;
        Partition id(std::vector<int>(static_cast<std::size_t>(n), 1));
        for (const auto& la : enumerate_partitions(n)) sum += sn_character(la, id) * sn_character(la, id);
        EXPECT_EQ(sum, factorial(n)) << n;
    }
    for (int n = 1; n <= 8; ++n) {
        auto ps = enumerate_partitions(n);
        for (const auto& la : ps)
            for (const auto& mu : ps) {
                mpz_class s = 0;
                for (const auto& rho : ps) s += class_size(rho) * sn_character(la, rho) * sn_character(mu, rho);
                EXPECT_EQ(s, la == mu ? factorial(n) : mpz_class(0));
            }
    }
}

TEST(Partitions, KontsevichCharacter) {
    EXPECT_EQ(kontsevich_character(2, Partition{1, 1, 1, 1, 1, 1}), 24);
    EXPECT_EQ(kontsevich_character(2, Partition{5, 1}), -1);
    EXPECT_EQ(kontsevich_character(2, Partition{2, 2, 1, 1}), 0);
    // (a^b) class: -(b-1)! a^(b-1) mu(a); (3,3) gives -1*3*(-1) = 3.
    EXPECT_EQ(kontsevich_character(2, Partition{3, 3}), 3);
    // (1^1 a^b) with a=5, b=1 and (a^b) with a=2, b=3.
    EXPECT_EQ(kontsevich_character(2, Partition{2, 2, 2}), 8);
    EXPECT_THROW(kontsevich_character(2, Partition{2, 2}), DimensionMismatch);
}

TEST(Partitions, DimHLambda) {
    EXPECT_EQ(dim_H_lambda(Partition{4}, 3), 1);
    EXPECT_EQ(dim_H_lambda(Partition{3, 1}, 3), 2);
    EXPECT_EQ(dim_H_lambda(Partition{1, 1, 1, 1}, 3), 0);
    for (int k = 1; k <= 10; ++k)
        for (const auto& la : enumerate_partitions(k + 1)) EXPECT_GE(dim_H_lambda(la, k), 0);
}

TEST(Partitions, LittlewoodRichardsonExamples) {
    EXPECT_EQ(lr_coefficient(Partition{1}, Partition{1}, Partition{2}), 1);
    EXPECT_EQ(lr_coefficient(Partition{1}, Partition{1}, Partition{1, 1}), 1);
    EXPECT_EQ(lr_coefficient(Partition{2, 1}, Partition{2, 1}, Partition{3, 2, 1}), 2);
    EXPECT_EQ(lr_coefficient(Partition{2}, Partition{1}, Partition{2, 2}), 0);
}

TEST(Partitions, LittlewoodRichardsonMatchesCharacters) {
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; a + b <= 6; ++b)
            for (const auto& la : oracle::partitions(a))
                for (const auto& mu : oracle::partitions(b))
                    for (const auto& nu : oracle::partitions(a + b))
                        EXPECT_EQ(lr_coefficient(P(la), P(mu), P(nu)), oracle::lr_by_characters(la, mu, nu));
}

TEST(Partitions, BranchingExamples) {
    Multiplicities m31 = {{Partition{3, 1}, 1}, {Partition{2}, 1}};
    EXPECT_EQ(gl_to_sp_branching(Partition{3, 1}), m31);
    Multiplicities m11 = {{Partition{1, 1}, 1}, {Partition(), 1}};
    EXPECT_EQ(gl_to_sp_branching(Partition{1, 1}), m11);
    Multiplicities m1 = {{Partition{1}, 1}};
    EXPECT_EQ(gl_to_sp_branching(Partition{1}), m1);
}

TEST(Partitions, TwoRowBranchingChain) {
    for (int k = 1; k <= 12; ++k)
        for (int l = 0; l <= k && k + l <= 12; ++l) {
            Multiplicities want;
            for (int i = 0; i <= l; ++i) {
                std::vector<int> p;
                if (k - i > 0) p.push_back(k - i);
                if (l - i > 0) p.push_back(l - i);
                want[Partition(p)] += 1;
            }
            std::vector<int> la = {k};
            if (l) la.push_back(l);
            EXPECT_EQ(gl_to_sp_branching(Partition(la)), want) << k << "," << l;
        }
}

TEST(Partitions, BranchingDimensionAudit) {
    for (int g = 3; g <= 5; ++g)
        for (int n = 0; n <= 8; ++n)
            for (const auto& la : enumerate_partitions(n, g)) {
                mpz_class sum = 0;
                for (const auto& [mu, m] : gl_to_sp_branching(la)) sum += m * sp_irrep_dim(mu, g);
                EXPECT_EQ(sum, gl_irrep_dim(la, 2 * g)) << la.str() << " g=" << g;
            }
}

TEST(Partitions, IrrepDimensions) {
    for (int n = 1; n <= 4; ++n)
        for (int size = 0; size <= 5; ++size)
            for (const auto& la : oracle::partitions(size)) EXPECT_EQ(gl_irrep_dim(P(la), n), Z(oracle::count_ssyt(la, n)));
    EXPECT_EQ(sp_irrep_dim(Partition{1}, 2), 4);
    EXPECT_EQ(sp_irrep_dim(Partition{1, 1}, 2), 5);
    EXPECT_EQ(sp_irrep_dim(Partition{2}, 2), 10);
    EXPECT_EQ(sp_irrep_dim(Partition{1, 1, 1}, 3), 14);
    EXPECT_EQ(sp_irrep_dim(Partition{2, 1}, 3), 64);
    EXPECT_EQ(sp_irrep_dim(Partition{1, 1, 1}, 2), 0);
}

TEST(Partitions, TrivialMultiplicity) {
    EXPECT_EQ(sp_trivial_multiplicity(Partition{2, 2, 1, 1}), 1);
    EXPECT_EQ(sp_trivial_multiplicity(Partition{3, 1}), 0);
    EXPECT_EQ(sp_trivial_multiplicity(Partition()), 1);
    for (int n = 0; n <= 10; ++n)
        for (const auto& la : enumerate_partitions(n)) {
            auto b = gl_to_sp_branching(la);
            std::int64_t m = b.count(Partition()) ? b.at(Partition()) : 0;
            EXPECT_EQ(sp_trivial_multiplicity(la), m) << la.str();
        }
}

TEST(Partitions, EigenvaluePolynomials) {
    EXPECT_EQ(eigenvalue_poly(Partition{4}), product({{2, 0}, {2, -2}, {2, -4}, {2, -6}}));
    EXPECT_EQ(eigenvalue_poly(Partition{1, 1, 1, 1}), product({{2, 0}, {2, 1}, {2, 2}, {2, 3}}));
    EXPECT_EQ(eigenvalue_poly(Partition{1}), product({{2, 0}}));
    EXPECT_EQ(eigenvalue_poly(Partition{1, 1, 1, 1})(3), 3024);
}

TEST(Partitions, EigenvaluePolynomialsAreDistinct) {
    for (int n = 1; n <= 10; ++n) {
        std::set<std::vector<mpz_class>> seen;
        for (const auto& la : enumerate_partitions(n)) EXPECT_TRUE(seen.insert(eigenvalue_poly(la).coeffs()).second) << la.str();
    }
}
