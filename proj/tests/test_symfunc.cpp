#include "oracles.hpp"

#include "symderiv/errors.hpp"
#include "symderiv/symfunc.hpp"

#include <gtest/gtest.h>

#include <cctype>
#include <set>

using namespace symderiv;

namespace {

mpz_class Z(long long v) { return mpz_class(static_cast<long>(v)); }

VirtualCharacter make(Basis b, const std::vector<std::pair<Partition, long>>& terms) {
    VirtualCharacter c(b);
    for (const auto& [la, m] : terms) c.add(la, m);
    return c;
}

// Reads listings such as "2[41^2][3^2][0]" into an Sp character.
VirtualCharacter listing(const std::string& s) {
    VirtualCharacter c(Basis::Sp);
    std::size_t i = 0;
    while (i < s.size()) {
        long mult = 0;
        while (std::isdigit(static_cast<unsigned char>(s[i]))) mult = 10 * mult + (s[i++] - '0');
        if (!mult) mult = 1;
        ++i;  // '['
        std::vector<int> parts;
        while (s[i] != ']') {
            int part = s[i++] - '0';
            int rep = 1;
            if (s[i] == '^') {
                rep = s[i + 1] - '0';
                i += 2;
            }
            if (part) parts.insert(parts.end(), static_cast<std::size_t>(rep), part);
        }
        ++i;
        c.add(Partition(parts), mult);
    }
    return c;
}

// Lyndon words of length k over m letters, by listing all words.
long long lyndon_count(int m, int k) {
    long long count = 0, total = 1;
    for (int i = 0; i < k; ++i) total *= m;
    std::vector<int> w(static_cast<std::size_t>(k));
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = k - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<int>(c % m);
            c /= m;
        }
        bool lyndon = true;
        for (int r = 1; r < k && lyndon; ++r) {
            std::vector<int> rot(w.begin() + r, w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + r);
            if (!(w < rot)) lyndon = false;
        }
        count += lyndon;
    }
    return count;
}

// Necklace formula for the free Lie dimension.
mpz_class necklace(int m, int k) {
    mpz_class s = 0;
    for (int d = 1; d <= k; ++d)
        if (k % d == 0) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k / d));
            s += oracle::mobius(d) * p;
        }
    return s / k;
}

}  // namespace

TEST(Symfunc, PowerSums) {
    EXPECT_EQ(power_sum_schur(Partition{1}), make(Basis::GL, {{Partition{1}, 1}}));
    EXPECT_EQ(power_sum_schur(Partition{2}), make(Basis::GL, {{Partition{2}, 1}, {Partition{1, 1}, -1}}));
    EXPECT_EQ(power_sum_schur(Partition{2, 1}), make(Basis::GL, {{Partition{3}, 1}, {Partition{1, 1, 1}, -1}}));
    for (int n = 1; n <= 6; ++n)
        for (const auto& rho : oracle::partitions(n)) {
            auto c = power_sum_schur(Partition(rho));
            for (const auto& la : oracle::partitions(n))
                EXPECT_EQ(c.coeff(Partition(la)), Z(oracle::frobenius_character(la, rho)));
        }
}

TEST(Symfunc, FreeLieCharacters) {
    EXPECT_EQ(free_lie_char(2), make(Basis::GL, {{Partition{1, 1}, 1}}));
    EXPECT_EQ(free_lie_char(3), make(Basis::GL, {{Partition{2, 1}, 1}}));
    EXPECT_EQ(gl_dimension(free_lie_char(6), 2), 9);
}

TEST(Symfunc, FreeLieDimensions) {
    for (int m : {2, 4, 6})
        for (int k = 1; k <= 10; ++k) {
            auto c = free_lie_char(k);
            EXPECT_TRUE(c.genuine());
            EXPECT_EQ(gl_dimension(c, m), necklace(m, k)) << m << " " << k;
        }
    for (int k = 1; k <= 12; ++k) EXPECT_EQ(gl_dimension(free_lie_char(k), 2), Z(lyndon_count(2, k)));
    for (int k = 1; k <= 6; ++k) EXPECT_EQ(gl_dimension(free_lie_char(k), 4), Z(lyndon_count(4, k)));
}

TEST(Symfunc, Pieri) {
    EXPECT_EQ(tensor_with_H(make(Basis::GL, {{Partition{1}, 1}})),
              make(Basis::GL, {{Partition{2}, 1}, {Partition{1, 1}, 1}}));
    EXPECT_EQ(tensor_with_H(make(Basis::GL, {{Partition{2, 1}, 1}})),
              make(Basis::GL, {{Partition{3, 1}, 1}, {Partition{2, 2}, 1}, {Partition{2, 1, 1}, 1}}));
    EXPECT_TRUE(tensor_with_H(VirtualCharacter(Basis::GL)).empty());
}

TEST(Symfunc, IdealCharacter) {
    EXPECT_EQ(labute_ideal_char(2), make(Basis::GL, {{Partition(), 1}}));
    EXPECT_EQ(labute_ideal_char(3), make(Basis::GL, {{Partition{1}, 1}}));
    EXPECT_EQ(gl_dimension(labute_ideal_char(4), 4), Z(lyndon_count(4, 4)) - labute_rank(2, 4));
    // The ideal is an Sp-module only; its Sp restriction is genuine.
    for (int k = 2; k <= 10; ++k) {
        auto ideal = sp_decompose(labute_ideal_char(k));
        for (const auto& [la, c] : ideal.terms()) EXPECT_GT(c, 0) << k << " " << la.str();
    }
}

TEST(Symfunc, SmallDegreeListings) {
    // Sp-listings of h, j and L_g in degrees 1..6.
    const std::vector<std::vector<std::string>> rows = {
        {"[1^3][1]", "", "[1]"},
        {"[2^2][1^2][0]", "[0]", "[1^2]"},
        {"[31^2][21][3]", "", "[21]"},
        {"[42][31^3][2^3]2[31]2[21^2]3[2]", "[2]", "[31][21^2][2]"},
        {"[51^2][421][3^21][321^2][2^21^3][5]2[41]3[32]2[31^2]3[2^21]2[21^3][1^5][3]5[21]4[1^3]3[1]", "[21][1^3][1]",
         "[41][32][31^2][2^21][21^3][3]2[21][1^3][1]"},
        {"[62][521][51^3][431][4^2]2[42^2][421^2][41^4]2[3^21^2][32^21][321^3][2^4]3[51]3[42]6[41^2]4[3^2]8[321]"
         "4[31^3][2^3][2^21^4]6[2^21^2]2[21^4][1^6]6[4]9[31]12[2^2]9[21^2]6[1^4]4[2]11[1^2]5[0]",
         "[4][31]2[2^2][21^2][1^4][2]3[1^2]2[0]",
         "[51][42]2[41^2][3^2]3[321][31^3]2[2^21^2][21^4]4[31]4[2^2]2[4]4[21^2]2[1^4]2[2]4[1^2][0]"},
    };
    for (int k = 1; k <= 6; ++k) {
        const auto& row = rows[static_cast<std::size_t>(k - 1)];
        EXPECT_EQ(sp_decompose(module_char(Module::h, k)), listing(row[0])) << "h " << k;
        if (k >= 2) EXPECT_EQ(sp_decompose(module_char(Module::j, k)), listing(row[1])) << "j " << k;
        EXPECT_EQ(sp_decompose(module_char(Module::L_g, k)), listing(row[2])) << "L " << k;
    }
}

TEST(Symfunc, SixDegreeGLListing) {
    auto h6 = module_char(Module::h, 6);
    VirtualCharacter want(Basis::GL), sp = listing("[62][521][51^3][4^2][431]2[42^2][421^2][41^4]2[3^21^2][32^21][321^3][2^4][2^21^4]");
    for (const auto& [la, m] : sp.terms()) want.add(la, m);
    EXPECT_EQ(h6, want);
}

TEST(Symfunc, Branching) {
    EXPECT_EQ(sp_decompose(make(Basis::GL, {{Partition{3, 1, 1}, 1}})),
              make(Basis::Sp, {{Partition{3, 1, 1}, 1}, {Partition{2, 1}, 1}, {Partition{3}, 1}}));
    EXPECT_EQ(sp_decompose(make(Basis::GL, {{Partition{1, 1}, 1}})), make(Basis::Sp, {{Partition{1, 1}, 1}, {Partition(), 1}}));
}

TEST(Symfunc, InvariantDimensions) {
    EXPECT_EQ(sp_invariant_dim(module_char(Module::h, 10)), 108);
    EXPECT_EQ(sp_invariant_dim(module_char(Module::j, 12)), 210);
    EXPECT_EQ(sp_invariant_dim(module_char(Module::L_g, 8)), 2);
}

TEST(Symfunc, LabuteRank) {
    // At genus one, degree two is spanned by [x1,y1], which is the relator.
    EXPECT_EQ(labute_rank(1, 2), 0);
    EXPECT_EQ(labute_rank(1, 2), free_lie_rank(2, 2) - 1);
    for (int g = 1; g <= 5; ++g) EXPECT_EQ(labute_rank(g, 1), 2 * g);
    EXPECT_EQ(labute_rank(2, 6), gl_dimension(module_char(Module::L_g, 6), 4));
    for (int g = 2; g <= 4; ++g)
        for (int k = 1; k <= 10; ++k) EXPECT_EQ(labute_rank(g, k), gl_dimension(module_char(Module::L_g, k), 2 * g));
}

TEST(Symfunc, DirectSumIdentity) {
    for (int k = 2; k <= 12; ++k) {
        auto h = module_char(Module::h, k);
        EXPECT_EQ(h, module_char(Module::j, k) + module_char(Module::L_g, k) + module_char(Module::h_g, k)) << k;
        EXPECT_EQ(module_char(Module::h_star, k), h - module_char(Module::j, k));
    }
}

TEST(Symfunc, CharactersAreGenuine) {
    // h is a GL-module; j, L_g, h_* and h_g are Sp-modules only, so their
    // genuineness is checked after branching.
    for (int k = 1; k <= 14; ++k) {
        EXPECT_TRUE(module_char(Module::h, k).genuine()) << k;
        for (auto m : {Module::j, Module::L_g, Module::h_star, Module::h_g}) {
            if (m == Module::j && k < 2) continue;
            EXPECT_TRUE(sp_decompose(module_char(m, k)).genuine()) << module_name(m) << " " << k;
        }
    }
}

TEST(Symfunc, GenusOneDecompositions) {
    EXPECT_EQ(genus1_decompose(6), make(Basis::SL2, {{Partition{4}, 1}, {Partition(), 1}}));
    EXPECT_EQ(genus1_decompose(10), make(Basis::SL2, {{Partition{8}, 1}, {Partition{6}, 1}, {Partition{4}, 3}, {Partition{2}, 1}, {Partition(), 3}}));
    EXPECT_TRUE(genus1_decompose(3).empty());
}

TEST(Symfunc, GenusOneLeadingTerms) {
    for (int k = 1; k <= 18; ++k) {
        auto c = genus1_decompose(k);
        EXPECT_TRUE(c.genuine());
        if (k == 1 || k == 3 || k == 5) {
            EXPECT_TRUE(c.empty()) << k;
            continue;
        }
        ASSERT_FALSE(c.empty()) << k;
        // Terms are ordered with the largest weight first.
        const auto& [top, m] = *c.terms().begin();
        if (k % 2 == 0) {
            EXPECT_EQ(top, Partition{k - 2});
            EXPECT_EQ(m, 1);
        } else {
            EXPECT_EQ(top, Partition{k - 4});
            EXPECT_EQ(m, k / 6);
        }
    }
}

TEST(Symfunc, BracketSupport) {
    for (const auto& nu : bracket_support(Partition{3, 1, 1}, Partition{3, 1, 1}, SupportMode::S)) EXPECT_LE(nu.height(), 3);
    EXPECT_THROW(bracket_support(Partition{3, 1, 1}, Partition{1, 1, 1, 1}, SupportMode::S), DegreeParity);

    // Brute-force condition: some kappa has c(la,mu;kappa) > 0 and c([1,1],nu;kappa) > 0.
    oracle::Parts la = {1, 1, 1};
    std::set<Partition, RevLex> want;
    for (const auto& nu : oracle::partitions(4)) {
        bool shared = false;
        for (const auto& ka : oracle::partitions(6))
            if (oracle::lr_by_characters(la, la, ka) > 0 && oracle::lr_by_characters({1, 1}, nu, ka) > 0) shared = true;
        if (shared) want.insert(Partition(nu));
    }
    EXPECT_EQ(bracket_support(Partition{1, 1, 1}, Partition{1, 1, 1}, SupportMode::C), want);
}
