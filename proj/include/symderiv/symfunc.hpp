#pragma once

#include "symderiv/partitions.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>

namespace symderiv {

enum class Basis { GL, Sp, SL2 };

const char* basis_name(Basis b);

// Integer combination of irreducibles. Terms of different box counts may
// coexist (the ideal character mixes degrees); operations that need a single
// degree call degree(), which rejects mixed input.
class VirtualCharacter {
public:
    using Terms = std::map<Partition, mpz_class, RevLex>;

    explicit VirtualCharacter(Basis basis = Basis::GL) : basis_(basis) {}

    Basis basis() const { return basis_; }
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    mpz_class coeff(const Partition& la) const;

    void add(const Partition& la, const mpz_class& c);

    VirtualCharacter operator+(const VirtualCharacter& o) const;
    VirtualCharacter operator-(const VirtualCharacter& o) const;
    VirtualCharacter operator*(const mpz_class& s) const;
    bool operator==(const VirtualCharacter& o) const {
        return basis_ == o.basis_ && terms_ == o.terms_;
    }

    bool homogeneous() const;
    int degree() const;
    bool genuine() const;
    // Drops terms with more than max_height rows.
    VirtualCharacter truncate(int max_height) const;

    // "3[51]3[42][0]" style listing in table order.
    std::string str() const;

private:
    void check_basis(const VirtualCharacter& o) const;

    Basis basis_;
    Terms terms_;
};

VirtualCharacter power_sum_schur(const CycleType& rho);
// p_j^m, the Schur expansion of (x_1^j + x_2^j + ...)^m.
VirtualCharacter power_sum_power(int j, int m);
VirtualCharacter free_lie_char(int k);
VirtualCharacter tensor_with_H(const VirtualCharacter& c);
VirtualCharacter labute_ideal_char(int k);

enum class Module { h, j, L_g, h_star, h_g };
const char* module_name(Module m);
Module parse_module(const std::string& s);

VirtualCharacter module_char(Module which, int k);

// Stable restriction; with a genus, GL terms of height above 2g are dropped
// first and Sp terms of height above g afterwards.
VirtualCharacter sp_decompose(const VirtualCharacter& c, std::optional<int> genus = std::nullopt);
// Sum of coefficients on double floors, optionally only those of height at
// most max_height.
mpz_class sp_invariant_dim(const VirtualCharacter& c, std::optional<int> max_height = std::nullopt);
// Dimension of the GL(m)-module.
mpz_class gl_dimension(const VirtualCharacter& c, int m);

mpz_class labute_rank(int g, int k);
// Rank of the free Lie algebra on m generators in degree k.
mpz_class free_lie_rank(int m, int k);

// Finite Laurent polynomial in one variable.
class LaurentCharacter {
public:
    const std::map<int, mpz_class>& terms() const { return terms_; }
    void add(int e, const mpz_class& c);
    LaurentCharacter operator*(const LaurentCharacter& o) const;
    LaurentCharacter operator-(const LaurentCharacter& o) const;
    LaurentCharacter operator+(const LaurentCharacter& o) const;
    LaurentCharacter scaled(const mpq_class& s) const;
    bool symmetric() const;
    bool empty() const { return terms_.empty(); }

private:
    std::map<int, mpz_class> terms_;
};

LaurentCharacter genus1_lie_character(int l);
LaurentCharacter genus1_h_character(int k);
// SL(2) decomposition; [m] is stored as the one-row partition (m), [0] as
// the empty partition.
VirtualCharacter genus1_decompose(int k);

enum class SupportMode { C, S };
std::set<Partition, RevLex> bracket_support(const Partition& la, const Partition& mu, SupportMode mode);

}  // namespace symderiv
