#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace symderiv {

// Young diagram stored as weakly decreasing positive parts; the empty
// partition denotes [0].
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);
    Partition(std::initializer_list<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return size_; }
    int height() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    // Part i (0-based), zero past the last row.
    int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

    // "[3,1,1]"; the empty partition prints as "[0]".
    std::string str() const;
    // Exponent notation as in "[31^2]" when every part is below ten,
    // comma separated otherwise.
    std::string compact() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
        return a.parts_ <=> b.parts_;
    }

private:
    std::vector<int> parts_;
    int size_ = 0;
};

// Deterministic table order: larger box count first, then reverse
// lexicographic ([4] < [3,1] < [2,2] < ...).
struct RevLex {
    bool operator()(const Partition& a, const Partition& b) const {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.parts() > b.parts();
    }
};

using CycleType = Partition;

std::vector<Partition> enumerate_partitions(int n, std::optional<int> max_height = std::nullopt);

Partition conjugate(const Partition& la);
Partition double_floor(const Partition& la);
bool is_double_floor(const Partition& la);
Partition inverse_double_floor(const Partition& la);
// 2λ: every row doubled in length.
Partition doubled_rows(const Partition& la);
bool contains(const Partition& outer, const Partition& inner);

int mobius(int n);
std::vector<int> divisors(int n);
// a/b in lowest terms.
mpq_class fraction(long a, long b);
mpz_class factorial(int n);
mpz_class binomial(int n, int k);

mpz_class class_size(const CycleType& rho);
int cycle_sign(const CycleType& rho);

mpz_class sn_character(const Partition& la, const CycleType& rho);
mpz_class kontsevich_character(int k, const CycleType& rho);
mpz_class dim_H_lambda(const Partition& la, int k);

// Loads (and later appends to) "characters.txt" under dir; a missing
// directory or file is not an error.
void set_character_cache_dir(const std::filesystem::path& dir);
void flush_character_cache();
std::size_t character_cache_entries();

std::int64_t lr_coefficient(const Partition& la, const Partition& mu, const Partition& nu);

using Multiplicities = std::map<Partition, std::int64_t, RevLex>;

Multiplicities gl_to_sp_branching(const Partition& la);
int sp_trivial_multiplicity(const Partition& la);

mpz_class gl_irrep_dim(const Partition& la, int n);
mpz_class sp_irrep_dim(const Partition& la, int g);

// Polynomial in the genus with integer coefficients, lowest degree first.
class GenusPolynomial {
public:
    GenusPolynomial() = default;
    explicit GenusPolynomial(std::vector<mpz_class> coeffs);
    static GenusPolynomial constant(const mpz_class& c);
    // a*g + b
    static GenusPolynomial linear(const mpz_class& a, const mpz_class& b);

    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    mpz_class operator()(const mpz_class& g) const;
    GenusPolynomial operator*(const GenusPolynomial& o) const;
    GenusPolynomial operator+(const GenusPolynomial& o) const;
    bool operator==(const GenusPolynomial& o) const { return coeffs_ == o.coeffs_; }
    std::string str() const;

private:
    void trim();
    std::vector<mpz_class> coeffs_;
};

GenusPolynomial eigenvalue_poly(const Partition& la);
// The linear factors 2g - 2s + t of eigenvalue_poly, one per box, in row order.
std::vector<std::pair<int, int>> eigenvalue_factors(const Partition& la);
std::string eigenvalue_factored(const Partition& la);

}  // namespace symderiv
