#pragma once

#include "symderiv/partitions.hpp"
#include "symderiv/symfunc.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace symderiv {

// Sp-invariant parts tabulated by the dimension commands.
enum class InvariantKind { hSp, jSp, LSp, hgSp, hstarSp };
const char* kind_name(InvariantKind k);
InvariantKind parse_kind(const std::string& s);
std::vector<InvariantKind> all_kinds();

// published: h(k)^Sp counted at genus 5 (GL heights up to 10), j and L
// stable, h_* = h - j and h_g = h_* - L from those numbers; this is how the
// printed table of stable dimensions was assembled.
// stable: every column without height truncation.
enum class DimsConvention { published, stable };
const char* convention_name(DimsConvention c);
DimsConvention parse_convention(const std::string& s);
constexpr int kPublishedHGenus = 5;

// DegreeParity for odd k.
mpz_class invariant_dimension(InvariantKind kind, int k, DimsConvention convention);

struct OrthogonalBlock {
    Partition label;  // H label, h(label) equals the row genus
    mpz_class dim;    // dim H_label
    GenusPolynomial eigenvalue;
};
struct OrthogonalGenusRow {
    int genus = 0;
    mpz_class cumulative;
    std::vector<OrthogonalBlock> blocks;
};
// Rows g = 1 .. k+1 for h(2k)^Sp, trailing rows without new blocks dropped;
// the last row is the stable one.
std::vector<OrthogonalGenusRow> orthogonal_decomposition(int two_k);

}  // namespace symderiv
