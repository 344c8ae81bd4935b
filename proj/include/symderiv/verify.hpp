#pragma once

#include "symderiv/tensors.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace symderiv {

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

class Report {
public:
    void add(std::string name, bool passed, std::string detail = {});
    void append(const Report& other);
    bool passed() const;
    std::size_t failures() const;
    const std::vector<Check>& checks() const { return checks_; }

private:
    std::vector<Check> checks_;
};

// [y1^y2^y3, [y1^y2^y3, psi]] with
// psi = [[x1^x2^x5, x3^x4^y5], [x1^x2^x6, x3^b^y6]] at genus g >= 6, where
// u^v^w is the degree-1 derivation wedge3(u, v, w). b = x4 is the element as
// written; b = y4 is its weight-zero variant.
SparseTensor wedge_tower(int g, int b);
// Cyclic sums over 8 rotations of x1 (x) [w, [y2, [x2, [w, y1]]]] and
// x1 (x) [y2, [w, [x2, [w, y1]]]], w the symplectic element.
SparseTensor omega_spider_p1(int g);
SparseTensor omega_spider_p2(int g);
// [xi, iota(xi)] with xi the highest weight vector of [3,1,1] in h(3).
SparseTensor xi_eta_bracket(int g);

// Each suite reads its data from the fixtures directory.
Report check_stable_dims(const std::filesystem::path& dir);
Report check_orthogonal_tables(const std::filesystem::path& dir);
Report check_explicit_dims(int max_two_k = 10);
Report check_invariant_basis_suite(const std::filesystem::path& dir, int g);
Report check_genus1_suite(const std::filesystem::path& dir);
Report check_unstable_slice(const std::filesystem::path& dir);
Report check_structural(const std::filesystem::path& dir);

}  // namespace symderiv
