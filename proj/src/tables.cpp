#include "symderiv/tables.hpp"

#include "symderiv/errors.hpp"

namespace symderiv {

const char* kind_name(InvariantKind k) {
    switch (k) {
        case InvariantKind::hSp: return "hSp";
        case InvariantKind::jSp: return "jSp";
        case InvariantKind::LSp: return "LSp";
        case InvariantKind::hgSp: return "hgSp";
        case InvariantKind::hstarSp: return "hstarSp";
    }
    return "?";
}

InvariantKind parse_kind(const std::string& s) {
    for (auto k : all_kinds())
        if (s == kind_name(k)) return k;
    throw Error("unknown kind '" + s + "' (expected hSp, jSp, LSp, hgSp or hstarSp)");
}

std::vector<InvariantKind> all_kinds() {
    return {InvariantKind::hSp, InvariantKind::jSp, InvariantKind::LSp, InvariantKind::hgSp, InvariantKind::hstarSp};
}

const char* convention_name(DimsConvention c) { return c == DimsConvention::published ? "published" : "stable"; }

DimsConvention parse_convention(const std::string& s) {
    if (s == "published") return DimsConvention::published;
    if (s == "stable") return DimsConvention::stable;
    throw Error("unknown convention '" + s + "' (expected published or stable)");
}

mpz_class invariant_dimension(InvariantKind kind, int k, DimsConvention convention) {
    if (k < 1) throw Error("degree must be positive");
    if (k % 2 != 0) throw DegreeParity("Sp-invariant parts vanish in odd degree " + std::to_string(k));
    auto stable = [k](Module m) { return sp_invariant_dim(module_char(m, k)); };
    if (convention == DimsConvention::stable) {
        switch (kind) {
            case InvariantKind::hSp: return stable(Module::h);
            case InvariantKind::jSp: return stable(Module::j);
            case InvariantKind::LSp: return stable(Module::L_g);
            case InvariantKind::hgSp: return stable(Module::h_g);
            case InvariantKind::hstarSp: return stable(Module::h_star);
        }
    }
    mpz_class h = sp_invariant_dim(module_char(Module::h, k), 2 * kPublishedHGenus);
    mpz_class j = stable(Module::j);
    switch (kind) {
        case InvariantKind::hSp: return h;
        case InvariantKind::jSp: return j;
        case InvariantKind::LSp: return stable(Module::L_g);
        case InvariantKind::hstarSp: return h - j;
        case InvariantKind::hgSp: return h - j - stable(Module::L_g);
    }
    return 0;
}

std::vector<OrthogonalGenusRow> orthogonal_decomposition(int two_k) {
    if (two_k < 2 || two_k % 2 != 0) throw DegreeParity("orthogonal decompositions need a positive even degree");
    const int k = two_k / 2;
    std::vector<OrthogonalGenusRow> rows(k + 1);
    for (int g = 1; g <= k + 1; ++g) rows[g - 1].genus = g;
    for (const auto& la : enumerate_partitions(k + 1)) {
        mpz_class d = dim_H_lambda(la, k);
        if (d == 0) continue;
        rows[la.height() - 1].blocks.push_back({la, d, eigenvalue_poly(conjugate(la))});
    }
    mpz_class running = 0;
    for (auto& r : rows) {
        for (const auto& b : r.blocks) running += b.dim;
        r.cumulative = running;
    }
    while (!rows.empty() && rows.back().blocks.empty()) rows.pop_back();
    return rows;
}

}  // namespace symderiv
