#include "symderiv/symfunc.hpp"

#include "symderiv/errors.hpp"

#include <mutex>
#include <stdexcept>

namespace symderiv {

namespace {
// Stable branching of every term is only affordable for small degrees; above
// this the genuineness audit is left to callers.
constexpr int kBranchingCheckDegree = 10;
}  // namespace

const char* basis_name(Basis b) {
    switch (b) {
        case Basis::GL: return "GL";
        case Basis::Sp: return "Sp";
        case Basis::SL2: return "SL2";
    }
    return "?";
}

mpz_class VirtualCharacter::coeff(const Partition& la) const {
    auto it = terms_.find(la);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void VirtualCharacter::add(const Partition& la, const mpz_class& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(la, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

void VirtualCharacter::check_basis(const VirtualCharacter& o) const {
    if (basis_ != o.basis_) throw DimensionMismatch("characters in different bases");
}

VirtualCharacter VirtualCharacter::operator+(const VirtualCharacter& o) const {
    check_basis(o);
    VirtualCharacter r = *this;
    for (const auto& [la, c] : o.terms_) r.add(la, c);
    return r;
}

VirtualCharacter VirtualCharacter::operator-(const VirtualCharacter& o) const {
    check_basis(o);
    VirtualCharacter r = *this;
    for (const auto& [la, c] : o.terms_) r.add(la, -c);
    return r;
}

VirtualCharacter VirtualCharacter::operator*(const mpz_class& s) const {
    VirtualCharacter r(basis_);
    for (const auto& [la, c] : terms_) r.add(la, c * s);
    return r;
}

bool VirtualCharacter::homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.begin()->first.size();
    for (const auto& [la, c] : terms_)
        if (la.size() != d) return false;
    return true;
}

int VirtualCharacter::degree() const {
    if (!homogeneous()) throw DimensionMismatch("mixed-degree character");
    return terms_.empty() ? 0 : terms_.begin()->first.size();
}

bool VirtualCharacter::genuine() const {
    for (const auto& [la, c] : terms_)
        if (c < 0) return false;
    return true;
}

VirtualCharacter VirtualCharacter::truncate(int max_height) const {
    VirtualCharacter r(basis_);
    for (const auto& [la, c] : terms_)
        if (la.height() <= max_height) r.add(la, c);
    return r;
}

std::string VirtualCharacter::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [la, c] : terms_) {
        if (c < 0) s += "-";
        else if (!s.empty()) s += "+";
        mpz_class a = abs(c);
        if (a != 1) s += a.get_str();
        if (basis_ == Basis::SL2) s += "[" + std::to_string(la.size()) + "]";
        else s += la.compact();
    }
    return s;
}

VirtualCharacter power_sum_schur(const CycleType& rho) {
    VirtualCharacter r(Basis::GL);
    for (const auto& la : enumerate_partitions(rho.size())) r.add(la, sn_character(la, rho));
    return r;
}

VirtualCharacter power_sum_power(int j, int m) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, VirtualCharacter> memo;
    {
        std::lock_guard lock(mu);
        auto it = memo.find({j, m});
        if (it != memo.end()) return it->second;
    }
    VirtualCharacter r(Basis::GL);
    if (m == 0) r.add(Partition(), 1);
    else r = power_sum_schur(Partition(std::vector<int>(m, j)));
    std::lock_guard lock(mu);
    memo.emplace(std::make_pair(j, m), r);
    return r;
}

namespace {

// Accumulates rational multiples of characters, then demands integrality.
struct RationalCharacter {
    std::map<Partition, mpq_class, RevLex> terms;

    void add(const VirtualCharacter& c, const mpq_class& s) {
        for (const auto& [la, v] : c.terms()) terms[la] += s * v;
    }

    VirtualCharacter finish(const std::string& what) const {
        VirtualCharacter r(Basis::GL);
        for (const auto& [la, v] : terms) {
            if (v.get_den() != 1) throw InternalInconsistency(what + ": fractional coefficient at " + la.str());
            r.add(la, v.get_num());
        }
        return r;
    }
};

}  // namespace

VirtualCharacter free_lie_char(int k) {
    if (k < 1) throw std::invalid_argument("free Lie degree must be positive");
    RationalCharacter acc;
    for (int d : divisors(k)) {
        int mu = mobius(d);
        if (mu) acc.add(power_sum_power(d, k / d), fraction(mu, k));
    }
    VirtualCharacter r = acc.finish("free Lie character");
    if (!r.genuine()) throw InternalInconsistency("free Lie character has a negative coefficient");
    return r;
}

VirtualCharacter tensor_with_H(const VirtualCharacter& c) {
    VirtualCharacter r(c.basis());
    for (const auto& [la, v] : c.terms()) {
        // Pieri: add one box in any row where it keeps the shape valid.
        for (int i = 0; i <= la.height(); ++i) {
            if (i > 0 && la[i] + 1 > la[i - 1]) continue;
            std::vector<int> p = la.parts();
            if (i == la.height()) p.push_back(1);
            else ++p[i];
            r.add(Partition(p), v);
        }
    }
    return r;
}

VirtualCharacter labute_ideal_char(int k) {
    if (k < 2) throw std::invalid_argument("ideal degree must be at least 2");
    RationalCharacter acc;
    for (int d : divisors(k)) {
        int mu = mobius(k / d);
        if (!mu) continue;
        for (int i = 1; i <= d / 2; ++i) {
            mpq_class c = fraction(d, d - i) * binomial(d - i, i) * (i % 2 ? -1 : 1);
            acc.add(power_sum_power(k / d, d - 2 * i), -fraction(mu, k) * c);
        }
    }
    VirtualCharacter r = acc.finish("ideal character");
    if (k <= kBranchingCheckDegree && !sp_decompose(r).genuine())
        throw InternalInconsistency("ideal character is not a genuine Sp-module in degree " + std::to_string(k));
    return r;
}

const char* module_name(Module m) {
    switch (m) {
        case Module::h: return "h";
        case Module::j: return "j";
        case Module::L_g: return "L_g";
        case Module::h_star: return "h_star";
        case Module::h_g: return "h_g";
    }
    return "?";
}

Module parse_module(const std::string& s) {
    if (s == "h" || s == "hSp") return Module::h;
    if (s == "j" || s == "jSp") return Module::j;
    if (s == "L_g" || s == "L" || s == "LSp") return Module::L_g;
    if (s == "h_star" || s == "hstar" || s == "hstarSp") return Module::h_star;
    if (s == "h_g" || s == "hg" || s == "hgSp") return Module::h_g;
    throw std::invalid_argument("unknown module '" + s + "'");
}

namespace {

VirtualCharacter module_char_raw(Module which, int k) {
    switch (which) {
        case Module::h: return tensor_with_H(free_lie_char(k + 1)) - free_lie_char(k + 2);
        case Module::j: return tensor_with_H(labute_ideal_char(k + 1)) - labute_ideal_char(k + 2);
        case Module::L_g: {
            VirtualCharacter c = free_lie_char(k);
            if (k >= 2) c = c - labute_ideal_char(k);
            return c;
        }
        case Module::h_star: return module_char_raw(Module::h, k) - module_char_raw(Module::j, k);
        case Module::h_g: return module_char_raw(Module::h_star, k) - module_char_raw(Module::L_g, k);
    }
    return VirtualCharacter();
}

}  // namespace

VirtualCharacter module_char(Module which, int k) {
    if (k < 1 || (which == Module::j && k < 2))
        throw std::invalid_argument(std::string("degree out of range for ") + module_name(which));
    static std::mutex mu;
    static std::map<std::pair<Module, int>, VirtualCharacter> memo;
    {
        std::lock_guard lock(mu);
        auto it = memo.find({which, k});
        if (it != memo.end()) return it->second;
    }
    VirtualCharacter c = module_char_raw(which, k);
    bool ok = which == Module::h ? c.genuine() : k > kBranchingCheckDegree || sp_decompose(c).genuine();
    if (!ok)
        throw InternalInconsistency(std::string(module_name(which)) + "(" + std::to_string(k) +
                                    ") has a negative Sp multiplicity");
    std::lock_guard lock(mu);
    memo.emplace(std::make_pair(which, k), c);
    return c;
}

VirtualCharacter sp_decompose(const VirtualCharacter& c, std::optional<int> genus) {
    if (c.basis() != Basis::GL) throw DimensionMismatch("branching expects a GL character");
    VirtualCharacter r(Basis::Sp);
    for (const auto& [la, v] : c.terms()) {
        if (genus && la.height() > 2 * *genus) continue;
        for (const auto& [mu, m] : gl_to_sp_branching(la))
            if (!genus || mu.height() <= *genus) r.add(mu, v * m);
    }
    return r;
}

mpz_class sp_invariant_dim(const VirtualCharacter& c, std::optional<int> max_height) {
    mpz_class total = 0;
    for (const auto& [la, v] : c.terms())
        if (is_double_floor(la) && (!max_height || la.height() <= *max_height)) total += v;
    return total;
}

mpz_class gl_dimension(const VirtualCharacter& c, int m) {
    mpz_class total = 0;
    for (const auto& [la, v] : c.terms()) total += v * gl_irrep_dim(la, m);
    return total;
}

mpz_class labute_rank(int g, int k) {
    mpq_class total = 0;
    for (int d : divisors(k)) {
        int mu = mobius(k / d);
        if (!mu) continue;
        mpq_class inner = 0;
        for (int i = 0; i <= d / 2; ++i) {
            mpz_class pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(2 * g), static_cast<unsigned long>(d - 2 * i));
            inner += fraction(d, d - i) * binomial(d - i, i) * pw * (i % 2 ? -1 : 1);
        }
        total += mu * inner;
    }
    total /= k;
    if (total.get_den() != 1) throw InternalInconsistency("non-integral Labute rank");
    return total.get_num();
}

mpz_class free_lie_rank(int m, int k) {
    mpz_class total = 0;
    for (int d : divisors(k)) {
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k / d));
        total += mobius(d) * pw;
    }
    return total / k;
}

void LaurentCharacter::add(int e, const mpz_class& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

LaurentCharacter LaurentCharacter::operator*(const LaurentCharacter& o) const {
    LaurentCharacter r;
    for (const auto& [a, x] : terms_)
        for (const auto& [b, y] : o.terms_) r.add(a + b, x * y);
    return r;
}

LaurentCharacter LaurentCharacter::operator-(const LaurentCharacter& o) const {
    LaurentCharacter r = *this;
    for (const auto& [e, c] : o.terms_) r.add(e, -c);
    return r;
}

LaurentCharacter LaurentCharacter::operator+(const LaurentCharacter& o) const {
    LaurentCharacter r = *this;
    for (const auto& [e, c] : o.terms_) r.add(e, c);
    return r;
}

LaurentCharacter LaurentCharacter::scaled(const mpq_class& s) const {
    LaurentCharacter r;
    for (const auto& [e, c] : terms_) {
        mpq_class v = s * c;
        if (v.get_den() != 1) throw InternalInconsistency("fractional Laurent coefficient");
        r.add(e, v.get_num());
    }
    return r;
}

bool LaurentCharacter::symmetric() const {
    for (const auto& [e, c] : terms_) {
        auto it = terms_.find(-e);
        if (it == terms_.end() || it->second != c) return false;
    }
    return true;
}

LaurentCharacter genus1_lie_character(int l) {
    // Sum of rational multiples; accumulate over a common denominator l.
    LaurentCharacter acc;
    for (int d : divisors(l)) {
        int mu = mobius(d);
        if (!mu) continue;
        LaurentCharacter base;
        base.add(d, 1);
        base.add(-d, 1);
        LaurentCharacter pw;
        pw.add(0, 1);
        for (int i = 0; i < l / d; ++i) pw = pw * base;
        acc = acc + pw.scaled(mu);
    }
    return acc.scaled(fraction(1, l));
}

LaurentCharacter genus1_h_character(int k) {
    LaurentCharacter hchar;
    hchar.add(1, 1);
    hchar.add(-1, 1);
    return hchar * genus1_lie_character(k + 1) - genus1_lie_character(k + 2);
}

VirtualCharacter genus1_decompose(int k) {
    LaurentCharacter ch = genus1_h_character(k);
    if (!ch.symmetric()) throw InternalInconsistency("genus-one character is not symmetric");
    VirtualCharacter r(Basis::SL2);
    while (!ch.empty()) {
        auto [top, c] = *ch.terms().rbegin();
        if (c < 0 || top < 0) throw InternalInconsistency("negative SL2 multiplicity in degree " + std::to_string(k));
        LaurentCharacter irr;
        for (int e = -top; e <= top; e += 2) irr.add(e, c);
        ch = ch - irr;
        r.add(top == 0 ? Partition() : Partition{top}, c);
    }
    return r;
}

namespace {

std::set<Partition> product_support(const Partition& a, const Partition& b) {
    std::set<Partition> out;
    for (const auto& nu : enumerate_partitions(a.size() + b.size()))
        if (lr_coefficient(a, b, nu) > 0) out.insert(nu);
    return out;
}

bool shares_summand(const std::set<Partition>& lm, const Partition& nu) {
    static const Partition wedge2{1, 1};
    for (const auto& ka : product_support(wedge2, nu))
        if (lm.count(ka)) return true;
    return false;
}

}  // namespace

std::set<Partition, RevLex> bracket_support(const Partition& la, const Partition& mu, SupportMode mode) {
    int total = la.size() + mu.size() - 2;
    std::set<Partition, RevLex> out;
    std::set<Partition> lm = product_support(la, mu);
    int lo = std::max(la.height(), mu.height()) - 2;
    int hi = la.height() + mu.height();
    if (mode == SupportMode::C) {
        for (const auto& nu : enumerate_partitions(total))
            if (shares_summand(lm, nu)) {
                if (nu.height() < lo || nu.height() > hi)
                    throw InternalInconsistency("bracket support outside the height window");
                out.insert(nu);
            }
    } else {
        if (total % 2) throw DegreeParity("odd total degree has no invariant part");
        for (const auto& nu : enumerate_partitions(total / 2))
            if (shares_summand(lm, double_floor(nu))) {
                if (2 * nu.height() < lo || 2 * nu.height() > hi)
                    throw InternalInconsistency("bracket support outside the height window");
                out.insert(nu);
            }
    }
    return out;
}

}  // namespace symderiv
