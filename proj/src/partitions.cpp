#include "symderiv/partitions.hpp"

#include "symderiv/errors.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace symderiv {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0 || (i > 0 && parts_[i] > parts_[i - 1]))
            throw std::invalid_argument("partition parts must be positive and weakly decreasing");
        size_ += parts_[i];
    }
}

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

std::string Partition::str() const {
    if (parts_.empty()) return "[0]";
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts_[i]);
    }
    return s + "]";
}

std::string Partition::compact() const {
    if (parts_.empty()) return "[0]";
    bool small = parts_.front() < 10;
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size();) {
        std::size_t j = i;
        while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
        if (!small && i) s += ',';
        s += std::to_string(parts_[i]);
        if (j - i > 1) s += "^" + std::to_string(j - i);
        if (small && j - i > 1 && j < parts_.size()) s += ' ';
        i = j;
    }
    return s + "]";
}

std::vector<Partition> enumerate_partitions(int n, std::optional<int> max_height) {
    if (n < 0) throw std::invalid_argument("negative partition size");
    std::vector<Partition> out;
    std::vector<int> cur;
    int hmax = max_height.value_or(n);
    std::function<void(int, int)> rec = [&](int rest, int cap) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) >= hmax) return;
        for (int p = std::min(rest, cap); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

Partition conjugate(const Partition& la) {
    std::vector<int> c;
    if (la.empty()) return Partition();
    for (int j = 0; j < la[0]; ++j) {
        int len = 0;
        while (len < la.height() && la[len] > j) ++len;
        c.push_back(len);
    }
    return Partition(c);
}

Partition double_floor(const Partition& la) {
    std::vector<int> p;
    for (int x : la.parts()) {
        p.push_back(x);
        p.push_back(x);
    }
    return Partition(p);
}

bool is_double_floor(const Partition& la) {
    if (la.height() % 2) return false;
    for (int i = 0; i < la.height(); i += 2)
        if (la[i] != la[i + 1]) return false;
    return true;
}

Partition inverse_double_floor(const Partition& la) {
    if (!is_double_floor(la)) throw NotDoubleFloor(la.str() + " is not a double floor");
    std::vector<int> p;
    for (int i = 0; i < la.height(); i += 2) p.push_back(la[i]);
    return Partition(p);
}

Partition doubled_rows(const Partition& la) {
    std::vector<int> p;
    for (int x : la.parts()) p.push_back(2 * x);
    return Partition(p);
}

bool contains(const Partition& outer, const Partition& inner) {
    if (inner.height() > outer.height()) return false;
    for (int i = 0; i < inner.height(); ++i)
        if (inner[i] > outer[i]) return false;
    return true;
}

int mobius(int n) {
    if (n < 1) throw std::invalid_argument("mobius of a non-positive integer");
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

std::vector<int> divisors(int n) {
    std::vector<int> d;
    for (int i = 1; i <= n; ++i)
        if (n % i == 0) d.push_back(i);
    return d;
}

mpz_class factorial(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

mpz_class class_size(const CycleType& rho) {
    mpz_class denom = 1;
    const auto& p = rho.parts();
    for (std::size_t i = 0; i < p.size();) {
        std::size_t j = i;
        while (j < p.size() && p[j] == p[i]) ++j;
        mpz_class a = p[i];
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), a.get_mpz_t(), j - i);
        denom *= pw * factorial(static_cast<int>(j - i));
        i = j;
    }
    return factorial(rho.size()) / denom;
}

int cycle_sign(const CycleType& rho) {
    int s = 1;
    for (int a : rho.parts())
        if (a % 2 == 0) s = -s;
    return s;
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = v.size();
        for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x);
        return h;
    }
};

struct PairHash {
    std::size_t operator()(const std::pair<std::vector<int>, std::vector<int>>& p) const {
        return VecHash{}(p.first) * 31u ^ VecHash{}(p.second);
    }
};

struct CharacterStore {
    std::mutex mu;
    std::unordered_map<std::pair<std::vector<int>, std::vector<int>>, mpz_class, PairHash> memo;
    std::optional<std::filesystem::path> file;
    std::vector<std::string> pending;
};

CharacterStore& store() {
    static CharacterStore s;
    return s;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

std::vector<int> split_ints(const std::string& s) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) v.push_back(std::stoi(tok));
    return v;
}

// Rim-hook recursion on beta-sets; removes the largest cycle first.
mpz_class mn_rec(const std::vector<int>& la, const std::vector<int>& rho, std::size_t pos);

mpz_class mn(const std::vector<int>& la, const std::vector<int>& rho_tail) {
    if (rho_tail.empty()) return la.empty() ? 1 : 0;
    auto& st = store();
    auto key = std::make_pair(la, rho_tail);
    {
        std::lock_guard lock(st.mu);
        auto it = st.memo.find(key);
        if (it != st.memo.end()) return it->second;
    }
    mpz_class value = mn_rec(la, rho_tail, 0);
    std::lock_guard lock(st.mu);
    if (st.memo.emplace(key, value).second && st.file) {
        int n = std::accumulate(la.begin(), la.end(), 0);
        st.pending.push_back(std::to_string(n) + ";" + join(la) + ";" + join(rho_tail) + ";" +
                             value.get_str());
    }
    return value;
}

mpz_class mn_rec(const std::vector<int>& la, const std::vector<int>& rho, std::size_t) {
    int r = rho.front();
    std::vector<int> rest(rho.begin() + 1, rho.end());
    int h = static_cast<int>(la.size());
    std::vector<int> beta(h);
    for (int i = 0; i < h; ++i) beta[i] = la[i] + (h - 1 - i);
    std::vector<char> occupied(beta.empty() ? 1 : beta.front() + 1, 0);
    for (int b : beta) occupied[b] = 1;
    mpz_class total = 0;
    for (int i = 0; i < h; ++i) {
        int b = beta[i];
        int nb = b - r;
        if (nb < 0 || occupied[nb]) continue;
        int between = 0;
        for (int x = nb + 1; x < b; ++x) between += occupied[x];
        std::vector<int> nbeta = beta;
        nbeta[i] = nb;
        std::sort(nbeta.rbegin(), nbeta.rend());
        std::vector<int> nla;
        for (int j = 0; j < h; ++j) {
            int part = nbeta[j] - (h - 1 - j);
            if (part > 0) nla.push_back(part);
        }
        mpz_class sub = mn(nla, rest);
        if (between % 2) total -= sub;
        else total += sub;
    }
    return total;
}

}  // namespace

void set_character_cache_dir(const std::filesystem::path& dir) {
    auto& st = store();
    std::lock_guard lock(st.mu);
    st.file = dir / "characters.txt";
    std::ifstream in(*st.file);
    std::string line;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string n, la, rho, val;
        if (!std::getline(ss, n, ';') || !std::getline(ss, la, ';') || !std::getline(ss, rho, ';') ||
            !std::getline(ss, val))
            continue;
        st.memo.emplace(std::make_pair(split_ints(la), split_ints(rho)), mpz_class(val));
    }
}

void flush_character_cache() {
    auto& st = store();
    std::lock_guard lock(st.mu);
    if (!st.file || st.pending.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(st.file->parent_path(), ec);
    std::ofstream out(*st.file, std::ios::app);
    if (!out) return;
    for (const auto& rec : st.pending) out << rec << '\n';
    st.pending.clear();
}

std::size_t character_cache_entries() {
    auto& st = store();
    std::lock_guard lock(st.mu);
    return st.memo.size();
}

mpz_class sn_character(const Partition& la, const CycleType& rho) {
    if (la.size() != rho.size())
        throw DimensionMismatch("character of " + la.str() + " on class " + rho.str());
    return mn(la.parts(), rho.parts());
}

mpz_class kontsevich_character(int k, const CycleType& rho) {
    if (rho.size() != 2 * k + 2)
        throw DimensionMismatch("class " + rho.str() + " is not a class of S_" + std::to_string(2 * k + 2));
    const auto& p = rho.parts();
    if (p.front() == 1) return factorial(2 * k);
    int a = p.front();
    int b = 0;
    std::size_t i = 0;
    while (i < p.size() && p[i] == a) ++i, ++b;
    int sign;
    if (i == p.size()) sign = -1;
    else if (i + 1 == p.size() && p[i] == 1) sign = 1;
    else return 0;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b - 1));
    return sign * factorial(b - 1) * pw * mobius(a);
}

namespace {

// Classes of S_{2k+2} on which the Kontsevich character can be nonzero.
std::vector<CycleType> kontsevich_support(int k) {
    int n = 2 * k + 2;
    std::vector<CycleType> out;
    out.push_back(Partition(std::vector<int>(n, 1)));
    for (int a = 2; a <= n; ++a) {
        if (mobius(a) == 0) continue;
        if (n % a == 0) out.push_back(Partition(std::vector<int>(n / a, a)));
        if ((n - 1) % a == 0) {
            std::vector<int> p((n - 1) / a, a);
            p.push_back(1);
            out.push_back(Partition(p));
        }
    }
    return out;
}

}  // namespace

mpz_class dim_H_lambda(const Partition& la, int k) {
    if (la.size() != k + 1)
        throw DimensionMismatch(la.str() + " does not have " + std::to_string(k + 1) + " boxes");
    Partition ld = double_floor(la);
    mpz_class total = 0;
    for (const auto& rho : kontsevich_support(k))
        total += class_size(rho) * kontsevich_character(k, rho) * sn_character(ld, rho);
    mpz_class order = factorial(2 * k + 2);
    if (total % order != 0 || total < 0)
        throw InternalInconsistency("dim H_" + la.str() + " is not a nonnegative integer");
    return total / order;
}

namespace {

struct LrKey {
    std::vector<int> a, b, c;
    bool operator==(const LrKey&) const = default;
};
struct LrHash {
    std::size_t operator()(const LrKey& k) const {
        VecHash h;
        return (h(k.a) * 31u ^ h(k.b)) * 31u ^ h(k.c);
    }
};

std::int64_t lr_count(const Partition& la, const Partition& mu, const Partition& nu) {
    // Cells of nu/la in reading order: rows top to bottom, right to left.
    struct Cell {
        int row, col;
    };
    std::vector<Cell> cells;
    for (int r = 0; r < nu.height(); ++r)
        for (int c = nu[r] - 1; c >= la[r]; --c) cells.push_back({r, c});
    int rows = nu.height();
    std::vector<std::vector<int>> fill(rows, std::vector<int>(nu.empty() ? 0 : nu[0], 0));
    std::vector<int> count(mu.height() + 1, 0);
    std::int64_t total = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == cells.size()) {
            ++total;
            return;
        }
        auto [r, c] = cells[idx];
        int hi = mu.height();
        if (c + 1 < nu[r]) hi = std::min(hi, fill[r][c + 1]);
        int lo = 1;
        if (r > 0 && c >= la[r - 1] && c < nu[r - 1]) lo = fill[r - 1][c] + 1;
        for (int v = lo; v <= hi; ++v) {
            if (count[v] + 1 > mu[v - 1]) continue;
            if (v > 1 && count[v] + 1 > count[v - 1]) continue;
            ++count[v];
            fill[r][c] = v;
            rec(idx + 1);
            fill[r][c] = 0;
            --count[v];
        }
    };
    rec(0);
    return total;
}

}  // namespace

std::int64_t lr_coefficient(const Partition& la, const Partition& mu, const Partition& nu) {
    if (la.size() + mu.size() != nu.size()) return 0;
    if (!contains(nu, la) || !contains(nu, mu)) return 0;
    static std::mutex m;
    static std::unordered_map<LrKey, std::int64_t, LrHash> memo;
    LrKey key{la.parts(), mu.parts(), nu.parts()};
    {
        std::lock_guard lock(m);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    std::int64_t v = lr_count(la, mu, nu);
    std::lock_guard lock(m);
    memo.emplace(std::move(key), v);
    return v;
}

Multiplicities gl_to_sp_branching(const Partition& la) {
    Multiplicities out;
    for (int s = la.size() % 2; s <= la.size(); s += 2) {
        std::vector<Partition> betas;
        for (const auto& b : enumerate_partitions((la.size() - s) / 2))
            betas.push_back(double_floor(b));
        for (const auto& mu : enumerate_partitions(s)) {
            if (!contains(la, mu)) continue;
            std::int64_t m = 0;
            for (const auto& be : betas) m += lr_coefficient(mu, be, la);
            if (m) out[mu] += m;
        }
    }
    return out;
}

int sp_trivial_multiplicity(const Partition& la) { return is_double_floor(la) ? 1 : 0; }

mpq_class fraction(long a, long b) {
    mpq_class q(a, b);
    q.canonicalize();
    return q;
}

mpz_class gl_irrep_dim(const Partition& la, int n) {
    mpq_class d = 1;
    Partition lc = conjugate(la);
    for (int r = 0; r < la.height(); ++r)
        for (int c = 0; c < la[r]; ++c) {
            int hook = (la[r] - c - 1) + (lc[c] - r - 1) + 1;
            d *= fraction(n + c - r, hook);
        }
    if (d.get_den() != 1) throw InternalInconsistency("non-integral GL dimension");
    return d.get_num();
}

mpz_class sp_irrep_dim(const Partition& la, int g) {
    if (la.height() > g) return 0;
    std::vector<mpz_class> l(g), m(g);
    for (int i = 0; i < g; ++i) {
        l[i] = la[i] + g - i;
        m[i] = g - i;
    }
    mpq_class d = 1;
    for (int i = 0; i < g; ++i) {
        d *= mpq_class(l[i]) / m[i];
        for (int j = i + 1; j < g; ++j)
            d *= mpq_class(l[i] * l[i] - l[j] * l[j]) / (m[i] * m[i] - m[j] * m[j]);
    }
    if (d.get_den() != 1) throw InternalInconsistency("non-integral Sp dimension");
    return d.get_num();
}

GenusPolynomial::GenusPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

GenusPolynomial GenusPolynomial::constant(const mpz_class& c) { return GenusPolynomial({c}); }

GenusPolynomial GenusPolynomial::linear(const mpz_class& a, const mpz_class& b) {
    return GenusPolynomial({b, a});
}

void GenusPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class GenusPolynomial::operator()(const mpz_class& g) const {
    mpz_class v = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * g + *it;
    return v;
}

GenusPolynomial GenusPolynomial::operator*(const GenusPolynomial& o) const {
    if (coeffs_.empty() || o.coeffs_.empty()) return {};
    std::vector<mpz_class> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    return GenusPolynomial(c);
}

GenusPolynomial GenusPolynomial::operator+(const GenusPolynomial& o) const {
    std::vector<mpz_class> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return GenusPolynomial(c);
}

std::string GenusPolynomial::str() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (int d = degree(); d >= 0; --d) {
        const mpz_class& c = coeffs_[d];
        if (c == 0) continue;
        mpz_class a = abs(c);
        if (s.empty()) s += c < 0 ? "-" : "";
        else s += c < 0 ? " - " : " + ";
        if (a != 1 || d == 0) s += a.get_str();
        if (d >= 1) s += "g";
        if (d >= 2) s += "^" + std::to_string(d);
    }
    return s;
}

std::vector<std::pair<int, int>> eigenvalue_factors(const Partition& la) {
    std::vector<std::pair<int, int>> f;
    for (int t = 0; t < la.height(); ++t)
        for (int s = 0; s < la[t]; ++s) f.emplace_back(2, t - 2 * s);
    return f;
}

GenusPolynomial eigenvalue_poly(const Partition& la) {
    GenusPolynomial p = GenusPolynomial::constant(1);
    for (auto [a, b] : eigenvalue_factors(la)) p = p * GenusPolynomial::linear(a, b);
    return p;
}

std::string eigenvalue_factored(const Partition& la) {
    auto f = eigenvalue_factors(la);
    std::sort(f.begin(), f.end(), [](auto x, auto y) { return x.second < y.second; });
    std::string s;
    for (auto [a, b] : f) {
        if (b == 0) s += f.size() == 1 ? "2g" : "2g";
        else s += "(2g" + std::string(b > 0 ? "+" : "-") + std::to_string(std::abs(b)) + ")";
    }
    if (s.empty()) s = "1";
    return s;
}

}  // namespace symderiv
