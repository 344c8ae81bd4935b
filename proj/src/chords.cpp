#include "symderiv/chords.hpp"

#include "symderiv/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace symderiv {

namespace {

std::uint64_t odd_double_factorial(int m) {
    std::uint64_t r = 1;
    for (int i = m; i > 1; i -= 2) r *= static_cast<std::uint64_t>(i);
    return r;
}

struct DiagramTable {
    int n = 0;
    std::vector<std::vector<int>> partners;
};

const DiagramTable& diagram_table(int n) {
    static std::mutex mu;
    static std::map<int, DiagramTable> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 2 || n % 2) throw DegreeParity("chord diagrams need an even positive number of points");
    if (n > 14) throw SizePolicy("chord diagram tables are limited to 14 points");
    DiagramTable t;
    t.n = n;
    std::vector<int> p(n, -1);
    std::function<void()> rec = [&]() {
        int a = 0;
        while (a < n && p[a] >= 0) ++a;
        if (a == n) {
            t.partners.push_back(p);
            return;
        }
        for (int b = a + 1; b < n; ++b) {
            if (p[b] >= 0) continue;
            p[a] = b;
            p[b] = a;
            rec();
            p[a] = p[b] = -1;
        }
    };
    rec();
    return cache.emplace(n, std::move(t)).first->second;
}

}  // namespace

ChordDiagram ChordDiagram::from_partner(const std::vector<int>& partner) {
    int n = static_cast<int>(partner.size());
    if (n % 2) throw DegreeParity("odd number of chord endpoints");
    ChordDiagram c;
    c.partner_ = partner;
    for (int i = 0; i < n; ++i) {
        int j = partner[i];
        if (j < 0 || j >= n || j == i || partner[j] != i) throw std::invalid_argument("not a perfect matching");
        if (i < j) c.pairs_.emplace_back(i + 1, j + 1);
    }
    return c;
}

ChordDiagram ChordDiagram::from_pairs(const std::vector<std::pair<int, int>>& pairs) {
    int n = 2 * static_cast<int>(pairs.size());
    std::vector<int> partner(n, -1);
    for (auto [a, b] : pairs) {
        if (a < 1 || b < 1 || a > n || b > n || a == b || partner[a - 1] >= 0 || partner[b - 1] >= 0)
            throw std::invalid_argument("pairs do not form a perfect matching");
        partner[a - 1] = b - 1;
        partner[b - 1] = a - 1;
    }
    return from_partner(partner);
}

ChordDiagram ChordDiagram::parse(const std::string& s) {
    std::vector<std::pair<int, int>> pairs;
    std::size_t pos = 0;
    while ((pos = s.find('(', pos)) != std::string::npos) {
        std::size_t end = s.find(')', pos);
        if (end == std::string::npos) throw std::invalid_argument("unbalanced chord notation");
        std::string body = s.substr(pos + 1, end - pos - 1);
        std::replace(body.begin(), body.end(), ',', ' ');
        std::vector<int> v;
        if (body.find(' ') == std::string::npos) {
            for (char ch : body) v.push_back(ch - '0');
        } else {
            std::stringstream ss(body);
            int x;
            while (ss >> x) v.push_back(x);
        }
        if (v.size() != 2) throw std::invalid_argument("chord must have two endpoints: " + body);
        pairs.emplace_back(v[0], v[1]);
        pos = end + 1;
    }
    return from_pairs(pairs);
}

std::string ChordDiagram::str() const {
    bool wide = points() >= 10;
    std::string s;
    for (auto [a, b] : pairs_) {
        s += "(" + std::to_string(a) + (wide ? " " : "") + std::to_string(b) + ")";
    }
    return s;
}

std::uint64_t diagram_count(int n) { return odd_double_factorial(n - 1); }

std::vector<ChordDiagram> enumerate_diagrams(int n) {
    std::vector<ChordDiagram> out;
    for (const auto& p : diagram_table(n).partners) out.push_back(ChordDiagram::from_partner(p));
    return out;
}

std::uint32_t rank_of(const std::vector<int>& partner) {
    int n = static_cast<int>(partner.size());
    std::uint32_t used = 0;
    std::uint64_t r = 0;
    int m = n;
    for (int a = 0; a < n; ++a) {
        if (used >> a & 1u) continue;
        int b = partner[a];
        int t = 0;
        for (int v = a + 1; v < b; ++v)
            if (!(used >> v & 1u)) ++t;
        r += static_cast<std::uint64_t>(t) * odd_double_factorial(m - 3);
        used |= 1u << a | 1u << b;
        m -= 2;
    }
    return static_cast<std::uint32_t>(r);
}

std::size_t index_of(const ChordDiagram& c) { return rank_of(c.partner()) + 1; }

ChordDiagram diagram_at(int n, std::size_t index) {
    const auto& t = diagram_table(n);
    if (index < 1 || index > t.partners.size()) throw IndexError("diagram index out of range");
    return ChordDiagram::from_partner(t.partners[index - 1]);
}

int diagram_sign(const ChordDiagram& c) {
    Perm p;
    for (auto [a, b] : c.pairs()) {
        p.push_back(a - 1);
        p.push_back(b - 1);
    }
    return perm_sign(p);
}

ChordDiagram act(const Perm& g, const ChordDiagram& c) {
    if (static_cast<int>(g.size()) != c.points()) throw DimensionMismatch("permutation degree differs from diagram size");
    std::vector<int> q(c.points());
    for (int i = 0; i < c.points(); ++i) q[g[i]] = g[c.partner()[i]];
    return ChordDiagram::from_partner(q);
}

namespace {

int components_raw(const std::vector<int>& a, const std::vector<int>& b) {
    int n = static_cast<int>(a.size());
    std::uint32_t seen = 0;
    int r = 0;
    for (int v = 0; v < n; ++v) {
        if (seen >> v & 1u) continue;
        ++r;
        int cur = v;
        do {
            seen |= 1u << cur;
            int w = a[cur];
            seen |= 1u << w;
            cur = b[w];
        } while (cur != v);
    }
    return r;
}

}  // namespace

int components(const ChordDiagram& a, const ChordDiagram& b) {
    if (a.points() != b.points()) throw DimensionMismatch("pairing diagrams of different sizes");
    return components_raw(a.partner(), b.partner());
}

mpz_class pairing(const ChordDiagram& a, const ChordDiagram& b, int g) {
    int r = components(a, b);
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(2 * g), static_cast<unsigned long>(r));
    return (a.chords() - r) % 2 ? -v : v;
}

GenusPolynomial pairing_poly(const ChordDiagram& a, const ChordDiagram& b) {
    int r = components(a, b);
    std::vector<mpz_class> c(r + 1, 0);
    mpz_class lead;
    mpz_ui_pow_ui(lead.get_mpz_t(), 2, static_cast<unsigned long>(r));
    c[r] = (a.chords() - r) % 2 ? -lead : lead;
    return GenusPolynomial(c);
}

ChordVector ChordVector::unit(const ChordDiagram& c, const mpq_class& coeff) {
    ChordVector v(c.points());
    v.add(rank_of(c.partner()), coeff);
    return v;
}

ChordVector ChordVector::from_dense(int n, const std::vector<mpq_class>& values) {
    if (values.size() != diagram_count(n)) throw DimensionMismatch("dense chord vector of the wrong length");
    ChordVector v(n);
    for (std::size_t i = 0; i < values.size(); ++i) v.add(static_cast<std::uint32_t>(i), values[i]);
    return v;
}

mpq_class ChordVector::at_rank(std::uint32_t r) const {
    auto it = e_.find(r);
    return it == e_.end() ? mpq_class(0) : it->second;
}

void ChordVector::add(std::uint32_t rank, const mpq_class& c) {
    if (c == 0) return;
    auto [it, fresh] = e_.emplace(rank, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) e_.erase(it);
}

ChordVector ChordVector::operator+(const ChordVector& o) const {
    if (n_ != o.n_) throw DimensionMismatch("adding chord vectors of different sizes");
    ChordVector r = *this;
    for (const auto& [i, c] : o.e_) r.add(i, c);
    return r;
}

ChordVector ChordVector::operator-(const ChordVector& o) const { return *this + o * mpq_class(-1); }

ChordVector ChordVector::operator*(const mpq_class& s) const {
    ChordVector r(n_);
    if (s == 0) return r;
    for (const auto& [i, c] : e_) r.e_.emplace(i, c * s);
    return r;
}

QVec<std::uint32_t> ChordVector::qvec() const {
    QVec<std::uint32_t> v;
    for (const auto& [i, c] : e_) v.emplace_back(i, c);
    return v;
}

ChordVector ChordVector::from_qvec(int n, const QVec<std::uint32_t>& v) {
    ChordVector r(n);
    for (const auto& [i, c] : v) r.add(i, c);
    return r;
}

ChordVector ChordVector::from_zvec(int n, const ZVec<std::uint32_t>& v) {
    ChordVector r(n);
    for (const auto& [i, c] : v) r.add(i, mpq_class(c));
    return r;
}

std::vector<mpq_class> ChordVector::dense() const {
    std::vector<mpq_class> d(diagram_count(n_), 0);
    for (const auto& [i, c] : e_) d[i] = c;
    return d;
}

std::string ChordVector::dense_text() const {
    std::string s;
    auto d = dense();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ' ';
        s += d[i].get_str();
    }
    return s;
}

std::string ChordVector::json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    j["entries"] = nlohmann::json::array();
    auto num = [](const mpz_class& z) -> nlohmann::ordered_json {
        if (z.fits_slong_p()) return z.get_si();
        return z.get_str();
    };
    for (const auto& [r, c] : e_) j["entries"].push_back({r + 1, num(c.get_num()), num(c.get_den())});
    return j.dump();
}

ChordVector ChordVector::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    ChordVector v(j.at("n").get<int>());
    auto num = [](const nlohmann::json& x) { return x.is_string() ? mpz_class(x.get<std::string>()) : mpz_class(x.get<long>()); };
    for (const auto& e : j.at("entries")) {
        auto index = e.at(0).get<std::uint64_t>();
        if (index < 1 || index > diagram_count(v.n_)) throw IndexError("chord vector index out of range");
        mpq_class c(num(e.at(1)), num(e.at(2)));
        c.canonicalize();
        v.add(static_cast<std::uint32_t>(index - 1), c);
    }
    return v;
}

std::vector<std::uint32_t> index_table(const Perm& g) {
    int n = static_cast<int>(g.size());
    const auto& t = diagram_table(n);
    std::vector<std::uint32_t> out(t.partners.size());
    std::vector<int> q(n);
    for (std::size_t r = 0; r < t.partners.size(); ++r) {
        const auto& p = t.partners[r];
        for (int i = 0; i < n; ++i) q[g[i]] = g[p[i]];
        out[r] = rank_of(q);
    }
    return out;
}

ChordVector act(const Perm& g, const ChordVector& v) {
    if (static_cast<int>(g.size()) != v.points()) throw DimensionMismatch("permutation degree differs from vector size");
    const auto& t = diagram_table(v.points());
    ChordVector r(v.points());
    std::vector<int> q(v.points());
    for (const auto& [i, c] : v.entries()) {
        const auto& p = t.partners[i];
        for (int a = 0; a < v.points(); ++a) q[g[a]] = g[p[a]];
        r.add(rank_of(q), c);
    }
    return r;
}

ChordVector apply(const GroupAlgebraOperator& op, const ChordVector& v) {
    ChordVector r(v.points());
    for (const auto& [p, c] : op.terms()) r = r + act(p, v) * mpq_class(c);
    return r;
}

ChordVector apply(const OperatorProduct& op, const ChordVector& v) {
    ChordVector r = v;
    for (auto it = op.factors.rbegin(); it != op.factors.rend(); ++it) r = apply(*it, r);
    return r;
}

std::vector<std::vector<mpz_class>> gram_matrix(int n, int g) {
    const auto& t = diagram_table(n);
    std::size_t N = t.partners.size();
    int k = n / 2;
    std::vector<mpz_class> pw(k + 1);
    for (int r = 0; r <= k; ++r) {
        mpz_ui_pow_ui(pw[r].get_mpz_t(), static_cast<unsigned long>(2 * g), static_cast<unsigned long>(r));
        if ((k - r) % 2) pw[r] = -pw[r];
    }
    std::vector<std::vector<mpz_class>> m(N, std::vector<mpz_class>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j) m[i][j] = m[j][i] = pw[components_raw(t.partners[i], t.partners[j])];
    return m;
}

std::vector<std::vector<GenusPolynomial>> gram_matrix_poly(int n) {
    auto d = enumerate_diagrams(n);
    std::vector<std::vector<GenusPolynomial>> m(d.size(), std::vector<GenusPolynomial>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i; j < d.size(); ++j) m[i][j] = m[j][i] = pairing_poly(d[i], d[j]);
    return m;
}

ChordVector gram_apply(const ChordVector& v, int g) {
    const auto& t = diagram_table(v.points());
    int k = v.points() / 2;
    std::vector<mpz_class> pw(k + 1);
    for (int r = 0; r <= k; ++r) {
        mpz_ui_pow_ui(pw[r].get_mpz_t(), static_cast<unsigned long>(2 * g), static_cast<unsigned long>(r));
        if ((k - r) % 2) pw[r] = -pw[r];
    }
    ChordVector out(v.points());
    for (std::size_t i = 0; i < t.partners.size(); ++i) {
        mpq_class s = 0;
        for (const auto& [j, c] : v.entries()) s += pw[components_raw(t.partners[i], t.partners[j])] * c;
        out.add(static_cast<std::uint32_t>(i), s);
    }
    return out;
}

mpq_class gram_form(const ChordVector& a, const ChordVector& b, int g) {
    ChordVector gb = gram_apply(b, g);
    mpq_class s = 0;
    for (const auto& [i, c] : a.entries()) s += c * gb.at_rank(i);
    return s;
}

namespace {

using IVec = std::vector<std::pair<std::uint32_t, std::int64_t>>;

void normalize(IVec& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < v.size();) {
        std::uint32_t idx = v[r].first;
        std::int64_t s = 0;
        while (r < v.size() && v[r].first == idx) s += v[r++].second;
        if (s) v[w++] = {idx, s};
    }
    v.resize(w);
}

// Index tables for transpositions, cached per point count.
const std::vector<std::uint32_t>& transposition_table(int n, int a, int b) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::vector<std::uint32_t>> cache;
    std::lock_guard lock(mu);
    auto key = std::make_tuple(n, a, b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, index_table(transposition(a + 1, b + 1, n))).first->second;
}

ZVec<std::uint32_t> permute(const ZVec<std::uint32_t>& v, const std::vector<std::uint32_t>& table) {
    ZVec<std::uint32_t> r;
    r.reserve(v.size());
    for (const auto& [i, c] : v) r.emplace_back(table[i], c);
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
}

ZVec<std::uint32_t> add_z(const ZVec<std::uint32_t>& a, const ZVec<std::uint32_t>& b, int sign) {
    return combine(mpz_class(1), a, mpz_class(-sign), b);
}

// Sum over all permutations of the given positions, signed when sign = -1.
ZVec<std::uint32_t> symmetrize(ZVec<std::uint32_t> v, const std::vector<int>& pos, int n, int sign) {
    for (std::size_t m = pos.size(); m >= 2; --m) {
        ZVec<std::uint32_t> acc = v;
        for (std::size_t i = 0; i + 1 < m; ++i)
            acc = add_z(acc, permute(v, transposition_table(n, pos[i], pos[m - 1])), sign);
        v = std::move(acc);
        if (v.empty()) break;
    }
    return v;
}

}  // namespace

std::vector<ChordVector> eigenspace_basis(const Partition& la, int n) {
    Partition shape = doubled_rows(la);
    if (shape.size() != n) throw DimensionMismatch("eigenspace label " + la.str() + " does not match " + std::to_string(n) + " points");
    const auto& t = diagram_table(n);
    std::vector<std::vector<int>> rows, cols(shape.empty() ? 0 : shape[0]);
    int next = 0;
    for (int r = 0; r < shape.height(); ++r) {
        rows.emplace_back();
        for (int c = 0; c < shape[r]; ++c) {
            rows.back().push_back(next);
            cols[c].push_back(next);
            ++next;
        }
    }
    ZVec<std::uint32_t> seed;
    for (std::uint32_t r = 0; r < t.partners.size() && seed.empty(); ++r) {
        ZVec<std::uint32_t> v{{r, mpz_class(1)}};
        for (const auto& c : cols) v = symmetrize(v, c, n, -1);
        for (const auto& row : rows) v = symmetrize(v, row, n, 1);
        seed = v;
    }
    if (seed.empty()) throw InternalInconsistency("Young symmetrizer annihilates every diagram");
    Echelon<std::uint32_t> e;
    std::vector<ZVec<std::uint32_t>> queue{seed};
    e.insert(seed);
    for (std::size_t q = 0; q < queue.size(); ++q) {
        for (int a = 0; a + 1 < n; ++a) {
            auto w = permute(queue[q], transposition_table(n, a, a + 1));
            if (e.insert(w)) queue.push_back(w);
        }
    }
    mpz_class expected = sn_character(shape, Partition(std::vector<int>(n, 1)));
    if (mpz_class(static_cast<unsigned long>(e.rank())) != expected)
        throw InternalInconsistency("eigenspace dimension differs from the irreducible dimension");
    e.fully_reduce();
    std::vector<ChordVector> out;
    for (const auto& row : e.basis()) out.push_back(ChordVector::from_zvec(n, row));
    return out;
}

mpz_class fixed_matchings(const CycleType& rho) {
    std::map<int, int> mult;
    for (int a : rho.parts()) ++mult[a];
    mpz_class total = 1;
    for (auto [l, m] : mult) {
        mpz_class f = 0;
        for (int j = 0; 2 * j <= m; ++j) {
            if (l % 2 && m - 2 * j > 0) continue;
            mpz_class pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(l), static_cast<unsigned long>(j));
            f += binomial(m, 2 * j) * mpz_class(static_cast<unsigned long>(odd_double_factorial(2 * j - 1))) * pw;
        }
        total *= f;
    }
    return total;
}

namespace {

// Coefficients of the twisted projector aggregated by cycle type.
const std::map<CycleType, mpz_class>& projector_class_sums(int n) {
    static std::mutex mu;
    static std::map<int, std::map<CycleType, mpz_class>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::map<CycleType, mpz_class> agg;
    GroupAlgebraOperator op = derivation_projector_twisted(n).expand();
    for (const auto& [p, c] : op.terms()) agg[perm_cycle_type(p)] += c;
    return cache.emplace(n, std::move(agg)).first->second;
}

}  // namespace

mpz_class projector_rank_by_trace(int n) {
    mpz_class tr = 0;
    for (const auto& [rho, c] : projector_class_sums(n)) tr += c * fixed_matchings(rho);
    mpz_class scale = n * (n - 1);
    if (tr % scale != 0) throw InternalInconsistency("projector trace is not divisible by n(n-1)");
    return tr / scale;
}

mpz_class projection_dimension_by_trace(const Partition& la, int n) {
    Partition shape = doubled_rows(la);
    if (shape.size() != n) throw DimensionMismatch("label " + la.str() + " does not match " + std::to_string(n) + " points");
    mpz_class tr = 0;
    for (const auto& [rho, c] : projector_class_sums(n)) tr += c * sn_character(shape, rho);
    mpz_class scale = n * (n - 1);
    if (tr % scale != 0 || tr < 0) throw InternalInconsistency("isotypic projector trace is not a dimension");
    return tr / scale;
}

namespace {

struct ProjectionData {
    int n = 0;
    std::vector<std::uint32_t> selected;
    std::vector<IVec> images;
    std::vector<std::uint32_t> pivots;
    std::map<Partition, std::vector<std::vector<mpq_class>>, RevLex> coords;
    std::map<Partition, std::vector<ChordVector>, RevLex> vectors;
};

struct ProjectorApplier {
    int n;
    struct Term {
        std::vector<std::uint32_t> table;
        std::int64_t coeff;
    };
    std::vector<std::vector<Term>> factors;  // applied first to last

    explicit ProjectorApplier(int pts) : n(pts) {
        OperatorProduct op = derivation_projector_twisted(n);
        for (auto it = op.factors.rbegin(); it != op.factors.rend(); ++it) {
            std::vector<Term> f;
            for (const auto& [p, c] : it->terms()) f.push_back({index_table(p), c.get_si()});
            factors.push_back(std::move(f));
        }
    }

    IVec operator()(std::uint32_t r) const {
        IVec v{{r, 1}};
        for (const auto& f : factors) {
            IVec nv;
            nv.reserve(v.size() * f.size());
            for (const auto& term : f)
                for (const auto& [i, c] : v) nv.emplace_back(term.table[i], c * term.coeff);
            normalize(nv);
            v = std::move(nv);
        }
        return v;
    }
};

std::vector<Perm> class_elements(const CycleType& support, int n) {
    // support lists the nontrivial cycle lengths, e.g. [3] or [2,2].
    int s = support.size();
    std::vector<Perm> out;
    std::vector<int> subset(s);
    std::function<void(int, int)> choose = [&](int start, int depth) {
        if (depth == s) {
            std::vector<int> order(subset);
            do {
                Perm p = identity_perm(n);
                int pos = 0;
                for (int len : support.parts()) {
                    for (int i = 0; i < len; ++i) p[order[pos + i]] = order[pos + (i + 1) % len];
                    pos += len;
                }
                out.push_back(p);
            } while (std::next_permutation(order.begin(), order.end()));
            return;
        }
        for (int v = start; v < n; ++v) {
            subset[depth] = v;
            choose(v + 1, depth + 1);
        }
    };
    choose(0, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CycleType full_type(const CycleType& support, int n) {
    std::vector<int> p = support.parts();
    for (int i = support.size(); i < n; ++i) p.push_back(1);
    return Partition(p);
}

std::int64_t lookup(const IVec& v, std::uint32_t idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx, [](const auto& p, std::uint32_t k) { return p.first < k; });
    return it != v.end() && it->first == idx ? it->second : 0;
}

ProjectionData compute_projection(int n) {
    ProjectionData d;
    d.n = n;
    std::size_t N = diagram_count(n);
    std::size_t target = mpz_class(projector_rank_by_trace(n)).get_ui();
    ProjectorApplier P(n);

    // Pivot selection on a deterministic random column sample, widened until
    // the sampled rank reaches the trace rank.
    std::mt19937_64 rng(0x5eed0000u + static_cast<unsigned>(n));
    std::size_t sample = std::min<std::size_t>(N, std::max<std::size_t>(4 * target + 64, 256));
    for (;;) {
        std::vector<std::uint32_t> cols(N);
        for (std::size_t i = 0; i < N; ++i) cols[i] = static_cast<std::uint32_t>(i);
        if (sample < N) {
            std::shuffle(cols.begin(), cols.end(), rng);
            cols.resize(sample);
            std::sort(cols.begin(), cols.end());
        }
        std::unordered_map<std::uint32_t, std::size_t> where;
        for (std::size_t i = 0; i < cols.size(); ++i) where[cols[i]] = i;
        ModEchelon me(cols.size());
        d.selected.clear();
        d.images.clear();
        for (std::uint32_t r = 0; r < N && me.rank() < target; ++r) {
            IVec img = P(r);
            std::vector<std::pair<std::size_t, std::int64_t>> proj;
            for (const auto& [i, c] : img) {
                auto it = where.find(i);
                if (it != where.end()) proj.emplace_back(it->second, c);
            }
            if (me.insert(proj)) {
                d.selected.push_back(r);
                d.images.push_back(std::move(img));
            }
        }
        if (me.rank() == target) {
            d.pivots.clear();
            for (auto p : me.pivots()) d.pivots.push_back(cols[p]);
            break;
        }
        if (sample == N) throw InternalInconsistency("projector image rank falls short of its trace");
        sample = std::min(N, sample * 4);
    }

    std::size_t t = target;
    std::vector<std::vector<std::int64_t>> bpiv(t, std::vector<std::int64_t>(t));
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) bpiv[i][j] = lookup(d.images[j], d.pivots[i]);

    auto labels = enumerate_partitions(n / 2);
    const std::vector<CycleType> supports = {Partition{2}, Partition{3}, Partition{2, 2}, Partition{4}};
    std::vector<std::vector<mpq_class>> omega;  // per class, per label
    std::size_t used = 0;
    for (; used < supports.size(); ++used) {
        CycleType rho = full_type(supports[used], n);
        std::vector<mpq_class> w;
        for (const auto& la : labels) {
            Partition shape = doubled_rows(la);
            mpq_class dim = mpq_class(sn_character(shape, Partition(std::vector<int>(n, 1))));
            w.push_back(mpq_class(class_size(rho) * sn_character(shape, rho)) / dim);
            if (w.back().get_den() != 1) throw InternalInconsistency("central character is not integral");
        }
        omega.push_back(w);
        std::set<std::vector<mpq_class>> seen;
        for (std::size_t l = 0; l < labels.size(); ++l) {
            std::vector<mpq_class> sig;
            for (const auto& om : omega) sig.push_back(om[l]);
            seen.insert(sig);
        }
        if (seen.size() == labels.size()) {
            ++used;
            break;
        }
        if (used + 1 == supports.size()) throw InternalInconsistency("central characters do not separate the labels");
    }

    // Restricted to the pivot columns, K b_j - w b_j vanishes exactly when it
    // vanishes on all diagrams, so each isotypic part is the relation space of
    // these restricted columns.
    std::vector<std::vector<std::vector<std::int64_t>>> kbs;
    for (std::size_t k = 0; k < used; ++k) {
        auto elems = class_elements(supports[k], n);
        std::vector<std::vector<std::uint32_t>> moved(t, std::vector<std::uint32_t>(elems.size()));
        const auto& tab = diagram_table(n);
        std::vector<int> q(n);
        for (std::size_t i = 0; i < t; ++i) {
            const auto& p = tab.partners[d.pivots[i]];
            for (std::size_t e = 0; e < elems.size(); ++e) {
                const Perm& g = elems[e];
                for (int a = 0; a < n; ++a) q[g[a]] = g[p[a]];
                moved[i][e] = rank_of(q);
            }
        }
        std::vector<std::vector<std::int64_t>> kb(t, std::vector<std::int64_t>(t));
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = 0; j < t; ++j)
                for (auto idx : moved[i]) kb[i][j] += lookup(d.images[j], idx);
        kbs.push_back(std::move(kb));
    }

    for (std::size_t l = 0; l < labels.size(); ++l) {
        std::vector<QVec<std::size_t>> cols(t);
        for (std::size_t j = 0; j < t; ++j)
            for (std::size_t k = 0; k < used; ++k) {
                mpz_class w = omega[k][l].get_num();
                for (std::size_t i = 0; i < t; ++i) {
                    mpz_class x = mpz_class(static_cast<long>(kbs[k][i][j])) - w * static_cast<long>(bpiv[i][j]);
                    if (x != 0) cols[j].emplace_back(k * t + i, mpq_class(x));
                }
            }
        d.coords[labels[l]] = relations(cols);
    }
    std::size_t total = 0;
    for (const auto& [la, c] : d.coords) total += c.size();
    if (total != t) throw InternalInconsistency("isotypic split does not exhaust the projector image");
    return d;
}

ProjectionData& projection_data(int n) {
    static std::mutex mu;
    static std::map<int, ProjectionData> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    ProjectionData d = compute_projection(n);
    std::lock_guard lock(mu);
    return cache.emplace(n, std::move(d)).first->second;
}

std::vector<ChordVector> materialize(ProjectionData& d, const Partition& la) {
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto it = d.vectors.find(la);
    if (it != d.vectors.end()) return it->second;
    std::size_t N = diagram_count(d.n);
    Echelon<std::uint32_t> e;
    for (const auto& c : d.coords.at(la)) {
        QVec<std::size_t> cq;
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j] != 0) cq.emplace_back(j, c[j]);
        ZVec<std::size_t> cz = primitive(cq);
        std::vector<mpz_class> acc(N, 0);
        for (const auto& [j, z] : cz)
            for (const auto& [i, v] : d.images[j]) acc[i] += z * v;
        ZVec<std::uint32_t> row;
        for (std::size_t i = 0; i < N; ++i)
            if (acc[i] != 0) row.emplace_back(static_cast<std::uint32_t>(i), acc[i]);
        e.insert(row);
    }
    e.fully_reduce();
    std::vector<ChordVector> out;
    for (const auto& row : e.basis()) out.push_back(ChordVector::from_zvec(d.n, row));
    d.vectors.emplace(la, out);
    return out;
}

}  // namespace

std::vector<ChordVector> derivation_projection(const Partition& la, int n) {
    if (la.size() * 2 != n) throw DimensionMismatch("label " + la.str() + " does not match " + std::to_string(n) + " points");
    if (n > kExplicitChordLimit) throw SizePolicy("explicit chord vectors are limited to " + std::to_string(kExplicitChordLimit) + " points");
    return materialize(projection_data(n), la);
}

std::map<Partition, std::size_t, RevLex> derivation_projection_dims(int n, bool allow_large) {
    std::map<Partition, std::size_t, RevLex> out;
    if (n > kExplicitChordLimit) {
        if (!allow_large || n > 14) throw SizePolicy("explicit chord computations above " + std::to_string(kExplicitChordLimit) + " points need the large opt-in");
        for (const auto& la : enumerate_partitions(n / 2)) out[la] = projection_dimension_by_trace(la, n).get_ui();
        return out;
    }
    for (const auto& [la, c] : projection_data(n).coords) out[la] = c.size();
    return out;
}

std::vector<ChordVector> derivation_projection_from_eigenspace(const Partition& la, int n) {
    OperatorProduct op = derivation_projector_twisted(n);
    Echelon<std::uint32_t> e;
    for (const auto& v : eigenspace_basis(la, n)) e.insert(apply(op, v).qvec());
    e.fully_reduce();
    std::vector<ChordVector> out;
    for (const auto& row : e.basis()) out.push_back(ChordVector::from_zvec(n, row));
    return out;
}

std::map<Partition, std::vector<ChordVector>, RevLex> p_stable_basis(int two_k) {
    int n = two_k + 2;
    std::map<Partition, std::vector<ChordVector>, RevLex> out;
    for (const auto& la : enumerate_partitions(n / 2)) out[la] = derivation_projection(la, n);
    return out;
}

}  // namespace symderiv
