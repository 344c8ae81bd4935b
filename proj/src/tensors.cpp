#include "symderiv/tensors.hpp"

#include "symderiv/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

namespace symderiv {

namespace {

Word letter_mask(int n) { return n >= 16 ? ~Word(0) : (Word(1) << (4 * n)) - 1; }

void check_shape(int g, int n) {
    if (g < 1 || g > kMaxGenus) throw SizePolicy("genus must lie in 1.." + std::to_string(kMaxGenus));
    if (n < 0 || n > kMaxWordLength) throw SizePolicy("tensor degree must lie in 0.." + std::to_string(kMaxWordLength));
}

Word set_letter(Word w, int n, int pos, int code) {
    int shift = 4 * (n - 1 - pos);
    return (w & ~(Word(0xF) << shift)) | (Word(code) << shift);
}

// Removes slots i < j (0-based).
Word delete_two(Word w, int n, int i, int j) {
    Word out = 0;
    for (int p = 0; p < n; ++p) {
        if (p == i || p == j) continue;
        out = out << 4 | Word(word_letter(w, n, p));
    }
    return out;
}

const std::vector<std::int8_t>& diagram_signs(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<std::int8_t>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::int8_t> s;
    for (const auto& c : enumerate_diagrams(n)) s.push_back(static_cast<std::int8_t>(diagram_sign(c)));
    return cache.emplace(n, std::move(s)).first->second;
}

}  // namespace

int parse_letter(const std::string& s) {
    if (s.size() < 2 || (s[0] != 'x' && s[0] != 'y')) throw std::invalid_argument("bad letter: " + s);
    int i = std::stoi(s.substr(1));
    if (i < 1 || i > kMaxGenus) throw std::invalid_argument("letter index out of range: " + s);
    return s[0] == 'x' ? letter_x(i) : letter_y(i);
}

std::string letter_str(int code) { return (letter_is_y(code) ? "y" : "x") + std::to_string(letter_index(code)); }

Word make_word(const std::vector<int>& letters) {
    if (letters.size() > kMaxWordLength) throw SizePolicy("word longer than " + std::to_string(kMaxWordLength));
    Word w = 0;
    for (int c : letters) w = w << 4 | Word(c);
    return w;
}

std::vector<int> word_letters(Word w, int n) {
    std::vector<int> out(n);
    for (int p = 0; p < n; ++p) out[p] = word_letter(w, n, p);
    return out;
}

std::string word_str(Word w, int n) {
    std::string s;
    for (int p = 0; p < n; ++p) s += letter_str(word_letter(w, n, p));
    return s;
}

std::vector<int> parse_word(const std::string& s) {
    std::vector<int> out;
    std::size_t p = 0;
    while (p < s.size()) {
        std::size_t q = p + 1;
        while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
        out.push_back(parse_letter(s.substr(p, q - p)));
        p = q;
    }
    return out;
}

SparseTensor::SparseTensor(int g, int n) : g_(g), n_(n) { check_shape(g, n); }

SparseTensor SparseTensor::letter(int g, int code) { return word(g, {code}); }

SparseTensor SparseTensor::word(int g, const std::vector<int>& letters, const mpq_class& c) {
    SparseTensor t(g, static_cast<int>(letters.size()));
    for (int code : letters)
        if (code < 0 || letter_index(code) > g) throw IndexError("letter exceeds the genus");
    if (c != 0) t.terms_.emplace_back(make_word(letters), c);
    return t;
}

SparseTensor SparseTensor::scalar(int g, const mpq_class& c) {
    SparseTensor t(g, 0);
    if (c != 0) t.terms_.emplace_back(0, c);
    return t;
}

SparseTensor SparseTensor::from_map(int g, int n, std::unordered_map<Word, mpq_class>&& m) {
    SparseTensor t(g, n);
    t.terms_.reserve(m.size());
    for (auto& [w, c] : m)
        if (c != 0) t.terms_.emplace_back(w, std::move(c));
    std::sort(t.terms_.begin(), t.terms_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return t;
}

SparseTensor SparseTensor::from_terms(int g, int n, Terms terms) {
    SparseTensor t(g, n);
    if (!std::is_sorted(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; }))
        std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    t.terms_.reserve(terms.size());
    for (auto& [w, c] : terms) {
        if (!t.terms_.empty() && t.terms_.back().first == w) {
            t.terms_.back().second += c;
            if (t.terms_.back().second == 0) t.terms_.pop_back();
        } else if (c != 0) {
            t.terms_.emplace_back(w, std::move(c));
        }
    }
    return t;
}

mpq_class SparseTensor::coeff(Word w) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), w, [](const auto& p, Word k) { return p.first < k; });
    return it != terms_.end() && it->first == w ? it->second : mpq_class(0);
}

SparseTensor SparseTensor::operator+(const SparseTensor& o) const {
    if (g_ != o.g_) throw GenusMismatch("adding tensors of different genus");
    if (n_ != o.n_) throw DimensionMismatch("adding tensors of different degree");
    SparseTensor r(g_, n_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            mpq_class s = terms_[i].second + o.terms_[j].second;
            if (s != 0) r.terms_.emplace_back(terms_[i].first, s);
            ++i, ++j;
        }
    }
    return r;
}

SparseTensor SparseTensor::operator-(const SparseTensor& o) const { return *this + (-o); }

SparseTensor SparseTensor::operator-() const { return *this * mpq_class(-1); }

SparseTensor SparseTensor::operator*(const mpq_class& s) const {
    SparseTensor r(g_, n_);
    if (s == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [w, c] : terms_) r.terms_.emplace_back(w, c * s);
    return r;
}

SparseTensor SparseTensor::with_genus(int g) const {
    SparseTensor r(g, n_);
    for (const auto& [w, c] : terms_)
        for (int p = 0; p < n_; ++p)
            if (letter_index(word_letter(w, n_, p)) > g) throw GenusMismatch("tensor uses letters beyond genus " + std::to_string(g));
    r.terms_ = terms_;
    return r;
}

std::string SparseTensor::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : terms_) {
        std::string cs = c.get_str();
        if (!s.empty()) s += cs[0] == '-' ? " - " : " + ";
        else if (cs[0] == '-') s += "-";
        if (cs[0] == '-') cs.erase(0, 1);
        if (cs != "1" || n_ == 0) s += cs + (n_ ? "*" : "");
        s += word_str(w, n_);
    }
    return s;
}

std::string SparseTensor::json() const {
    nlohmann::ordered_json j;
    j["g"] = g_;
    j["n"] = n_;
    j["terms"] = nlohmann::json::array();
    auto num = [](const mpz_class& z) -> nlohmann::ordered_json {
        if (z.fits_slong_p()) return z.get_si();
        return z.get_str();
    };
    for (const auto& [w, c] : terms_) j["terms"].push_back({word_str(w, n_), num(c.get_num()), num(c.get_den())});
    return j.dump();
}

SparseTensor SparseTensor::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    int g = j.at("g").get<int>(), n = j.at("n").get<int>();
    TensorAccumulator acc(g, n);
    for (const auto& t : j.at("terms")) {
        auto letters = parse_word(t.at(0).get<std::string>());
        if (static_cast<int>(letters.size()) != n) throw DimensionMismatch("word length differs from the declared degree");
        auto num = [](const nlohmann::json& v) { return v.is_string() ? mpz_class(v.get<std::string>()) : mpz_class(v.get<long>()); };
        mpq_class c(num(t.at(1)), num(t.at(2)));
        c.canonicalize();
        acc.add(make_word(letters), c);
    }
    return acc.finish();
}

void TensorAccumulator::add(Word w, const mpq_class& c) {
    if (c == 0) return;
    auto [it, fresh] = m_.try_emplace(w, c);
    if (!fresh) it->second += c;
}

void TensorAccumulator::add(const SparseTensor& t, const mpq_class& c) {
    if (t.genus() != g_) throw GenusMismatch("accumulating tensors of different genus");
    if (t.degree() != n_) throw DimensionMismatch("accumulating tensors of different degree");
    for (const auto& [w, x] : t.terms()) add(w, x * c);
}

SparseTensor TensorAccumulator::finish() { return SparseTensor::from_map(g_, n_, std::move(m_)); }

SparseTensor tensor(const SparseTensor& a, const SparseTensor& b) {
    if (a.genus() != b.genus()) throw GenusMismatch("tensor product of different genus");
    int n = a.degree() + b.degree();
    SparseTensor::Terms out;
    out.reserve(a.size() * b.size());
    for (const auto& [u, c] : a.terms())
        for (const auto& [v, d] : b.terms()) out.emplace_back(u << (4 * b.degree()) | v, c * d);
    if (n > kMaxWordLength) throw SizePolicy("tensor degree exceeds " + std::to_string(kMaxWordLength));
    return SparseTensor::from_terms(a.genus(), n, std::move(out));
}

SparseTensor tensor(const std::vector<SparseTensor>& factors) {
    if (factors.empty()) throw DimensionMismatch("empty tensor product");
    SparseTensor r = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) r = tensor(r, factors[i]);
    return r;
}

SparseTensor omega(int g) {
    TensorAccumulator acc(g, 2);
    for (int i = 1; i <= g; ++i) {
        acc.add(make_word({letter_x(i), letter_y(i)}), 1);
        acc.add(make_word({letter_y(i), letter_x(i)}), -1);
    }
    return acc.finish();
}

SparseTensor phi(const ChordDiagram& c, int g) { return phi(ChordVector::unit(c), g); }

SparseTensor phi(const ChordVector& v, int g) {
    int n = v.points();
    TensorAccumulator acc(g, n);
    const auto& signs = diagram_signs(n);
    int k = n / 2;
    std::vector<int> letters(n);
    for (const auto& [r, coeff] : v.entries()) {
        ChordDiagram d = diagram_at(n, r + 1);
        const auto& pairs = d.pairs();
        mpq_class base = coeff * signs[r];
        // Each chord independently takes x_i..y_i (+1) or y_i..x_i (-1).
        std::function<void(int, int)> rec = [&](int s, int sign) {
            if (s == k) {
                acc.add(make_word(letters), base * sign);
                return;
            }
            auto [a, b] = pairs[s];
            for (int i = 1; i <= g; ++i) {
                letters[a - 1] = letter_x(i);
                letters[b - 1] = letter_y(i);
                rec(s + 1, sign);
                letters[a - 1] = letter_y(i);
                letters[b - 1] = letter_x(i);
                rec(s + 1, -sign);
            }
        };
        rec(0, 1);
    }
    return acc.finish();
}

mpq_class alpha(const ChordDiagram& c, const SparseTensor& t) {
    if (c.points() != t.degree()) throw DimensionMismatch("diagram size differs from tensor degree");
    mpq_class s = 0;
    int n = t.degree();
    for (const auto& [w, x] : t.terms()) {
        int prod = 1;
        for (auto [a, b] : c.pairs()) {
            prod *= intersection(word_letter(w, n, a - 1), word_letter(w, n, b - 1));
            if (!prod) break;
        }
        if (prod) s += x * prod;
    }
    return s * diagram_sign(c);
}

ChordVector kappa(const SparseTensor& t) {
    int n = t.degree();
    if (n % 2) throw DegreeParity("contraction vector needs even degree");
    ChordVector out(n);
    if (n == 0) return out;
    const auto& signs = diagram_signs(n);
    std::unordered_map<std::uint32_t, mpq_class> acc;
    std::vector<int> partner(n, -1), letters(n);
    for (const auto& [w, x] : t.terms()) {
        for (int p = 0; p < n; ++p) letters[p] = word_letter(w, n, p);
        std::function<void(int)> rec = [&](int sign) {
            int a = 0;
            while (a < n && partner[a] >= 0) ++a;
            if (a == n) {
                std::uint32_t r = rank_of(partner);
                acc[r] += x * (sign * signs[r]);
                return;
            }
            for (int b = a + 1; b < n; ++b) {
                if (partner[b] >= 0) continue;
                int s = intersection(letters[a], letters[b]);
                if (!s) continue;
                partner[a] = b;
                partner[b] = a;
                rec(sign * s);
                partner[a] = partner[b] = -1;
            }
        };
        rec(1);
    }
    for (auto& [r, c] : acc) out.add(r, c);
    return out;
}

std::vector<mpq_class> kappa_D(const SparseTensor& t, const std::vector<ChordDiagram>& detector) {
    std::vector<mpq_class> out;
    for (const auto& c : detector) out.push_back(alpha(c, t));
    return out;
}

SparseTensor contract(const SparseTensor& t, int i, int j) {
    int n = t.degree();
    if (i < 1 || j <= i || j > n) throw IndexError("contraction slots must satisfy 1 <= i < j <= n");
    TensorAccumulator acc(t.genus(), n - 2);
    for (const auto& [w, x] : t.terms()) {
        int s = intersection(word_letter(w, n, i - 1), word_letter(w, n, j - 1));
        if (s) acc.add(delete_two(w, n, i - 1, j - 1), x * s);
    }
    return acc.finish();
}

mpq_class tensor_pairing(const SparseTensor& a, const SparseTensor& b) {
    if (a.degree() != b.degree()) throw DimensionMismatch("pairing tensors of different degree");
    int n = a.degree();
    mpq_class s = 0;
    for (const auto& [w, x] : a.terms()) {
        Word dual = 0;
        int sign = 1;
        for (int p = 0; p < n; ++p) {
            int l = word_letter(w, n, p);
            dual = dual << 4 | Word(letter_dual(l));
            sign *= intersection(l, letter_dual(l));
        }
        mpq_class y = b.coeff(dual);
        if (y != 0) s += x * y * sign;
    }
    return s;
}

SparseTensor lie_bracket(const SparseTensor& a, const SparseTensor& b) { return tensor(a, b) - tensor(b, a); }

SparseTensor left_normed(const std::vector<SparseTensor>& us) {
    if (us.empty()) throw DimensionMismatch("empty bracket");
    SparseTensor r = us.back();
    for (auto it = us.rbegin() + 1; it != us.rend(); ++it) r = lie_bracket(*it, r);
    return r;
}

SparseTensor left_normed_letters(int g, const std::vector<int>& letters) {
    std::vector<SparseTensor> us;
    for (int c : letters) us.push_back(SparseTensor::letter(g, c));
    return left_normed(us);
}

namespace {

// Expansion of [[...[w_from, w_from+1], ...], w_{n-1}] for one word, as
// (word of length n - from, sign) pairs.
void theta_word(Word w, int n, int from, const std::function<void(Word, int)>& emit) {
    std::vector<std::pair<Word, int>> cur{{Word(word_letter(w, n, from)), 1}};
    for (int p = from + 1; p < n; ++p) {
        Word a = Word(word_letter(w, n, p));
        int len = p - from;
        std::vector<std::pair<Word, int>> next;
        next.reserve(cur.size() * 2);
        for (auto [u, s] : cur) {
            next.emplace_back(u << 4 | a, s);
            next.emplace_back(a << (4 * len) | u, -s);
        }
        cur = std::move(next);
    }
    for (auto [u, s] : cur) emit(u, s);
}

}  // namespace

namespace {

// Left bracketing of slots from..n-1, slot prefix kept. Integer tensors with
// small coefficients take a machine-word path.
SparseTensor theta_from(const SparseTensor& t, int from) {
    int n = t.degree();
    Word tail_mask = letter_mask(n - from);
    bool small = true;
    long bound = 1L << 40 >> (n - from);
    for (const auto& [w, x] : t.terms())
        if (x.get_den() != 1 || !x.get_num().fits_slong_p() || std::abs(x.get_num().get_si()) > bound) {
            small = false;
            break;
        }
    if (small) {
        std::unordered_map<Word, long> acc;
        acc.reserve(t.size() * 4);
        for (const auto& [w, x] : t.terms()) {
            Word head = w & ~tail_mask;
            long c = x.get_num().get_si();
            theta_word(w, n, from, [&](Word u, int s) { acc[head | u] += s * c; });
        }
        SparseTensor::Terms out;
        out.reserve(acc.size());
        for (const auto& [w, c] : acc)
            if (c) out.emplace_back(w, mpq_class(c));
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return SparseTensor::from_terms(t.genus(), n, std::move(out));
    }
    TensorAccumulator acc(t.genus(), n);
    for (const auto& [w, x] : t.terms()) {
        Word head = w & ~tail_mask;
        theta_word(w, n, from, [&](Word u, int s) { acc.add(head | u, s > 0 ? x : mpq_class(-x)); });
    }
    return acc.finish();
}

}  // namespace

SparseTensor theta(const SparseTensor& t) {
    if (t.degree() == 0) return t;
    return theta_from(t, 0);
}

SparseTensor theta_tail(const SparseTensor& t) {
    if (t.degree() < 2) return t;
    return theta_from(t, 1);
}

mpq_class dsw_degree(const SparseTensor& t) {
    if (t.is_zero()) return t.degree();
    SparseTensor th = theta(t);
    const auto& [w, x] = t.terms().front();
    mpq_class c = th.coeff(w) / x;
    if (!(th == t * c)) throw NotLie("tensor is not an eigenvector of the left bracketing map");
    return c;
}

bool is_lie(const SparseTensor& t) { return theta(t) == t * mpq_class(t.degree()); }

SparseTensor iota(const SparseTensor& t) {
    int n = t.degree();
    SparseTensor::Terms out;
    out.reserve(t.size());
    for (const auto& [w, x] : t.terms()) {
        Word v = 0;
        int sign = 1;
        for (int p = 0; p < n; ++p) {
            int l = word_letter(w, n, p);
            if (letter_is_y(l)) sign = -sign;
            v = v << 4 | Word(letter_dual(l));
        }
        out.emplace_back(v, sign > 0 ? x : mpq_class(-x));
    }
    return SparseTensor::from_terms(t.genus(), n, std::move(out));
}

SparseTensor permute(const Perm& g, const SparseTensor& t) {
    int n = t.degree();
    if (static_cast<int>(g.size()) != n) throw DimensionMismatch("permutation degree differs from tensor degree");
    SparseTensor::Terms out;
    out.reserve(t.size());
    for (const auto& [w, x] : t.terms()) {
        Word v = 0;
        for (int p = 0; p < n; ++p) v = set_letter(v, n, g[p], word_letter(w, n, p));
        out.emplace_back(v, x);
    }
    return SparseTensor::from_terms(t.genus(), n, std::move(out));
}

SparseTensor apply(const GroupAlgebraOperator& op, const SparseTensor& t) {
    TensorAccumulator acc(t.genus(), t.degree());
    for (const auto& [p, c] : op.terms()) acc.add(permute(p, t), mpq_class(c));
    return acc.finish();
}

SparseTensor apply(const OperatorProduct& op, const SparseTensor& t) {
    SparseTensor r = t;
    for (auto it = op.factors.rbegin(); it != op.factors.rend(); ++it) r = apply(*it, r);
    return r;
}

SparseTensor rotate(const SparseTensor& t) {
    int n = t.degree();
    if (n < 2) return t;
    return permute(cycle_perm(n, n), t);
}

SparseTensor restrict_genus(const SparseTensor& t, int g) {
    int n = t.degree();
    SparseTensor::Terms out;
    for (const auto& [w, x] : t.terms()) {
        bool keep = true;
        for (int p = 0; p < n && keep; ++p) keep = letter_index(word_letter(w, n, p)) <= g;
        if (keep) out.emplace_back(w, x);
    }
    return SparseTensor::from_terms(g, n, std::move(out));
}

std::vector<int> word_weight(Word w, int n, int g) {
    std::vector<int> wt(g, 0);
    for (int p = 0; p < n; ++p) {
        int l = word_letter(w, n, p);
        wt[letter_index(l) - 1] += letter_is_y(l) ? -1 : 1;
    }
    return wt;
}

SparseTensor weight_part(const SparseTensor& t, const std::vector<int>& weight) {
    SparseTensor::Terms out;
    for (const auto& [w, x] : t.terms())
        if (word_weight(w, t.degree(), t.genus()) == weight) out.emplace_back(w, x);
    return SparseTensor::from_terms(t.genus(), t.degree(), std::move(out));
}

namespace {

SpGenerator make_generator(int g, std::string name, std::vector<std::tuple<int, int, int>> rules) {
    SpGenerator d{std::move(name), std::vector<std::vector<std::pair<int, int>>>(2 * g)};
    for (auto [from, to, c] : rules) d.images[from].emplace_back(to, c);
    return d;
}

}  // namespace

std::vector<SpGenerator> sp_raising(int g) {
    std::vector<SpGenerator> out;
    for (int i = 1; i <= g; ++i)
        for (int j = i + 1; j <= g; ++j) {
            out.push_back(make_generator(g, "e" + std::to_string(i) + "-e" + std::to_string(j),
                                         {{letter_x(j), letter_x(i), 1}, {letter_y(i), letter_y(j), -1}}));
            out.push_back(make_generator(g, "e" + std::to_string(i) + "+e" + std::to_string(j),
                                         {{letter_y(j), letter_x(i), 1}, {letter_y(i), letter_x(j), 1}}));
        }
    for (int i = 1; i <= g; ++i) out.push_back(make_generator(g, "2e" + std::to_string(i), {{letter_y(i), letter_x(i), 1}}));
    return out;
}

std::vector<SpGenerator> sp_lowering(int g) {
    std::vector<SpGenerator> out;
    for (int i = 1; i <= g; ++i)
        for (int j = i + 1; j <= g; ++j) {
            out.push_back(make_generator(g, "-(e" + std::to_string(i) + "-e" + std::to_string(j) + ")",
                                         {{letter_x(i), letter_x(j), 1}, {letter_y(j), letter_y(i), -1}}));
            out.push_back(make_generator(g, "-(e" + std::to_string(i) + "+e" + std::to_string(j) + ")",
                                         {{letter_x(i), letter_y(j), 1}, {letter_x(j), letter_y(i), 1}}));
        }
    for (int i = 1; i <= g; ++i) out.push_back(make_generator(g, "-2e" + std::to_string(i), {{letter_x(i), letter_y(i), 1}}));
    return out;
}

SparseTensor apply_derivation(const SpGenerator& d, const SparseTensor& t) {
    int n = t.degree();
    if (static_cast<int>(d.images.size()) != 2 * t.genus()) throw GenusMismatch("generator and tensor genus differ");
    TensorAccumulator acc(t.genus(), n);
    for (const auto& [w, x] : t.terms())
        for (int p = 0; p < n; ++p)
            for (auto [to, c] : d.images[word_letter(w, n, p)]) acc.add(set_letter(w, n, p, to), x * c);
    return acc.finish();
}

bool is_sp_invariant(const SparseTensor& t) {
    for (const auto& d : sp_raising(t.genus()))
        if (!apply_derivation(d, t).is_zero()) return false;
    for (const auto& d : sp_lowering(t.genus()))
        if (!apply_derivation(d, t).is_zero()) return false;
    return true;
}

QVec<Word> to_qvec(const SparseTensor& t) { return QVec<Word>(t.terms().begin(), t.terms().end()); }

SparseTensor from_qvec(int g, int n, const QVec<Word>& v) { return SparseTensor::from_terms(g, n, SparseTensor::Terms(v.begin(), v.end())); }

bool Subspace::insert(const SparseTensor& t) {
    if (t.genus() != g_ || t.degree() != n_) throw DimensionMismatch("tensor does not belong to this ambient space");
    return e_.insert(to_qvec(t));
}

bool Subspace::contains(const SparseTensor& t) const {
    if (t.genus() != g_ || t.degree() != n_) throw DimensionMismatch("tensor does not belong to this ambient space");
    return e_.contains(to_qvec(t));
}

std::vector<SparseTensor> Subspace::basis() const {
    std::vector<SparseTensor> out;
    for (const auto& row : e_.basis()) out.push_back(from_qvec(g_, n_, symderiv::to_qvec(row)));
    return out;
}

std::vector<std::vector<mpq_class>> kernel_of_images(const std::vector<std::vector<SparseTensor>>& images) {
    using Key = std::pair<std::size_t, Word>;
    std::vector<QVec<Key>> cols;
    for (const auto& img : images) {
        QVec<Key> v;
        for (std::size_t m = 0; m < img.size(); ++m)
            for (const auto& [w, c] : img[m].terms()) v.emplace_back(Key{m, w}, c);
        cols.push_back(std::move(v));
    }
    return relations(cols);
}

Subspace sp_invariants(const Subspace& v) {
    int n = v.degree(), g = v.genus();
    Subspace out(g, n);
    if (n % 2) return out;
    auto vb = v.basis();
    std::vector<QVec<Word>> cols;
    for (const auto& b : vb) cols.push_back(to_qvec(b));
    for (const auto& c : enumerate_diagrams(n)) cols.push_back(to_qvec(phi(c, g)));
    for (const auto& rel : relations(cols)) {
        TensorAccumulator acc(g, n);
        for (std::size_t i = 0; i < vb.size(); ++i)
            if (rel[i] != 0) acc.add(vb[i], rel[i]);
        out.insert(acc.finish());
    }
    out.fully_reduce();
    return out;
}

Subspace highest_weight_vectors(const Subspace& v, const Partition& target) {
    int g = v.genus(), n = v.degree();
    if (target.height() > g) throw DimensionMismatch("target has more rows than the genus");
    std::vector<int> weight(g, 0);
    for (int i = 0; i < target.height(); ++i) weight[i] = target[i];
    Subspace part(g, n);
    for (const auto& b : v.basis()) part.insert(weight_part(b, weight));
    auto pb = part.basis();
    std::vector<std::vector<SparseTensor>> images;
    auto raise = sp_raising(g);
    for (const auto& b : pb) {
        std::vector<SparseTensor> img;
        for (const auto& d : raise) img.push_back(apply_derivation(d, b));
        images.push_back(std::move(img));
    }
    Subspace out(g, n);
    for (const auto& rel : kernel_of_images(images)) {
        TensorAccumulator acc(g, n);
        for (std::size_t i = 0; i < pb.size(); ++i)
            if (rel[i] != 0) acc.add(pb[i], rel[i]);
        out.insert(acc.finish());
    }
    out.fully_reduce();
    return out;
}

SparseTensor wedge3(int g, int u, int v, int w) {
    auto L = [g](int c) { return SparseTensor::letter(g, c); };
    return tensor(L(u), lie_bracket(L(v), L(w))) + tensor(L(v), lie_bracket(L(w), L(u))) + tensor(L(w), lie_bracket(L(u), L(v)));
}

}  // namespace symderiv
