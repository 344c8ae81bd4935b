#include "symderiv/deriv.hpp"

#include "symderiv/errors.hpp"
#include "symderiv/symfunc.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <tuple>

namespace symderiv {

namespace {

Word mask(int n) { return n >= 16 ? ~Word(0) : (Word(1) << (4 * n)) - 1; }

// x with slot p replaced by the n_ins letters of ins.
Word splice(Word x, int nx, int p, Word ins, int n_ins) {
    Word prefix = x >> (4 * (nx - p));
    Word suffix = x & mask(nx - p - 1);
    return ((prefix << (4 * n_ins) | ins) << (4 * (nx - p - 1))) | suffix;
}

std::vector<int> letter_weight(int code, int g) {
    std::vector<int> w(g, 0);
    w[letter_index(code) - 1] = letter_is_y(code) ? -1 : 1;
    return w;
}

std::vector<int> sub(std::vector<int> a, const std::vector<int>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

int l1(const std::vector<int>& w) {
    int s = 0;
    for (int x : w) s += std::abs(x);
    return s;
}

void require_h_shape(const SparseTensor& t) {
    if (t.degree() < 3) throw DimensionMismatch("derivations need tensors of length at least 3");
}

}  // namespace

SparseTensor h_project(const SparseTensor& t) {
    require_h_shape(t);
    return apply(derivation_projector(t.degree()), t);
}

bool is_in_h(const SparseTensor& t) {
    require_h_shape(t);
    if (!(rotate(t) == t)) return false;
    return theta_tail(t) == t * mpq_class(t.degree() - 1);
}

SparseTensor lie_spider(int g, const std::vector<int>& letters) {
    if (letters.size() < 3) throw DimensionMismatch("a Lie spider needs at least three legs");
    std::vector<int> rest(letters.begin() + 1, letters.end());
    SparseTensor t = tensor(SparseTensor::letter(g, letters.front()), left_normed_letters(g, rest));
    int n = t.degree();
    return apply(cyclic_sum(n, n), t);
}

SparseTensor bracket(const SparseTensor& a, const SparseTensor& b) {
    if (a.genus() != b.genus()) throw GenusMismatch("bracket of derivations of different genus");
    require_h_shape(a);
    require_h_shape(b);
    int na = a.degree(), nb = b.degree();
    int n = na + nb - 2;
    TensorAccumulator acc(a.genus(), n);
    // Index the words of each factor by their first letter.
    auto by_head = [](const SparseTensor& t) {
        std::vector<std::vector<const std::pair<Word, mpq_class>*>> idx(16);
        for (const auto& term : t.terms()) idx[word_letter(term.first, t.degree(), 0)].push_back(&term);
        return idx;
    };
    auto ha = by_head(a), hb = by_head(b);
    auto half = [&](const SparseTensor& x, const std::vector<std::vector<const std::pair<Word, mpq_class>*>>& other_heads, int ny,
                    int sign) {
        int nx = x.degree();
        for (const auto& [w, c] : x.terms()) {
            for (int p = 1; p < nx; ++p) {
                int l = word_letter(w, nx, p);
                int s = intersection(l, letter_dual(l));
                for (const auto* term : other_heads[letter_dual(l)]) {
                    Word tail = term->first & mask(ny - 1);
                    mpq_class coeff = c * term->second;
                    if (s * sign < 0) coeff = -coeff;
                    acc.add(splice(w, nx, p, tail, ny - 1), coeff);
                }
            }
        }
    };
    half(a, hb, nb, 1);
    half(b, ha, na, -1);
    return acc.finish();
}

SparseTensor x_bracket(int g, int l) {
    std::vector<int> letters(l, letter_x(1));
    letters.push_back(letter_y(1));
    return left_normed_letters(g, letters);
}

SparseTensor epsilon(int two_k, int g) {
    if (two_k < 2 || two_k % 2) throw DegreeParity("epsilon needs a positive even degree");
    SparseTensor x1 = SparseTensor::letter(g, letter_x(1)), y1 = SparseTensor::letter(g, letter_y(1));
    SparseTensor t = tensor(y1, x_bracket(g, two_k)) * mpq_class(2) + tensor(x1, lie_bracket(x_bracket(g, two_k - 1), y1)) * mpq_class(2);
    for (int i = 1; i <= two_k - 2; ++i) {
        SparseTensor term = tensor(x1, lie_bracket(x_bracket(g, i), x_bracket(g, two_k - 1 - i)));
        t = t + term * mpq_class(i % 2 ? 1 : -1);
    }
    return t;
}

SparseTensor cyclic_canonical(const SparseTensor& t) {
    int n = t.degree();
    TensorAccumulator acc(t.genus(), n);
    for (const auto& [w, c] : t.terms()) {
        Word best = w, cur = w;
        for (int r = 1; r < n; ++r) {
            cur = ((cur << 4) & mask(n)) | (cur >> (4 * (n - 1)));
            best = std::min(best, cur);
        }
        acc.add(best, c);
    }
    return acc.finish();
}

std::vector<CyclicWord> cyclic_words(const SparseTensor& t) {
    std::vector<CyclicWord> out;
    SparseTensor canon = cyclic_canonical(t);
    for (const auto& [w, c] : canon.terms()) out.push_back({w, c});
    return out;
}

SparseTensor enomoto_satoh(const SparseTensor& t) {
    require_h_shape(t);
    return cyclic_canonical(contract(t, 1, 2));
}

namespace {

std::mutex ideal_mu;
std::map<std::tuple<int, int, std::vector<int>>, Subspace> ideal_cache;

}  // namespace

Subspace ideal_weight_space(int g, int k, const std::vector<int>& weight) {
    if (k < 2) throw DimensionMismatch("the ideal starts in degree 2");
    if (static_cast<int>(weight.size()) != g) throw DimensionMismatch("weight length differs from the genus");
    auto key = std::make_tuple(g, k, weight);
    {
        std::lock_guard lock(ideal_mu);
        auto it = ideal_cache.find(key);
        if (it != ideal_cache.end()) return it->second;
    }
    Subspace s(g, k);
    SparseTensor om = omega(g);
    std::vector<int> seq;
    std::function<void(const std::vector<int>&)> rec = [&](const std::vector<int>& need) {
        int left = k - 2 - static_cast<int>(seq.size());
        if (l1(need) > left || (left - l1(need)) % 2) return;
        if (left == 0) {
            std::vector<SparseTensor> us;
            for (int c : seq) us.push_back(SparseTensor::letter(g, c));
            us.push_back(om);
            s.insert(left_normed(us));
            return;
        }
        for (int c = 0; c < 2 * g; ++c) {
            seq.push_back(c);
            rec(sub(need, letter_weight(c, g)));
            seq.pop_back();
        }
    };
    rec(weight);
    std::lock_guard lock(ideal_mu);
    return ideal_cache.emplace(key, std::move(s)).first->second;
}

namespace {

std::vector<std::vector<int>> weights_up_to(int g, int len) {
    std::vector<std::vector<int>> out;
    std::vector<int> w(g, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == g) {
            if (l1(w) <= len && (len - l1(w)) % 2 == 0) out.push_back(w);
            return;
        }
        for (int v = -len; v <= len; ++v) {
            w[i] = v;
            rec(i + 1);
        }
        w[i] = 0;
    };
    rec(0);
    return out;
}

double ambient_size(int g, int n) {
    double s = 1;
    for (int i = 0; i < n; ++i) s *= 2 * g;
    return s;
}

}  // namespace

Subspace ideal_basis(int g, int k) {
    if (ambient_size(g, k - 2) > 2e5) throw SizePolicy("ideal spans at this genus and degree are too large to enumerate");
    Subspace s(g, k);
    for (const auto& w : weights_up_to(g, k))
        for (const auto& b : ideal_weight_space(g, k, w).basis()) s.insert(b);
    return s;
}

bool in_ideal(const SparseTensor& xi) {
    int g = xi.genus(), k = xi.degree();
    std::map<std::vector<int>, SparseTensor::Terms> parts;
    for (const auto& term : xi.terms()) parts[word_weight(term.first, k, g)].push_back(term);
    for (auto& [w, terms] : parts)
        if (!ideal_weight_space(g, k, w).contains(SparseTensor::from_terms(g, k, terms))) return false;
    return true;
}

bool in_j(const SparseTensor& t) {
    if (!is_in_h(t)) return false;
    const int n = t.degree(), g = t.genus();
    const Word tail_mask = (Word(1) << (4 * (n - 1))) - 1;
    std::map<int, TensorAccumulator> tails;
    for (const auto& [w, c] : t.terms()) tails.try_emplace(word_letter(w, n, 0), g, n - 1).first->second.add(w & tail_mask, c);
    for (auto& [u, acc] : tails)
        if (!in_ideal(acc.finish())) return false;
    return true;
}

Subspace j_space(int g, int k) {
    if (k < 2 || k > 6) throw SizePolicy("explicit j spaces are computed for 2 <= k <= 6; use the character tables beyond");
    int n = k + 2;
    Subspace out(g, n);
    for (const auto& w : weights_up_to(g, n)) {
        std::vector<SparseTensor> gens;
        for (int u = 0; u < 2 * g; ++u) {
            auto rest = sub(w, letter_weight(u, g));
            if (l1(rest) > k + 1) continue;
            for (const auto& b : ideal_weight_space(g, k + 1, rest).basis()) gens.push_back(tensor(SparseTensor::letter(g, u), b));
        }
        if (gens.empty()) continue;
        std::vector<std::vector<SparseTensor>> images;
        for (const auto& t : gens) images.push_back({rotate(t) - t});
        for (const auto& rel : kernel_of_images(images)) {
            TensorAccumulator acc(g, n);
            for (std::size_t i = 0; i < gens.size(); ++i)
                if (rel[i] != 0) acc.add(gens[i], rel[i]);
            out.insert(acc.finish());
        }
    }
    return out;
}

namespace {

std::vector<SparseTensor> combine_all(const std::vector<SparseTensor>& ts, const std::vector<std::vector<mpq_class>>& rels, int g,
                                      int n) {
    Subspace s(g, n);
    for (const auto& rel : rels) {
        TensorAccumulator acc(g, n);
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (rel[i] != 0) acc.add(ts[i], rel[i]);
        SparseTensor t = acc.finish();
        if (!t.is_zero()) s.insert(t);
    }
    s.fully_reduce();
    return s.basis();
}

// Phi of every diagram; dependent when g < n/2.
std::vector<SparseTensor> invariant_tensors(int g, int n) {
    std::vector<SparseTensor> out;
    for (const auto& c : enumerate_diagrams(n)) out.push_back(phi(c, g));
    return out;
}

}  // namespace

std::vector<SparseTensor> h_invariants(int g, int k) {
    int n = k + 2;
    if (n % 2) return {};
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<SparseTensor>> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({g, k});
        if (it != cache.end()) return it->second;
    }
    // Rotation-invariant tensors in the span of phi are the rotation orbit
    // sums of the phi(C).
    std::set<std::uint32_t> seen;
    std::vector<SparseTensor> cyc;
    Perm rot = cycle_perm(n, n);
    for (const auto& c : enumerate_diagrams(n)) {
        std::uint32_t r = rank_of(c.partner());
        if (seen.count(r)) continue;
        SparseTensor t = phi(c, g), sum = t;
        seen.insert(r);
        for (int j = 1; j < n; ++j) {
            t = rotate(t);
            sum = sum + t;
        }
        ChordDiagram d = c;
        for (int j = 1; j < n; ++j) {
            d = act(rot, d);
            seen.insert(rank_of(d.partner()));
        }
        if (!sum.is_zero()) cyc.push_back(std::move(sum));
    }
    std::vector<std::vector<SparseTensor>> lie;
    for (const auto& t : cyc) lie.push_back({theta_tail(t) - t * mpq_class(n - 1)});
    auto out = combine_all(cyc, kernel_of_images(lie), g, n);
    std::lock_guard lock(mu);
    cache.emplace(std::make_pair(g, k), out);
    return out;
}

std::vector<SparseTensor> lie_invariants(int g, int k) {
    if (k % 2) return {};
    auto inv = invariant_tensors(g, k);
    std::vector<std::vector<SparseTensor>> lie;
    for (const auto& t : inv) lie.push_back({theta(t) - t * mpq_class(k)});
    return combine_all(inv, kernel_of_images(lie), g, k);
}

std::vector<SparseTensor> ideal_invariants(int g, int k) {
    if (k % 2) return {};
    return sp_invariants(ideal_weight_space(g, k, std::vector<int>(g, 0))).basis();
}

std::vector<SparseTensor> j_invariants(int g, int k) {
    auto hs = h_invariants(g, k);
    int n = k + 2;
    if (hs.empty()) return {};
    // Unknowns: coefficients on hs, then on the ideal bases per first letter.
    std::vector<std::vector<SparseTensor>> images;
    auto head_part = [&](const SparseTensor& t, int u) {
        TensorAccumulator acc(g, n - 1);
        for (const auto& [w, c] : t.terms())
            if (word_letter(w, n, 0) == u) acc.add(w & mask(n - 1), c);
        return acc.finish();
    };
    int letters = 2 * g;
    for (const auto& t : hs) {
        std::vector<SparseTensor> img;
        for (int u = 0; u < letters; ++u) img.push_back(head_part(t, u));
        images.push_back(std::move(img));
    }
    for (int u = 0; u < letters; ++u) {
        std::vector<int> w(g, 0);
        w = sub(w, letter_weight(u, g));
        for (const auto& b : ideal_weight_space(g, k + 1, w).basis()) {
            std::vector<SparseTensor> img(letters, SparseTensor(g, n - 1));
            img[u] = -b;
            images.push_back(std::move(img));
        }
    }
    std::vector<std::vector<mpq_class>> rels;
    for (auto rel : kernel_of_images(images)) {
        rel.resize(hs.size());
        rels.push_back(std::move(rel));
    }
    return combine_all(hs, rels, g, n);
}

InvariantDims unstable_invariant_dims(int g, int k) {
    if (k % 2 || k < 2 || k > 6) throw SizePolicy("direct invariant tables are computed for even 2 <= k <= 6");
    InvariantDims d;
    d.h = h_invariants(g, k).size();
    d.j = j_invariants(g, k).size();
    d.h_star = d.h - d.j;
    std::size_t lie = lie_invariants(g, k).size(), ideal = ideal_invariants(g, k).size();
    d.L = lie - ideal;
    d.h_g = d.h_star - d.L;
    return d;
}

std::vector<LabelledElement> v_basis(int two_k, int g) {
    std::vector<LabelledElement> out;
    auto basis = p_stable_basis(two_k);
    std::map<Partition, std::vector<ChordVector>, RevLex> by_h;
    for (auto& [mu, vs] : basis) by_h[conjugate(mu)] = vs;
    for (const auto& [la, vs] : by_h)
        for (const auto& c : vs) out.push_back({la, c, phi(c, g)});
    return out;
}

std::vector<LabelledElement> normalized_basis(int two_k, int g, std::optional<Partition> only) {
    if (only) {
        if (only->size() != two_k / 2 + 1) throw DimensionMismatch("label size differs from k+1");
        if (eigenvalue_poly(conjugate(*only))(g) == 0)
            throw UnstableGenus("eigenvalue of " + only->str() + " vanishes at genus " + std::to_string(g));
    }
    std::vector<LabelledElement> out;
    for (auto& e : v_basis(two_k, g)) {
        if (only && !(e.label == *only)) continue;
        mpz_class mu = eigenvalue_poly(conjugate(e.label))(g);
        if (mu == 0) throw UnstableGenus("eigenvalue of " + e.label.str() + " vanishes at genus " + std::to_string(g));
        mpq_class s = mpq_class(1) / mpq_class(mu);
        out.push_back({e.label, e.chords * s, e.tensor * s});
    }
    return out;
}

std::map<Partition, ChordVector, RevLex> invariant_part_coordinates(const SparseTensor& t) {
    int n = t.degree();
    if (n % 2 || n < 4) throw DegreeParity("orthogonal coordinates need an even derivation degree");
    int g = t.genus();
    ChordVector kap = kappa(t);
    auto basis = p_stable_basis(n - 2);
    std::vector<QVec<std::uint32_t>> cols{kap.qvec()};
    std::vector<Partition> owner;
    std::vector<const ChordVector*> vecs;
    for (const auto& [mu, vs] : basis)
        for (const auto& v : vs) {
            cols.push_back(v.qvec());
            owner.push_back(mu);
            vecs.push_back(&v);
        }
    std::map<Partition, ChordVector, RevLex> out;
    for (const auto& [mu, vs] : basis) out.emplace(conjugate(mu), ChordVector(n));
    if (kap.is_zero()) return out;
    auto rels = relations(cols);
    const std::vector<mpq_class>* rel = nullptr;
    for (const auto& r : rels)
        if (r[0] != 0) rel = &r;
    if (!rel) throw NotInvariant("contraction vector lies outside the derivation part of the chord space");
    std::map<Partition, ChordVector, RevLex> comp;
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        mpq_class c = -(*rel)[i + 1] / (*rel)[0];
        if (c == 0) continue;
        auto [it, fresh] = comp.try_emplace(owner[i], ChordVector(n));
        it->second = it->second + *vecs[i] * c;
    }
    for (const auto& [mu, f] : comp) {
        mpz_class ev = eigenvalue_poly(mu)(g);
        if (ev == 0) throw InternalInconsistency("nonzero contraction on a component with vanishing eigenvalue");
        out[conjugate(mu)] = f * (mpq_class(1) / mpq_class(ev));
    }
    return out;
}

std::map<Partition, ChordVector, RevLex> ortho_coordinates(const SparseTensor& t) {
    if (!is_sp_invariant(t)) throw NotInvariant("element is not Sp-invariant");
    return invariant_part_coordinates(t);
}

Sigma5Result genus1_sigma5(const std::vector<ChordDiagram>& u_diagrams, const std::vector<ChordDiagram>& detector,
                           Sigma5Convention convention) {
    Sigma5Result r;
    const bool published = convention == Sigma5Convention::published;
    OperatorProduct op{12, {cyclic_sum_twisted(12, 12)}};
    if (published) {
        for (const auto& f : lie_projector_twisted(11, 12).factors) op.factors.push_back(f);
    } else {
        op = derivation_projector_twisted(12);
    }
    for (const auto& d : u_diagrams) {
        if (d.points() != 12) throw DimensionMismatch("the degree-10 construction uses diagrams on 12 points");
        mpq_class s = published ? diagram_sign(d) : 1;
        r.u.push_back(phi(apply(op, ChordVector::unit(d, s)), 1));
    }
    for (const auto& d : detector) {
        std::vector<mpq_class> row;
        for (const auto& u : r.u) row.push_back(published ? mpq_class(alpha(d, u) * diagram_sign(d)) : alpha(d, u));
        r.matrix.push_back(std::move(row));
    }
    std::vector<QVec<Word>> us;
    for (const auto& u : r.u) us.push_back(to_qvec(u));
    r.rank = r.u.size() - relations(us).size();
    SparseTensor e4 = epsilon(4, 1);
    std::vector<QVec<Word>> images;
    for (const auto& u : r.u) images.push_back(to_qvec(enomoto_satoh(bracket(e4, u))));
    auto rels = relations(images);
    r.kernel_dim = rels.size();
    if (rels.size() != 1) return r;
    QVec<std::size_t> q;
    for (std::size_t i = 0; i < rels[0].size(); ++i)
        if (rels[0][i] != 0) q.emplace_back(i, rels[0][i]);
    auto z = primitive(q);
    r.relation.assign(r.u.size(), 0);
    for (const auto& [i, c] : z) r.relation[i] = c;
    TensorAccumulator acc(1, 12);
    for (std::size_t i = 0; i < r.u.size(); ++i) acc.add(r.u[i], r.relation[i]);
    r.element = acc.finish();
    return r;
}

SparseTensor h3_highest_weight(int g) {
    if (g < 3) throw UnstableGenus("the [3,1,1] summand needs genus at least 3");
    std::vector<int> letters = {letter_x(1), letter_x(1), letter_x(1), letter_x(2), letter_x(3)};
    std::sort(letters.begin(), letters.end());
    Subspace v(g, 5);
    do {
        v.insert(h_project(SparseTensor::word(g, letters)));
    } while (std::next_permutation(letters.begin(), letters.end()));
    auto hw = highest_weight_vectors(v, Partition{3, 1, 1}).basis();
    if (hw.size() != 1) throw InternalInconsistency("expected a single highest weight vector");
    return hw.front();
}

}  // namespace symderiv
