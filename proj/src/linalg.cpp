#include "symderiv/linalg.hpp"

namespace symderiv {

namespace {

// In-place reduced row echelon form with pivots searched among the first
// cols columns; every column of each row is updated. Returns pivot columns.
std::vector<std::size_t> rref(QMatrix& a, std::size_t cols) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        mpq_class inv = 1 / a[r][c];
        std::size_t width = a[r].size();
        for (std::size_t j = c; j < width; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (std::size_t j = c; j < width; ++j)
                if (a[r][j] != 0) a[i][j] -= f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

std::vector<std::vector<mpq_class>> nullspace(QMatrix a, std::size_t cols) {
    auto piv = rref(a, cols);
    std::vector<bool> is_piv(cols, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::vector<mpq_class>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<mpq_class> x(cols, 0);
        x[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a[r][f];
        out.push_back(std::move(x));
    }
    return out;
}

std::size_t matrix_rank(QMatrix a) {
    std::size_t cols = a.empty() ? 0 : a.front().size();
    return rref(a, cols).size();
}

QMatrix solve(QMatrix a, QMatrix b) {
    std::size_t n = a.size();
    std::size_t m = b.empty() ? 0 : b.front().size();
    for (std::size_t i = 0; i < n; ++i) a[i].insert(a[i].end(), b[i].begin(), b[i].end());
    auto piv = rref(a, n);
    if (piv.size() != n) throw InternalInconsistency("singular system");
    QMatrix x(n, std::vector<mpq_class>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) x[i][j] = a[i][n + j];
    return x;
}

std::uint64_t ModEchelon::mul(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t ModEchelon::reduce_signed(std::int64_t x) {
    std::int64_t r = x % static_cast<std::int64_t>(kPrime);
    if (r < 0) r += static_cast<std::int64_t>(kPrime);
    return static_cast<std::uint64_t>(r);
}

std::uint64_t ModEchelon::inv(std::uint64_t a) {
    std::uint64_t result = 1, e = kPrime - 2;
    while (e) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

bool ModEchelon::insert(const std::vector<std::pair<std::size_t, std::int64_t>>& v) {
    std::vector<std::uint64_t> row(dim_, 0);
    for (const auto& [i, c] : v) row[i] = reduce_signed(c);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        std::uint64_t f = row[pivots_[r]];
        if (!f) continue;
        const auto& pr = rows_[r];
        for (std::size_t j = 0; j < dim_; ++j) {
            if (!pr[j]) continue;
            std::uint64_t t = mul(f, pr[j]);
            row[j] = row[j] >= t ? row[j] - t : row[j] + kPrime - t;
        }
    }
    std::size_t p = 0;
    while (p < dim_ && !row[p]) ++p;
    if (p == dim_) return false;
    std::uint64_t s = inv(row[p]);
    for (auto& x : row)
        if (x) x = mul(x, s);
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
    return true;
}

}  // namespace symderiv
