#include "ndsos/linalg.hpp"

#include <stdexcept>

namespace ndsos {

QMat qmat(std::size_t rows, std::size_t cols) {
    return QMat(rows, QVec(cols, Rational(0)));
}

std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational factor = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(QMat m) { return rref(m).size(); }

std::optional<QVec> solve(QMat a, QVec b) {
    const std::size_t rows = a.size();
    if (b.size() != rows) throw std::invalid_argument("solve: size mismatch");
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    std::vector<std::size_t> pivots = rref(a);
    // A pivot in the appended column means the system is inconsistent.
    for (std::size_t p : pivots)
        if (p == cols) return std::nullopt;
    QVec x(cols, Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][cols];
    return x;
}

std::vector<QVec> nullspace(QMat a) {
    if (a.empty()) return {};
    const std::size_t cols = a[0].size();
    std::vector<std::size_t> pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<QVec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVec v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<LdlResult> ldlt_psd(const QMat& a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("ldlt: not square");
    QMat work = a;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    LdlResult out;

    for (std::size_t k = 0; k < n; ++k) {
        // Symmetric pivot: largest remaining diagonal entry.
        std::size_t best = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (work[perm[i]][perm[i]] > work[perm[best]][perm[best]]) best = i;
        std::swap(perm[k], perm[best]);
        const std::size_t p = perm[k];
        Rational piv = work[p][p];
        if (piv < 0) return std::nullopt;
        if (piv == 0) {
            // PSD with zero diagonal forces the whole row to vanish.
            for (std::size_t i = k; i < n; ++i)
                if (work[p][perm[i]] != 0) return std::nullopt;
            continue;
        }
        QVec col(n, Rational(0));
        for (std::size_t i = k; i < n; ++i) col[perm[i]] = work[perm[i]][p] / piv;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j <= i; ++j) {
                const std::size_t pi = perm[i], pj = perm[j];
                Rational upd = work[pi][pj] - col[pi] * piv * col[pj];
                work[pi][pj] = upd;
                work[pj][pi] = upd;
            }
        out.d.push_back(piv);
        out.cols.push_back(std::move(col));
    }
    return out;
}

bool is_positive_semidefinite(const QMat& a) { return ldlt_psd(a).has_value(); }

bool is_positive_definite(const QMat& a) {
    auto res = ldlt_psd(a);
    if (!res) return false;
    if (res->d.size() != a.size()) return false;
    for (const auto& d : res->d)
        if (d <= 0) return false;
    return true;
}

}  // namespace ndsos
