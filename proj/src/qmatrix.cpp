#include "liederiv/qmatrix.hpp"

#include "liederiv/errors.hpp"

namespace liederiv {

std::vector<int> rref(QMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i) {
            if (!m[i][c].is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(m[r], m[pivot]);
        const Rational inv = Rational(1) / m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            const Rational f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(pivots.size(), QVector{});
    return pivots;
}

QMatrix kernel_basis(const QMatrix& m, int cols) {
    QMatrix work = m;
    const std::vector<int> pivots = rref(work);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;

    QMatrix basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        QVector v(cols, Rational(0));
        v[c] = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = -work[r][c];
        }
        basis.push_back(std::move(v));
    }
    // Already in echelon form up to row order; normalize deterministically.
    rref(basis);
    return basis;
}

QRowSpace::QRowSpace(const QMatrix& rows) {
    const std::size_t n = rows.size();
    const std::size_t cols = n ? rows[0].size() : 0;
    QMatrix aug = rows;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i].push_back(Rational(i == j ? 1 : 0));
    }
    // RREF restricted to the original columns; the appended identity tracks
    // the row operations.
    int r = 0;
    const int irows = static_cast<int>(n);
    for (int c = 0; c < static_cast<int>(cols) && r < irows; ++c) {
        int pivot = -1;
        for (int i = r; i < irows; ++i) {
            if (!aug[i][c].is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(aug[r], aug[pivot]);
        const Rational inv = Rational(1) / aug[r][c];
        for (auto& x : aug[r]) x *= inv;
        for (int i = 0; i < irows; ++i) {
            if (i == r || aug[i][c].is_zero()) continue;
            const Rational f = aug[i][c];
            for (std::size_t j = 0; j < aug[i].size(); ++j) aug[i][j] -= f * aug[r][j];
        }
        pivots_.push_back(c);
        ++r;
    }
    for (int i = 0; i < r; ++i) {
        rref_.push_back(QVector(aug[i].begin(), aug[i].begin() + cols));
        transform_.push_back(QVector(aug[i].begin() + cols, aug[i].end()));
    }
}

QVector QRowSpace::reduce(const QVector& v) const {
    QVector out = v;
    for (std::size_t r = 0; r < rref_.size(); ++r) {
        const Rational f = out[pivots_[r]];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < out.size(); ++j) out[j] -= f * rref_[r][j];
    }
    return out;
}

bool QRowSpace::contains(const QVector& v) const {
    const QVector res = reduce(v);
    for (const auto& x : res)
        if (!x.is_zero()) return false;
    return true;
}

std::optional<QVector> QRowSpace::solve(const QVector& v) const {
    QVector out = v;
    QVector coords(transform_.empty() ? 0 : transform_[0].size(), Rational(0));
    for (std::size_t r = 0; r < rref_.size(); ++r) {
        const Rational f = out[pivots_[r]];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < out.size(); ++j) out[j] -= f * rref_[r][j];
        for (std::size_t j = 0; j < coords.size(); ++j) coords[j] += f * transform_[r][j];
    }
    for (const auto& x : out)
        if (!x.is_zero()) return std::nullopt;
    return coords;
}

std::optional<QMatrix> single_jordan_chain(const QMatrix& m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return QMatrix{};
    auto apply = [&](const QVector& v) {
        QVector out(n, Rational(0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (!m[i][j].is_zero() && !v[j].is_zero()) out[i] += m[i][j] * v[j];
            }
        }
        return out;
    };
    auto is_zero = [](const QVector& v) {
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    };

    // Kernel must be one-dimensional and m nilpotent of index exactly n,
    // i.e. a single Jordan block.
    QMatrix km = QMatrix(n, QVector(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) km[i][j] = m[i][j];
    const QMatrix ker = kernel_basis(km, n);
    if (static_cast<int>(ker.size()) != 1) return std::nullopt;

    // Seed: first standard basis vector whose (n-1)-fold image is nonzero.
    for (int s = 0; s < n; ++s) {
        QVector v(n, Rational(0));
        v[s] = Rational(1);
        QMatrix chain{v};
        for (int step = 1; step < n; ++step) chain.push_back(apply(chain.back()));
        if (is_zero(chain.back())) continue;
        if (!is_zero(apply(chain.back()))) return std::nullopt; // not nilpotent
        return chain;
    }
    return std::nullopt; // nilpotency index < n with 1-dim kernel: impossible unless n == 0
}

} // namespace liederiv
