#include "fliplab/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace fliplab {

namespace {

// Row-reduces m in place, returning pivot columns. Full pivoting is not
// needed over Q; partial (first nonzero) keeps things simple and exact.
std::vector<size_t> reduce(QMat& m, size_t limit_cols) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < limit_cols && row < m.rows(); ++col) {
        size_t sel = row;
        while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row) {
            for (size_t j = 0; j < m.cols(); ++j) swap(m.at(sel, j), m.at(row, j));
        }
        Rat inv = 1 / m.at(row, col);
        for (size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            Rat f = m.at(i, col);
            for (size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

size_t QMat::rank() const {
    QMat m = *this;
    return reduce(m, m.cols()).size();
}

std::optional<QMat> QMat::solve(const QMat& b) const {
    assert(b.rows() == rows_);
    QMat aug(rows_, cols_ + b.cols());
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        for (size_t j = 0; j < b.cols(); ++j) aug.at(i, cols_ + j) = b.at(i, j);
    }
    std::vector<size_t> pivots = reduce(aug, cols_);
    if (pivots.size() != cols_) return std::nullopt;  // not full column rank
    // Consistency: rows beyond rank must be all-zero on the rhs too.
    for (size_t i = pivots.size(); i < rows_; ++i)
        for (size_t j = 0; j < b.cols(); ++j)
            if (aug.at(i, cols_ + j) != 0) return std::nullopt;
    QMat x(cols_, b.cols());
    for (size_t r = 0; r < pivots.size(); ++r)
        for (size_t j = 0; j < b.cols(); ++j) x.at(pivots[r], j) = aug.at(r, cols_ + j);
    return x;
}

std::optional<QMat> QMat::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    QMat id(rows_, rows_);
    for (size_t i = 0; i < rows_; ++i) id.at(i, i) = 1;
    return solve(id);
}

Rat QMat::det() const {
    if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
    QMat m = *this;
    Rat d = 1;
    for (size_t col = 0; col < cols_; ++col) {
        size_t sel = col;
        while (sel < rows_ && m.at(sel, col) == 0) ++sel;
        if (sel == rows_) return Rat(0);
        if (sel != col) {
            for (size_t j = 0; j < cols_; ++j) swap(m.at(sel, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        Rat inv = 1 / m.at(col, col);
        for (size_t i = col + 1; i < rows_; ++i) {
            if (m.at(i, col) == 0) continue;
            Rat f = m.at(i, col) * inv;
            for (size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

mpz_class spanning_tree_count(const std::vector<std::vector<long>>& mult) {
    size_t n = mult.size();
    if (n == 0) return 0;
    if (n == 1) return 1;
    // Reduced Laplacian determinant (delete last row/column).
    QMat lap(n - 1, n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        long deg = 0;
        for (size_t j = 0; j < n; ++j)
            if (j != i) deg += mult[i][j];
        lap.at(i, i) = deg;
        for (size_t j = 0; j + 1 < n; ++j)
            if (j != i) lap.at(i, j) = -mult[i][j];
    }
    Rat d = lap.det();
    mpz_class num = d.get_num();
    if (d.get_den() != 1 || num < 0) throw std::logic_error("laplacian det not a nonneg integer");
    return num;
}

}  // namespace fliplab
