#include "fliplab/lp.hpp"

#include <cassert>
#include <stdexcept>

namespace fliplab {

namespace {

// Standard-form tableau simplex, Bland's rule. Maximizes c.y, y >= 0,
// M y = rhs with rhs >= 0 and an initial identity basis in the last columns.
class Tableau {
  public:
    Tableau(size_t rows, size_t cols) : m_(rows), n_(cols), ban_from_(cols) {
        tab_ = QMat(rows + 1, cols + 1);  // last row = objective, last col = rhs
        basis_.resize(rows);
    }

    void ban_columns_from(size_t j) { ban_from_ = j; }

    Rat& at(size_t i, size_t j) { return tab_.at(i, j); }
    Rat& rhs(size_t i) { return tab_.at(i, n_); }
    Rat& obj(size_t j) { return tab_.at(m_, j); }
    Rat& objval() { return tab_.at(m_, n_); }
    std::vector<size_t>& basis() { return basis_; }

    // Returns false if unbounded.
    bool run() {
        while (true) {
            size_t enter = SIZE_MAX;
            for (size_t j = 0; j < n_ && j < ban_from_; ++j)
                if (obj(j) > 0) {
                    enter = j;
                    break;  // Bland: smallest index
                }
            if (enter == SIZE_MAX) return true;
            size_t leave = SIZE_MAX;
            Rat best;
            for (size_t i = 0; i < m_; ++i) {
                if (at(i, enter) <= 0) continue;
                Rat ratio = rhs(i) / at(i, enter);
                if (leave == SIZE_MAX || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == SIZE_MAX) return false;
            pivot(leave, enter);
        }
    }

    void pivot(size_t row, size_t col) {
        Rat inv = 1 / at(row, col);
        for (size_t j = 0; j <= n_; ++j) tab_.at(row, j) *= inv;
        for (size_t i = 0; i <= m_; ++i) {
            if (i == row || tab_.at(i, col) == 0) continue;
            Rat f = tab_.at(i, col);
            for (size_t j = 0; j <= n_; ++j) tab_.at(i, j) -= f * tab_.at(row, j);
        }
        basis_[row] = col;
    }

    size_t m_, n_;

  private:
    size_t ban_from_;
    QMat tab_;
    std::vector<size_t> basis_;
};

}  // namespace

LpResult solve_lp(const QMat& a_eq, const std::vector<Rat>& b_eq, const QMat& a_le,
                  const std::vector<Rat>& b_le, const std::vector<Rat>& c) {
    size_t nfree = c.size();
    size_t me = b_eq.size(), ml = b_le.size();
    assert(a_eq.rows() == me && (me == 0 || a_eq.cols() == nfree));
    assert(a_le.rows() == ml && (ml == 0 || a_le.cols() == nfree));

    // y = (u, w, s): x = u - w, slacks s for <= rows.
    size_t rows = me + ml;
    size_t n_real = 2 * nfree + ml;
    size_t n_total = n_real + rows;  // + artificials
    Tableau t(rows, n_total);

    auto coeff = [&](size_t i, size_t j) -> Rat {
        if (i < me) return a_eq.at(i, j);
        return a_le.at(i - me, j);
    };
    auto rhs_of = [&](size_t i) -> Rat { return i < me ? b_eq[i] : b_le[i - me]; };

    for (size_t i = 0; i < rows; ++i) {
        int sign = rhs_of(i) < 0 ? -1 : 1;
        for (size_t j = 0; j < nfree; ++j) {
            t.at(i, j) = sign * coeff(i, j);
            t.at(i, nfree + j) = -sign * coeff(i, j);
        }
        if (i >= me) t.at(i, 2 * nfree + (i - me)) = sign;
        t.at(i, n_real + i) = 1;
        t.rhs(i) = sign * rhs_of(i);
        t.basis()[i] = n_real + i;
    }
    // Phase 1: maximize -(sum of artificials), in reduced form against the
    // artificial basis.
    for (size_t j = 0; j < n_total; ++j) {
        Rat s = 0;
        for (size_t i = 0; i < rows; ++i)
            if (j != n_real + i) s += t.at(i, j);
        t.obj(j) = (j < n_real) ? s : Rat(0);
    }
    {
        Rat s = 0;
        for (size_t i = 0; i < rows; ++i) s += t.rhs(i);
        t.objval() = s;
    }
    t.run();  // phase 1 is always bounded
    if (t.objval() != 0) return {LpResult::Status::Infeasible, 0, {}};

    // Drive artificials out of the basis where possible.
    for (size_t i = 0; i < rows; ++i) {
        if (t.basis()[i] < n_real) continue;
        size_t j = 0;
        for (; j < n_real; ++j)
            if (t.at(i, j) != 0) break;
        if (j < n_real) t.pivot(i, j);
        // Otherwise the row is redundant; it stays with zero rhs.
    }

    // Phase 2 objective on the working tableau; artificials may never re-enter.
    std::vector<Rat> cc(n_total, 0);
    for (size_t j = 0; j < nfree; ++j) cc[j] = c[j], cc[nfree + j] = -c[j];
    for (size_t j = 0; j < n_total; ++j) t.obj(j) = cc[j];
    t.objval() = 0;
    for (size_t i = 0; i < rows; ++i) {
        size_t bj = t.basis()[i];
        if (t.obj(bj) == 0) continue;
        Rat f = t.obj(bj);
        for (size_t j = 0; j <= n_total; ++j) t.obj(j) -= f * t.at(i, j);
    }
    t.ban_columns_from(n_real);

    bool bounded = t.run();
    if (!bounded) return {LpResult::Status::Unbounded, 0, {}};

    std::vector<Rat> y(n_real, 0);
    for (size_t i = 0; i < rows; ++i)
        if (t.basis()[i] < n_real) y[t.basis()[i]] = t.rhs(i);
    std::vector<Rat> x(nfree);
    for (size_t j = 0; j < nfree; ++j) x[j] = y[j] - y[nfree + j];
    Rat val = 0;
    for (size_t j = 0; j < nfree; ++j) val += c[j] * x[j];
    return {LpResult::Status::Optimal, val, x};
}

}  // namespace fliplab
