#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fliplab/rational.hpp"

namespace fliplab {

// Dense matrix over Q, sized for the small systems this library solves
// (barycentric functionals, lower-hull pivots, rank checks).
class QMat {
  public:
    QMat() : rows_(0), cols_(0) {}
    QMat(size_t r, size_t c) : rows_(r), cols_(c), a_(r * c) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rat& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    size_t rank() const;

    // Reduces [A | B] and returns X with A X = B, or nullopt if inconsistent
    // or underdetermined in a way that blocks back-substitution. A must have
    // full column rank for a unique solution.
    std::optional<QMat> solve(const QMat& b) const;

    // Inverse of a square nonsingular matrix; nullopt if singular.
    std::optional<QMat> inverse() const;

    Rat det() const;

  private:
    size_t rows_, cols_;
    std::vector<Rat> a_;
};

// Number of spanning trees of an undirected multigraph on n vertices,
// given edge multiplicities mult[u][v] (symmetric, diagonal ignored).
// Kirchhoff's theorem with an exact integer determinant.
mpz_class spanning_tree_count(const std::vector<std::vector<long>>& mult);

}  // namespace fliplab
