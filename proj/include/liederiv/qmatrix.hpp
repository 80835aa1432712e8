#ifndef LIEDERIV_QMATRIX_HPP
#define LIEDERIV_QMATRIX_HPP

#include <optional>
#include <vector>

#include "liederiv/rational.hpp"

namespace liederiv {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

/// Reduced row echelon form computed in place; returns the pivot columns.
std::vector<int> rref(QMatrix& m);

/// Basis of the right kernel {x : m x = 0}, in reduced echelon form with the
/// free variables enumerated in increasing column order.
QMatrix kernel_basis(const QMatrix& m, int cols);

/// Row-space membership helper built once per matrix.
class QRowSpace {
public:
    explicit QRowSpace(const QMatrix& rows);

    int dim() const { return static_cast<int>(rref_.size()); }
    bool contains(const QVector& v) const;
    /// Coordinates of v over the ORIGINAL rows, when v lies in their span.
    std::optional<QVector> solve(const QVector& v) const;
    /// v reduced modulo the row space (zero iff contained).
    QVector reduce(const QVector& v) const;
    const QMatrix& reduced_rows() const { return rref_; }
    const std::vector<int>& pivots() const { return pivots_; }

private:
    QMatrix rref_;
    QMatrix transform_; // transform_[i] expresses rref_[i] over the original rows
    std::vector<int> pivots_;
};

/// The single Jordan chain of a nilpotent operator with 1-dimensional kernel,
/// listed from the top element down to the kernel element: m maps chain[i] to
/// chain[i+1] and the last entry to zero. Returns nullopt when the operator is
/// not nilpotent or its kernel is larger than one dimension.
std::optional<QMatrix> single_jordan_chain(const QMatrix& m);

} // namespace liederiv

#endif
