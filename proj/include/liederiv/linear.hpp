#ifndef LIEDERIV_LINEAR_HPP
#define LIEDERIV_LINEAR_HPP

#include <optional>
#include <vector>

#include "liederiv/qmatrix.hpp"
#include "liederiv/rational_function.hpp"

namespace liederiv {

using RVector = std::vector<RationalFunction>;

/// Canonical scaling of a vector over R = Q(x1..xn): clear denominators,
/// divide out the common polynomial factor and the rational content, and give
/// the first nonzero entry a positive leading coefficient. The result spans
/// the same line; zero maps to zero.
RVector normalize_vector(RVector v);

/// Outcome of Gaussian elimination over R with dependence tracking.
struct DependenceOutcome {
    bool independent;
    int rank;
    std::vector<int> pivot_columns;        // one per pivot, in elimination order
    std::optional<RVector> dependence;     // canonical coefficients over the input rows
};

/// Division-free Gaussian elimination over R (cross-multiplication updates),
/// pivoting on the candidate row whose entry has the numerator of minimal
/// total degree, ties broken by row index. Returns either an independence
/// certificate (the pivot set) or the first nontrivial dependence.
DependenceOutcome solve_dependence(const std::vector<RVector>& rows);

int rank_over_R(const std::vector<RVector>& rows);

/// Incremental row space over the field R with coordinate extraction.
class RSpan {
public:
    explicit RSpan(int width);

    int width() const { return width_; }
    int dim() const { return static_cast<int>(rows_.size()); }

    /// Adjoins v when it is independent of the current span; returns whether
    /// it was adjoined.
    bool insert(const RVector& v);
    bool contains(const RVector& v) const;
    /// v reduced modulo the span (zero iff contained).
    RVector reduce(const RVector& v) const;
    /// Coordinates of v over the inserted (independent) vectors.
    std::optional<RVector> solve(const RVector& v) const;

private:
    int width_;
    std::vector<RVector> rows_;      // RREF over R: pivot entries 1, pivots clear elsewhere
    std::vector<RVector> transform_; // rows_[i] = sum transform_[i][j] * inserted_j
    std::vector<int> pivot_cols_;
};

/// Q-coordinates for a family of vectors over R: per column slot, the entries
/// are brought over a common denominator and the numerator monomials become
/// coordinates. Row i of the result represents vectors[i].
QMatrix q_coordinate_matrix(const std::vector<RVector>& vectors);

} // namespace liederiv

#endif
