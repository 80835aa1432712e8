#ifndef LIEDERIV_LIE_ALGEBRA_HPP
#define LIEDERIV_LIE_ALGEBRA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liederiv/derivation.hpp"
#include "liederiv/linear.hpp"
#include "liederiv/qmatrix.hpp"

namespace liederiv {

inline constexpr int kDefaultMaxDim = 64;

/// Divide a derivation by the rational content of its first nonzero
/// coefficient's numerator: the canonical Q-scale representative of its line.
Derivation normalize_q_scale(const Derivation& d);

/// True iff the derivations are linearly independent over Q.
bool q_independent(const std::vector<Derivation>& elems);

/// Finite-dimensional Lie algebra over Q spanned by derivations: an ordered
/// Q-basis closed under bracket, with the bracket recorded as structure
/// constants. Immutable after construction.
class LieAlgebra {
public:
    /// Repeatedly adjoins brackets of basis elements until the span is closed
    /// under bracket. Generators are kept verbatim (dependent ones dropped);
    /// adjoined brackets are Q-scale normalized. Throws ClosureOverflowError
    /// when the dimension would exceed max_dim.
    static LieAlgebra close_under_bracket(const std::vector<Derivation>& generators,
                                          int max_dim = kDefaultMaxDim);

    int num_vars() const { return num_vars_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Derivation>& basis() const { return basis_; }
    const std::vector<Derivation>& generators() const { return generators_; }

    /// Coordinates of [basis_i, basis_j] over the basis.
    QVector bracket_coords(int i, int j) const;
    /// Coordinates of the bracket of two coordinate vectors.
    QVector bracket_of(const QVector& a, const QVector& b) const;
    /// Sparse bracket table: key (i, j) with i < j, value the coordinates of
    /// [basis_i, basis_j]; zero brackets are absent.
    const std::map<std::pair<int, int>, QVector>& table() const { return table_; }

    /// Q-coordinates of an arbitrary derivation over the basis, when it lies
    /// in the span.
    std::optional<QVector> coordinates(const Derivation& d) const;
    Derivation from_coordinates(const QVector& coords) const;

    /// Coefficient vectors of the basis (rows over R), for rank computations.
    std::vector<RVector> coefficient_rows() const;

    bool is_abelian() const;

private:
    LieAlgebra() = default;

    int num_vars_ = 1;
    std::vector<Derivation> generators_;
    std::vector<Derivation> basis_;
    // key (i, j) with i < j; missing entries are zero brackets
    std::map<std::pair<int, int>, QVector> table_;
};

int rank_over_R(const LieAlgebra& alg);

/// L^1 = L, L^{k+1} = [L, L^k], as coordinate subspaces in reduced echelon
/// form; all nonzero terms, ending either at the last nonzero term of a
/// nilpotent algebra or at the stabilized term of a non-nilpotent one.
std::vector<QMatrix> lower_central_series(const LieAlgebra& alg);

struct NilpotencyInfo {
    bool nilpotent;
    int nilpotency_class; // meaningful when nilpotent; 0 for the zero algebra
};
NilpotencyInfo is_nilpotent(const LieAlgebra& alg);

struct CenterInfo {
    QMatrix coords;                 // reduced echelon basis of the center
    std::vector<Derivation> basis;  // the same vectors realized as derivations
    int rank_over_R;
    int corank; // rank(L) - rank(Z)
};
CenterInfo center(const LieAlgebra& alg);

struct Subspace {
    QMatrix coords;
    std::vector<Derivation> elements;
    int dim() const { return static_cast<int>(coords.size()); }
};

/// All elements of the algebra lying in the R-span of the given derivations,
/// as a coordinate subspace.
Subspace r_span_intersection(const LieAlgebra& alg, const std::vector<Derivation>& spanners);

/// I = RZ intersect L. Verifies (rather than assumes) that I is an abelian
/// ideal; a verification failure throws InvariantError.
Subspace central_rank_ideal(const LieAlgebra& alg);

/// Elements bracketing to zero with every element of the given subspace.
Subspace centralizer(const LieAlgebra& alg, const QMatrix& sub_coords);

/// True iff every generator kills f.
bool is_constant(const RationalFunction& f, const LieAlgebra& alg);

/// Jordan chain of ad d restricted to the span of the given (independent)
/// derivations, listed from the top element down: ad d maps each entry to the
/// next and the last entry (spanning the kernel) to zero. Throws
/// HypothesisError when the span is not invariant, the restriction is not
/// nilpotent, or the kernel is not one-dimensional.
std::vector<Derivation> jordan_chain(const Derivation& d,
                                     const std::vector<Derivation>& subspace);

/// Best-effort search for a nonconstant element of R killed by every
/// generator, among coefficient ratios of the basis. A returned witness
/// proves the field of constants strictly contains Q; absence proves nothing.
std::optional<RationalFunction> constants_field_witness(const LieAlgebra& alg);

/// JSON report: basis in text form, sparse structure constants, rank, center,
/// corank, nilpotency class.
std::string structure_report_json(const LieAlgebra& alg);

} // namespace liederiv

#endif
