#ifndef LIEDERIV_CLASSIFIER_HPP
#define LIEDERIV_CLASSIFIER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liederiv/lie_algebra.hpp"
#include "liederiv/triangular.hpp"

namespace liederiv {

enum class VerdictCase {
    AbelianDimN,           // dim_F = n and abelian
    DirectSum3PlusAbelian, // dim_F = n, nonabelian: 3-dim part + central complement
    TypeL1,                // contained in the one-slice family
    TypeL2,                // contained in the two-slice family
    OutOfScope,            // a hypothesis failed; reason names the check
};

std::string verdict_case_name(VerdictCase c);

struct ClassificationVerdict {
    VerdictCase kind = VerdictCase::OutOfScope;
    int rank = 0; // n
    std::string out_of_scope_reason;

    /// Commuting R-basis D_1..D_n of the containing family (TypeL1/TypeL2),
    /// or the algebra basis itself (AbelianDimN), or the direct-sum witness
    /// list X, Y, [X,Y] followed by the abelian part (DirectSum3PlusAbelian).
    std::vector<Derivation> adapted_basis;
    std::optional<RationalFunction> slice_a; // TypeL2: D_{n-1}(a) = 1, D_n(a) = 0
    std::optional<RationalFunction> slice_b; // TypeL1/TypeL2: D_n(b) = 1

    // DirectSum3PlusAbelian decomposition.
    std::vector<Derivation> nonabelian_part; // X, Y, [X,Y]
    std::vector<Derivation> abelian_part;    // central complement

    std::vector<std::string> checks_passed;

    bool in_scope() const { return kind != VerdictCase::OutOfScope; }
};

/// Q-linear embedding into u_n, given as an explicit table over the algebra
/// basis. Images live in n = rank variables.
struct EmbeddingMap {
    std::vector<std::pair<Derivation, Derivation>> table;
    int pair_checks = 0; // bracket pairs verified exactly
};

/// Finite truncation of the one-slice family: basis
/// {x_n^i/i! * d_j : 0 <= i <= k, j < n} plus d_n; nilpotent of class k+1.
LieAlgebra build_L1(int n, int k);

/// Finite truncation of the two-slice family: basis
/// {x_{n-1}^i x_n^j / i!j! * d_m : i+j <= k, m <= n-2} together with
/// {x_n^i/i! * d_{n-1} : i <= k} and d_n.
LieAlgebra build_L2(int n, int k);

/// The constructive classification: verifies the hypotheses (nilpotent,
/// rank >= 3, center corank <= 2, trivial constants field as far as the hook
/// can see), then follows the case split, extracting slices and correction
/// terms. Every emitted witness is machine-checked; check failures after the
/// hypotheses passed throw InvariantError.
ClassificationVerdict classify(const LieAlgebra& alg);

/// Builds and fully verifies the embedding table for an in-scope verdict:
/// injectivity, u_n membership of every image, and exact bracket
/// preservation on every basis pair. OutOfScope input throws HypothesisError;
/// verification failure throws InvariantError.
EmbeddingMap embed(const ClassificationVerdict& verdict, const LieAlgebra& alg);

/// Deterministic sample: `size` sparse triangular derivations closed under
/// bracket, retrying with an advanced seed on closure overflow. Nilpotent by
/// triangularity. size 0 yields the zero algebra.
LieAlgebra random_nilpotent(int n, std::uint64_t seed, int size);

std::string verdict_report_json(const ClassificationVerdict& verdict);
std::string embedding_report_json(const ClassificationVerdict& verdict,
                                  const EmbeddingMap& map);

} // namespace liederiv

#endif
