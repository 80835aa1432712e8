#ifndef LIEDERIV_TRIANGULAR_HPP
#define LIEDERIV_TRIANGULAR_HPP

#include <vector>

#include "liederiv/lie_algebra.hpp"

namespace liederiv {

// The triangular algebra u_n: derivations whose i-th coefficient is a
// polynomial in x_{i+1}..x_n only (so the n-th coefficient is a constant).
// It is locally nilpotent but not nilpotent.

/// Membership predicate. Throws DomainError when a coefficient is a proper
/// fraction (membership is only defined for polynomial coefficients).
bool is_member_un(const Derivation& d);

/// The chain (ad d_n)^k (x_n^L / L! * d_1) for k = 0..L-1, each element
/// verified nonzero, with the L-th application equal to d_1. Certifies that
/// the nilpotency class of u_n exceeds L.
struct NonNilpotencyWitness {
    std::vector<Derivation> chain;
    Derivation final_element; // d_1, the L-th application
};
NonNilpotencyWitness non_nilpotency_witness(int n, int length);

/// Closes the sample under bracket and returns the (finite) nilpotency class.
/// Sample members must pass is_member_un. A closure overflow or a
/// non-nilpotent closure would falsify local nilpotency and is reported as a
/// HypothesisError naming the sample for manual review.
int local_nilpotency_of_fg_subalgebras(const std::vector<Derivation>& sample,
                                       int max_dim = kDefaultMaxDim);

} // namespace liederiv

#endif
