#include "liederiv/triangular.hpp"

#include "liederiv/errors.hpp"

namespace liederiv {

bool is_member_un(const Derivation& d) {
    for (int i = 1; i <= d.num_vars(); ++i) {
        const RationalFunction& c = d.coeff(i);
        if (c.is_zero()) continue;
        if (!c.is_polynomial()) throw DomainError("is_member_un: fractional coefficient");
        for (int j = 1; j <= i; ++j) {
            if (c.num().uses_variable(j)) return false;
        }
    }
    return true;
}

NonNilpotencyWitness non_nilpotency_witness(int n, int length) {
    if (n < 2) throw DomainError("non_nilpotency_witness: need n >= 2");
    if (length < 0) throw DomainError("non_nilpotency_witness: negative length");

    const Derivation dn = Derivation::partial(n, n);
    NonNilpotencyWitness out{{}, Derivation::partial(n, 1)};
    if (length == 0) return out;

    const Polynomial xn = Polynomial::variable(n, n);
    const Rational inv_fact = Rational(1) / Rational::factorial(static_cast<unsigned>(length));
    Derivation cur =
        Derivation::partial(n, 1).scaled(RationalFunction(xn.pow(length).scaled(inv_fact)));

    for (int k = 0; k < length; ++k) {
        if (cur.is_zero())
            throw InvariantError("non_nilpotency_witness: chain element vanished");
        out.chain.push_back(cur);
        cur = bracket(dn, cur);
    }
    if (cur != out.final_element)
        throw InvariantError("non_nilpotency_witness: chain does not terminate at d1");
    return out;
}

int local_nilpotency_of_fg_subalgebras(const std::vector<Derivation>& sample, int max_dim) {
    for (const auto& d : sample) {
        if (!is_member_un(d))
            throw DomainError("local_nilpotency_of_fg_subalgebras: sample member outside u_n");
    }
    LieAlgebra alg = [&] {
        try {
            return LieAlgebra::close_under_bracket(sample, max_dim);
        } catch (const ClosureOverflowError&) {
            throw HypothesisError(
                "local_nilpotency_of_fg_subalgebras: closure exceeded max_dim; "
                "falsification candidate, review the sample manually");
        }
    }();
    const NilpotencyInfo info = is_nilpotent(alg);
    if (!info.nilpotent)
        throw HypothesisError(
            "local_nilpotency_of_fg_subalgebras: closure is not nilpotent; "
            "falsification candidate, review the sample manually");
    return info.nilpotency_class;
}

} // namespace liederiv
