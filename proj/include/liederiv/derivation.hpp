#ifndef LIEDERIV_DERIVATION_HPP
#define LIEDERIV_DERIVATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "liederiv/rational_function.hpp"

namespace liederiv {

inline constexpr int kDefaultIterationCap = 32;

/// K-derivation of Q[x1..xn] extended to Q(x1..xn): the vector field
/// sum_i coeff_i * d/dx_i with rational-function coefficients.
class Derivation {
public:
    explicit Derivation(int num_vars);
    explicit Derivation(std::vector<RationalFunction> coeffs);

    /// d/dx_index (1-based).
    static Derivation partial(int num_vars, int index);

    int num_vars() const { return num_vars_; }
    const std::vector<RationalFunction>& coeffs() const { return coeffs_; }
    const RationalFunction& coeff(int index) const { return coeffs_.at(index - 1); }

    bool is_zero() const;
    bool has_polynomial_coeffs() const;

    friend bool operator==(const Derivation& a, const Derivation& b) {
        return a.num_vars_ == b.num_vars_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Derivation& a, const Derivation& b) { return !(a == b); }

    Derivation operator-() const;
    friend Derivation operator+(const Derivation& a, const Derivation& b);
    friend Derivation operator-(const Derivation& a, const Derivation& b);
    Derivation& operator+=(const Derivation& b) { return *this = *this + b; }
    Derivation& operator-=(const Derivation& b) { return *this = *this - b; }

    /// f * D (module action of R on W(A)).
    Derivation scaled(const RationalFunction& f) const;
    Derivation scaled(const Rational& c) const;

    /// D(f), with the quotient rule for fractional f.
    RationalFunction apply(const RationalFunction& f) const;
    RationalFunction apply(const Polynomial& p) const;

    std::string str() const;

private:
    int num_vars_;
    std::vector<RationalFunction> coeffs_;
};

/// [D1, D2] = D1 D2 - D2 D1; coefficient j of the result is
/// D1(c2_j) - D2(c1_j).
Derivation bracket(const Derivation& d1, const Derivation& d2);

/// Result of a local-nilpotency probe for D on the subring generated by a
/// given set of ring elements.
struct LocalNilpotencyVerdict {
    enum class Status {
        ProvedLocallyNilpotent,      // structural triangularity holds
        NilpotentOnGeneratorsUpTo,   // all iterates vanished within the cap
        ExceededCap,                 // some orbit survived the cap
    };
    Status status;
    int steps = 0;                              // max orbit length observed
    std::optional<RationalFunction> witness;    // surviving generator, for ExceededCap

    bool proved() const { return status == Status::ProvedLocallyNilpotent; }
    bool exceeded() const { return status == Status::ExceededCap; }
};

/// Structural triangularity: every coefficient is polynomial and coefficient i
/// involves only variables x_{i+1}..x_n (so coefficient n is constant).
bool is_triangular(const Derivation& d);

LocalNilpotencyVerdict local_nilpotency(const Derivation& d,
                                        const std::vector<RationalFunction>& generators,
                                        int cap = kDefaultIterationCap);

/// Preslice p (D(p) != 0, D(D(p)) = 0) and slice a = p / D(p), so D(a) = 1.
struct SliceResult {
    RationalFunction preslice;
    RationalFunction slice;
};

/// Deterministic slice search: iterate D on the generators, take the orbit
/// element of maximal depth whose next iterate is a nonzero kernel element;
/// ties prefer a constant D(p), then generator order.
SliceResult find_slice(const Derivation& d, const std::vector<RationalFunction>& generators,
                       int cap = kDefaultIterationCap);

/// Univariate polynomial over Q, used for slice-coordinate expansions.
struct QPolynomial {
    std::vector<Rational> coeffs; // coeffs[i] multiplies t^i; no trailing zeros

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    RationalFunction eval(const RationalFunction& t) const;
    /// Antiderivative with zero constant term.
    QPolynomial integral() const;
    std::string str(const std::string& var = "t") const;
};

/// Bivariate polynomial over Q in (u, v).
struct QPolynomial2 {
    // coeffs[{i,j}] multiplies u^i v^j
    std::vector<std::pair<std::pair<int, int>, Rational>> terms;

    bool is_zero() const { return terms.empty(); }
    RationalFunction eval(const RationalFunction& u, const RationalFunction& v) const;
    /// Antiderivative in v with zero constant of integration.
    QPolynomial2 integral_v() const;
    std::string str() const;
};

/// Write r as f(s) for f in Q[t], where D is locally nilpotent on r and
/// D(s) = 1. Returns nullopt when r is not such a polynomial (non-terminating
/// orbit or non-constant expansion coefficients).
std::optional<QPolynomial> decompose_along_slice(const RationalFunction& r, const Derivation& d,
                                                 const RationalFunction& s,
                                                 int cap = kDefaultIterationCap);

/// Write r as f(a, b) for f in Q[u, v], given commuting slice data
/// S(a) = 1, S(b) = 0, T(a) = 0, T(b) = 1.
std::optional<QPolynomial2> decompose_along_slices(const RationalFunction& r, const Derivation& s,
                                                   const RationalFunction& a, const Derivation& t,
                                                   const RationalFunction& b,
                                                   int cap = kDefaultIterationCap);

} // namespace liederiv

#endif
