#ifndef LIEDERIV_RATIONAL_FUNCTION_HPP
#define LIEDERIV_RATIONAL_FUNCTION_HPP

#include <string>

#include "liederiv/polynomial.hpp"

namespace liederiv {

/// Element of Q(x1..xn): a reduced fraction of polynomials. The stored form
/// is canonical: gcd(num, den) = 1 and the denominator is monic under lex,
/// so equal values have identical representation. Zero is 0/1.
class RationalFunction {
public:
    explicit RationalFunction(int num_vars);
    RationalFunction(Polynomial num, Polynomial den);
    /// p/1
    RationalFunction(const Polynomial& p);

    static RationalFunction constant(int num_vars, const Rational& c);
    static RationalFunction variable(int num_vars, int index);

    int num_vars() const { return num_.num_vars(); }
    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const;

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
    RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
    RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }
    RationalFunction& operator/=(const RationalFunction& b) { return *this = *this / b; }

    RationalFunction scaled(const Rational& c) const;
    RationalFunction inverse() const;
    RationalFunction pow(unsigned e) const;

    /// Quotient-rule partial derivative with respect to x_index (1-based).
    RationalFunction derivative(int index) const;

    /// Total degree of the numerator (used by the elimination pivot rule).
    int numerator_degree() const { return num_.total_degree(); }

    std::string str() const;

private:
    void normalize();

    Polynomial num_;
    Polynomial den_;
};

} // namespace liederiv

#endif
