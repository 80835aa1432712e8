#include "liederiv/rational_function.hpp"

#include <sstream>

#include "liederiv/errors.hpp"

namespace liederiv {

RationalFunction::RationalFunction(int num_vars)
    : num_(num_vars), den_(Polynomial::constant(num_vars, Rational(1))) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("RationalFunction: zero denominator");
    normalize();
}

RationalFunction::RationalFunction(const Polynomial& p)
    : num_(p), den_(Polynomial::constant(p.num_vars(), Rational(1))) {}

RationalFunction RationalFunction::constant(int num_vars, const Rational& c) {
    return RationalFunction(Polynomial::constant(num_vars, c));
}

RationalFunction RationalFunction::variable(int num_vars, int index) {
    return RationalFunction(Polynomial::variable(num_vars, index));
}

Rational RationalFunction::constant_value() const {
    return num_.constant_value() / den_.constant_value();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial::constant(num_.num_vars(), Rational(1));
        return;
    }
    if (!den_.is_constant()) {
        const Polynomial g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *Polynomial::div_exact(num_, g);
            den_ = *Polynomial::div_exact(den_, g);
        }
    }
    const Rational lc = den_.leading_coefficient();
    if (!lc.is_one()) {
        const Rational inv = Rational(1) / lc;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DomainError("RationalFunction: division by zero");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::scaled(const Rational& c) const {
    if (c.is_zero()) return RationalFunction(num_.num_vars());
    RationalFunction r = *this;
    r.num_ = r.num_.scaled(c);
    return r;
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw DomainError("RationalFunction: inverse of zero");
    return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(unsigned e) const {
    RationalFunction r = constant(num_vars(), Rational(1));
    RationalFunction base = *this;
    while (e) {
        if (e & 1u) r *= base;
        if (e >>= 1u) base *= base;
    }
    return r;
}

RationalFunction RationalFunction::derivative(int index) const {
    if (is_polynomial()) {
        // den is a (monic) constant, i.e. exactly 1.
        return RationalFunction(num_.derivative(index));
    }
    return RationalFunction(num_.derivative(index) * den_ - num_ * den_.derivative(index),
                            den_ * den_);
}

std::string RationalFunction::str() const {
    if (den_.is_constant()) return num_.str();
    std::ostringstream os;
    if (num_.terms().size() > 1) {
        os << "(" << num_.str() << ")";
    } else {
        os << num_.str();
    }
    os << "/";
    // A denominator reads back unambiguously without parentheses only when it
    // is a single power of one variable (it is monic, so no coefficient).
    bool simple = false;
    if (den_.terms().size() == 1) {
        const auto& e = den_.leading_exponents();
        int used = 0;
        for (int k : e)
            if (k > 0) ++used;
        simple = (used == 1);
    }
    if (simple) {
        os << den_.str();
    } else {
        os << "(" << den_.str() << ")";
    }
    return os.str();
}

} // namespace liederiv
