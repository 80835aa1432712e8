#include "liederiv/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "liederiv/errors.hpp"

namespace liederiv {

Polynomial::Polynomial(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 0) throw DimensionError("Polynomial: negative variable count");
}

Polynomial Polynomial::constant(int num_vars, const Rational& c) {
    Polynomial p(num_vars);
    if (!c.is_zero()) p.terms_.emplace(Exponents(num_vars, 0), c);
    return p;
}

Polynomial Polynomial::variable(int num_vars, int index) {
    if (index < 1 || index > num_vars) throw DimensionError("Polynomial: variable index out of range");
    Exponents e(num_vars, 0);
    e[index - 1] = 1;
    return monomial(num_vars, e, Rational(1));
}

Polynomial Polynomial::monomial(int num_vars, const Exponents& exps, const Rational& c) {
    if (static_cast<int>(exps.size()) != num_vars)
        throw DimensionError("Polynomial: exponent vector length mismatch");
    Polynomial p(num_vars);
    if (!c.is_zero()) p.terms_.emplace(exps, c);
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw DomainError("Polynomial: not a constant");
    return terms_.begin()->second;
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int t = 0;
        for (int k : e) t += k;
        d = std::max(d, t);
    }
    return d;
}

int Polynomial::degree_in(int index) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[index - 1]);
    return d;
}

bool Polynomial::uses_variable(int index) const { return degree_in(index) > 0; }

int Polynomial::top_variable() const {
    int top = 0;
    for (const auto& [e, c] : terms_) {
        for (int i = num_vars_; i > top; --i) {
            if (e[i - 1] > 0) {
                top = i;
                break;
            }
        }
    }
    return top;
}

const Rational& Polynomial::leading_coefficient() const {
    if (terms_.empty()) throw DomainError("Polynomial: zero has no leading term");
    return terms_.begin()->second;
}

const Polynomial::Exponents& Polynomial::leading_exponents() const {
    if (terms_.empty()) throw DomainError("Polynomial: zero has no leading term");
    return terms_.begin()->first;
}

bool operator<(const Polynomial& a, const Polynomial& b) {
    a.check_same_vars(b);
    auto ltuple = [](const Polynomial::TermMap::value_type& t) { return std::tie(t.first, t.second); };
    auto ita = a.terms_.begin(), itb = b.terms_.begin();
    for (; ita != a.terms_.end() && itb != b.terms_.end(); ++ita, ++itb) {
        if (ita->first != itb->first) return Polynomial::LexGreater{}(itb->first, ita->first);
        if (ita->second != itb->second) return ita->second < itb->second;
    }
    (void)ltuple;
    return ita == a.terms_.end() && itb != b.terms_.end();
}

void Polynomial::insert_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Polynomial::check_same_vars(const Polynomial& other) const {
    if (num_vars_ != other.num_vars_)
        throw DimensionError("Polynomial: operands built over different variable counts");
}

Polynomial Polynomial::operator-() const {
    Polynomial r(num_vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    a.check_same_vars(b);
    Polynomial r = a;
    for (const auto& [e, c] : b.terms_) r.insert_term(e, c);
    return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    a.check_same_vars(b);
    Polynomial r = a;
    for (const auto& [e, c] : b.terms_) r.insert_term(e, -c);
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same_vars(b);
    Polynomial r(a.num_vars_);
    Polynomial::Exponents e(a.num_vars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.num_vars_; ++i) e[i] = ea[i] + eb[i];
            r.insert_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(num_vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = constant(num_vars_, Rational(1));
    Polynomial base = *this;
    while (e) {
        if (e & 1u) r *= base;
        if (e >>= 1u) base *= base;
    }
    return r;
}

Polynomial Polynomial::derivative(int index) const {
    if (index < 1 || index > num_vars_) throw DimensionError("Polynomial: variable index out of range");
    Polynomial r(num_vars_);
    for (const auto& [e, c] : terms_) {
        int k = e[index - 1];
        if (k == 0) continue;
        Exponents d = e;
        d[index - 1] = k - 1;
        r.insert_term(d, c * Rational(k));
    }
    return r;
}

std::optional<Polynomial> Polynomial::div_exact(const Polynomial& p, const Polynomial& d) {
    p.check_same_vars(d);
    if (d.is_zero()) throw DomainError("Polynomial: division by zero");
    Polynomial q(p.num_vars_);
    Polynomial r = p;
    const auto& dlead = d.leading_exponents();
    const auto& dcoef = d.leading_coefficient();
    while (!r.is_zero()) {
        const auto& rlead = r.leading_exponents();
        Exponents t(p.num_vars_);
        for (int i = 0; i < p.num_vars_; ++i) {
            t[i] = rlead[i] - dlead[i];
            if (t[i] < 0) return std::nullopt;
        }
        Rational c = r.leading_coefficient() / dcoef;
        Polynomial m = monomial(p.num_vars_, t, c);
        q += m;
        r -= m * d;
    }
    return q;
}

Rational Polynomial::rational_content() const {
    if (is_zero()) return Rational(0);
    // c = sign(leading) * gcd(numerators) / lcm(denominators)
    BigInt num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : terms_) {
        num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(c.num()));
        den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, c.den()) * c.den();
    }
    Rational content(num_gcd, den_lcm);
    if (leading_coefficient().sign() < 0) content = -content;
    return content;
}

Polynomial Polynomial::primitive_associate() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / rational_content());
}

namespace {

// View of p as a univariate polynomial in x_v with polynomial coefficients
// (which only involve variables other than x_v).
std::vector<Polynomial> coefficients_in(const Polynomial& p, int v) {
    int deg = p.degree_in(v);
    std::vector<Polynomial> out(static_cast<std::size_t>(deg) + 1, Polynomial(p.num_vars()));
    for (const auto& [e, c] : p.terms()) {
        Polynomial::Exponents stripped = e;
        int k = stripped[v - 1];
        stripped[v - 1] = 0;
        out[k] += Polynomial::monomial(p.num_vars(), stripped, c);
    }
    return out;
}

Polynomial leading_coefficient_in(const Polynomial& p, int v) {
    auto cs = coefficients_in(p, v);
    return cs.back();
}

// Pseudo-remainder of a by b in the variable x_v (deg_v a >= deg_v b >= 0).
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, int v) {
    const int db = b.degree_in(v);
    const Polynomial lb = leading_coefficient_in(b, v);
    const Polynomial xv = Polynomial::variable(a.num_vars(), v);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        const int da = a.degree_in(v);
        const Polynomial la = leading_coefficient_in(a, v);
        a = a * lb - la * xv.pow(static_cast<unsigned>(da - db)) * b;
    }
    return a;
}

} // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    a.check_same_vars(b);
    if (a.is_zero()) return b.primitive_associate();
    if (b.is_zero()) return a.primitive_associate();
    if (a.is_constant() || b.is_constant())
        return Polynomial::constant(a.num_vars(), Rational(1));

    const int v = std::max(a.top_variable(), b.top_variable());

    // Content/primitive-part split with respect to x_v; contents live in
    // strictly fewer variables, so the recursion terminates.
    auto content_in = [v](const Polynomial& p) {
        Polynomial c(p.num_vars());
        for (const auto& coeff : coefficients_in(p, v)) {
            if (coeff.is_zero()) continue;
            c = c.is_zero() ? coeff.primitive_associate() : gcd(c, coeff);
            if (c.is_constant()) break;
        }
        return c.is_zero() ? Polynomial::constant(p.num_vars(), Rational(1)) : c;
    };

    const Polynomial ca = content_in(a), cb = content_in(b);
    Polynomial pa = *Polynomial::div_exact(a, ca);
    Polynomial pb = *Polynomial::div_exact(b, cb);
    const Polynomial c = gcd(ca, cb);

    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    // Primitive PRS.
    while (!pb.is_zero()) {
        Polynomial r = pseudo_remainder(pa, pb, v);
        pa = pb;
        if (r.is_zero()) {
            pb = r;
        } else {
            const Polynomial rc = content_in(r);
            pb = (*Polynomial::div_exact(r, rc)).primitive_associate();
        }
    }
    if (pa.degree_in(v) > 0) {
        const Polynomial pc = content_in(pa);
        pa = *Polynomial::div_exact(pa, pc);
    }
    return (c * pa).primitive_associate();
}

Polynomial lcm_monic(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) throw DomainError("lcm of zero polynomial");
    const Polynomial g = gcd(a, b);
    Polynomial l = a * (*Polynomial::div_exact(b, g));
    return l.scaled(Rational(1) / l.leading_coefficient());
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational coeff = c;
        if (first) {
            if (coeff.sign() < 0) {
                os << "-";
                coeff = -coeff;
            }
            first = false;
        } else if (coeff.sign() < 0) {
            os << " - ";
            coeff = -coeff;
        } else {
            os << " + ";
        }
        bool any_var = std::any_of(e.begin(), e.end(), [](int k) { return k > 0; });
        if (!any_var) {
            os << coeff.str();
            continue;
        }
        bool printed = false;
        if (!coeff.is_one()) {
            os << coeff.str();
            printed = true;
        }
        for (int i = 0; i < num_vars_; ++i) {
            if (e[i] == 0) continue;
            if (printed) os << "*";
            os << "x" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
            printed = true;
        }
    }
    return os.str();
}

} // namespace liederiv
