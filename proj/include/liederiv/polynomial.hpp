#ifndef LIEDERIV_POLYNOMIAL_HPP
#define LIEDERIV_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liederiv/rational.hpp"

namespace liederiv {

/// Multivariate polynomial over Q in variables x1..xn, stored canonically
/// under lexicographic order with x1 > x2 > ... > xn. No zero coefficients
/// are kept, so equal polynomials have identical stored form.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    // Descending lex: the map's first entry is the leading term.
    struct LexGreater {
        bool operator()(const Exponents& a, const Exponents& b) const {
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] != b[i]) return a[i] > b[i];
            }
            return false;
        }
    };
    using TermMap = std::map<Exponents, Rational, LexGreater>;

    explicit Polynomial(int num_vars);

    static Polynomial constant(int num_vars, const Rational& c);
    static Polynomial variable(int num_vars, int index); // 1-based index
    static Polynomial monomial(int num_vars, const Exponents& exps, const Rational& c);

    int num_vars() const { return num_vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// The coefficient of the constant monomial (the whole value when is_constant()).
    Rational constant_value() const;

    int total_degree() const; // -1 for the zero polynomial
    int degree_in(int index) const; // 1-based variable index
    bool uses_variable(int index) const;
    /// Largest 1-based variable index with a positive exponent anywhere, 0 if none.
    int top_variable() const;

    const Rational& leading_coefficient() const;
    const Exponents& leading_exponents() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
    // Total order (for pivot tie-breaks and map keys): lex on term lists.
    friend bool operator<(const Polynomial& a, const Polynomial& b);

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned e) const;

    /// Formal partial derivative with respect to x_index (1-based).
    Polynomial derivative(int index) const;

    /// Exact division; nullopt when d does not divide *this.
    static std::optional<Polynomial> div_exact(const Polynomial& p, const Polynomial& d);

    /// The unique associate with coprime integer coefficients and positive
    /// leading (lex) coefficient. Zero maps to zero.
    Polynomial primitive_associate() const;
    /// The rational c with *this = c * primitive_associate().
    Rational rational_content() const;

    std::string str() const;

private:
    void insert_term(const Exponents& e, const Rational& c);
    void check_same_vars(const Polynomial& other) const;

    int num_vars_;
    TermMap terms_;

    friend Polynomial gcd(const Polynomial& a, const Polynomial& b);
};

/// Gcd normalized to the primitive positive-leading associate.
/// Content/primitive-part recursion on the last present variable.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Least common multiple, normalized monic under lex.
Polynomial lcm_monic(const Polynomial& a, const Polynomial& b);

} // namespace liederiv

#endif
