#include "liederiv/derivation.hpp"

#include <algorithm>
#include <sstream>

#include "liederiv/errors.hpp"

namespace liederiv {

Derivation::Derivation(int num_vars)
    : num_vars_(num_vars), coeffs_(num_vars, RationalFunction(num_vars)) {
    if (num_vars < 1) throw DimensionError("Derivation: need at least one variable");
}

Derivation::Derivation(std::vector<RationalFunction> coeffs)
    : num_vars_(static_cast<int>(coeffs.size())), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DimensionError("Derivation: need at least one variable");
    for (const auto& c : coeffs_) {
        if (c.num_vars() != num_vars_)
            throw DimensionError("Derivation: coefficient variable count mismatch");
    }
}

Derivation Derivation::partial(int num_vars, int index) {
    Derivation d(num_vars);
    if (index < 1 || index > num_vars) throw DimensionError("Derivation: index out of range");
    d.coeffs_[index - 1] = RationalFunction::constant(num_vars, Rational(1));
    return d;
}

bool Derivation::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const RationalFunction& c) { return c.is_zero(); });
}

bool Derivation::has_polynomial_coeffs() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const RationalFunction& c) { return c.is_polynomial(); });
}

Derivation Derivation::operator-() const {
    Derivation r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Derivation operator+(const Derivation& a, const Derivation& b) {
    if (a.num_vars_ != b.num_vars_) throw DimensionError("Derivation: variable count mismatch");
    Derivation r = a;
    for (int i = 0; i < a.num_vars_; ++i) r.coeffs_[i] += b.coeffs_[i];
    return r;
}

Derivation operator-(const Derivation& a, const Derivation& b) {
    if (a.num_vars_ != b.num_vars_) throw DimensionError("Derivation: variable count mismatch");
    Derivation r = a;
    for (int i = 0; i < a.num_vars_; ++i) r.coeffs_[i] -= b.coeffs_[i];
    return r;
}

Derivation Derivation::scaled(const RationalFunction& f) const {
    Derivation r = *this;
    for (auto& c : r.coeffs_) c *= f;
    return r;
}

Derivation Derivation::scaled(const Rational& c) const {
    Derivation r = *this;
    for (auto& f : r.coeffs_) f = f.scaled(c);
    return r;
}

RationalFunction Derivation::apply(const RationalFunction& f) const {
    if (f.num_vars() != num_vars_) throw DimensionError("Derivation: variable count mismatch");
    RationalFunction out(num_vars_);
    for (int i = 1; i <= num_vars_; ++i) {
        if (coeffs_[i - 1].is_zero()) continue;
        out += coeffs_[i - 1] * f.derivative(i);
    }
    return out;
}

RationalFunction Derivation::apply(const Polynomial& p) const {
    return apply(RationalFunction(p));
}

Derivation bracket(const Derivation& d1, const Derivation& d2) {
    if (d1.num_vars() != d2.num_vars()) throw DimensionError("bracket: variable count mismatch");
    std::vector<RationalFunction> coeffs;
    coeffs.reserve(d1.num_vars());
    for (int j = 0; j < d1.num_vars(); ++j) {
        coeffs.push_back(d1.apply(d2.coeffs()[j]) - d2.apply(d1.coeffs()[j]));
    }
    return Derivation(std::move(coeffs));
}

std::string Derivation::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < num_vars_; ++i) {
        RationalFunction c = coeffs_[i];
        if (c.is_zero()) continue;
        // Pull the sign of the numerator's leading coefficient into the join.
        bool negative = c.num().leading_coefficient().sign() < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        if (c.is_constant() && c.constant_value().is_one()) {
            os << "d" << (i + 1);
            continue;
        }
        if (c.is_polynomial() && c.num().terms().size() > 1) {
            os << "(" << c.str() << ")";
        } else {
            os << c.str();
        }
        os << "*d" << (i + 1);
    }
    return os.str();
}

bool is_triangular(const Derivation& d) {
    for (int i = 1; i <= d.num_vars(); ++i) {
        const RationalFunction& c = d.coeff(i);
        if (c.is_zero()) continue;
        if (!c.is_polynomial()) return false;
        for (int j = 1; j <= i; ++j) {
            if (c.num().uses_variable(j)) return false;
        }
    }
    return true;
}

namespace {

// Forward orbit g, D(g), D^2(g), ... until zero; empty result when the orbit
// does not die within the cap.
std::vector<RationalFunction> orbit_to_zero(const Derivation& d, const RationalFunction& g,
                                            int cap) {
    std::vector<RationalFunction> orbit;
    RationalFunction cur = g;
    for (int k = 0; k <= cap; ++k) {
        if (cur.is_zero()) return orbit;
        orbit.push_back(cur);
        cur = d.apply(cur);
    }
    return {};
}

} // namespace

LocalNilpotencyVerdict local_nilpotency(const Derivation& d,
                                        const std::vector<RationalFunction>& generators,
                                        int cap) {
    if (cap < 1) throw DomainError("local_nilpotency: cap must be positive");

    const bool polynomial_generators =
        std::all_of(generators.begin(), generators.end(),
                    [](const RationalFunction& g) { return g.is_polynomial(); });
    if (is_triangular(d) && polynomial_generators) {
        return {LocalNilpotencyVerdict::Status::ProvedLocallyNilpotent, 0, std::nullopt};
    }

    int max_steps = 0;
    for (const auto& g : generators) {
        auto orbit = orbit_to_zero(d, g, cap);
        if (orbit.empty() && !g.is_zero()) {
            return {LocalNilpotencyVerdict::Status::ExceededCap, cap, g};
        }
        max_steps = std::max(max_steps, static_cast<int>(orbit.size()));
    }
    return {LocalNilpotencyVerdict::Status::NilpotentOnGeneratorsUpTo, max_steps, std::nullopt};
}

SliceResult find_slice(const Derivation& d, const std::vector<RationalFunction>& generators,
                       int cap) {
    if (d.is_zero()) throw DomainError("find_slice: zero derivation");

    struct Candidate {
        RationalFunction preslice;
        RationalFunction image; // D(preslice), a nonzero kernel element
        int depth;
        bool constant_image;
    };
    std::optional<Candidate> best;

    for (const auto& g : generators) {
        auto orbit = orbit_to_zero(d, g, cap);
        if (orbit.empty()) {
            if (g.is_zero()) continue;
            throw HypothesisError("find_slice: generator orbit is not nilpotent within cap");
        }
        if (orbit.size() < 2) continue; // D(g) = 0, no preslice here
        const int depth = static_cast<int>(orbit.size()) - 2;
        Candidate cand{orbit[orbit.size() - 2], orbit.back(), depth,
                       orbit.back().is_constant()};
        const bool better =
            !best || cand.depth > best->depth ||
            (cand.depth == best->depth && cand.constant_image && !best->constant_image);
        if (better) best = std::move(cand);
    }

    if (!best) throw DomainError("find_slice: derivation vanishes on all generators");

    SliceResult out{best->preslice, best->preslice / best->image};
    if (d.apply(out.slice) != RationalFunction::constant(d.num_vars(), Rational(1)))
        throw InvariantError("find_slice: slice contract D(a) = 1 failed");
    return out;
}

RationalFunction QPolynomial::eval(const RationalFunction& t) const {
    RationalFunction out(t.num_vars());
    RationalFunction power = RationalFunction::constant(t.num_vars(), Rational(1));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!coeffs[i].is_zero()) out += power.scaled(coeffs[i]);
        if (i + 1 < coeffs.size()) power *= t;
    }
    return out;
}

QPolynomial QPolynomial::integral() const {
    QPolynomial out;
    if (coeffs.empty()) return out;
    out.coeffs.assign(coeffs.size() + 1, Rational(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        out.coeffs[i + 1] = coeffs[i] / Rational(static_cast<long long>(i) + 1);
    }
    return out;
}

std::string QPolynomial::str(const std::string& var) const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i].is_zero()) continue;
        if (!first) os << " + ";
        os << coeffs[i].str();
        if (i > 0) os << "*" << var << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return os.str();
}

RationalFunction QPolynomial2::eval(const RationalFunction& u, const RationalFunction& v) const {
    RationalFunction out(u.num_vars());
    for (const auto& [ij, c] : terms) {
        out += (u.pow(ij.first) * v.pow(ij.second)).scaled(c);
    }
    return out;
}

QPolynomial2 QPolynomial2::integral_v() const {
    QPolynomial2 out;
    for (const auto& [ij, c] : terms) {
        out.terms.push_back({{ij.first, ij.second + 1}, c / Rational(ij.second + 1)});
    }
    return out;
}

std::string QPolynomial2::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [ij, c] : terms) {
        if (!first) os << " + ";
        os << c.str();
        if (ij.first > 0) os << "*u" << (ij.first > 1 ? "^" + std::to_string(ij.first) : "");
        if (ij.second > 0) os << "*v" << (ij.second > 1 ? "^" + std::to_string(ij.second) : "");
        first = false;
    }
    return os.str();
}

std::optional<QPolynomial> decompose_along_slice(const RationalFunction& r, const Derivation& d,
                                                 const RationalFunction& s, int cap) {
    QPolynomial f;
    RationalFunction rest = r;
    int guard = cap + 1;
    while (!rest.is_zero() && guard-- > 0) {
        auto orbit = orbit_to_zero(d, rest, cap);
        if (orbit.empty()) return std::nullopt;
        const int m = static_cast<int>(orbit.size()) - 1;
        const RationalFunction top = orbit.back();
        if (!top.is_constant()) return std::nullopt;
        const Rational cm = top.constant_value() / Rational::factorial(static_cast<unsigned>(m));
        if (static_cast<int>(f.coeffs.size()) <= m) f.coeffs.resize(m + 1, Rational(0));
        if (!f.coeffs[m].is_zero()) return std::nullopt; // degree failed to drop
        f.coeffs[m] = cm;
        rest -= s.pow(static_cast<unsigned>(m)).scaled(cm);
    }
    if (!rest.is_zero()) return std::nullopt;
    while (!f.coeffs.empty() && f.coeffs.back().is_zero()) f.coeffs.pop_back();
    return f;
}

std::optional<QPolynomial2> decompose_along_slices(const RationalFunction& r, const Derivation& s,
                                                   const RationalFunction& a, const Derivation& t,
                                                   const RationalFunction& b, int cap) {
    QPolynomial2 f;
    RationalFunction rest = r;
    int guard = cap + 1;
    while (!rest.is_zero() && guard-- > 0) {
        auto orbit = orbit_to_zero(t, rest, cap);
        if (orbit.empty()) return std::nullopt;
        const int m = static_cast<int>(orbit.size()) - 1;
        // The top T-iterate is b-free, so it expands along a alone.
        const RationalFunction top =
            orbit.back().scaled(Rational(1) / Rational::factorial(static_cast<unsigned>(m)));
        auto g = decompose_along_slice(top, s, a, cap);
        if (!g) return std::nullopt;
        for (std::size_t i = 0; i < g->coeffs.size(); ++i) {
            if (g->coeffs[i].is_zero()) continue;
            f.terms.push_back({{static_cast<int>(i), m}, g->coeffs[i]});
        }
        rest -= (g->eval(a) * b.pow(static_cast<unsigned>(m)));
    }
    if (!rest.is_zero()) return std::nullopt;
    return f;
}

} // namespace liederiv
