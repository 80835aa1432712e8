#include "liederiv/classifier.hpp"

#include <algorithm>
#include <random>

#include <json.hpp>

#include "liederiv/errors.hpp"

namespace liederiv {

namespace {

// ---------------------------------------------------------------------------
// small helpers

std::vector<Derivation> maximal_r_independent(const std::vector<Derivation>& elems,
                                              int num_vars) {
    RSpan rs(num_vars);
    std::vector<Derivation> out;
    for (const auto& e : elems) {
        if (rs.insert(e.coeffs())) out.push_back(e);
    }
    return out;
}

// Coordinates of v over an R-independent list of derivations.
std::optional<RVector> r_solve(const std::vector<Derivation>& basis, const Derivation& v) {
    if (basis.empty()) return std::nullopt;
    RSpan rs(basis[0].num_vars());
    for (const auto& b : basis) {
        if (!rs.insert(b.coeffs()))
            throw InvariantError("r_solve: basis is R-dependent");
    }
    return rs.solve(v.coeffs());
}

// The r_ij coefficients of the ideal elements over the center R-basis; these
// generate the subring the slice searches run in.
std::vector<RationalFunction> ideal_coefficients(const Subspace& ideal,
                                                 const std::vector<Derivation>& z_r) {
    std::vector<RationalFunction> out;
    if (z_r.empty()) return out;
    RSpan rs(z_r[0].num_vars());
    for (const auto& b : z_r) rs.insert(b.coeffs());
    for (const auto& e : ideal.elements) {
        auto coords = rs.solve(e.coeffs());
        if (!coords)
            throw InvariantError("ideal_coefficients: ideal element outside the center R-span");
        for (const auto& f : *coords) {
            if (!f.is_zero()) out.push_back(f);
        }
    }
    return out;
}

// Quotient of the coordinate space by a subspace in RREF: quotient
// coordinates live on the non-pivot basis positions.
class QuotientMod {
public:
    QuotientMod(const QMatrix& sub_coords, int ambient_dim)
        : space_(sub_coords), ambient_(ambient_dim) {
        std::vector<bool> is_pivot(ambient_dim, false);
        for (int p : space_.pivots()) is_pivot[p] = true;
        for (int i = 0; i < ambient_dim; ++i) {
            if (!is_pivot[i]) comp_idx_.push_back(i);
        }
    }

    int qdim() const { return static_cast<int>(comp_idx_.size()); }
    const std::vector<int>& complement_indices() const { return comp_idx_; }

    QVector project(const QVector& v) const {
        const QVector red = space_.reduce(v);
        QVector out(comp_idx_.size(), Rational(0));
        for (std::size_t t = 0; t < comp_idx_.size(); ++t) out[t] = red[comp_idx_[t]];
        return out;
    }

    QVector lift(const QVector& q) const {
        QVector out(ambient_, Rational(0));
        for (std::size_t t = 0; t < comp_idx_.size(); ++t) out[comp_idx_[t]] = q[t];
        return out;
    }

private:
    QRowSpace space_;
    int ambient_;
    std::vector<int> comp_idx_;
};

struct QuotientAlgebra {
    QuotientMod mod;
    std::vector<QVector> table; // table[s * qdim + t] = project([lift e_s, lift e_t])
    bool abelian;

    QuotientAlgebra(const LieAlgebra& alg, const QMatrix& sub_coords)
        : mod(sub_coords, alg.dim()), abelian(true) {
        const int q = mod.qdim();
        table.assign(static_cast<std::size_t>(q) * q, QVector(q, Rational(0)));
        for (int s = 0; s < q; ++s) {
            QVector es(q, Rational(0));
            es[s] = Rational(1);
            for (int t = 0; t < q; ++t) {
                if (s == t) continue;
                QVector et(q, Rational(0));
                et[t] = Rational(1);
                QVector w = mod.project(alg.bracket_of(mod.lift(es), mod.lift(et)));
                for (const auto& x : w) {
                    if (!x.is_zero()) abelian = false;
                }
                table[static_cast<std::size_t>(s) * q + t] = std::move(w);
            }
        }
    }

    // Kernel of the commutation constraints: the center of the quotient.
    QMatrix center() const {
        const int q = mod.qdim();
        QMatrix constraints;
        for (int t = 0; t < q; ++t) {
            for (int k = 0; k < q; ++k) {
                QVector row(q, Rational(0));
                bool nonzero = false;
                for (int s = 0; s < q; ++s) {
                    row[s] = table[static_cast<std::size_t>(s) * q + t][k];
                    if (!row[s].is_zero()) nonzero = true;
                }
                if (nonzero) constraints.push_back(std::move(row));
            }
        }
        return kernel_basis(constraints, q);
    }
};

int first_index_outside(const QRowSpace& space, int dim) {
    QVector e(dim, Rational(0));
    for (int t = 0; t < dim; ++t) {
        e[t] = Rational(1);
        if (!space.contains(e)) return t;
        e[t] = Rational(0);
    }
    return -1;
}

// Dixmier-style projection onto Ker S along the slice a (S(a) = 1):
// pi(x) = sum_j (-a)^j / j! * S^j(x).
RationalFunction kernel_projection(const RationalFunction& x, const Derivation& s,
                                   const RationalFunction& a, int cap) {
    RationalFunction out(x.num_vars());
    RationalFunction cur = x;
    RationalFunction apow = RationalFunction::constant(x.num_vars(), Rational(1));
    Rational sign(1), fact(1);
    for (int j = 0; j <= cap; ++j) {
        if (cur.is_zero()) return out;
        out += (apow * cur).scaled(sign / fact);
        cur = s.apply(cur);
        apow *= a;
        sign = -sign;
        fact = fact * Rational(j + 1);
    }
    throw InvariantError("kernel_projection: orbit did not terminate within the cap");
}

// ---------------------------------------------------------------------------
// adapted-basis verification (shared by classify and embed)

struct L1Data {
    // Per basis element: polynomials in b multiplying D_1..D_{n-1}, and the
    // constant D_n coefficient.
    std::vector<std::vector<QPolynomial>> fs;
    std::vector<Rational> dn;
};

struct L2Data {
    std::vector<std::vector<QPolynomial2>> fs; // D_1..D_{n-2} coefficients
    std::vector<QPolynomial> g;                // D_{n-1} coefficient, in b only
    std::vector<Rational> dn;
};

void check_commuting_r_basis(const std::vector<Derivation>& ds, int expected_rank) {
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t j = i + 1; j < ds.size(); ++j) {
            if (!bracket(ds[i], ds[j]).is_zero())
                throw InvariantError("adapted basis does not commute");
        }
    }
    RSpan rs(ds.empty() ? 1 : ds[0].num_vars());
    for (const auto& d : ds) rs.insert(d.coeffs());
    if (rs.dim() != expected_rank)
        throw InvariantError("adapted basis is not an R-basis of the expected rank");
}

L1Data verify_l1(const LieAlgebra& alg, const std::vector<Derivation>& ds,
                 const RationalFunction& b) {
    const int n = static_cast<int>(ds.size());
    check_commuting_r_basis(ds, n);
    const Derivation& dn = ds[n - 1];
    const RationalFunction one = RationalFunction::constant(alg.num_vars(), Rational(1));
    for (int j = 0; j + 1 < n; ++j) {
        if (!ds[j].apply(b).is_zero())
            throw InvariantError("slice equation D_i(b) = 0 failed");
    }
    if (dn.apply(b) != one) throw InvariantError("slice equation D_n(b) = 1 failed");

    RSpan rs(alg.num_vars());
    for (const auto& d : ds) rs.insert(d.coeffs());
    L1Data data;
    for (const auto& e : alg.basis()) {
        auto coords = rs.solve(e.coeffs());
        if (!coords) throw InvariantError("basis element outside the adapted R-span");
        std::vector<QPolynomial> fs;
        for (int j = 0; j + 1 < n; ++j) {
            auto f = decompose_along_slice((*coords)[j], dn, b);
            if (!f)
                throw InvariantError(
                    "containment: coefficient is not a rational polynomial in b");
            fs.push_back(std::move(*f));
        }
        const RationalFunction& last = (*coords)[n - 1];
        if (!last.is_constant())
            throw InvariantError("containment: D_n coefficient is not constant");
        data.fs.push_back(std::move(fs));
        data.dn.push_back(last.is_zero() ? Rational(0) : last.constant_value());
    }
    return data;
}

L2Data verify_l2(const LieAlgebra& alg, const std::vector<Derivation>& ds,
                 const RationalFunction& a, const RationalFunction& b) {
    const int n = static_cast<int>(ds.size());
    check_commuting_r_basis(ds, n);
    const Derivation& s = ds[n - 2];
    const Derivation& t = ds[n - 1];
    const RationalFunction one = RationalFunction::constant(alg.num_vars(), Rational(1));
    for (int j = 0; j + 2 < n; ++j) {
        if (!ds[j].apply(a).is_zero() || !ds[j].apply(b).is_zero())
            throw InvariantError("slice equation D_i(a) = D_i(b) = 0 failed");
    }
    if (s.apply(a) != one || !s.apply(b).is_zero() || !t.apply(a).is_zero() ||
        t.apply(b) != one)
        throw InvariantError("two-slice equations failed");

    RSpan rs(alg.num_vars());
    for (const auto& d : ds) rs.insert(d.coeffs());
    L2Data data;
    for (const auto& e : alg.basis()) {
        auto coords = rs.solve(e.coeffs());
        if (!coords) throw InvariantError("basis element outside the adapted R-span");
        std::vector<QPolynomial2> fs;
        for (int j = 0; j + 2 < n; ++j) {
            auto f = decompose_along_slices((*coords)[j], s, a, t, b);
            if (!f)
                throw InvariantError(
                    "containment: coefficient is not a rational polynomial in a, b");
            fs.push_back(std::move(*f));
        }
        auto g = decompose_along_slice((*coords)[n - 2], t, b);
        if (!g)
            throw InvariantError(
                "containment: the D_{n-1} coefficient is not a polynomial in b");
        const RationalFunction& last = (*coords)[n - 1];
        if (!last.is_constant())
            throw InvariantError("containment: D_n coefficient is not constant");
        data.fs.push_back(std::move(fs));
        data.g.push_back(std::move(*g));
        data.dn.push_back(last.is_zero() ? Rational(0) : last.constant_value());
    }
    return data;
}

ClassificationVerdict out_of_scope(int rank, std::string reason) {
    ClassificationVerdict v;
    v.kind = VerdictCase::OutOfScope;
    v.rank = rank;
    v.out_of_scope_reason = std::move(reason);
    return v;
}

} // namespace

// ---------------------------------------------------------------------------
// builders

LieAlgebra build_L1(int n, int k) {
    if (n < 3) throw DomainError("build_L1: need n >= 3");
    if (k < 0) throw DomainError("build_L1: need k >= 0");
    std::vector<Derivation> gens;
    const Polynomial xn = Polynomial::variable(n, n);
    for (int j = 1; j <= n - 1; ++j) {
        for (int i = 0; i <= k; ++i) {
            const Rational inv = Rational(1) / Rational::factorial(static_cast<unsigned>(i));
            gens.push_back(Derivation::partial(n, j).scaled(
                RationalFunction(xn.pow(static_cast<unsigned>(i)).scaled(inv))));
        }
    }
    gens.push_back(Derivation::partial(n, n));
    LieAlgebra alg = LieAlgebra::close_under_bracket(gens);
    if (alg.dim() != static_cast<int>(gens.size()))
        throw InvariantError("build_L1: truncation is not bracket-closed");
    return alg;
}

LieAlgebra build_L2(int n, int k) {
    if (n < 3) throw DomainError("build_L2: need n >= 3");
    if (k < 0) throw DomainError("build_L2: need k >= 0");
    std::vector<Derivation> gens;
    const Polynomial a = Polynomial::variable(n, n - 1);
    const Polynomial b = Polynomial::variable(n, n);
    for (int m = 1; m <= n - 2; ++m) {
        for (int j = 0; j <= k; ++j) {
            for (int i = 0; i + j <= k; ++i) {
                const Rational inv = Rational(1) / (Rational::factorial(static_cast<unsigned>(i)) *
                                                    Rational::factorial(static_cast<unsigned>(j)));
                gens.push_back(Derivation::partial(n, m).scaled(RationalFunction(
                    (a.pow(static_cast<unsigned>(i)) * b.pow(static_cast<unsigned>(j)))
                        .scaled(inv))));
            }
        }
    }
    for (int i = 0; i <= k; ++i) {
        const Rational inv = Rational(1) / Rational::factorial(static_cast<unsigned>(i));
        gens.push_back(Derivation::partial(n, n - 1).scaled(
            RationalFunction(b.pow(static_cast<unsigned>(i)).scaled(inv))));
    }
    gens.push_back(Derivation::partial(n, n));
    // For k >= 2 the i+j <= k window is not bracket-closed (x_n-power slices
    // raise i+j), so the family member is the closure of the window; it stays
    // finite because each such bracket strictly lowers the x_{n-1} degree.
    return LieAlgebra::close_under_bracket(gens, 4 * kDefaultMaxDim);
}

// ---------------------------------------------------------------------------
// classification

std::string verdict_case_name(VerdictCase c) {
    switch (c) {
        case VerdictCase::AbelianDimN: return "abelian_dim_n";
        case VerdictCase::DirectSum3PlusAbelian: return "direct_sum_3_plus_abelian";
        case VerdictCase::TypeL1: return "type_l1";
        case VerdictCase::TypeL2: return "type_l2";
        case VerdictCase::OutOfScope: return "out_of_scope";
    }
    return "unknown";
}

namespace {

ClassificationVerdict classify_dim_equals_rank(const LieAlgebra& alg, const CenterInfo& z,
                                               int n) {
    ClassificationVerdict v;
    v.rank = n;
    if (alg.is_abelian()) {
        v.kind = VerdictCase::AbelianDimN;
        v.adapted_basis = alg.basis();
        v.checks_passed.push_back("abelian");
        return v;
    }
    // First non-commuting basis pair, in basis order.
    int xi = -1, yj = -1;
    for (int i = 0; i < alg.dim() && xi < 0; ++i) {
        for (int j = i + 1; j < alg.dim(); ++j) {
            const QVector c = alg.bracket_coords(i, j);
            if (std::any_of(c.begin(), c.end(), [](const Rational& q) { return !q.is_zero(); })) {
                xi = i;
                yj = j;
                break;
            }
        }
    }
    const QVector ccoords = alg.bracket_coords(xi, yj);
    const Derivation c = alg.from_coordinates(ccoords);
    // With corank <= 2 and dim = n the algebra has class 2: [X,Y] is central.
    for (int k = 0; k < alg.dim(); ++k) {
        QVector ek(alg.dim(), Rational(0));
        ek[k] = Rational(1);
        const QVector w = alg.bracket_of(ccoords, ek);
        if (std::any_of(w.begin(), w.end(), [](const Rational& q) { return !q.is_zero(); }))
            throw InvariantError("direct sum: [X,Y] is not central");
    }
    // Complement of the [X,Y] line inside the center.
    QMatrix acc{ccoords};
    QMatrix m1;
    for (const auto& zrow : z.coords) {
        QMatrix test = acc;
        test.push_back(zrow);
        if (static_cast<int>(rref(test).size()) > static_cast<int>(acc.size())) {
            acc.push_back(zrow);
            m1.push_back(zrow);
            rref(acc);
        }
    }
    if (static_cast<int>(m1.size()) != alg.dim() - 3)
        throw InvariantError("direct sum: central complement has wrong dimension");
    QMatrix all{QVector(alg.dim(), Rational(0)), QVector(alg.dim(), Rational(0))};
    all[0][xi] = Rational(1);
    all[1][yj] = Rational(1);
    all.push_back(ccoords);
    for (const auto& r : m1) all.push_back(r);
    if (static_cast<int>(rref(all).size()) != alg.dim())
        throw InvariantError("direct sum: parts do not span the algebra");

    v.kind = VerdictCase::DirectSum3PlusAbelian;
    v.nonabelian_part = {alg.basis()[xi], alg.basis()[yj], c};
    for (const auto& r : m1) v.abelian_part.push_back(alg.from_coordinates(r));
    v.adapted_basis = v.nonabelian_part;
    v.adapted_basis.insert(v.adapted_basis.end(), v.abelian_part.begin(), v.abelian_part.end());
    v.checks_passed.push_back("class-2 direct sum decomposition");
    return v;
}

// Case rk Z = n-1: slice for the single element outside RZ.
ClassificationVerdict classify_corank1(const LieAlgebra& alg, const CenterInfo& z,
                                       const Subspace& ideal, int n) {
    if (static_cast<int>(ideal.coords.size()) != alg.dim() - 1)
        throw InvariantError("corank-1: ideal codimension is not 1");
    std::vector<Derivation> z_r = maximal_r_independent(z.basis, alg.num_vars());
    if (static_cast<int>(z_r.size()) != n - 1)
        throw InvariantError("corank-1: center R-basis has wrong size");

    QRowSpace ispace(ideal.coords);
    const int dn_idx = first_index_outside(ispace, alg.dim());
    if (dn_idx < 0) throw InvariantError("corank-1: no element outside the ideal");
    const Derivation dn = alg.basis()[dn_idx];

    const auto gens = ideal_coefficients(ideal, z_r);
    const RationalFunction b = find_slice(dn, gens).slice;

    std::vector<Derivation> adapted = z_r;
    adapted.push_back(dn);
    ClassificationVerdict v;
    v.kind = VerdictCase::TypeL1;
    v.rank = n;
    v.adapted_basis = std::move(adapted);
    v.slice_b = b;
    verify_l1(alg, v.adapted_basis, b);
    v.checks_passed = {"abelian-ideal", "slice-equations", "commuting-adapted-basis",
                       "containment"};
    return v;
}

// The quotient-chain extraction shared by the corank-2 cases that land in the
// one-slice family: returns D_{n-1} (center of FL/FI) and the slice b read off
// the Jordan chain of ad D_n on FI1/FI.
struct ChainData {
    Derivation d_n1;
    Derivation d_n;
    RationalFunction b;
};

ChainData chain_from_quotient(const LieAlgebra& alg, const Subspace& ideal,
                              const std::vector<Derivation>& z_r,
                              const Derivation& d_n1, const QVector& d_n1_coords) {
    // FI1 = R(I + K D_{n-1}) cap L.
    std::vector<Derivation> spanners = z_r;
    spanners.push_back(d_n1);
    const Subspace fi1 = r_span_intersection(alg, spanners);
    QRowSpace fi1space(fi1.coords);
    const int dn_idx = first_index_outside(fi1space, alg.dim());
    if (dn_idx < 0) throw InvariantError("quotient chain: no element outside FI1");
    const Derivation dn = alg.basis()[dn_idx];

    // ad D_n acting on FI1/FI.
    const QuotientMod mod(ideal.coords, alg.dim());
    QMatrix qs;
    for (const auto& row : fi1.coords) qs.push_back(mod.project(row));
    rref(qs);
    const int m = static_cast<int>(qs.size());
    if (m < 2) throw InvariantError("quotient chain: FI1/FI is too small");
    QRowSpace qspace(qs);

    QVector edn(alg.dim(), Rational(0));
    edn[dn_idx] = Rational(1);
    QMatrix op(m, QVector(m, Rational(0)));
    for (int j = 0; j < m; ++j) {
        const QVector w = mod.project(alg.bracket_of(edn, mod.lift(qs[j])));
        auto coords = qspace.solve(w);
        if (!coords) throw InvariantError("quotient chain: FI1/FI is not ad-invariant");
        for (int k = 0; k < m; ++k) op[k][j] = (*coords)[k];
    }
    auto chain = single_jordan_chain(op);
    if (!chain)
        throw InvariantError("quotient chain: ad D_n is not a single Jordan block on FI1/FI");

    // Bottom of the chain spans the kernel F(D_{n-1} + FI); rescale so it is
    // exactly D_{n-1} + FI.
    auto realize = [&](const QVector& chain_coords) {
        QVector q(mod.qdim(), Rational(0));
        for (int k = 0; k < m; ++k) {
            for (std::size_t t = 0; t < q.size(); ++t) q[t] += chain_coords[k] * qs[k][t];
        }
        return q;
    };
    const QVector bottom = realize(chain->back());
    const QVector target = mod.project(d_n1_coords);
    Rational gamma;
    bool found = false;
    for (std::size_t t = 0; t < bottom.size(); ++t) {
        if (!target[t].is_zero()) {
            gamma = bottom[t] / target[t];
            found = true;
            break;
        }
    }
    if (!found || gamma.is_zero())
        throw InvariantError("quotient chain: kernel does not match D_{n-1}");
    for (std::size_t t = 0; t < bottom.size(); ++t) {
        if (bottom[t] != gamma * target[t])
            throw InvariantError("quotient chain: kernel is not proportional to D_{n-1}");
    }

    // Second chain element: r D_{n-1} + FI with D_n(r) = 1; its D_{n-1}
    // coefficient over the R-basis is the slice b.
    const QVector second = realize((*chain)[chain->size() - 2]);
    Derivation w2(alg.num_vars());
    {
        const QVector full = mod.lift(second);
        w2 = alg.from_coordinates(full).scaled(Rational(1) / gamma);
    }
    std::vector<Derivation> rbasis = z_r;
    rbasis.push_back(d_n1);
    auto coords = r_solve(rbasis, w2);
    if (!coords) throw InvariantError("quotient chain: chain element outside FI1 R-span");
    const RationalFunction b = coords->back();
    return {d_n1, dn, b};
}

// Correction D_{n-1} -> D_{n-1} - sum u_i(b) D_i killing [D_n, D_{n-1}],
// where each u_i is a formal antiderivative in b with zero constant term.
Derivation corrected_d_n1_univariate(const std::vector<Derivation>& z_r, const Derivation& d_n1,
                                     const Derivation& dn, const RationalFunction& b) {
    const Derivation h = bracket(dn, d_n1);
    if (h.is_zero()) return d_n1;
    auto coords = r_solve(z_r, h);
    if (!coords) throw InvariantError("correction: [D_n, D_{n-1}] is outside the center R-span");
    Derivation out = d_n1;
    for (std::size_t i = 0; i < z_r.size(); ++i) {
        if ((*coords)[i].is_zero()) continue;
        auto f = decompose_along_slice((*coords)[i], dn, b);
        if (!f)
            throw InvariantError("correction: bracket coefficient is not a polynomial in b");
        out -= z_r[i].scaled(f->integral().eval(b));
    }
    if (!bracket(dn, out).is_zero())
        throw InvariantError("correction: [D_n, D_{n-1}] did not vanish");
    return out;
}

// Case rk Z = n-2 and FI = FZ.
ClassificationVerdict classify_corank2_small_ideal(const LieAlgebra& alg, const CenterInfo& z,
                                                   const Subspace& ideal, int n) {
    std::vector<Derivation> z_r = maximal_r_independent(z.basis, alg.num_vars());
    if (static_cast<int>(z_r.size()) != n - 2)
        throw InvariantError("corank-2: center R-basis has wrong size");
    if (ideal.coords != z.coords)
        throw InvariantError("corank-2: FI = FZ expected when dim FI = n-2");

    const QuotientAlgebra quo(alg, ideal.coords);
    if (quo.abelian)
        throw InvariantError("corank-2: quotient of dimension >= 3 cannot be abelian");
    const QMatrix qcenter = quo.center();
    if (qcenter.size() != 1)
        throw InvariantError("corank-2: quotient center is not one-dimensional");
    const QVector d_n1_coords = quo.mod.lift(qcenter[0]);
    const Derivation d_n1 = alg.from_coordinates(d_n1_coords);

    ChainData chain = chain_from_quotient(alg, ideal, z_r, d_n1, d_n1_coords);
    const Derivation corrected =
        corrected_d_n1_univariate(z_r, chain.d_n1, chain.d_n, chain.b);

    std::vector<Derivation> adapted = z_r;
    adapted.push_back(corrected);
    adapted.push_back(chain.d_n);
    ClassificationVerdict v;
    v.kind = VerdictCase::TypeL1;
    v.rank = n;
    v.adapted_basis = std::move(adapted);
    v.slice_b = chain.b;
    verify_l1(alg, v.adapted_basis, chain.b);
    v.checks_passed = {"abelian-ideal", "quotient-center", "jordan-chain",
                       "slice-equations", "commuting-adapted-basis", "containment"};
    return v;
}

// Case rk Z = n-2, dim FI > n-2, C(FI) = FI: the two-slice family.
ClassificationVerdict classify_corank2_selfcentralizing(const LieAlgebra& alg,
                                                        const CenterInfo& z,
                                                        const Subspace& ideal, int n) {
    std::vector<Derivation> z_r = maximal_r_independent(z.basis, alg.num_vars());
    if (static_cast<int>(z_r.size()) != n - 2)
        throw InvariantError("corank-2: center R-basis has wrong size");

    const QuotientAlgebra quo(alg, ideal.coords);
    QVector s_coords;
    if (!quo.abelian) {
        const QMatrix qcenter = quo.center();
        if (qcenter.size() != 1)
            throw InvariantError("two-slice: quotient center is not one-dimensional");
        s_coords = quo.mod.lift(qcenter[0]);
    } else {
        if (quo.mod.qdim() != 2)
            throw InvariantError("two-slice: abelian quotient must have dimension 2");
        QVector e0(quo.mod.qdim(), Rational(0));
        e0[0] = Rational(1);
        s_coords = quo.mod.lift(e0);
    }
    const Derivation s = alg.from_coordinates(s_coords);

    std::vector<Derivation> spanners = z_r;
    spanners.push_back(s);
    const Subspace fi1 = r_span_intersection(alg, spanners);
    QRowSpace fi1space(fi1.coords);
    const int t_idx = first_index_outside(fi1space, alg.dim());
    if (t_idx < 0) throw InvariantError("two-slice: no element outside FI1");
    const Derivation t = alg.basis()[t_idx];

    // [S, T] must land in FI (S is central modulo FI).
    {
        QVector et(alg.dim(), Rational(0));
        et[t_idx] = Rational(1);
        QRowSpace ispace(ideal.coords);
        if (!ispace.contains(alg.bracket_of(s_coords, et)))
            throw InvariantError("two-slice: [S, T] is not in FI");
    }

    const auto gens = ideal_coefficients(ideal, z_r);
    const RationalFunction a0 = find_slice(s, gens).slice;

    // T-slice from the Ker S side of the coefficient subring, so that
    // S(b) = 0 holds by construction.
    std::vector<RationalFunction> pool;
    for (const auto& r : gens) pool.push_back(kernel_projection(r, s, a0, kDefaultIterationCap));
    const RationalFunction b = find_slice(t, pool).slice;
    if (!s.apply(b).is_zero()) throw InvariantError("two-slice: S(b) = 0 failed");

    // Straighten a against T.
    RationalFunction a = a0;
    const RationalFunction tau = t.apply(a0);
    if (!tau.is_zero()) {
        auto f = decompose_along_slice(tau, t, b);
        if (!f) throw InvariantError("two-slice: T(a) is not a polynomial in b");
        a = a0 - f->integral().eval(b);
    }

    // Correction killing [T, S], with bivariate antiderivatives in b.
    Derivation s_corr = s;
    const Derivation h = bracket(t, s);
    if (!h.is_zero()) {
        auto coords = r_solve(z_r, h);
        if (!coords) throw InvariantError("two-slice: [T, S] is outside the center R-span");
        for (std::size_t i = 0; i < z_r.size(); ++i) {
            if ((*coords)[i].is_zero()) continue;
            auto f = decompose_along_slices((*coords)[i], s, a, t, b);
            if (!f)
                throw InvariantError("two-slice: bracket coefficient is not polynomial in a, b");
            s_corr -= z_r[i].scaled(f->integral_v().eval(a, b));
        }
        if (!bracket(t, s_corr).is_zero())
            throw InvariantError("two-slice: [T, S] did not vanish after correction");
    }

    std::vector<Derivation> adapted = z_r;
    adapted.push_back(s_corr);
    adapted.push_back(t);
    ClassificationVerdict v;
    v.kind = VerdictCase::TypeL2;
    v.rank = n;
    v.adapted_basis = std::move(adapted);
    v.slice_a = a;
    v.slice_b = b;
    verify_l2(alg, v.adapted_basis, a, b);
    v.checks_passed = {"abelian-ideal", "centralizer", "slice-equations",
                       "commuting-adapted-basis", "containment"};
    return v;
}

// Case rk Z = n-2, dim FI > n-2, C(FI) strictly larger: a single slice
// suffices and the algebra lands in the one-slice family.
ClassificationVerdict classify_corank2_central_extension(const LieAlgebra& alg,
                                                         const CenterInfo& z,
                                                         const Subspace& ideal,
                                                         const Subspace& cent, int n) {
    std::vector<Derivation> z_r = maximal_r_independent(z.basis, alg.num_vars());
    if (static_cast<int>(z_r.size()) != n - 2)
        throw InvariantError("corank-2: center R-basis has wrong size");

    const QuotientAlgebra quo(alg, ideal.coords);
    QRowSpace ispace(ideal.coords);
    QVector d_n1_coords;
    if (!quo.abelian) {
        const QMatrix qcenter = quo.center();
        if (qcenter.size() != 1)
            throw InvariantError("one-slice: quotient center is not one-dimensional");
        d_n1_coords = quo.mod.lift(qcenter[0]);
        QRowSpace cspace(cent.coords);
        if (!cspace.contains(d_n1_coords))
            throw InvariantError("one-slice: quotient-central element is not in C(FI)");
    } else {
        if (quo.mod.qdim() != 2)
            throw InvariantError("one-slice: abelian quotient must have dimension 2");
        bool found = false;
        for (const auto& row : cent.coords) {
            if (!ispace.contains(row)) {
                d_n1_coords = row;
                found = true;
                break;
            }
        }
        if (!found) throw InvariantError("one-slice: C(FI) does not exceed FI");
    }
    const Derivation d_n1 = alg.from_coordinates(d_n1_coords);
    if (!std::all_of(ideal.elements.begin(), ideal.elements.end(), [&](const Derivation& w) {
            return bracket(d_n1, w).is_zero();
        }))
        throw InvariantError("one-slice: D_{n-1} does not centralize FI");

    std::vector<Derivation> spanners = z_r;
    spanners.push_back(d_n1);
    const Subspace fi1 = r_span_intersection(alg, spanners);
    QRowSpace fi1space(fi1.coords);

    // D_n: outside FI1 and acting nontrivially on FI.
    int dn_idx = -1;
    for (int t = 0; t < alg.dim(); ++t) {
        QVector et(alg.dim(), Rational(0));
        et[t] = Rational(1);
        if (fi1space.contains(et)) continue;
        bool acts = false;
        for (const auto& row : ideal.coords) {
            const QVector w = alg.bracket_of(et, row);
            if (std::any_of(w.begin(), w.end(),
                            [](const Rational& q) { return !q.is_zero(); })) {
                acts = true;
                break;
            }
        }
        if (acts) {
            dn_idx = t;
            break;
        }
    }
    if (dn_idx < 0) throw InvariantError("one-slice: no element acts nontrivially on FI");
    const Derivation dn = alg.basis()[dn_idx];

    const auto gens = ideal_coefficients(ideal, z_r);
    const RationalFunction b = find_slice(dn, gens).slice;
    if (!d_n1.apply(b).is_zero())
        throw InvariantError("one-slice: D_{n-1}(b) = 0 failed");

    const Derivation corrected = corrected_d_n1_univariate(z_r, d_n1, dn, b);

    std::vector<Derivation> adapted = z_r;
    adapted.push_back(corrected);
    adapted.push_back(dn);
    ClassificationVerdict v;
    v.kind = VerdictCase::TypeL1;
    v.rank = n;
    v.adapted_basis = std::move(adapted);
    v.slice_b = b;
    verify_l1(alg, v.adapted_basis, b);
    v.checks_passed = {"abelian-ideal", "centralizer", "slice-equations",
                       "commuting-adapted-basis", "containment"};
    return v;
}

} // namespace

ClassificationVerdict classify(const LieAlgebra& alg) {
    const int d = alg.dim();
    const NilpotencyInfo nil = is_nilpotent(alg);
    if (!nil.nilpotent) return out_of_scope(0, "nilpotency: the algebra is not nilpotent");
    const int n = rank_over_R(alg);
    if (n < 3)
        return out_of_scope(n, "rank: rank over R is " + std::to_string(n) + ", need >= 3");
    const CenterInfo z = center(alg);
    if (z.corank > 2)
        return out_of_scope(n, "corank: center corank is " + std::to_string(z.corank) +
                                   ", need <= 2");
    if (auto w = constants_field_witness(alg))
        return out_of_scope(n, "constants-field: nonconstant invariant " + w->str());
    if (static_cast<int>(z.coords.size()) != z.rank_over_R)
        return out_of_scope(n, "constants-field: center Q-dimension exceeds its R-rank");

    if (d == n) {
        ClassificationVerdict v = classify_dim_equals_rank(alg, z, n);
        v.checks_passed.insert(v.checks_passed.begin(),
                               {"nilpotent", "rank", "corank", "constants-field-heuristic"});
        return v;
    }

    const Subspace ideal = central_rank_ideal(alg);

    if (z.corank == 0) {
        // dim > rank with a full-rank center forces nonconstant invariants;
        // surface one honestly when the ratio heuristic missed it.
        std::vector<Derivation> z_r = maximal_r_independent(z.basis, alg.num_vars());
        for (const auto& e : alg.basis()) {
            auto coords = r_solve(z_r, e);
            if (!coords) continue;
            for (const auto& f : *coords) {
                if (!f.is_constant() && is_constant(f, alg))
                    return out_of_scope(n, "constants-field: nonconstant invariant " + f.str());
            }
        }
        return out_of_scope(n, "constants-field: dim exceeds rank with corank 0");
    }

    ClassificationVerdict v = [&] {
        if (z.corank == 1) return classify_corank1(alg, z, ideal, n);
        if (static_cast<int>(ideal.coords.size()) == n - 2)
            return classify_corank2_small_ideal(alg, z, ideal, n);
        const Subspace cent = centralizer(alg, ideal.coords);
        if (cent.coords == ideal.coords)
            return classify_corank2_selfcentralizing(alg, z, ideal, n);
        return classify_corank2_central_extension(alg, z, ideal, cent, n);
    }();
    v.checks_passed.insert(v.checks_passed.begin(),
                           {"nilpotent", "rank", "corank", "constants-field-heuristic"});
    return v;
}

// ---------------------------------------------------------------------------
// embedding

EmbeddingMap embed(const ClassificationVerdict& verdict, const LieAlgebra& alg) {
    if (!verdict.in_scope())
        throw HypothesisError("embed: classification is out of scope (" +
                              verdict.out_of_scope_reason + ")");
    const int n = verdict.rank;
    std::vector<Derivation> images;

    switch (verdict.kind) {
        case VerdictCase::AbelianDimN: {
            for (int i = 0; i < alg.dim(); ++i) images.push_back(Derivation::partial(n, i + 1));
            break;
        }
        case VerdictCase::DirectSum3PlusAbelian: {
            // Witness images: X -> d3, Y -> d2 + x3 d1, [X,Y] -> their bracket.
            std::vector<Derivation> witness = verdict.nonabelian_part;
            witness.insert(witness.end(), verdict.abelian_part.begin(),
                           verdict.abelian_part.end());
            std::vector<Derivation> witness_images;
            const Derivation img_x = Derivation::partial(n, 3);
            const Derivation img_y =
                Derivation::partial(n, 2) +
                Derivation::partial(n, 1).scaled(RationalFunction::variable(n, 3));
            witness_images.push_back(img_x);
            witness_images.push_back(img_y);
            witness_images.push_back(bracket(img_x, img_y));
            for (std::size_t m = 0; m < verdict.abelian_part.size(); ++m) {
                witness_images.push_back(Derivation::partial(n, 4 + static_cast<int>(m)));
            }
            // Express each basis element over the witness list.
            const LieAlgebra wspan = LieAlgebra::close_under_bracket(witness);
            for (const auto& e : alg.basis()) {
                auto coords = wspan.coordinates(e);
                if (!coords || coords->size() != witness.size())
                    throw InvariantError("embed: basis element outside the witness span");
                Derivation img(n);
                for (std::size_t k = 0; k < witness_images.size(); ++k) {
                    if (!(*coords)[k].is_zero()) img += witness_images[k].scaled((*coords)[k]);
                }
                images.push_back(std::move(img));
            }
            break;
        }
        case VerdictCase::TypeL1: {
            const L1Data data = verify_l1(alg, verdict.adapted_basis, *verdict.slice_b);
            const RationalFunction xn = RationalFunction::variable(n, n);
            for (int t = 0; t < alg.dim(); ++t) {
                Derivation img(n);
                for (int j = 0; j + 1 < n; ++j) {
                    const RationalFunction coeff = data.fs[t][j].eval(xn);
                    if (!coeff.is_zero()) img += Derivation::partial(n, j + 1).scaled(coeff);
                }
                if (!data.dn[t].is_zero())
                    img += Derivation::partial(n, n).scaled(data.dn[t]);
                images.push_back(std::move(img));
            }
            break;
        }
        case VerdictCase::TypeL2: {
            const L2Data data = verify_l2(alg, verdict.adapted_basis, *verdict.slice_a,
                                          *verdict.slice_b);
            const RationalFunction xn1 = RationalFunction::variable(n, n - 1);
            const RationalFunction xn = RationalFunction::variable(n, n);
            for (int t = 0; t < alg.dim(); ++t) {
                Derivation img(n);
                for (int j = 0; j + 2 < n; ++j) {
                    const RationalFunction coeff = data.fs[t][j].eval(xn1, xn);
                    if (!coeff.is_zero()) img += Derivation::partial(n, j + 1).scaled(coeff);
                }
                const RationalFunction gcoeff = data.g[t].eval(xn);
                if (!gcoeff.is_zero()) img += Derivation::partial(n, n - 1).scaled(gcoeff);
                if (!data.dn[t].is_zero())
                    img += Derivation::partial(n, n).scaled(data.dn[t]);
                images.push_back(std::move(img));
            }
            break;
        }
        case VerdictCase::OutOfScope: break; // unreachable
    }

    // Verify: u_n membership, injectivity, exact bracket preservation.
    for (const auto& img : images) {
        if (!is_member_un(img)) throw InvariantError("embed: image outside u_n");
    }
    if (!q_independent(images)) throw InvariantError("embed: images are Q-dependent");

    EmbeddingMap map;
    for (int s = 0; s < alg.dim(); ++s) map.table.emplace_back(alg.basis()[s], images[s]);
    for (int s = 0; s < alg.dim(); ++s) {
        for (int t = s + 1; t < alg.dim(); ++t) {
            const QVector c = alg.bracket_coords(s, t);
            Derivation lhs(n);
            for (int k = 0; k < alg.dim(); ++k) {
                if (!c[k].is_zero()) lhs += images[k].scaled(c[k]);
            }
            if (lhs != bracket(images[s], images[t]))
                throw InvariantError("embed: bracket preservation failed");
            ++map.pair_checks;
        }
    }
    return map;
}

// ---------------------------------------------------------------------------
// random generation

namespace {

Derivation sample_sparse_triangular(std::mt19937_64& eng, int n) {
    auto pick = [&](std::uint64_t span) { return static_cast<int>(eng() % span); };
    std::vector<RationalFunction> coeffs(n, RationalFunction(n));
    const int slots = 1 + pick(2);
    for (int s = 0; s < slots; ++s) {
        const int i = 1 + pick(static_cast<std::uint64_t>(n));
        Polynomial::Exponents e(n, 0);
        int budget = pick(3); // total degree <= 2
        for (int j = i; j < n && budget > 0; ++j) {
            e[j] = pick(static_cast<std::uint64_t>(budget) + 1);
            budget -= e[j];
        }
        const Rational c((1 + pick(3)) * (pick(2) ? 1 : -1));
        coeffs[i - 1] += RationalFunction(Polynomial::monomial(n, e, c));
    }
    return Derivation(std::move(coeffs));
}

} // namespace

LieAlgebra random_nilpotent(int n, std::uint64_t seed, int size) {
    if (n < 1 || n > 5) throw DomainError("random_nilpotent: need 1 <= n <= 5");
    if (size < 0 || size > 12) throw DomainError("random_nilpotent: need 0 <= size <= 12");
    if (size == 0) return LieAlgebra::close_under_bracket({Derivation(n)});

    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        std::mt19937_64 eng(seed + 0x9E3779B97F4A7C15ULL * (attempt + 1));
        std::vector<Derivation> gens;
        for (int g = 0; g < size; ++g) gens.push_back(sample_sparse_triangular(eng, n));
        try {
            return LieAlgebra::close_under_bracket(gens);
        } catch (const ClosureOverflowError&) {
            continue; // deterministic seed advance
        }
    }
    throw InvariantError("random_nilpotent: closure overflowed on every attempt");
}

// ---------------------------------------------------------------------------
// reports

std::string verdict_report_json(const ClassificationVerdict& verdict) {
    nlohmann::json j;
    j["case"] = verdict_case_name(verdict.kind);
    j["rank_over_R"] = verdict.rank;
    if (!verdict.in_scope()) {
        j["failed_check"] = verdict.out_of_scope_reason;
        return j.dump(2);
    }
    j["adapted_basis"] = nlohmann::json::array();
    for (const auto& d : verdict.adapted_basis) j["adapted_basis"].push_back(d.str());
    j["a"] = verdict.slice_a ? nlohmann::json(verdict.slice_a->str()) : nlohmann::json(nullptr);
    j["b"] = verdict.slice_b ? nlohmann::json(verdict.slice_b->str()) : nlohmann::json(nullptr);
    if (verdict.kind == VerdictCase::DirectSum3PlusAbelian) {
        j["nonabelian_part"] = nlohmann::json::array();
        for (const auto& d : verdict.nonabelian_part) j["nonabelian_part"].push_back(d.str());
        j["abelian_part"] = nlohmann::json::array();
        for (const auto& d : verdict.abelian_part) j["abelian_part"].push_back(d.str());
    }
    j["checks_passed"] = verdict.checks_passed;
    return j.dump(2);
}

std::string embedding_report_json(const ClassificationVerdict& verdict,
                                  const EmbeddingMap& map) {
    nlohmann::json j;
    j["case"] = verdict_case_name(verdict.kind);
    j["rank_over_R"] = verdict.rank;
    j["map"] = nlohmann::json::array();
    for (const auto& [src, img] : map.table) {
        j["map"].push_back({{"source", src.str()}, {"image", img.str()}});
    }
    j["pairs_checked"] = map.pair_checks;
    j["images_in_un"] = true;
    j["injective"] = true;
    j["brackets_preserved"] = true;
    return j.dump(2);
}

} // namespace liederiv
