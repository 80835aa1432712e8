#include "liederiv/lie_algebra.hpp"

#include <algorithm>
#include <deque>

#include <json.hpp>

#include "liederiv/errors.hpp"

namespace liederiv {

namespace {

Rational q_scale_content(const Derivation& d) {
    for (const auto& c : d.coeffs()) {
        if (!c.is_zero()) return c.num().rational_content();
    }
    return Rational(1);
}

// Q-linear span of derivations with coordinate extraction. Coordinates are
// numerator monomials per coefficient slot over a running common denominator;
// enlarging the denominator triggers a rebuild, which element insertion order
// keeps deterministic.
class KSpan {
public:
    explicit KSpan(int num_vars)
        : n_(num_vars), slot_lcm_(num_vars, Polynomial::constant(num_vars, Rational(1))) {}

    int dim() const { return static_cast<int>(elems_.size()); }

    // Coordinates over the inserted elements, or nullopt when independent.
    std::optional<QVector> solve(const Derivation& d) const {
        SparseRow row;
        if (!build_row(d, false, row)) return std::nullopt;
        QVector coords(elems_.size(), Rational(0));
        reduce(row, &coords);
        if (!row.empty()) return std::nullopt;
        return coords;
    }

    // Adjoins d when independent (returns true); no-op when dependent.
    bool insert(const Derivation& d) {
        if (d.is_zero()) return false;
        bool enlarged = false;
        for (int s = 0; s < n_; ++s) {
            const auto& c = d.coeffs()[s];
            if (c.is_zero() || c.den().is_constant()) continue;
            if (!Polynomial::div_exact(slot_lcm_[s], c.den()).has_value()) {
                slot_lcm_[s] = lcm_monic(slot_lcm_[s], c.den());
                enlarged = true;
            }
        }
        if (enlarged) rebuild();

        SparseRow row;
        build_row(d, true, row);
        QVector coords(elems_.size(), Rational(0));
        reduce(row, &coords);
        if (row.empty()) return false;

        const auto pivot = row.begin()->first;
        const Rational inv = Rational(1) / row.begin()->second;
        for (auto& [col, val] : row) val *= inv;
        QVector trow(elems_.size() + 1, Rational(0));
        for (std::size_t j = 0; j < coords.size(); ++j) trow[j] = -coords[j] * inv;
        trow[elems_.size()] = inv;

        // Maintain reduced form: clear the new pivot from existing rows.
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            auto it = rows_[r].find(pivot);
            if (it == rows_[r].end()) continue;
            const Rational f = it->second;
            subtract_scaled(rows_[r], row, f);
            transform_[r].resize(trow.size(), Rational(0));
            for (std::size_t j = 0; j < trow.size(); ++j) transform_[r][j] -= f * trow[j];
        }
        for (auto& t : transform_) t.resize(trow.size(), Rational(0));
        rows_.push_back(std::move(row));
        transform_.push_back(std::move(trow));
        pivot_cols_.push_back(pivot);
        elems_.push_back(d);
        return true;
    }

private:
    using SparseRow = std::map<int, Rational>;

    static void subtract_scaled(SparseRow& target, const SparseRow& src, const Rational& f) {
        for (const auto& [col, val] : src) {
            auto it = target.find(col);
            if (it == target.end()) {
                target.emplace(col, -(f * val));
            } else {
                it->second -= f * val;
                if (it->second.is_zero()) target.erase(it);
            }
        }
    }

    // Registers columns when allow_new; otherwise a fresh monomial or an
    // incompatible denominator certifies independence (returns false).
    bool build_row(const Derivation& d, bool allow_new, SparseRow& row) const {
        for (int s = 0; s < n_; ++s) {
            const auto& c = d.coeffs()[s];
            if (c.is_zero()) continue;
            auto factor = Polynomial::div_exact(slot_lcm_[s], c.den());
            if (!factor) return false; // cannot happen when allow_new: lcm was enlarged
            const Polynomial numer = c.num() * *factor;
            for (const auto& [e, q] : numer.terms()) {
                const auto key = std::make_pair(s, e);
                auto it = columns_.find(key);
                if (it == columns_.end()) {
                    if (!allow_new) return false;
                    it = columns_.emplace(key, static_cast<int>(columns_.size())).first;
                }
                row[it->second] += q;
                if (row[it->second].is_zero()) row.erase(it->second);
            }
        }
        return true;
    }

    void reduce(SparseRow& row, QVector* coords) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            auto it = row.find(pivot_cols_[r]);
            if (it == row.end()) continue;
            const Rational f = it->second;
            subtract_scaled(row, rows_[r], f);
            if (coords) {
                for (std::size_t j = 0; j < transform_[r].size(); ++j)
                    (*coords)[j] += f * transform_[r][j];
            }
        }
    }

    void rebuild() {
        columns_.clear();
        rows_.clear();
        transform_.clear();
        pivot_cols_.clear();
        std::vector<Derivation> old;
        old.swap(elems_);
        for (const auto& e : old) insert(e);
    }

    int n_;
    std::vector<Derivation> elems_;
    std::vector<Polynomial> slot_lcm_;
    mutable std::map<std::pair<int, Polynomial::Exponents>, int> columns_;
    std::vector<SparseRow> rows_;
    std::vector<QVector> transform_;
    std::vector<int> pivot_cols_;
};

QMatrix transpose(const QMatrix& m, int cols) {
    QMatrix out(cols, QVector(m.size(), Rational(0)));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (int j = 0; j < cols; ++j) out[j][i] = m[i][j];
    }
    return out;
}

// Per-basis-index view of the bracket table, for fast [basis_i, w] products.
class AdIndex {
public:
    explicit AdIndex(const LieAlgebra& alg) : dim_(alg.dim()), adj_(alg.dim()) {
        for (const auto& [ij, c] : alg.table()) {
            adj_[ij.first].push_back({ij.second, &c, 1});
            adj_[ij.second].push_back({ij.first, &c, -1});
        }
    }

    // Coordinates of [basis_i, w].
    QVector apply(int i, const QVector& w) const {
        QVector out(dim_, Rational(0));
        for (const auto& [j, c, sign] : adj_[i]) {
            Rational f = w[j];
            if (f.is_zero()) continue;
            if (sign < 0) f = -f;
            for (std::size_t k = 0; k < c->size(); ++k) out[k] += f * (*c)[k];
        }
        return out;
    }

private:
    int dim_;
    std::vector<std::vector<std::tuple<int, const QVector*, int>>> adj_;
};

} // namespace

Derivation normalize_q_scale(const Derivation& d) {
    const Rational c = q_scale_content(d);
    if (c.is_one() || c.is_zero()) return d;
    return d.scaled(Rational(1) / c);
}

bool q_independent(const std::vector<Derivation>& elems) {
    if (elems.empty()) return true;
    KSpan span(elems[0].num_vars());
    for (const auto& e : elems) {
        if (!span.insert(e)) return false;
    }
    return true;
}

LieAlgebra LieAlgebra::close_under_bracket(const std::vector<Derivation>& generators,
                                           int max_dim) {
    if (max_dim < 1) throw DomainError("close_under_bracket: max_dim must be positive");
    LieAlgebra alg;
    alg.num_vars_ = generators.empty() ? 1 : generators[0].num_vars();
    for (const auto& g : generators) {
        if (g.num_vars() != alg.num_vars_)
            throw DimensionError("close_under_bracket: variable count mismatch");
    }
    alg.generators_ = generators;

    KSpan span(alg.num_vars_);
    std::deque<std::pair<int, int>> queue;
    auto adjoin = [&](const Derivation& d) {
        if (static_cast<int>(alg.basis_.size()) >= max_dim)
            throw ClosureOverflowError("close_under_bracket: dimension exceeds max_dim");
        span.insert(d);
        const int idx = static_cast<int>(alg.basis_.size());
        alg.basis_.push_back(d);
        for (int k = 0; k < idx; ++k) queue.emplace_back(k, idx);
    };

    for (const auto& g : generators) {
        if (g.is_zero()) continue;
        if (!span.solve(g)) adjoin(g);
    }

    while (!queue.empty()) {
        const auto [i, j] = queue.front();
        queue.pop_front();
        const Derivation w = bracket(alg.basis_[i], alg.basis_[j]);
        if (w.is_zero()) continue;
        if (auto coords = span.solve(w)) {
            coords->resize(alg.basis_.size(), Rational(0));
            alg.table_[{i, j}] = std::move(*coords);
            continue;
        }
        const Rational scale = q_scale_content(w);
        const Derivation wn = w.scaled(Rational(1) / scale);
        adjoin(wn);
        QVector coords(alg.basis_.size(), Rational(0));
        coords.back() = scale;
        alg.table_[{i, j}] = std::move(coords);
    }
    return alg;
}

QVector LieAlgebra::bracket_coords(int i, int j) const {
    QVector out(dim(), Rational(0));
    if (i == j) return out;
    const bool flip = i > j;
    if (flip) std::swap(i, j);
    auto it = table_.find({i, j});
    if (it == table_.end()) return out;
    for (std::size_t k = 0; k < it->second.size(); ++k) {
        out[k] = flip ? -it->second[k] : it->second[k];
    }
    return out;
}

QVector LieAlgebra::bracket_of(const QVector& a, const QVector& b) const {
    const int d = dim();
    QVector out(d, Rational(0));
    for (const auto& [ij, c] : table_) {
        const auto [i, j] = ij;
        const Rational f = a[i] * b[j] - a[j] * b[i];
        if (f.is_zero()) continue;
        for (std::size_t k = 0; k < c.size(); ++k) out[k] += f * c[k];
    }
    return out;
}

std::optional<QVector> LieAlgebra::coordinates(const Derivation& d) const {
    if (d.num_vars() != num_vars_) throw DimensionError("coordinates: variable count mismatch");
    KSpan span(num_vars_);
    for (const auto& b : basis_) span.insert(b);
    if (d.is_zero()) return QVector(dim(), Rational(0));
    auto c = span.solve(d);
    if (c) c->resize(dim(), Rational(0));
    return c;
}

Derivation LieAlgebra::from_coordinates(const QVector& coords) const {
    Derivation out(num_vars_);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].is_zero()) continue;
        out += basis_[i].scaled(coords[i]);
    }
    return out;
}

std::vector<RVector> LieAlgebra::coefficient_rows() const {
    std::vector<RVector> rows;
    rows.reserve(basis_.size());
    for (const auto& b : basis_) rows.push_back(b.coeffs());
    return rows;
}

bool LieAlgebra::is_abelian() const {
    for (const auto& [ij, c] : table_) {
        for (const auto& q : c)
            if (!q.is_zero()) return false;
    }
    return true;
}

int rank_over_R(const LieAlgebra& alg) {
    RSpan span(alg.num_vars());
    for (const auto& b : alg.basis()) span.insert(b.coeffs());
    return span.dim();
}

namespace {

// All distinct nonzero terms of the series plus a nilpotency flag: the last
// returned term is either the final nonzero term (nilpotent) or the
// stabilized term (not nilpotent).
std::pair<std::vector<QMatrix>, bool> series_impl(const LieAlgebra& alg) {
    const int d = alg.dim();
    std::vector<QMatrix> series;
    if (d == 0) return {series, true};

    QMatrix current(d, QVector(d, Rational(0)));
    for (int i = 0; i < d; ++i) current[i][i] = Rational(1);
    series.push_back(current);

    const AdIndex ad(alg);
    for (;;) {
        QMatrix next;
        for (int i = 0; i < d; ++i) {
            for (const auto& w : series.back()) next.push_back(ad.apply(i, w));
        }
        rref(next);
        if (next.empty()) return {series, true};
        if (next == series.back()) return {series, false};
        series.push_back(std::move(next));
    }
}

} // namespace

std::vector<QMatrix> lower_central_series(const LieAlgebra& alg) {
    return series_impl(alg).first;
}

NilpotencyInfo is_nilpotent(const LieAlgebra& alg) {
    const auto [series, nilpotent] = series_impl(alg);
    return {nilpotent, nilpotent ? static_cast<int>(series.size()) : 0};
}

CenterInfo center(const LieAlgebra& alg) {
    const int d = alg.dim();
    CenterInfo out;
    out.rank_over_R = 0;
    out.corank = 0;
    if (d == 0) return out;

    QMatrix constraints;
    // Row per (i, k): sum_j z_j c_{ji}[k] = 0.
    std::vector<QMatrix> per_j; // per_j[j][i] = bracket_coords(j, i)
    per_j.reserve(d);
    for (int j = 0; j < d; ++j) {
        QMatrix col;
        for (int i = 0; i < d; ++i) col.push_back(alg.bracket_coords(j, i));
        per_j.push_back(std::move(col));
    }
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            QVector row(d, Rational(0));
            bool nonzero = false;
            for (int j = 0; j < d; ++j) {
                row[j] = per_j[j][i][k];
                if (!row[j].is_zero()) nonzero = true;
            }
            if (nonzero) constraints.push_back(std::move(row));
        }
    }
    out.coords = kernel_basis(constraints, d);
    RSpan rspan(alg.num_vars());
    for (const auto& v : out.coords) {
        out.basis.push_back(alg.from_coordinates(v));
        rspan.insert(out.basis.back().coeffs());
    }
    out.rank_over_R = rspan.dim();
    out.corank = rank_over_R(alg) - out.rank_over_R;
    return out;
}

Subspace r_span_intersection(const LieAlgebra& alg, const std::vector<Derivation>& spanners) {
    const int d = alg.dim();
    Subspace out;
    if (d == 0) return out;

    RSpan rs(alg.num_vars());
    for (const auto& s : spanners) rs.insert(s.coeffs());

    std::vector<RVector> residuals;
    residuals.reserve(d);
    for (const auto& b : alg.basis()) residuals.push_back(rs.reduce(b.coeffs()));
    const QMatrix m = q_coordinate_matrix(residuals);
    const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
    out.coords = kernel_basis(transpose(m, cols), d);
    for (const auto& v : out.coords) out.elements.push_back(alg.from_coordinates(v));
    return out;
}

Subspace central_rank_ideal(const LieAlgebra& alg) {
    const CenterInfo z = center(alg);
    // Maximal R-independent subset of the center basis.
    RSpan rs(alg.num_vars());
    std::vector<Derivation> z_r;
    for (const auto& zb : z.basis) {
        if (rs.insert(zb.coeffs())) z_r.push_back(zb);
    }
    Subspace ideal = r_span_intersection(alg, z_r);

    // Lemma-level guarantees, verified rather than assumed.
    for (std::size_t a = 0; a < ideal.elements.size(); ++a) {
        for (std::size_t b = a + 1; b < ideal.elements.size(); ++b) {
            if (!bracket(ideal.elements[a], ideal.elements[b]).is_zero())
                throw InvariantError("central_rank_ideal: I is not abelian");
        }
    }
    QRowSpace membership(ideal.coords);
    const AdIndex ad(alg);
    for (int i = 0; i < alg.dim(); ++i) {
        for (const auto& v : ideal.coords) {
            if (!membership.contains(ad.apply(i, v)))
                throw InvariantError("central_rank_ideal: I is not an ideal");
        }
    }
    return ideal;
}

Subspace centralizer(const LieAlgebra& alg, const QMatrix& sub_coords) {
    const int d = alg.dim();
    Subspace out;
    if (d == 0) return out;
    QMatrix constraints;
    const AdIndex ad(alg);
    for (const auto& w : sub_coords) {
        // bw[j] = [e_j, w] coordinates
        QMatrix bw;
        for (int j = 0; j < d; ++j) bw.push_back(ad.apply(j, w));
        for (int k = 0; k < d; ++k) {
            QVector row(d, Rational(0));
            bool nonzero = false;
            for (int j = 0; j < d; ++j) {
                row[j] = bw[j][k];
                if (!row[j].is_zero()) nonzero = true;
            }
            if (nonzero) constraints.push_back(std::move(row));
        }
    }
    out.coords = kernel_basis(constraints, d);
    for (const auto& v : out.coords) out.elements.push_back(alg.from_coordinates(v));
    return out;
}

bool is_constant(const RationalFunction& f, const LieAlgebra& alg) {
    if (f.num_vars() != alg.num_vars())
        throw DimensionError("is_constant: variable count mismatch");
    for (const auto& g : alg.generators()) {
        if (!g.apply(f).is_zero()) return false;
    }
    return true;
}

std::vector<Derivation> jordan_chain(const Derivation& d,
                                     const std::vector<Derivation>& subspace) {
    if (subspace.empty()) return {};
    KSpan span(d.num_vars());
    for (const auto& s : subspace) {
        if (!span.insert(s)) throw DomainError("jordan_chain: subspace basis is dependent");
    }
    const int s = static_cast<int>(subspace.size());
    QMatrix m(s, QVector(s, Rational(0)));
    for (int j = 0; j < s; ++j) {
        const Derivation w = bracket(d, subspace[j]);
        auto coords = w.is_zero() ? QVector(s, Rational(0)) : span.solve(w);
        if (!coords) throw HypothesisError("jordan_chain: subspace is not invariant under ad D");
        coords->resize(s, Rational(0));
        for (int k = 0; k < s; ++k) m[k][j] = (*coords)[k];
    }
    const QMatrix ker = kernel_basis(m, s);
    if (ker.size() != 1)
        throw HypothesisError("jordan_chain: kernel dimension is not 1");
    auto chain = single_jordan_chain(m);
    if (!chain) throw HypothesisError("jordan_chain: restriction of ad D is not nilpotent");
    std::vector<Derivation> out;
    out.reserve(chain->size());
    for (const auto& v : *chain) {
        Derivation e(d.num_vars());
        for (int k = 0; k < s; ++k) {
            if (!v[k].is_zero()) e += subspace[k].scaled(v[k]);
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::optional<RationalFunction> constants_field_witness(const LieAlgebra& alg) {
    const auto& basis = alg.basis();
    auto try_ratio = [&](const RationalFunction& a,
                         const RationalFunction& b) -> std::optional<RationalFunction> {
        const RationalFunction r = a / b;
        if (r.is_constant()) return std::nullopt;
        if (is_constant(r, alg)) return r;
        return std::nullopt;
    };
    for (const auto& e : basis) {
        for (int i = 0; i < alg.num_vars(); ++i) {
            for (int j = i + 1; j < alg.num_vars(); ++j) {
                const auto& a = e.coeffs()[i];
                const auto& b = e.coeffs()[j];
                if (a.is_zero() || b.is_zero()) continue;
                if (auto w = try_ratio(a, b)) return w;
            }
        }
    }
    for (std::size_t s = 0; s < basis.size(); ++s) {
        for (std::size_t t = s + 1; t < basis.size(); ++t) {
            for (int i = 0; i < alg.num_vars(); ++i) {
                const auto& a = basis[s].coeffs()[i];
                const auto& b = basis[t].coeffs()[i];
                if (a.is_zero() || b.is_zero()) continue;
                if (auto w = try_ratio(a, b)) return w;
            }
        }
    }
    return std::nullopt;
}

std::string structure_report_json(const LieAlgebra& alg) {
    nlohmann::json j;
    j["num_vars"] = alg.num_vars();
    j["dim"] = alg.dim();
    j["generators"] = nlohmann::json::array();
    for (const auto& g : alg.generators()) j["generators"].push_back(g.str());
    j["basis"] = nlohmann::json::array();
    for (const auto& b : alg.basis()) j["basis"].push_back(b.str());

    auto sc = nlohmann::json::array();
    for (int i = 0; i < alg.dim(); ++i) {
        for (int k = i + 1; k < alg.dim(); ++k) {
            const QVector c = alg.bracket_coords(i, k);
            for (int l = 0; l < alg.dim(); ++l) {
                if (!c[l].is_zero()) sc.push_back({i, k, l, c[l].str()});
            }
        }
    }
    j["structure_constants"] = std::move(sc);

    j["rank_over_R"] = rank_over_R(alg);
    const CenterInfo z = center(alg);
    j["center"] = nlohmann::json::object();
    j["center"]["basis"] = nlohmann::json::array();
    for (const auto& b : z.basis) j["center"]["basis"].push_back(b.str());
    j["center"]["rank_over_R"] = z.rank_over_R;
    j["center"]["corank"] = z.corank;

    const NilpotencyInfo nil = is_nilpotent(alg);
    j["nilpotent"] = nil.nilpotent;
    if (nil.nilpotent) j["nilpotency_class"] = nil.nilpotency_class;
    j["abelian"] = alg.is_abelian();

    if (auto w = constants_field_witness(alg)) {
        j["constants_field_witness"] = w->str();
    } else {
        j["constants_field_witness"] = nullptr;
    }
    return j.dump(2);
}

} // namespace liederiv
