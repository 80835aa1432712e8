#include "liederiv/linear.hpp"

#include <algorithm>
#include <map>

#include "liederiv/errors.hpp"

namespace liederiv {

RVector normalize_vector(RVector v) {
    int first = -1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_zero()) {
            first = static_cast<int>(i);
            break;
        }
    }
    if (first < 0) return v;
    const int n = v[first].num_vars();

    Polynomial den_lcm = Polynomial::constant(n, Rational(1));
    for (const auto& f : v) {
        if (!f.is_zero() && !f.den().is_constant()) den_lcm = lcm_monic(den_lcm, f.den());
    }
    std::vector<Polynomial> cleared;
    cleared.reserve(v.size());
    for (const auto& f : v) {
        if (f.is_zero()) {
            cleared.emplace_back(n);
        } else {
            cleared.push_back(f.num() * *Polynomial::div_exact(den_lcm, f.den()));
        }
    }
    Polynomial g(n);
    for (const auto& p : cleared) {
        if (p.is_zero()) continue;
        g = g.is_zero() ? p.primitive_associate() : gcd(g, p);
        if (g.is_constant()) break;
    }
    if (!g.is_constant()) {
        for (auto& p : cleared) {
            if (!p.is_zero()) p = *Polynomial::div_exact(p, g);
        }
    }
    // Joint rational content, signed so the first nonzero entry leads positive.
    BigInt num_gcd = 0, den_l = 1;
    for (const auto& p : cleared) {
        for (const auto& [e, c] : p.terms()) {
            num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(c.num()));
            den_l = den_l / boost::multiprecision::gcd(den_l, c.den()) * c.den();
        }
    }
    Rational content(num_gcd, den_l);
    if (cleared[first].leading_coefficient().sign() < 0) content = -content;
    const Rational inv = Rational(1) / content;
    RVector out;
    out.reserve(v.size());
    for (auto& p : cleared) out.emplace_back(p.scaled(inv));
    return out;
}

DependenceOutcome solve_dependence(const std::vector<RVector>& input) {
    DependenceOutcome out{true, 0, {}, std::nullopt};
    if (input.empty()) return out;
    const std::size_t width = input[0].size();
    for (const auto& r : input) {
        if (r.size() != width) throw DimensionError("solve_dependence: ragged rows");
    }
    const int rows = static_cast<int>(input.size());
    const int n = width ? input[0].empty() ? 1 : input[0][0].num_vars() : 1;

    std::vector<RVector> m = input;
    std::vector<RVector> comb(rows);
    for (int i = 0; i < rows; ++i) {
        comb[i].assign(rows, RationalFunction(n));
        comb[i][i] = RationalFunction::constant(n, Rational(1));
    }
    std::vector<bool> is_pivot_row(rows, false);

    for (std::size_t c = 0; c < width; ++c) {
        // Pivot: candidate row whose entry has minimal numerator total degree,
        // ties broken by row index.
        int pivot = -1;
        int best_deg = 0;
        for (int i = 0; i < rows; ++i) {
            if (is_pivot_row[i] || m[i][c].is_zero()) continue;
            const int deg = m[i][c].numerator_degree();
            if (pivot < 0 || deg < best_deg) {
                pivot = i;
                best_deg = deg;
            }
        }
        if (pivot < 0) continue;
        is_pivot_row[pivot] = true;
        out.pivot_columns.push_back(static_cast<int>(c));

        const RationalFunction p = m[pivot][c];
        for (int i = 0; i < rows; ++i) {
            if (i == pivot || m[i][c].is_zero()) continue;
            const RationalFunction q = m[i][c];
            for (std::size_t j = 0; j < width; ++j) m[i][j] = p * m[i][j] - q * m[pivot][j];
            for (int j = 0; j < rows; ++j) comb[i][j] = p * comb[i][j] - q * comb[pivot][j];
        }
    }

    out.rank = static_cast<int>(out.pivot_columns.size());
    out.independent = out.rank == rows;
    if (!out.independent) {
        for (int i = 0; i < rows; ++i) {
            if (is_pivot_row[i]) continue;
            bool zero = std::all_of(m[i].begin(), m[i].end(),
                                    [](const RationalFunction& f) { return f.is_zero(); });
            if (zero) {
                out.dependence = normalize_vector(comb[i]);
                break;
            }
        }
        if (!out.dependence)
            throw InvariantError("solve_dependence: rank deficit without a zero row");
    }
    return out;
}

int rank_over_R(const std::vector<RVector>& rows) { return solve_dependence(rows).rank; }

RSpan::RSpan(int width) : width_(width) {}

RVector RSpan::reduce(const RVector& v) const {
    RVector out = v;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const RationalFunction f = out[pivot_cols_[r]];
        if (f.is_zero()) continue;
        for (int j = 0; j < width_; ++j) out[j] -= f * rows_[r][j];
    }
    return out;
}

bool RSpan::contains(const RVector& v) const {
    const RVector res = reduce(v);
    return std::all_of(res.begin(), res.end(),
                       [](const RationalFunction& f) { return f.is_zero(); });
}

std::optional<RVector> RSpan::solve(const RVector& v) const {
    if (static_cast<int>(v.size()) != width_) throw DimensionError("RSpan: width mismatch");
    RVector out = v;
    const int n = width_ ? v[0].num_vars() : 1;
    RVector coords(rows_.size(), RationalFunction(n));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const RationalFunction f = out[pivot_cols_[r]];
        if (f.is_zero()) continue;
        for (int j = 0; j < width_; ++j) out[j] -= f * rows_[r][j];
        for (std::size_t j = 0; j < transform_[r].size(); ++j)
            coords[j] += f * transform_[r][j];
    }
    for (const auto& f : out)
        if (!f.is_zero()) return std::nullopt;
    coords.resize(dim(), RationalFunction(n));
    return coords;
}

bool RSpan::insert(const RVector& v) {
    if (static_cast<int>(v.size()) != width_) throw DimensionError("RSpan: width mismatch");
    const int n = width_ ? v[0].num_vars() : 1;

    RVector res = v;
    RVector tcoords(dim() + 1, RationalFunction(n));
    tcoords[dim()] = RationalFunction::constant(n, Rational(1));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const RationalFunction f = res[pivot_cols_[r]];
        if (f.is_zero()) continue;
        for (int j = 0; j < width_; ++j) res[j] -= f * rows_[r][j];
        for (std::size_t j = 0; j < transform_[r].size(); ++j)
            tcoords[j] -= f * transform_[r][j];
    }
    int pc = -1;
    for (int j = 0; j < width_; ++j) {
        if (!res[j].is_zero()) {
            pc = j;
            break;
        }
    }
    if (pc < 0) return false;

    const RationalFunction inv = res[pc].inverse();
    for (int j = 0; j < width_; ++j) res[j] *= inv;
    for (auto& t : tcoords) t *= inv;

    // Keep RREF: clear the new pivot column from the existing rows.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const RationalFunction f = rows_[r][pc];
        if (f.is_zero()) continue;
        for (int j = 0; j < width_; ++j) rows_[r][j] -= f * res[j];
        transform_[r].resize(tcoords.size(), RationalFunction(n));
        for (std::size_t j = 0; j < tcoords.size(); ++j)
            transform_[r][j] -= f * tcoords[j];
    }
    for (auto& t : transform_) t.resize(tcoords.size(), RationalFunction(n));
    rows_.push_back(std::move(res));
    transform_.push_back(std::move(tcoords));
    pivot_cols_.push_back(pc);
    return true;
}

QMatrix q_coordinate_matrix(const std::vector<RVector>& vectors) {
    if (vectors.empty()) return {};
    const std::size_t width = vectors[0].size();
    for (const auto& v : vectors) {
        if (v.size() != width) throw DimensionError("q_coordinate_matrix: ragged rows");
    }
    if (width == 0) return QMatrix(vectors.size());
    const int n = vectors[0][0].num_vars();

    std::vector<Polynomial> slot_lcm(width, Polynomial::constant(n, Rational(1)));
    for (std::size_t s = 0; s < width; ++s) {
        for (const auto& v : vectors) {
            const auto& f = v[s];
            if (!f.is_zero() && !f.den().is_constant())
                slot_lcm[s] = lcm_monic(slot_lcm[s], f.den());
        }
    }

    // Column keys: (slot, monomial exponents), in deterministic order.
    std::map<std::pair<std::size_t, Polynomial::Exponents>, std::size_t> columns;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> sparse_rows;
    for (const auto& v : vectors) {
        std::vector<std::pair<std::size_t, Rational>> row;
        for (std::size_t s = 0; s < width; ++s) {
            if (v[s].is_zero()) continue;
            const Polynomial numer =
                v[s].num() * *Polynomial::div_exact(slot_lcm[s], v[s].den());
            for (const auto& [e, c] : numer.terms()) {
                auto [it, _] = columns.try_emplace({s, e}, columns.size());
                row.emplace_back(it->second, c);
            }
        }
        sparse_rows.push_back(std::move(row));
    }
    QMatrix out(vectors.size(), QVector(columns.size(), Rational(0)));
    for (std::size_t i = 0; i < sparse_rows.size(); ++i) {
        for (const auto& [j, c] : sparse_rows[i]) out[i][j] = c;
    }
    return out;
}

} // namespace liederiv
