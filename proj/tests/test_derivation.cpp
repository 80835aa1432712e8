#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liederiv/derivation.hpp"
#include "liederiv/errors.hpp"
#include "liederiv/parse.hpp"

#include "test_support.hpp"

using namespace liederiv;

namespace {

Derivation D(const std::string& s, int n) { return parse_derivation(s, n); }
RationalFunction F(const std::string& s, int n) { return parse_rational_function(s, n); }

} // namespace

TEST_CASE("apply") {
    CHECK(D("d3", 3).apply(F("x3^2/2", 3)) == F("x3", 3));
    CHECK(D("x3*d1", 3).apply(F("x2", 3)).is_zero());
    // termwise application
    CHECK(D("d2 + x3*d1", 3).apply(F("x1 + x2^2", 3)) == F("x3 + 2*x2", 3));
    // quotient rule
    CHECK(D("d1", 2).apply(F("x1/x2", 2)) == F("1/x2", 2));
    CHECK(D("d2", 2).apply(F("x1/x2", 2)) == F("-x1/x2^2", 2));
}

TEST_CASE("bracket examples") {
    CHECK(bracket(D("d1", 2), D("d2", 2)).is_zero());
    CHECK(bracket(D("d3", 3), D("x3*d1", 3)) == D("d1", 3));
    // the nonabelian class-2 pattern
    CHECK(bracket(D("d3", 3), D("d2 + x3*d1", 3)) == D("d1", 3));
    CHECK_THROWS_AS(bracket(D("d1", 1), D("d2", 2)), DimensionError);
}

TEST_CASE("bracket is anticommutative and satisfies jacobi") {
    testsupport::Rng rng(0x5eed010);
    const Derivation zero3(3);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = static_cast<int>(rng.range(2, 4));
        const Derivation a = rng.derivation(n, 2, 2);
        const Derivation b = rng.derivation(n, 2, 2);
        const Derivation c = rng.derivation(n, 2, 2);
        CHECK(bracket(a, b) == -bracket(b, a));
        const Derivation jac =
            bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("bracket acts as a derivation commutator") {
    testsupport::Rng rng(0x5eed011);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = static_cast<int>(rng.range(2, 4));
        const Derivation a = rng.derivation(n, 2, 2);
        const Derivation b = rng.derivation(n, 2, 2);
        const RationalFunction f(rng.polynomial(n, 2, 3));
        CHECK(bracket(a, b).apply(f) == a.apply(b.apply(f)) - b.apply(a.apply(f)));
    }
}

TEST_CASE("scaled bracket relations") {
    testsupport::Rng rng(0x5eed012);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 4;
        // relation 1) on general scalars and derivations
        const RationalFunction a(rng.polynomial(n, 2, 2));
        const RationalFunction b(rng.polynomial(n, 2, 2));
        const Derivation d1 = rng.derivation(n, 2, 2);
        const Derivation d2 = rng.derivation(n, 2, 2);
        const Derivation lhs = bracket(d1.scaled(a), d2.scaled(b));
        const Derivation rhs = bracket(d1, d2).scaled(a * b) + d2.scaled(a * d1.apply(b)) -
                               d1.scaled(b * d2.apply(a));
        CHECK(lhs == rhs);
    }
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 4;
        // relation 2): a, b killed by both derivations
        std::vector<RationalFunction> c1(n, RationalFunction(n)), c2(n, RationalFunction(n));
        for (int i = 0; i < 2; ++i) {
            c1[i] = RationalFunction(rng.polynomial(n, 2, 2));
            c2[i] = RationalFunction(rng.polynomial(n, 2, 2));
        }
        const Derivation d1{std::vector<RationalFunction>(c1)};
        const Derivation d2{std::vector<RationalFunction>(c2)};
        // a, b use only x3, x4, so both derivations kill them
        Polynomial::Exponents e1(n, 0), e2(n, 0);
        e1[2] = static_cast<int>(rng.range(0, 2));
        e1[3] = static_cast<int>(rng.range(0, 2));
        e2[3] = static_cast<int>(rng.range(1, 2));
        const RationalFunction a(
            Polynomial::monomial(n, e1, rng.rational(-5, 5)) +
            Polynomial::constant(n, rng.rational(-3, 3)));
        const RationalFunction b(Polynomial::monomial(n, e2, rng.rational(-5, 5)));
        REQUIRE(d1.apply(a).is_zero());
        REQUIRE(d2.apply(b).is_zero());
        CHECK(bracket(d1.scaled(a), d2.scaled(b)) == bracket(d1, d2).scaled(a * b));
    }
}

TEST_CASE("triangularity predicate") {
    CHECK(is_triangular(D("d3", 3)));
    CHECK(is_triangular(D("d2 + x3*d1", 3)));
    CHECK(is_triangular(D("x3^2*d1 + x3*d2 + d3", 3)));
    CHECK(!is_triangular(D("x1*d1", 1)));
    CHECK(!is_triangular(D("x2*d2", 2)));
    CHECK(!is_triangular(D("x3*d3", 3)));
    // fractional coefficients never count as triangular
    CHECK(!is_triangular(Derivation({F("1/x2", 2), F("0", 2)})));
}

TEST_CASE("local nilpotency verdicts") {
    using Status = LocalNilpotencyVerdict::Status;
    {
        const auto v = local_nilpotency(D("d3", 3), {F("x3", 3)}, 5);
        CHECK(v.status == Status::ProvedLocallyNilpotent);
    }
    {
        const auto v = local_nilpotency(D("x1*d1", 1), {F("x1", 1)}, 10);
        CHECK(v.status == Status::ExceededCap);
        REQUIRE(v.witness.has_value());
        CHECK(*v.witness == F("x1", 1));
    }
    {
        const auto v =
            local_nilpotency(D("d2 + x3*d1", 3), {F("x1", 3), F("x2", 3), F("x3", 3)}, 5);
        CHECK(v.status == Status::ProvedLocallyNilpotent);
    }
    {
        // triangular derivation but fractional generator: falls back to iteration
        const auto v = local_nilpotency(D("d3", 3), {F("x2/x3", 3)}, 8);
        CHECK(v.status == Status::ExceededCap);
    }
    {
        // non-triangular but nilpotent on these generators
        const auto v = local_nilpotency(D("x1*d2", 2), {F("x2", 2)}, 8);
        CHECK(v.status == Status::NilpotentOnGeneratorsUpTo);
        CHECK(v.steps == 2);
    }
    CHECK_THROWS_AS(local_nilpotency(D("d1", 1), {F("x1", 1)}, 0), DomainError);
}

TEST_CASE("find_slice") {
    {
        const auto s = find_slice(D("d3", 3), {F("x3", 3)}, 5);
        CHECK(s.preslice == F("x3", 3));
        CHECK(s.slice == F("x3", 3));
    }
    {
        const auto s = find_slice(D("d2 + x3*d1", 3), {F("x1", 3), F("x2", 3), F("x3", 3)}, 5);
        CHECK(s.preslice == F("x2", 3));
        CHECK(s.slice == F("x2", 3));
    }
    {
        const auto s = find_slice(D("x3*d1", 3), {F("x1", 3), F("x3", 3)}, 5);
        CHECK(s.preslice == F("x1", 3));
        CHECK(s.slice == F("x1/x3", 3));
    }
    CHECK_THROWS_AS(find_slice(D("x3*d1", 3), {F("x3", 3)}, 5), DomainError);
    CHECK_THROWS_AS(find_slice(Derivation(2), {F("x1", 2)}, 5), DomainError);
}

TEST_CASE("slice contract on random triangular derivations") {
    testsupport::Rng rng(0x5eed013);
    int produced = 0;
    for (int trial = 0; trial < 60 && produced < 40; ++trial) {
        const int n = static_cast<int>(rng.range(2, 4));
        std::vector<RationalFunction> coeffs;
        for (int i = 1; i <= n; ++i) {
            Polynomial p(n);
            const int terms = static_cast<int>(rng.range(0, 2));
            for (int t = 0; t < terms; ++t) {
                Polynomial::Exponents e(n, 0);
                for (int j = i; j < n; ++j) e[j] = static_cast<int>(rng.range(0, 2));
                p += Polynomial::monomial(n, e, rng.rational(-3, 3));
            }
            coeffs.emplace_back(p);
        }
        const Derivation d{std::move(coeffs)};
        if (d.is_zero()) continue;
        std::vector<RationalFunction> gens;
        for (int i = 1; i <= n; ++i) gens.push_back(F("x" + std::to_string(i), n));
        const auto s = find_slice(d, gens);
        CHECK(d.apply(s.slice) == F("1", n));
        CHECK(!d.apply(s.preslice).is_zero());
        CHECK(d.apply(d.apply(s.preslice)).is_zero());
        ++produced;
    }
    CHECK(produced >= 40);
}

TEST_CASE("slice expansions") {
    const Derivation t = D("d3", 3);
    const RationalFunction b = F("x3", 3);

    auto f = decompose_along_slice(F("x3^2/2 + 3*x3 + 1", 3), t, b);
    REQUIRE(f.has_value());
    CHECK(f->coeffs == std::vector<Rational>{Rational(1), Rational(3), Rational(1, 2)});
    CHECK(f->eval(b) == F("x3^2/2 + 3*x3 + 1", 3));

    // not a polynomial in the slice
    CHECK(!decompose_along_slice(F("x2", 3), t, b).has_value());
    CHECK(!decompose_along_slice(F("1/x3", 3), t, b).has_value());

    const Derivation s = D("d2", 3);
    const RationalFunction a = F("x2", 3);
    auto g = decompose_along_slices(F("x2*x3 + x2^2/2 + 7", 3), s, a, t, b);
    REQUIRE(g.has_value());
    CHECK(g->eval(a, b) == F("x2*x3 + x2^2/2 + 7", 3));
    CHECK(!decompose_along_slices(F("x1", 3), s, a, t, b).has_value());

    // antiderivatives: integral of 1 + t is t + t^2/2
    QPolynomial one_plus{std::vector<Rational>{Rational(1), Rational(1)}};
    CHECK(one_plus.integral().eval(b) == F("x3 + x3^2/2", 3));
}

TEST_CASE("derivation text round trips") {
    testsupport::Rng rng(0x5eed014);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = static_cast<int>(rng.range(1, 4));
        const Derivation d = rng.derivation(n, 2, 2);
        CHECK(parse_derivation(d.str(), n) == d);
    }
    CHECK(D("x3*d1 + d2", 3).str() == "x3*d1 + d2");
    CHECK(D("-d1", 1).str() == "-d1");
    CHECK(D("(x2+1)*d1", 2).str() == "(x2 + 1)*d1");
    CHECK(parse_derivation("0", 2).is_zero());
    CHECK(Derivation(2).str() == "0");
    CHECK(D("d1/x2", 2) == Derivation({F("1/x2", 2), F("0", 2)}));
    CHECK_THROWS_AS(parse_derivation("d1*d2", 2), ParseError);
    CHECK_THROWS_AS(parse_derivation("x1 + d1", 1), ParseError);
    CHECK_THROWS_AS(parse_derivation("x1", 1), ParseError);
}
