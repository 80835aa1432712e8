#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liederiv/errors.hpp"
#include "liederiv/parse.hpp"
#include "liederiv/triangular.hpp"

#include "test_support.hpp"

using namespace liederiv;

namespace {

Derivation D(const std::string& s, int n) { return parse_derivation(s, n); }

// Random element of u_n with polynomial coefficients of bounded degree.
Derivation random_triangular(testsupport::Rng& rng, int n, int max_degree) {
    std::vector<RationalFunction> coeffs(n, RationalFunction(n));
    for (int i = 1; i <= n; ++i) {
        const int terms = static_cast<int>(rng.range(0, 2));
        Polynomial p(n);
        for (int t = 0; t < terms; ++t) {
            Polynomial::Exponents e(n, 0);
            int budget = max_degree;
            for (int j = i; j < n && budget > 0; ++j) {
                e[j] = static_cast<int>(rng.range(0, budget));
                budget -= e[j];
            }
            Rational c = rng.rational(-3, 3);
            if (c.is_zero()) c = Rational(1);
            p += Polynomial::monomial(n, e, c);
        }
        coeffs[i - 1] = RationalFunction(p);
    }
    return Derivation(std::move(coeffs));
}

} // namespace

TEST_CASE("membership") {
    CHECK(is_member_un(D("d1", 1)));
    CHECK(!is_member_un(D("x1*d2", 2)));
    CHECK(is_member_un(D("x3^2*d1 + x3*d2 + d3", 3)));
    CHECK(!is_member_un(D("x3*d3", 3)));
    CHECK(is_member_un(D("x2*x3*d1", 3)));
    CHECK_THROWS_AS(is_member_un(Derivation(
                        {parse_rational_function("1/x2", 2), parse_rational_function("0", 2)})),
                    DomainError);
}

TEST_CASE("membership is closed under bracket") {
    testsupport::Rng rng(0x5eed030);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = static_cast<int>(rng.range(2, 4));
        const Derivation a = random_triangular(rng, n, 2);
        const Derivation b = random_triangular(rng, n, 2);
        REQUIRE(is_member_un(a));
        REQUIRE(is_member_un(b));
        CHECK(is_member_un(bracket(a, b)));
    }
}

TEST_CASE("non-nilpotency witness chains") {
    {
        const auto w = non_nilpotency_witness(2, 1);
        REQUIRE(w.chain.size() == 1);
        CHECK(w.chain[0] == D("x2*d1", 2));
        CHECK(w.final_element == D("d1", 2));
    }
    {
        const auto w = non_nilpotency_witness(3, 3);
        REQUIRE(w.chain.size() == 3);
        CHECK(w.chain[0] == D("x3^3/6*d1", 3));
        CHECK(w.chain[1] == D("x3^2/2*d1", 3));
        CHECK(w.chain[2] == D("x3*d1", 3));
        CHECK(w.final_element == D("d1", 3));
    }
    {
        // L = 0 edge: empty chain
        const auto w = non_nilpotency_witness(4, 0);
        CHECK(w.chain.empty());
    }
    for (int length = 1; length <= 12; ++length) {
        const auto w = non_nilpotency_witness(3, length);
        CHECK(static_cast<int>(w.chain.size()) == length);
        for (const auto& e : w.chain) CHECK(!e.is_zero());
        // each element is the bracket of d_n with the previous one
        for (std::size_t i = 0; i + 1 < w.chain.size(); ++i) {
            CHECK(bracket(D("d3", 3), w.chain[i]) == w.chain[i + 1]);
        }
    }
    CHECK_THROWS_AS(non_nilpotency_witness(1, 2), DomainError);
}

TEST_CASE("finitely generated subalgebras are nilpotent") {
    CHECK(local_nilpotency_of_fg_subalgebras({D("d1", 2), D("d2", 2)}) == 1);
    CHECK(local_nilpotency_of_fg_subalgebras({D("d3", 3), D("x3*d2", 3)}) == 2);
    // closure by hand: all brackets lower the x3 degree
    const int cls =
        local_nilpotency_of_fg_subalgebras({D("d3", 3), D("x3^2*d1", 3), D("x3*d2", 3)});
    CHECK(cls >= 2);
    CHECK(cls <= 12);
    CHECK_THROWS_AS(local_nilpotency_of_fg_subalgebras({D("x1*d1", 1)}), DomainError);
}

TEST_CASE("random finite subsets close to nilpotent algebras") {
    for (unsigned seed = 0; seed < 25; ++seed) {
        testsupport::Rng rng(0xABCD0000u + seed);
        std::vector<Derivation> sample;
        for (int g = 0; g < 3; ++g) sample.push_back(rng.sparse_triangular(4, 2));
        const int cls = local_nilpotency_of_fg_subalgebras(sample);
        CHECK(cls >= 1);
        CHECK(cls <= 12);
    }
}

TEST_CASE("singletons generate one-dimensional abelian algebras") {
    testsupport::Rng rng(0x5eed032);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = static_cast<int>(rng.range(2, 4));
        const Derivation d = random_triangular(rng, n, 2);
        if (d.is_zero()) continue;
        const LieAlgebra alg = LieAlgebra::close_under_bracket({d});
        CHECK(alg.dim() == 1);
        CHECK(alg.is_abelian());
    }
}
