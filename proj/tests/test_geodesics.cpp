#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "apgeo/geodesics.hpp"
#include "apgeo/number_theory.hpp"
#include "apgeo/poly.hpp"
#include "corpus.hpp"
#include "doctest.h"

using namespace apgeo;

namespace {

IntMatrix conjugate_by_word(const IntMatrix& g, std::mt19937& rng) {
    IntMatrix p = IntMatrix::identity(2);
    IntMatrix pinv = IntMatrix::identity(2);
    std::uniform_int_distribution<int> which(0, 1);
    std::uniform_int_distribution<long> amount(-2, 2);
    for (int i = 0; i < 5; ++i) {
        long t = amount(rng);
        IntMatrix e = IntMatrix::identity(2), einv = IntMatrix::identity(2);
        if (which(rng)) {
            e.at(0, 1) = t;
            einv.at(0, 1) = -t;
        } else {
            e.at(1, 0) = t;
            einv.at(1, 0) = -t;
        }
        p = p * e;
        pinv = einv * pinv;
    }
    return p * g * pinv;
}

}  // namespace

TEST_CASE("classification by trace") {
    Classification h = classify(IntMatrix::from_rows({{2, 1}, {1, 1}}));
    CHECK(h.cls == ElementClass::Hyperbolic);
    CHECK(h.hyperbolic->trace == 3);
    CHECK(h.hyperbolic->d0 == 5);
    CHECK(h.hyperbolic->f == 1);
    CHECK(classify(IntMatrix::from_rows({{1, 1}, {0, 1}})).cls == ElementClass::Parabolic);
    CHECK(classify(IntMatrix::from_rows({{0, -1}, {1, 0}})).cls == ElementClass::Elliptic);
    CHECK_THROWS_AS(classify(IntMatrix::from_rows({{2, 0}, {0, 1}})), std::invalid_argument);
}

TEST_CASE("eigenvalue data normalizes negative traces") {
    HyperbolicElement g = hyperbolic_from(IntMatrix::from_rows({{-2, -1}, {-1, -1}}));
    CHECK(g.trace == -3);
    CHECK(g.sign == -1);
    CHECK(g.lambda == QuadUnit(5, 3, 1));
    CHECK(g.lambda.greater_one());
    // signed eigenvalues reproduce the characteristic polynomial
    std::vector<QuadUnit> eigs{g.signed_lambda(), g.signed_lambda().inverse()};
    QPolyOutcome out = q_poly<QuadUnit>(eigs);
    REQUIRE(out.ok());
    CHECK(*out.poly == char_poly(g.matrix));
}

TEST_CASE("q_poly on exact eigenvalue pairs equals char_poly across the corpus") {
    for (const IntMatrix& m : testing::hyperbolic_corpus()) {
        HyperbolicElement g = hyperbolic_from(m);
        std::vector<QuadUnit> eigs{g.signed_lambda(), g.signed_lambda().inverse()};
        QPolyOutcome out = q_poly<QuadUnit>(eigs);
        REQUIRE(out.ok());
        CHECK(*out.poly == char_poly(m));
    }
}

TEST_CASE("length classes") {
    LengthClass l1 = length_class(hyperbolic_from(IntMatrix::from_rows({{2, 1}, {1, 1}})));
    CHECK(l1.d0 == 5);
    CHECK(l1.base_trace == 3);
    CHECK(l1.multiplier == 1);
    CHECK(l1.approx() == doctest::Approx(1.9248473).epsilon(1e-7));
    CHECK(l1.numeric(8).substr(0, 9) == "1.9248473");

    CHECK(length_class(hyperbolic_from(IntMatrix::from_rows({{5, 3}, {3, 2}}))).multiplier == 2);
    LengthClass l3 = length_class(hyperbolic_from(IntMatrix::from_rows({{6, 1}, {5, 1}})));
    CHECK(l3.d0 == 5);
    CHECK(l3.base_trace == 3);
    CHECK(l3.multiplier == 2);
    CHECK(LengthClass::from_json(l3.to_json()) == l3);
}

TEST_CASE("multiplier is linear in powers") {
    for (const IntMatrix& m : testing::hyperbolic_corpus()) {
        LengthClass base = length_class(hyperbolic_from(m));
        for (long e = 2; e <= 5; ++e) {
            LengthClass powered = length_class(hyperbolic_from(mat_pow(m, e)));
            CHECK(powered.multiplier == e * base.multiplier);
            CHECK(powered.d0 == base.d0);
        }
    }
}

TEST_CASE("primitivity decisions") {
    CHECK(is_primitive(hyperbolic_from(IntMatrix::from_rows({{2, 1}, {1, 1}}))));
    CHECK(is_primitive(hyperbolic_from(IntMatrix::from_rows({{6, 1}, {5, 1}}))));
    HyperbolicElement sq = hyperbolic_from(IntMatrix::from_rows({{5, 3}, {3, 2}}));
    CHECK(!is_primitive(sq));
    auto root = proper_root(sq);
    REQUIRE(root.has_value());
    CHECK(root->first == IntMatrix::from_rows({{2, 1}, {1, 1}}));
    CHECK(root->second == 2);
}

TEST_CASE("powers are never primitive") {
    for (const IntMatrix& m : testing::hyperbolic_corpus())
        for (long e = 2; e <= 5; ++e) {
            HyperbolicElement g = hyperbolic_from(mat_pow(m, e));
            CHECK(!is_primitive(g));
            auto root = proper_root(g);
            REQUIRE(root.has_value());
            CHECK(mat_pow(root->first, root->second) == g.matrix);
        }
}

TEST_CASE("absolute primitivity") {
    CHECK(is_absolutely_primitive(hyperbolic_from(IntMatrix::from_rows({{2, 1}, {1, 1}}))));
    CHECK(!is_absolutely_primitive(hyperbolic_from(IntMatrix::from_rows({{6, 1}, {5, 1}}))));
    CHECK(!is_absolutely_primitive(hyperbolic_from(IntMatrix::from_rows({{5, 3}, {3, 2}}))));
}

TEST_CASE("absolute primitivity is a conjugacy invariant") {
    std::mt19937 rng(23);
    for (const IntMatrix& m : testing::hyperbolic_corpus()) {
        bool expected = is_absolutely_primitive(hyperbolic_from(m));
        for (int trial = 0; trial < 4; ++trial) {
            IntMatrix conj = conjugate_by_word(m, rng);
            CHECK(is_absolutely_primitive(hyperbolic_from(conj)) == expected);
        }
    }
}

TEST_CASE("abs_prim_root examples and round trip") {
    auto [mu1, m1] = abs_prim_root(hyperbolic_from(IntMatrix::from_rows({{6, 1}, {5, 1}})));
    CHECK(mu1.matrix == IntMatrix::from_rows({{3, -1}, {1, 0}}));
    CHECK(m1 == 2);
    auto [mu2, m2] = abs_prim_root(hyperbolic_from(IntMatrix::from_rows({{2, 1}, {1, 1}})));
    CHECK(mu2.matrix == IntMatrix::from_rows({{3, -1}, {1, 0}}));
    CHECK(m2 == 1);
    auto [mu3, m3] = abs_prim_root(hyperbolic_from(IntMatrix::from_rows({{5, 3}, {3, 2}})));
    CHECK(m3 == 2);

    for (const IntMatrix& m : testing::hyperbolic_corpus()) {
        HyperbolicElement g = hyperbolic_from(m);
        auto [mu, e] = abs_prim_root(g);
        CHECK(unit_exponent(mu.lambda) == 1);
        CHECK(mu.lambda.pow(e) == g.lambda);
    }
}

TEST_CASE("poly_in_P") {
    CHECK(poly_in_P(3));
    CHECK(!poly_in_P(2));
    CHECK(poly_in_P(-7));
    CHECK(!poly_in_P(0));
    // companion realization: the membership witness
    CHECK(companion_of_trace(-7).det() == 1);
    CHECK(companion_of_trace(-7).trace() == -7);
}

TEST_CASE("absolutely primitive implies primitive on a small corpus") {
    // bounded version of the entries<=30 sweep in the acceptance suite
    int checked = 0;
    for (long a = -12; a <= 12; ++a)
        for (long b = -12; b <= 12; ++b)
            for (long c = -12; c <= 12; ++c) {
                if (a == 0) continue;
                mpz_class num = 1 + mpz_class(b) * c;
                if (num % a != 0) continue;
                mpz_class d = num / a;
                if (abs(d) > 12) continue;
                mpz_class t = a + d;
                if (abs(t) <= 2) continue;
                IntMatrix m(2);
                m.at(0, 0) = a;
                m.at(0, 1) = b;
                m.at(1, 0) = c;
                m.at(1, 1) = d;
                HyperbolicElement g = hyperbolic_from(m);
                if (is_absolutely_primitive(g)) CHECK(is_primitive(g));
                ++checked;
            }
    CHECK(checked > 500);
}
