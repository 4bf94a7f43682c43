#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <optional>

#include "apgeo/number_theory.hpp"
#include "apgeo/quad_unit.hpp"
#include "doctest.h"

using namespace apgeo;

namespace {

// Independent oracle: bounded Pell search for the smallest unit > 1 with
// a^2 - b^2 d0 = +-4, scanning b upward (unit size grows with b).
std::optional<QuadUnit> pell_oracle(const mpz_class& d0, long b_bound = 200000) {
    for (mpz_class b = 1; b <= b_bound; ++b) {
        mpz_class best_a = -1;
        for (int sign : {-1, +1}) {
            mpz_class a2 = b * b * d0 + 4 * sign;
            mpz_class a;
            if (a2 > 0 && is_square(a2, &a))
                if (best_a < 0 || a < best_a) best_a = a;
        }
        if (best_a >= 0) return QuadUnit(d0, best_a, b);
    }
    return std::nullopt;
}

const std::vector<long> kDiscs{5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 40, 44, 53, 61};

}  // namespace

TEST_CASE("fundamental discriminant recognition") {
    for (long d : kDiscs) CHECK(is_fundamental_discriminant(mpz_class(d)));
    for (long d : {-4, 0, 1, 2, 3, 4, 6, 7, 9, 16, 18, 20, 25, 45, 48})
        CHECK(!is_fundamental_discriminant(mpz_class(d)));
}

TEST_CASE("order membership is enforced") {
    CHECK_THROWS_AS(QuadUnit(5, 2, 1), std::invalid_argument);  // parity violation
    CHECK_THROWS_AS(QuadUnit(6, 1, 1), std::invalid_argument);  // not a discriminant
    CHECK_NOTHROW(QuadUnit(5, 1, 1));
    CHECK_NOTHROW(QuadUnit(8, 2, 1));
}

TEST_CASE("fundamental units of small discriminants") {
    CHECK(fundamental_unit(5) == QuadUnit(5, 1, 1));    // (1+sqrt5)/2
    CHECK(fundamental_unit(8) == QuadUnit(8, 2, 1));    // 1+sqrt2
    CHECK(fundamental_unit(13) == QuadUnit(13, 3, 1));  // (3+sqrt13)/2
    CHECK(fundamental_unit(12) == QuadUnit(12, 4, 1));  // 2+sqrt3
    CHECK_THROWS_AS(fundamental_unit(7), std::invalid_argument);
    CHECK_THROWS_AS(fundamental_unit(-5), std::invalid_argument);
}

TEST_CASE("continued fractions agree with the Pell oracle") {
    for (long d : kDiscs) {
        auto oracle = pell_oracle(d);
        REQUIRE(oracle.has_value());
        QuadUnit u = fundamental_unit(d);
        CHECK(u == *oracle);
        mpz_class n = u.norm();
        CHECK((n == 1 || n == -1));
        CHECK(u.greater_one());
    }
}

TEST_CASE("no unit lies strictly between 1 and the fundamental unit") {
    for (long d : {5, 8, 12, 13, 21}) {
        QuadUnit u = fundamental_unit(d);
        // bounded (a,b) search below the fundamental unit
        for (mpz_class b = 1; b < u.b(); ++b)
            for (int sign : {-1, +1}) {
                mpz_class a2 = b * b * mpz_class(d) + 4 * sign;
                mpz_class a;
                if (a2 > 0 && is_square(a2, &a)) {
                    QuadUnit cand(d, a, b);
                    CHECK(!(QuadUnit::one(d) < cand && cand < u));
                }
            }
    }
}

TEST_CASE("norm-one generator is the unit or its square") {
    CHECK(norm_one_generator(5) == QuadUnit(5, 3, 1));    // phi^2 = (3+sqrt5)/2
    CHECK(norm_one_generator(8) == QuadUnit(8, 6, 2));    // 3+2sqrt2
    CHECK(norm_one_generator(12) == QuadUnit(12, 4, 1));  // 2+sqrt3, already norm +1
    for (long d : kDiscs) {
        QuadUnit g = norm_one_generator(d);
        CHECK(g.norm() == 1);
        CHECK(g.greater_one());
        QuadUnit u = fundamental_unit(d);
        CHECK((g == u || g == u * u));
    }
}

TEST_CASE("unit_exponent on powers of the generator") {
    QuadUnit phi(5, 1, 1);
    CHECK(unit_exponent(phi * phi) == 1);
    CHECK(unit_exponent((phi * phi) * (phi * phi)) == 2);
    for (long d : {5, 8, 12, 13, 21}) CHECK(unit_exponent(norm_one_generator(d)) == 1);
}

TEST_CASE("unit_exponent rejects corrupted input") {
    QuadUnit phi(5, 1, 1);  // norm -1
    CHECK_THROWS_AS(unit_exponent(phi), std::domain_error);
    QuadUnit nonunit(5, 6, 2);  // norm (36-20)/4 = 4
    CHECK_THROWS_AS(unit_exponent(nonunit), std::domain_error);
}

TEST_CASE("unit_exponent round trip up to exponent 12") {
    for (long d : {5, 8, 12, 13, 21}) {
        QuadUnit u = norm_one_generator(d);
        for (long e = 1; e <= 12; ++e) {
            QuadUnit lam = u.pow(e);
            CHECK(unit_exponent(lam) == e);
            CHECK(u.pow(unit_exponent(lam)) == lam);
        }
    }
}

TEST_CASE("kth_root_unit examples") {
    QuadUnit phi(5, 1, 1);
    QuadUnit phi2 = phi * phi, phi4 = phi2 * phi2;
    auto root = kth_root_unit(phi4, 2);
    REQUIRE(root.has_value());
    CHECK(*root == phi2);
    CHECK(!kth_root_unit(phi2, 2).has_value());  // phi has norm -1, not in the norm-one group
    CHECK(*kth_root_unit(phi2, 1) == phi2);
}

TEST_CASE("kth root exists exactly when k divides the exponent") {
    for (long d : {5, 8, 12, 13, 21}) {
        QuadUnit u = norm_one_generator(d);
        for (long e = 1; e <= 12; ++e) {
            QuadUnit lam = u.pow(e);
            for (long k = 1; k <= 12; ++k) {
                auto root = kth_root_unit(lam, k);
                if (e % k == 0) {
                    REQUIRE(root.has_value());
                    CHECK(root->pow(k) == lam);
                    CHECK(root->norm() == 1);
                } else {
                    CHECK(!root.has_value());
                }
            }
        }
    }
}

TEST_CASE("exact comparison and arithmetic") {
    QuadUnit phi(5, 1, 1);
    CHECK(phi.greater_one());
    CHECK(!phi.inverse().greater_one());
    CHECK(phi.inverse() < phi);
    CHECK((phi * phi.inverse()).is_one());
    CHECK(phi.pow(10) == QuadUnit(5, 123, 55));  // Lucas/Fibonacci pair L10, F10
    CHECK(phi.to_double() == doctest::Approx(1.6180339887).epsilon(1e-9));
    CHECK(QuadUnit::from_json(phi.to_json()) == phi);
}
