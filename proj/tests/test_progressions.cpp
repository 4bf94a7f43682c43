#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "apgeo/number_theory.hpp"
#include "apgeo/progressions.hpp"
#include "doctest.h"

using namespace apgeo;

namespace {

const IntMatrix kFib = IntMatrix::from_rows({{2, 1}, {1, 1}});

AdmissibleElement eta_at(long p) { return build_admissible(GroupType::A1, 2, p, {1, 2}); }

}  // namespace

TEST_CASE("prime_ap_search finds the expected progressions") {
    PrimeAP three = prime_ap_search(3, 100);
    CHECK(three.a == 2);
    CHECK(three.b == 1);
    CHECK(three.primes == std::vector<long>{3, 5, 7});

    PrimeAP five = prime_ap_search(5, 100);
    CHECK(five.a == 6);
    CHECK(five.b == -1);
    CHECK(five.primes == std::vector<long>{5, 11, 17, 23, 29});

    PrimeAP one = prime_ap_search(1, 10);
    CHECK(one.primes == std::vector<long>{3});

    CHECK_THROWS_AS(prime_ap_search(6, 50), cap_exceeded);
    CHECK_THROWS_AS(prime_ap_search(0, 100), std::invalid_argument);
}

TEST_CASE("prime_ap_search honors exclusions") {
    PrimeAP ap = prime_ap_search(3, 100, {2, 3});
    for (long p : ap.primes) {
        CHECK(p != 3);
        CHECK(is_prime(mpz_class(p)));
    }
    CHECK(ap.primes == std::vector<long>{5, 11, 17});
}

TEST_CASE("glue_constant over pairs of primes") {
    CHECK(glue_constant(kFib, {eta_at(5), eta_at(11)}, 1) == 5);
    CHECK(glue_constant(kFib, {eta_at(5), eta_at(17)}, 1) == 45);
    CHECK(glue_constant(kFib, {eta_at(5)}, 1) == 5);
    CHECK_THROWS_AS(glue_constant(kFib, {eta_at(5), eta_at(5)}, 1), std::invalid_argument);
    // brute confirmation of the glued values
    CHECK(lcm(n_of_brute(kFib, eta_at(5), 1), n_of_brute(kFib, eta_at(17), 1)) == 45);
}

TEST_CASE("clear_denominator") {
    CHECK(clear_denominator(1, kFib, 1).empty());

    auto two = clear_denominator(2, kFib, 1);
    REQUIRE(two.size() == 1);
    CHECK(two[0].first.v == 2);
    CHECK(two[0].second == 4);  // 2-adic n-table 3,3,3,6: first even value at level 4
    CHECK(valuation(n_of(kFib, two[0].first, two[0].second), 2) >= 1);

    auto six = clear_denominator(6, kFib, 1);
    REQUIRE(six.size() == 2);
    CHECK(six[0].first.v == 2);
    CHECK(six[1].first.v == 3);
    mpz_class c = lcm(n_of(kFib, six[0].first, six[0].second),
                      n_of(kFib, six[1].first, six[1].second));
    CHECK(c % 6 == 0);
}

TEST_CASE("build_progression: single term") {
    ProgressionWitness w = build_progression(kFib, 1);
    CHECK(w.k == 1);
    CHECK(w.primes == std::vector<long>{3});
    CHECK(w.C == 2);
    CHECK(w.terms[0].multiplier == 6);
    CHECK(verify_witness(w).all_pass());
}

TEST_CASE("build_progression: three terms with difference 2C") {
    ProgressionWitness w = build_progression(kFib, 3);
    CHECK(w.primes == std::vector<long>{3, 5, 7});
    CHECK(w.C == 20);
    CHECK(w.terms[0].multiplier == 60);
    CHECK(w.terms[1].multiplier == 100);
    CHECK(w.terms[2].multiplier == 140);
    CHECK(verify_witness(w).all_pass());
    // exact multiplier identity against the unit exponent route
    HyperbolicElement base = hyperbolic_from(kFib);
    for (const auto& term : w.terms) {
        HyperbolicElement theta = hyperbolic_with_field(term.theta, base.d0);
        CHECK(unit_exponent(theta.lambda) == term.multiplier * length_class(base).multiplier);
    }
}

TEST_CASE("build_progression rejects non-absolutely-primitive input") {
    CHECK_THROWS_AS(build_progression(IntMatrix::from_rows({{5, 3}, {3, 2}}), 2),
                    std::invalid_argument);
}

TEST_CASE("negative-trace bases with odd multipliers verify cleanly") {
    // companion of trace -5: eigenvalue -(5+sqrt21)/2, absolutely primitive
    IntMatrix neg = companion_of_trace(-5);
    ProgressionWitness w = build_progression(neg, 1);
    REQUIRE(w.terms.size() == 1);
    CHECK(w.terms[0].multiplier % 2 == 1);  // odd power keeps the trace negative
    CHECK(w.terms[0].theta.trace() < 0);
    CHECK(verify_witness(w).all_pass());

    ProgressionWitness w2 = build_progression(IntMatrix::from_rows({{-2, -1}, {-1, -1}}), 2);
    CHECK(verify_witness(w2).all_pass());
}

TEST_CASE("build_progression_containing clears the root index") {
    ProgressionWitness w = build_progression_containing(IntMatrix::from_rows({{6, 1}, {5, 1}}), 3);
    REQUIRE(w.contains.has_value());
    CHECK(w.contains->j == 2);
    CHECK(w.C % 2 == 0);
    for (const auto& term : w.terms) CHECK(term.multiplier % 2 == 0);
    CHECK(verify_witness(w).all_pass());

    // absolutely primitive input delegates to the plain pipeline
    ProgressionWitness plain = build_progression_containing(kFib, 2);
    CHECK(!plain.contains.has_value());
    CHECK(verify_witness(plain).all_pass());

    CHECK_THROWS_AS(build_progression_containing(IntMatrix::from_rows({{5, 3}, {3, 2}}), 2),
                    std::invalid_argument);
}

TEST_CASE("witness JSON round trip is byte-identical and deterministic") {
    ProgressionWitness w1 = build_progression(kFib, 3);
    ProgressionWitness w2 = build_progression(kFib, 3);
    CHECK(w1.to_json().dump(2) == w2.to_json().dump(2));
    ProgressionWitness reread = ProgressionWitness::from_json(w1.to_json());
    CHECK(reread.to_json().dump(2) == w1.to_json().dump(2));
}

TEST_CASE("verify_witness flags tampering") {
    ProgressionWitness w = build_progression(kFib, 3);
    REQUIRE(verify_witness(w).all_pass());

    SUBCASE("incremented entry breaks integral/trace checks") {
        ProgressionWitness bad = w;
        bad.terms[1].theta.at(0, 0) += 1;
        VerificationReport rep = verify_witness(bad);
        CHECK(!rep.all_pass());
        bool det_or_trace = false;
        for (const auto& c : rep.checks)
            if (!c.pass && c.name.find("theta_2") != std::string::npos) det_or_trace = true;
        CHECK(det_or_trace);
    }

    SUBCASE("replacing theta_1 by an equal-trace power breaks only primitivity") {
        ProgressionWitness bad = w;
        // companion-of-3 to the multiplier: same eigenvalue, imprimitive
        bad.terms[0].theta = mat_pow(companion_of_trace(3), bad.terms[0].multiplier);
        VerificationReport rep = verify_witness(bad);
        CHECK(!rep.all_pass());
        for (const auto& c : rep.checks) {
            if (c.name == "theta_1 primitive") CHECK(!c.pass);
            if (c.name == "theta_1 trace recurrence") CHECK(c.pass);
            if (c.name == "theta_1 in SL(2,Z), hyperbolic") CHECK(c.pass);
        }
    }

    SUBCASE("wrong constant breaks the multiplier progression") {
        ProgressionWitness bad = w;
        bad.C += 1;
        CHECK(!verify_witness(bad).all_pass());
    }
}

TEST_CASE("prime power multipliers certified for gamma = [[2,1],[1,1]], v = 5") {
    // the {l, 5l, 25l, 125l, ...} ladder, with theta_1 pinned exactly
    AdmissibleElement eta = eta_at(5);
    std::vector<mpz_class> expected{5, 25, 125};
    for (long r = 1; r <= 3; ++r) {
        mpz_class n = n_of(kFib, eta, r);
        CHECK(n == expected[r - 1]);
        CHECK(n == n_of_brute(kFib, eta, r));
        ScaledMatrix s = conjugate_scaled(eta, r, mat_pow(kFib, n));
        REQUIRE(s.integral());
        IntMatrix theta = s.to_int_matrix();
        CHECK(theta.det() == 1);
        CHECK(is_primitive(hyperbolic_with_field(theta, 5)));
        if (r == 1) CHECK(theta == IntMatrix::from_rows({{89, 275}, {11, 34}}));
    }
}

TEST_CASE("prime density report") {
    DensityReport small = prime_density_report(5, 100);
    CHECK(small.prime_count == 25);
    CHECK(small.split_count == 10);  // 11,19,29,31,41,59,61,71,79,89
    CHECK(small.ramified_count == 1);

    CHECK_THROWS_AS(prime_density_report(1, 1000), std::invalid_argument);
    CHECK_THROWS_AS(prime_density_report(5, 50), std::invalid_argument);
}
