#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>

#include "apgeo/matrix.hpp"
#include "apgeo/quad_unit.hpp"
#include "json.hpp"

namespace apgeo {

enum class ElementClass { Elliptic, Parabolic, Hyperbolic };

/*
 * A hyperbolic element of SL(2,Z): |trace| > 2, with its eigenvalue data
 * resolved in the maximal order. lambda is the eigenvalue normalized to be
 * > 1 with norm +1; sign records whether the actual eigenvalue pair is
 * (lambda, 1/lambda) or its negative. tsq_minus_4 = f^2 * d0 exactly.
 */
struct HyperbolicElement {
    IntMatrix matrix;
    mpz_class trace;
    int sign;  // sign of the trace
    mpz_class d0;
    mpz_class f;
    QuadUnit lambda;

    // eigenvalue with the true sign, as an order element
    QuadUnit signed_lambda() const { return sign > 0 ? lambda : -lambda; }
};

struct Classification {
    ElementClass cls;
    std::optional<HyperbolicElement> hyperbolic;
};

// Requires det = 1 (throws otherwise); class decided by the trace.
Classification classify(const IntMatrix& a);

// classify() restricted to the hyperbolic outcome; throws otherwise.
HyperbolicElement hyperbolic_from(const IntMatrix& a);

// Same, but with the field discriminant supplied, so trace^2 - 4 is only
// checked against f^2 d0 instead of factored (traces can be huge here).
HyperbolicElement hyperbolic_with_field(const IntMatrix& a, const mpz_class& d0);

/*
 * Exact length class: the length is multiplier * 2 log u with
 * u = norm_one_generator(d0), compared exactly through (d0, multiplier)
 * and rendered to decimal only on demand.
 */
struct LengthClass {
    mpz_class d0;
    mpz_class base_trace;
    mpz_class multiplier;

    bool operator==(const LengthClass& o) const = default;
    double approx() const;
    std::string numeric(int digits = 50) const;
    nlohmann::ordered_json to_json() const;
    static LengthClass from_json(const nlohmann::json& j);
};

LengthClass length_class(const HyperbolicElement& g);

// Some root (mu, m) with mu^m = gamma and m >= 2, if one exists in SL(2,Z).
std::optional<std::pair<IntMatrix, mpz_class>> proper_root(const HyperbolicElement& g);

bool is_primitive(const HyperbolicElement& g);

// For SL(2,Z) this is decided exactly: the eigenvalue is the norm-one
// generator itself, i.e. unit_exponent(lambda) = 1.
bool is_absolutely_primitive(const HyperbolicElement& g);

// The absolutely primitive mu (companion matrix of the norm-one generator's
// trace) and m with lambda_gamma = lambda_mu^m.
std::pair<HyperbolicElement, mpz_class> abs_prim_root(const HyperbolicElement& g);

// Membership of z^2 - t z + 1 in the set of SL(2,Z)-characteristic
// polynomials of hyperbolic elements: |t| > 2.
bool poly_in_P(const mpz_class& t);

// Companion matrix [[t,-1],[1,0]] of z^2 - t z + 1.
IntMatrix companion_of_trace(const mpz_class& t);

}  // namespace apgeo
