#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "apgeo/admissible.hpp"
#include "apgeo/filtration.hpp"
#include "apgeo/geodesics.hpp"
#include "apgeo/matrix.hpp"
#include "json.hpp"

namespace apgeo {

// k primes p_i = a*i + b (i = 1..k), all odd unless the exclusion set says
// otherwise; the desk-scale stand-in for progressions in the primes.
struct PrimeAP {
    long a = 0, b = 0;
    int k = 0;
    std::vector<long> primes;

    nlohmann::ordered_json to_json() const;
};

// Deterministic sieve search: smallest a, then smallest b, with every term
// prime, <= bound, and outside the excluded set. Throws cap_exceeded when
// nothing exists below the bound.
PrimeAP prime_ap_search(int k, long bound, const std::set<long>& exclude = {2});

struct WitnessTerm {
    mpz_class multiplier;           // C * p_i
    IntMatrix theta{2};             // conjugated power of gamma_abs, in SL(2,Z)
    std::map<long, long> eta_exponents;  // prime -> exponent used for this term
};

struct ContainsInfo {
    IntMatrix gamma{2};  // the primitive element whose length is contained
    mpz_class j;         // its multiplier over the absolutely primitive base
};

/*
 * A certified arithmetic progression in the primitive length spectrum:
 * multipliers C*p_1 < ... < C*p_k of the base length, each realized by an
 * explicit primitive matrix theta_i, re-checkable entirely from this data.
 */
struct ProgressionWitness {
    LengthClass base;
    IntMatrix gamma_abs{2};
    mpz_class C;
    long a = 0, b = 0;
    int k = 0;
    std::vector<long> primes;
    long R = 0;
    std::vector<WitnessTerm> terms;
    std::map<long, long> zeta_exponents;  // denominator-clearing primes -> exponent
    std::optional<ContainsInfo> contains;

    nlohmann::ordered_json to_json() const;
    static ProgressionWitness from_json(const nlohmann::json& j);
};

struct BuildOptions {
    long prime_bound = 10'000;
    int k_cap = 6;            // sieve stand-in is capped, documented
    long stability_cap = 8;
    long r_growth_cap = 14;   // ceiling for the common-exponent growth
    long clear_exponent_cap = 20;
    mpz_class force_divisor = 1;  // require force_divisor | C (transfer uses this)
    NTableCache* cache = nullptr;
};

// C = lcm of n(gamma_abs, eta_i^R); errors if some eta has not stabilized
// by R.
mpz_class glue_constant(const IntMatrix& gamma_abs, const std::vector<AdmissibleElement>& etas,
                        long R, const BuildOptions& opts = {});

/*
 * Denominator clearing: for each prime power u^z || j, an additional
 * admissible element at u with exponent starting at R + z (and at least 2
 * when u = 2), raised until u^z divides its n-value, which forces j | C
 * after regluing. Returns (element, exponent) pairs; empty for j = 1.
 */
std::vector<std::pair<AdmissibleElement, long>> clear_denominator(
    const mpz_class& j, const IntMatrix& gamma_abs, long R, const BuildOptions& opts = {});

// The end-to-end construction for an absolutely primitive gamma_abs.
ProgressionWitness build_progression(const IntMatrix& gamma_abs, int k,
                                     const BuildOptions& opts = {});

// The containment pipeline: gamma primitive (checked), its absolutely
// primitive root is extracted and the root's denominator j is cleared, so
// every multiplier is an integer multiple of gamma's own multiplier.
ProgressionWitness build_progression_containing(const IntMatrix& gamma, int k,
                                                const BuildOptions& opts = {});

struct VerificationReport {
    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;

    bool all_pass() const;
    nlohmann::ordered_json to_json() const;
};

/*
 * Independent recertification of a witness: integrality/det/hyperbolicity
 * of every theta, primitivity, the trace of theta_i against the integer
 * recurrence t_{m+1} = t_base t_m - t_{m-1}, exact integer AP structure of
 * the multipliers, and primality + AP structure of the primes.
 */
VerificationReport verify_witness(const ProgressionWitness& w);

struct DensityReport {
    mpz_class d0;
    long bound;
    long prime_count = 0;
    long split_count = 0;
    long ramified_count = 0;
    double proportion = 0.0;

    nlohmann::ordered_json to_json() const;
};

// Proportion of primes <= bound splitting in Q(sqrt(d0)) (Kronecker +1).
DensityReport prime_density_report(const mpz_class& d0, long bound);

}  // namespace apgeo
