#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "apgeo/admissible.hpp"
#include "apgeo/cache.hpp"
#include "apgeo/matrix.hpp"
#include "json.hpp"

namespace apgeo {

// Raised when a configured search bound runs out; the CLI maps it to exit 3.
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NofOptions {
    long iter_cap = 5'000'000;     // brute iteration bound
    NTableCache* cache = nullptr;  // optional n-table cache (fast path only)
};

/*
 * n(gamma, eta^r): minimal j >= 1 with v^(r beta_ij) | (gamma^j)_ij for all
 * (i,j) in T, i.e. the least power that conjugation by eta^r returns to the
 * lattice.
 *
 * n_of_brute iterates gamma modulo v^(r max beta) directly and is the
 * independent oracle. n_of finds the value at r = 1 by iteration and then
 * lifts level by level: the set of valid j is a subgroup of Z whose
 * successive quotients are v-groups, so each next value is the least
 * v-power multiple of the previous one satisfying the divisibility.
 */
mpz_class n_of_brute(const IntMatrix& gamma, const AdmissibleElement& eta, long r,
                     const NofOptions& opts = {});
mpz_class n_of(const IntMatrix& gamma, const AdmissibleElement& eta, long r,
               const NofOptions& opts = {});

// Multiplicative order of A in SL(n, Z/p^r), by testing divisors of the
// group order in ascending order (Lagrange only; no lifting assumptions).
mpz_class order_mod(const IntMatrix& a, long p, long r);

struct KernelCheckReport {
    int n;
    long p;
    int i;
    bool exhaustive;
    long samples;
    std::uint64_t seed;
    long checked = 0;
    long nontrivial = 0;
    // image order outside {1,p}: violations of the order lemma
    std::vector<std::string> order_violations;
    // B^p = id at level i+2 with nontrivial image: violations of the claim,
    // except at (p,i) = (2,1) where they are the expected exceptional case
    std::vector<std::string> power_violations;
    std::vector<std::string> exceptions_witnessed;

    bool pass() const { return order_violations.empty() && power_violations.empty(); }
    nlohmann::ordered_json to_json() const;
};

/*
 * Checks the kernel-layer order laws in SL(n, Z/p^(i+2)): elements whose
 * mod-p^(i+1) image lies in the kernel of reduction to p^i have image order
 * 1 or p, and (away from p = 2, i = 1) a nontrivial image forces
 * B^p != id mod p^(i+2). Exhaustive mode enumerates the whole kernel layer
 * (kept to n = 2, p <= 3, i <= 2); sampled mode draws seeded random kernel
 * elements.
 */
KernelCheckReport kernel_order_check(int n, long p, int i, bool exhaustive, long samples = 500,
                                     std::uint64_t seed = 12345);

struct StabilityReport {
    std::string gamma;
    long v;
    std::vector<std::pair<long, mpz_class>> n_values;  // (r, n_r)
    long radius = -1;    // least R with a clean probe window
    long omega = 0;      // measured jump exponent, 0 if no jump seen
    std::vector<int> epsilons;  // jump indicators for r = R .. R+window-1

    nlohmann::ordered_json to_json() const;
};

struct StabilityOptions {
    long probe_window = 3;
    NofOptions nof{};
};

/*
 * Finds the least R <= cap such that every ratio n(r+1)/n(r) for
 * r in [R, R+window) is 1 or v^omega for a single omega dividing beta_eta.
 * The level where that law kicks in has no effective a-priori bound, so R
 * is determined empirically and cap exhaustion is an error, never a guess.
 * For v = 2 probing starts at r = 2.
 */
StabilityReport stability_radius(const IntMatrix& gamma, const AdmissibleElement& eta, long cap,
                                 const StabilityOptions& opts = {});

}  // namespace apgeo
