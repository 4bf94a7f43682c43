#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace apgeo {

// Floor of the square root, n >= 0.
mpz_class isqrt(const mpz_class& n);

// True iff n is a perfect square; if so *root gets the square root.
bool is_square(const mpz_class& n, mpz_class* root = nullptr);

bool is_prime(const mpz_class& n);

// Ascending primes <= bound via a plain sieve.
std::vector<long> primes_up_to(long bound);

// Trial-division factorization, pairs (prime, exponent) ascending.
// Throws std::invalid_argument for n <= 0 and std::runtime_error when a
// cofactor survives the trial bound (inputs here are desk scale).
std::vector<std::pair<mpz_class, int>> factor(const mpz_class& n);

// All divisors of n in ascending order.
std::vector<mpz_class> divisors_sorted(const mpz_class& n);

// Kronecker symbol (a/n).
int kronecker(const mpz_class& a, const mpz_class& n);

// base^e for e >= 0.
mpz_class pow_mpz(const mpz_class& base, unsigned long e);

// Multiplicity of the prime p in n (n != 0).
long valuation(mpz_class n, const mpz_class& p);

// If m = p^r for a prime p and r >= 1, returns (p, r).
std::pair<mpz_class, long> prime_power_split(const mpz_class& m);

// FNV-1a over a byte string, used for stable cache keys.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace apgeo
