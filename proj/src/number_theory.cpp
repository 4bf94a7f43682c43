#include "apgeo/number_theory.hpp"

#include <algorithm>
#include <stdexcept>

namespace apgeo {

mpz_class isqrt(const mpz_class& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative input");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const mpz_class& n, mpz_class* root) {
    if (n < 0) return false;
    mpz_class r = isqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    // GMP's BPSW + Miller-Rabin; no composite below 2^64 passes it.
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

std::vector<long> primes_up_to(long bound) {
    std::vector<long> out;
    if (bound < 2) return out;
    std::vector<bool> comp(static_cast<size_t>(bound) + 1, false);
    for (long p = 2; p * p <= bound; ++p) {
        if (comp[p]) continue;
        for (long q = p * p; q <= bound; q += p) comp[q] = true;
    }
    for (long p = 2; p <= bound; ++p)
        if (!comp[p]) out.push_back(p);
    return out;
}

std::vector<std::pair<mpz_class, int>> factor(const mpz_class& n) {
    if (n <= 0) throw std::invalid_argument("factor: input must be positive");
    std::vector<std::pair<mpz_class, int>> fac;
    mpz_class m = n;
    const long trial_bound = 10'000'000;
    for (mpz_class p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (p > trial_bound)
            throw std::runtime_error("factor: input beyond trial-division bound");
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            fac.emplace_back(p, e);
        }
    }
    if (m > 1) fac.emplace_back(m, 1);
    return fac;
}

std::vector<mpz_class> divisors_sorted(const mpz_class& n) {
    auto fac = factor(n);
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : fac) {
        size_t base = divs.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

int kronecker(const mpz_class& a, const mpz_class& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

long valuation(mpz_class n, const mpz_class& p) {
    if (n == 0) throw std::invalid_argument("valuation: n = 0");
    if (n < 0) n = -n;
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::pair<mpz_class, long> prime_power_split(const mpz_class& m) {
    if (m < 2) throw std::invalid_argument("prime_power_split: modulus must be >= 2");
    mpz_class p = 2;
    mpz_class rest = m;
    while (rest % p != 0) {
        p += (p == 2 ? 1 : 2);
        if (p * p > m) {
            p = m;  // m itself prime
            break;
        }
    }
    long r = 0;
    mpz_class q = m;
    while (q % p == 0) {
        q /= p;
        ++r;
    }
    if (q != 1)
        throw std::invalid_argument("modulus is not a prime power: " + m.get_str());
    return {p, r};
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace apgeo
