#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "json.hpp"

namespace apgeo {

/*
 * Square matrices with exact arbitrary-precision integer entries.
 * Dimensions 2..8; entries routinely reach thousands of digits, so
 * powers always go through binary exponentiation.
 */
class IntMatrix {
public:
    explicit IntMatrix(int n);  // zero matrix
    static IntMatrix identity(int n);
    static IntMatrix from_rows(std::vector<std::vector<long>> rows);

    // Row-major "a,b;c,d" with decimal entries.
    static IntMatrix parse(const std::string& text);
    std::string to_string() const;

    // JSON array of rows of decimal strings: [["2","1"],["1","1"]].
    nlohmann::ordered_json to_json() const;
    static IntMatrix from_json(const nlohmann::json& j);

    int dim() const { return n_; }
    mpz_class& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
    const mpz_class& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

    mpz_class trace() const;
    mpz_class det() const;  // fraction-free (Bareiss)
    bool is_identity() const;

    bool operator==(const IntMatrix& o) const = default;

private:
    int n_;
    std::vector<mpz_class> e_;
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

// a^e by repeated squaring, e >= 0; a^0 = I.
IntMatrix mat_pow(const IntMatrix& a, const mpz_class& e);

/*
 * Matrices over Z/m with m = p^r a prime power; other moduli are
 * rejected (reductions only ever happen at prime powers here).
 */
class ResidueMatrix {
public:
    ResidueMatrix(int n, const mpz_class& modulus);  // zero matrix
    static ResidueMatrix identity(int n, const mpz_class& modulus);
    static ResidueMatrix reduce(const IntMatrix& a, const mpz_class& modulus);

    int dim() const { return n_; }
    const mpz_class& modulus() const { return m_; }
    const mpz_class& prime() const { return p_; }
    long level() const { return r_; }

    mpz_class& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
    const mpz_class& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

    bool is_identity() const;
    mpz_class det() const;  // determinant reduced mod m
    std::string to_string() const;

    bool operator==(const ResidueMatrix& o) const = default;

private:
    int n_;
    mpz_class m_, p_;
    long r_;
    std::vector<mpz_class> e_;
};

ResidueMatrix mat_mul(const ResidueMatrix& a, const ResidueMatrix& b);

// Reduction of a^e mod m, without forming a^e.
ResidueMatrix mat_pow_mod(const IntMatrix& a, const mpz_class& e, const mpz_class& m);
ResidueMatrix mat_pow_mod(const ResidueMatrix& a, const mpz_class& e);

}  // namespace apgeo
