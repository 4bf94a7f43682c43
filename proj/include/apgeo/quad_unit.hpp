#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "json.hpp"

namespace apgeo {

bool is_fundamental_discriminant(const mpz_class& d0);

/*
 * Element (a + b*sqrt(d0))/2 of the maximal order of Q(sqrt(d0)), d0 > 0 a
 * fundamental discriminant, with the parity constraint a = b*d0 (mod 2).
 * The real embedding fixes sqrt(d0) > 0. Arithmetic is exact; comparisons
 * are decided by integer sign analysis, never floating point.
 */
class QuadUnit {
public:
    QuadUnit(mpz_class d0, mpz_class a, mpz_class b);

    static QuadUnit one(const mpz_class& d0);
    static QuadUnit integer(const mpz_class& d0, const mpz_class& k);

    const mpz_class& d0() const { return d0_; }
    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }

    // a^2 - b^2 d0 over 4; +-1 exactly for units.
    mpz_class norm() const;
    bool is_unit() const;

    QuadUnit conj() const;   // (a - b sqrt(d0))/2
    QuadUnit inverse() const;  // unit inverse; throws for non-units

    // trace a = x + conj(x); an integer by construction.
    const mpz_class& trace() const { return a_; }

    std::optional<mpz_class> try_integer() const;

    QuadUnit pow(const mpz_class& e) const;  // e >= 0

    bool is_positive() const;  // sign under the canonical embedding
    bool is_one() const { return a_ == 2 && b_ == 0; }
    bool greater_one() const;

    friend QuadUnit operator*(const QuadUnit& x, const QuadUnit& y);
    friend QuadUnit operator+(const QuadUnit& x, const QuadUnit& y);
    friend QuadUnit operator-(const QuadUnit& x);
    // exact order comparison in the canonical real embedding
    friend bool operator<(const QuadUnit& x, const QuadUnit& y);
    bool operator==(const QuadUnit& o) const = default;

    double to_double() const;
    std::string to_decimal(int digits = 50) const;
    std::string to_display() const;  // "(a + b*sqrt(d0))/2" style

    nlohmann::ordered_json to_json() const;
    static QuadUnit from_json(const nlohmann::json& j);

private:
    struct unchecked_t {};
    QuadUnit(unchecked_t, mpz_class d0, mpz_class a, mpz_class b)
        : d0_(std::move(d0)), a_(std::move(a)), b_(std::move(b)) {}

    mpz_class d0_, a_, b_;
};

// Smallest unit > 1 of the maximal order, by continued fractions.
QuadUnit fundamental_unit(const mpz_class& d0);

// Smallest norm-one unit > 1: the fundamental unit or its square.
QuadUnit norm_one_generator(const mpz_class& d0);

// The m >= 1 with lambda = norm_one_generator(d0)^m, found by exact binary
// search in the archimedean order; throws if lambda is not such a power
// (corrupted input) or violates the preconditions (norm +1, lambda > 1).
mpz_class unit_exponent(const QuadUnit& lambda);

// The norm-one unit mu with mu^k = lambda when one exists in the maximal
// order; absence is a valid return.
std::optional<QuadUnit> kth_root_unit(const QuadUnit& lambda, const mpz_class& k);

}  // namespace apgeo
