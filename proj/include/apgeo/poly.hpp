#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apgeo/matrix.hpp"

namespace apgeo {

// Monic integer polynomial, coeff[k] is the z^k coefficient, coeff.back() = 1.
struct MonicPoly {
    std::vector<mpz_class> coeff;

    int degree() const { return static_cast<int>(coeff.size()) - 1; }
    const mpz_class& constant_term() const { return coeff.front(); }
    std::string to_string() const;

    bool operator==(const MonicPoly& o) const = default;
};

// Exact characteristic polynomial via the Faddeev-LeVerrier recursion
// (the interior divisions by k are exact over Z).
MonicPoly char_poly(const IntMatrix& a);

// Outcome of assembling the symmetric-function polynomial from candidate
// eigenvalues: either a monic integer polynomial, or the index of the
// first elementary symmetric function that is not a rational integer.
struct QPolyOutcome {
    std::optional<MonicPoly> poly;
    std::string error;  // empty iff poly is set

    bool ok() const { return poly.has_value(); }
};

/*
 * q_poly: signed elementary symmetric functions of the inputs become the
 * coefficients, z^n - e1 z^{n-1} + e2 z^{n-2} - ... The element type needs
 * ring arithmetic plus a try_integer() probe; inputs whose symmetric
 * functions leave Z are reported rather than coerced.
 */
template <typename Elem>
QPolyOutcome q_poly(std::span<const Elem> roots) {
    const int n = static_cast<int>(roots.size());
    if (n < 1) return {std::nullopt, "q_poly: need at least one input"};
    // es[k] = e_k as an element, built incrementally; e_0 = 1 handled apart.
    std::vector<std::optional<Elem>> es(static_cast<size_t>(n) + 1);
    for (const Elem& x : roots) {
        for (int k = n; k >= 1; --k) {
            if (k >= 2 && es[k - 1].has_value()) {
                Elem add = *es[k - 1] * x;
                es[k] = es[k].has_value() ? std::optional<Elem>(*es[k] + add) : std::optional<Elem>(add);
            } else if (k == 1) {
                es[1] = es[1].has_value() ? std::optional<Elem>(*es[1] + x) : std::optional<Elem>(x);
            }
        }
    }
    MonicPoly p;
    p.coeff.assign(static_cast<size_t>(n) + 1, 0);
    p.coeff[n] = 1;
    for (int k = 1; k <= n; ++k) {
        std::optional<mpz_class> ek = es[k]->try_integer();
        if (!ek.has_value())
            return {std::nullopt,
                    "not in O_K[z]: elementary symmetric function e_" + std::to_string(k) +
                        " is not a rational integer"};
        p.coeff[n - k] = (k % 2 == 0) ? *ek : mpz_class(-*ek);
    }
    return {p, ""};
}

}  // namespace apgeo
