#include "apgeo/quad_unit.hpp"

#include <mpfr.h>

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "apgeo/number_theory.hpp"

namespace apgeo {

namespace {

// Small memo so hot arithmetic paths do not refactor the same discriminant.
bool fundamental_check(const mpz_class& d0) {
    static thread_local std::map<mpz_class, bool> memo;
    auto it = memo.find(d0);
    if (it != memo.end()) return it->second;
    bool ok = false;
    if (d0 > 4) {
        mpz_class r4 = d0 % 4;
        auto squarefree = [](const mpz_class& n) {
            for (const auto& [p, e] : factor(n))
                if (e >= 2) return false;
            return true;
        };
        if (r4 == 1) {
            ok = squarefree(d0);
        } else if (r4 == 0) {
            mpz_class m = d0 / 4;
            mpz_class m4 = m % 4;
            ok = (m4 == 2 || m4 == 3) && squarefree(m);
        }
    }
    if (memo.size() < 4096) memo[d0] = ok;
    return ok;
}

}  // namespace

bool is_fundamental_discriminant(const mpz_class& d0) { return fundamental_check(d0); }

QuadUnit::QuadUnit(mpz_class d0, mpz_class a, mpz_class b)
    : d0_(std::move(d0)), a_(std::move(a)), b_(std::move(b)) {
    if (!fundamental_check(d0_))
        throw std::invalid_argument(d0_.get_str() + " is not a positive fundamental discriminant");
    mpz_class parity = (a_ - b_ * d0_) % 2;
    if (parity != 0)
        throw std::invalid_argument("(" + a_.get_str() + " + " + b_.get_str() +
                                    "*sqrt(" + d0_.get_str() + "))/2 is not in the maximal order");
}

QuadUnit QuadUnit::one(const mpz_class& d0) { return QuadUnit(d0, 2, 0); }

QuadUnit QuadUnit::integer(const mpz_class& d0, const mpz_class& k) {
    return QuadUnit(d0, 2 * k, 0);
}

mpz_class QuadUnit::norm() const {
    mpz_class n = a_ * a_ - b_ * b_ * d0_;
    mpz_class q;
    mpz_divexact_ui(q.get_mpz_t(), n.get_mpz_t(), 4);
    return q;
}

bool QuadUnit::is_unit() const {
    mpz_class n = norm();
    return n == 1 || n == -1;
}

QuadUnit QuadUnit::conj() const { return QuadUnit(unchecked_t{}, d0_, a_, -b_); }

QuadUnit QuadUnit::inverse() const {
    mpz_class n = norm();
    if (n == 1) return conj();
    if (n == -1) return QuadUnit(unchecked_t{}, d0_, -a_, b_);
    throw std::domain_error("inverse: element of norm " + n.get_str() + " is not a unit");
}

std::optional<mpz_class> QuadUnit::try_integer() const {
    if (b_ != 0) return std::nullopt;
    if (a_ % 2 != 0) return std::nullopt;
    return mpz_class(a_ / 2);
}

QuadUnit operator*(const QuadUnit& x, const QuadUnit& y) {
    if (x.d0_ != y.d0_) throw std::invalid_argument("QuadUnit product across different fields");
    mpz_class a2 = x.a_ * y.a_ + x.b_ * y.b_ * x.d0_;
    mpz_class b2 = x.a_ * y.b_ + x.b_ * y.a_;
    // the order is closed under products, so both halves are even
    mpz_class a, b;
    mpz_divexact_ui(a.get_mpz_t(), a2.get_mpz_t(), 2);
    mpz_divexact_ui(b.get_mpz_t(), b2.get_mpz_t(), 2);
    return QuadUnit(QuadUnit::unchecked_t{}, x.d0_, a, b);
}

QuadUnit operator+(const QuadUnit& x, const QuadUnit& y) {
    if (x.d0_ != y.d0_) throw std::invalid_argument("QuadUnit sum across different fields");
    return QuadUnit(QuadUnit::unchecked_t{}, x.d0_, x.a_ + y.a_, x.b_ + y.b_);
}

QuadUnit operator-(const QuadUnit& x) {
    return QuadUnit(QuadUnit::unchecked_t{}, x.d0_, -x.a_, -x.b_);
}

QuadUnit QuadUnit::pow(const mpz_class& e) const {
    if (e < 0) throw std::invalid_argument("QuadUnit::pow: exponent must be >= 0");
    QuadUnit result = one(d0_);
    if (e == 0) return result;
    QuadUnit sq = *this;
    mp_bitcnt_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (mp_bitcnt_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) result = result * sq;
        if (i + 1 < bits) sq = sq * sq;
    }
    return result;
}

bool QuadUnit::is_positive() const {
    // sign of a + b sqrt(d0) by quadrant, squaring in the mixed case
    int sa = sgn(a_), sb = sgn(b_);
    if (sa == 0 && sb == 0) return false;
    if (sa >= 0 && sb >= 0) return true;
    if (sa <= 0 && sb <= 0) return false;
    mpz_class lhs = a_ * a_, rhs = b_ * b_ * d0_;
    return sa > 0 ? lhs > rhs : lhs < rhs;
}

bool QuadUnit::greater_one() const {
    QuadUnit diff = QuadUnit(unchecked_t{}, d0_, a_ - 2, b_);
    return diff.is_positive();
}

bool operator<(const QuadUnit& x, const QuadUnit& y) {
    if (x.d0_ != y.d0_) throw std::invalid_argument("QuadUnit comparison across different fields");
    QuadUnit diff(QuadUnit::unchecked_t{}, x.d0_, y.a_ - x.a_, y.b_ - x.b_);
    return diff.is_positive();
}

double QuadUnit::to_double() const {
    mpfr_t v;
    mpfr_init2(v, 64);
    mpfr_set_z(v, d0_.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(v, v, MPFR_RNDN);
    mpfr_mul_z(v, v, b_.get_mpz_t(), MPFR_RNDN);
    mpfr_add_z(v, v, a_.get_mpz_t(), MPFR_RNDN);
    mpfr_div_ui(v, v, 2, MPFR_RNDN);
    double out = mpfr_get_d(v, MPFR_RNDN);
    mpfr_clear(v);
    return out;
}

std::string QuadUnit::to_decimal(int digits) const {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 4 + 64);
    mpfr_t v;
    mpfr_init2(v, prec);
    mpfr_set_z(v, d0_.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(v, v, MPFR_RNDN);
    mpfr_mul_z(v, v, b_.get_mpz_t(), MPFR_RNDN);
    mpfr_add_z(v, v, a_.get_mpz_t(), MPFR_RNDN);
    mpfr_div_ui(v, v, 2, MPFR_RNDN);
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v);
    std::string out(s);
    mpfr_free_str(s);
    mpfr_clear(v);
    return out;
}

std::string QuadUnit::to_display() const {
    return "(" + a_.get_str() + " + " + b_.get_str() + "*sqrt(" + d0_.get_str() + "))/2";
}

nlohmann::ordered_json QuadUnit::to_json() const {
    nlohmann::ordered_json j;
    j["d0"] = d0_.fits_slong_p() ? nlohmann::ordered_json(d0_.get_si())
                                 : nlohmann::ordered_json(d0_.get_str());
    j["a"] = a_.get_str();
    j["b"] = b_.get_str();
    return j;
}

QuadUnit QuadUnit::from_json(const nlohmann::json& j) {
    auto read = [](const nlohmann::json& v) {
        mpz_class out;
        if (v.is_string()) {
            if (mpz_set_str(out.get_mpz_t(), v.get<std::string>().c_str(), 10) != 0)
                throw std::invalid_argument("QuadUnit json: bad integer string");
        } else {
            out = mpz_class(v.get<long>());
        }
        return out;
    };
    return QuadUnit(read(j.at("d0")), read(j.at("a")), read(j.at("b")));
}

/*
 * Fundamental unit by the continued fraction of the order generator
 * (sqrt(m) for d0 = 4m, (1 + sqrt(d0))/2 for odd d0). States (P,Q) of the
 * complete quotients eventually cycle; the first recurrence spans exactly
 * one primitive period, and the fixed-point matrix of that period acts on
 * the quotient's lattice as multiplication by the fundamental unit.
 */
QuadUnit fundamental_unit(const mpz_class& d0) {
    if (!fundamental_check(d0))
        throw std::invalid_argument(d0.get_str() + " is not a positive fundamental discriminant");
    mpz_class D, P, Q;
    bool even_disc = (d0 % 4 == 0);
    if (even_disc) {
        D = d0 / 4;  // expand sqrt(D)
        P = 0;
        Q = 1;
    } else {
        D = d0;  // expand (1 + sqrt(D))/2
        P = 1;
        Q = 2;
    }
    mpz_class sq = isqrt(D);

    // convergent matrix: [[p_{i-1}, p_{i-2}], [q_{i-1}, q_{i-2}]]
    struct Conv {
        mpz_class p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    };
    std::map<std::pair<mpz_class, mpz_class>, Conv> seen;
    Conv m;
    mpz_class Pi = P, Qi = Q;
    for (long step = 0; step < 4'000'000; ++step) {
        auto key = std::make_pair(Pi, Qi);
        auto it = seen.find(key);
        if (it != seen.end()) {
            // T = M_j^{-1} M_i maps the complete quotient alpha_j to itself;
            // only the bottom row of T enters the unit tc*alpha_j + td.
            const Conv& mj = it->second;
            mpz_class detj = mj.p1 * mj.q2 - mj.p2 * mj.q1;  // +-1
            mpz_class tc = detj * (-mj.q1 * m.p1 + mj.p1 * m.q1);
            mpz_class td = detj * (-mj.q1 * m.p2 + mj.p1 * m.q2);
            // unit = tc * alpha_j + td with alpha_j = (P + sqrt(D))/Q
            mpz_class num_rat = tc * Pi + td * Qi;  // rational part * Q
            mpz_class num_irr = tc;                 //  sqrt(D) part * Q
            // convert to (a + b sqrt(d0))/2 coordinates
            mpz_class a, b;
            if (even_disc) {
                // x = num_rat/Q + (num_irr/Q) sqrt(m); sqrt(d0) = 2 sqrt(m)
                mpz_class twice = 2 * num_rat;
                if (twice % Qi != 0 || num_irr % Qi != 0)
                    throw std::logic_error("fundamental_unit: non-integral unit coordinates");
                a = twice / Qi;
                b = num_irr / Qi;
            } else {
                mpz_class twice_rat = 2 * num_rat, twice_irr = 2 * num_irr;
                if (twice_rat % Qi != 0 || twice_irr % Qi != 0)
                    throw std::logic_error("fundamental_unit: non-integral unit coordinates");
                a = twice_rat / Qi;
                b = twice_irr / Qi;
            }
            QuadUnit u(d0, a, b);
            // normalize to the associate > 1
            if (!u.greater_one()) {
                QuadUnit cands[3] = {-u, u.inverse(), -(u.inverse())};
                bool found = false;
                for (const auto& c : cands)
                    if (c.greater_one()) {
                        u = c;
                        found = true;
                        break;
                    }
                if (!found) throw std::logic_error("fundamental_unit: no associate > 1");
            }
            return u;
        }
        seen.emplace(key, m);
        // a_i = floor((P_i + sqrt(D))/Q_i); Q_i > 0 throughout for our starts
        mpz_class ai = (Pi + sq) / Qi;
        mpz_class Pn = ai * Qi - Pi;
        mpz_class Qn = (D - Pn * Pn) / Qi;
        // advance convergents
        Conv next;
        next.p1 = ai * m.p1 + m.p2;
        next.p2 = m.p1;
        next.q1 = ai * m.q1 + m.q2;
        next.q2 = m.q1;
        m = next;
        Pi = Pn;
        Qi = Qn;
    }
    throw std::runtime_error("fundamental_unit: continued fraction failed to cycle");
}

QuadUnit norm_one_generator(const mpz_class& d0) {
    QuadUnit u = fundamental_unit(d0);
    if (u.norm() == 1) return u;
    return u * u;
}

mpz_class unit_exponent(const QuadUnit& lambda) {
    if (lambda.norm() != 1)
        throw std::domain_error("unit_exponent: input has norm " + lambda.norm().get_str() +
                                ", expected +1");
    if (!lambda.greater_one()) {
        if (lambda.is_one()) return 0;
        throw std::domain_error("unit_exponent: input must exceed 1 in the canonical embedding");
    }
    QuadUnit u = norm_one_generator(lambda.d0());
    // bracket the exponent by doubling, then binary search with exact compares
    mpz_class lo = 1, hi = 1;
    while (u.pow(hi) < lambda) hi *= 2;
    while (lo < hi) {
        mpz_class mid = (lo + hi) / 2;
        if (u.pow(mid) < lambda)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (!(u.pow(lo) == lambda))
        throw std::domain_error("unit_exponent: " + lambda.to_display() +
                                " is not a power of the norm-one generator (corrupted input)");
    return lo;
}

std::optional<QuadUnit> kth_root_unit(const QuadUnit& lambda, const mpz_class& k) {
    if (k < 1) throw std::invalid_argument("kth_root_unit: k must be >= 1");
    if (lambda.norm() != 1 || !lambda.greater_one())
        throw std::domain_error("kth_root_unit: input must be a norm-one unit > 1");
    if (k == 1) return lambda;
    mpz_class e = unit_exponent(lambda);
    if (e % k != 0) return std::nullopt;
    return norm_one_generator(lambda.d0()).pow(e / k);
}

}  // namespace apgeo
