#include "apgeo/filtration.hpp"

#include <algorithm>
#include <random>

#include "apgeo/number_theory.hpp"

namespace apgeo {

namespace {

struct EntryCondition {
    int i, j;        // 0-based
    mpz_class mod;   // v^(r * beta_ij)
};

struct ConditionSet {
    std::vector<EntryCondition> conds;
    mpz_class big_mod;  // v^(r * beta_max), all condition moduli divide it
};

ConditionSet make_conditions(const AdmissibleElement& eta, long r) {
    long beta_max = 0;
    for (auto [i1, j1] : eta.T) beta_max = std::max(beta_max, eta.beta_at(i1, j1));
    ConditionSet cs;
    cs.big_mod = pow_mpz(mpz_class(eta.v), static_cast<unsigned long>(r * beta_max));
    for (auto [i1, j1] : eta.T) {
        EntryCondition c;
        c.i = i1 - 1;
        c.j = j1 - 1;
        c.mod = pow_mpz(mpz_class(eta.v), static_cast<unsigned long>(r * eta.beta_at(i1, j1)));
        cs.conds.push_back(std::move(c));
    }
    return cs;
}

bool conditions_hold(const ResidueMatrix& pow, const ConditionSet& cs) {
    for (const auto& c : cs.conds)
        if (pow.at(c.i, c.j) % c.mod != 0) return false;
    return true;
}

void validate_gamma(const IntMatrix& gamma, const AdmissibleElement& eta) {
    if (gamma.dim() != eta.n)
        throw std::invalid_argument("gamma dimension does not match eta");
    if (gamma.det() != 1) throw std::invalid_argument("gamma must have determinant 1");
    if (gamma.dim() == 2 && abs(gamma.trace()) <= 2)
        throw std::invalid_argument("gamma must be hyperbolic (|trace| > 2)");
}

// Iteration core over machine words; moduli stay far below 2^31 at desk
// scale, so products of a row fit __int128 comfortably.
mpz_class brute_iterate_u64(const IntMatrix& gamma, const ConditionSet& cs, long limit) {
    const int n = gamma.dim();
    const std::uint64_t mod = cs.big_mod.get_ui();
    std::vector<std::uint64_t> g(static_cast<size_t>(n) * n), cur, tmp(g.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mpz_class v = gamma.at(i, j) % cs.big_mod;
            if (v < 0) v += cs.big_mod;
            g[static_cast<size_t>(i) * n + j] = v.get_ui();
        }
    struct Cond {
        int i, j;
        std::uint64_t mod;
    };
    std::vector<Cond> conds;
    for (const auto& c : cs.conds) conds.push_back({c.i, c.j, c.mod.get_ui()});
    cur = g;
    for (long step = 1; step <= limit; ++step) {
        bool ok = true;
        for (const auto& c : conds)
            if (cur[static_cast<size_t>(c.i) * n + c.j] % c.mod != 0) {
                ok = false;
                break;
            }
        if (ok) return step;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                unsigned __int128 acc = 0;
                for (int k = 0; k < n; ++k)
                    acc += static_cast<unsigned __int128>(cur[static_cast<size_t>(i) * n + k]) *
                           g[static_cast<size_t>(k) * n + j];
                tmp[static_cast<size_t>(i) * n + j] = static_cast<std::uint64_t>(acc % mod);
            }
        cur.swap(tmp);
    }
    return -1;
}

mpz_class brute_iterate_mpz(const IntMatrix& gamma, const ConditionSet& cs, long limit) {
    ResidueMatrix g = ResidueMatrix::reduce(gamma, cs.big_mod);
    ResidueMatrix cur = g;
    for (long step = 1; step <= limit; ++step) {
        if (conditions_hold(cur, cs)) return step;
        cur = mat_mul(cur, g);
    }
    return -1;
}

}  // namespace

mpz_class order_mod(const IntMatrix& a, long p, long r) {
    if (r < 1) throw std::invalid_argument("order_mod: level must be >= 1");
    if (!is_prime(mpz_class(p))) throw std::invalid_argument("order_mod: p must be prime");
    if (a.det() != 1) throw std::invalid_argument("order_mod: determinant must be 1");
    const int n = a.dim();
    mpz_class mod = pow_mpz(mpz_class(p), static_cast<unsigned long>(r));
    ResidueMatrix base = ResidueMatrix::reduce(a, mod);
    if (base.is_identity()) return 1;
    // |SL(n, Z/p^r)| = p^{(n^2-1)(r-1)} p^{n(n-1)/2} prod_{i=2..n} (p^i - 1);
    // the order divides it (Lagrange), so scan its divisors in order.
    mpz_class group_order = pow_mpz(
        mpz_class(p), static_cast<unsigned long>((n * n - 1) * (r - 1) + n * (n - 1) / 2));
    for (int i = 2; i <= n; ++i) group_order *= pow_mpz(mpz_class(p), i) - 1;
    for (const mpz_class& d : divisors_sorted(group_order)) {
        if (d == 1) continue;
        if (mat_pow_mod(base, d).is_identity()) return d;
    }
    throw std::logic_error("order_mod: no divisor of the group order worked");
}

namespace {

// Shared brute search: iterate gamma mod v^(r beta_max) until every entry
// condition holds. The order of gamma in that quotient is an a-priori hit,
// so the loop stops at min(order, iter_cap).
mpz_class brute_search(const IntMatrix& gamma, const AdmissibleElement& eta, long r,
                       long iter_cap) {
    ConditionSet cs = make_conditions(eta, r);
    long beta_max = 0;
    for (auto [i1, j1] : eta.T) beta_max = std::max(beta_max, eta.beta_at(i1, j1));
    mpz_class bound = order_mod(gamma, eta.v, r * beta_max);
    long limit = iter_cap;
    if (bound.fits_slong_p()) limit = std::min(limit, bound.get_si());
    mpz_class found = cs.big_mod.fits_sint_p() ? brute_iterate_u64(gamma, cs, limit)
                                               : brute_iterate_mpz(gamma, cs, limit);
    if (found < 0) {
        if (bound.fits_slong_p() && bound.get_si() <= iter_cap)
            throw std::logic_error("n_of_brute: order bound passed without a hit");
        throw cap_exceeded("n_of_brute: iteration cap " + std::to_string(iter_cap) +
                           " exceeded (pathological input?)");
    }
    return found;
}

}  // namespace

mpz_class n_of_brute(const IntMatrix& gamma, const AdmissibleElement& eta, long r,
                     const NofOptions& opts) {
    if (r < 1) throw std::invalid_argument("n_of_brute: level must be >= 1");
    validate_gamma(gamma, eta);
    return brute_search(gamma, eta, r, opts.iter_cap);
}

namespace {

bool conditions_hold_at(const IntMatrix& gamma, const ConditionSet& cs, const mpz_class& j) {
    return conditions_hold(mat_pow_mod(gamma, j, cs.big_mod), cs);
}

}  // namespace

mpz_class n_of(const IntMatrix& gamma, const AdmissibleElement& eta, long r,
               const NofOptions& opts) {
    if (r < 1) throw std::invalid_argument("n_of: level must be >= 1");
    validate_gamma(gamma, eta);
    std::string hash;
    if (opts.cache) {
        hash = NTableCache::hash_matrix(gamma);
        if (auto hit = opts.cache->lookup(hash, eta.v, r)) return *hit;
    }
    // level 1 by direct iteration
    mpz_class value = brute_search(gamma, eta, 1, opts.iter_cap);
    if (opts.cache) opts.cache->store(hash, eta.v, 1, value);
    // lift level by level: the valid exponents at level r form a subgroup
    // of those at level r-1, so the next value is the least multiple of the
    // current one meeting the deeper divisibility. Past the stability radius
    // that multiple is a v-power; at shallow levels it need not be, so all
    // multiples are scanned.
    for (long level = 2; level <= r; ++level) {
        if (opts.cache) {
            if (auto hit = opts.cache->lookup(hash, eta.v, level)) {
                value = *hit;
                continue;
            }
        }
        ConditionSet cs = make_conditions(eta, level);
        bool ok = false;
        for (long m = 1; m <= opts.iter_cap; ++m) {
            if (conditions_hold_at(gamma, cs, value * m)) {
                value *= m;
                ok = true;
                break;
            }
        }
        if (!ok) throw cap_exceeded("n_of: lift scan cap exceeded at level " +
                                    std::to_string(level));
        if (opts.cache) opts.cache->store(hash, eta.v, level, value);
    }
    return value;
}

KernelCheckReport kernel_order_check(int n, long p, int i, bool exhaustive, long samples,
                                     std::uint64_t seed) {
    if (n < 2 || n > 8) throw std::invalid_argument("kernel_order_check: n in [2,8]");
    if (!is_prime(mpz_class(p))) throw std::invalid_argument("kernel_order_check: p must be prime");
    if (i < 1) throw std::invalid_argument("kernel_order_check: i must be >= 1");
    if (exhaustive && !(n == 2 && p <= 3 && i <= 2))
        throw std::invalid_argument("exhaustive mode only for n = 2, p <= 3, i <= 2");

    KernelCheckReport rep;
    rep.n = n;
    rep.p = p;
    rep.i = i;
    rep.exhaustive = exhaustive;
    rep.samples = exhaustive ? 0 : samples;
    rep.seed = seed;

    mpz_class mod_big = pow_mpz(mpz_class(p), static_cast<unsigned long>(i + 2));
    mpz_class mod_mid = pow_mpz(mpz_class(p), static_cast<unsigned long>(i + 1));
    mpz_class p_to_i = pow_mpz(mpz_class(p), static_cast<unsigned long>(i));
    long p2 = p * p;

    auto probe = [&](const IntMatrix& b_lift) {
        ResidueMatrix b = ResidueMatrix::reduce(b_lift, mod_big);
        ResidueMatrix img = ResidueMatrix::reduce(b_lift, mod_mid);
        ++rep.checked;
        bool img_trivial = img.is_identity();
        if (!img_trivial) {
            ++rep.nontrivial;
            if (!mat_pow_mod(img, mpz_class(p)).is_identity())
                rep.order_violations.push_back(img.to_string());
        }
        if (!img_trivial && mat_pow_mod(b, mpz_class(p)).is_identity()) {
            if (p == 2 && i == 1)
                rep.exceptions_witnessed.push_back(b.to_string());
            else
                rep.power_violations.push_back(b.to_string());
        }
    };

    // the kernel layer is B = I + p^i X with X ranging mod p^2, filtered to
    // det(B) = 1 mod p^(i+2)
    if (exhaustive) {
        const int cells = n * n;
        std::vector<long> x(cells, 0);
        while (true) {
            IntMatrix b = IntMatrix::identity(n);
            for (int c = 0; c < cells; ++c) b.at(c / n, c % n) += p_to_i * x[c];
            mpz_class d = b.det() % mod_big;
            if (d < 0) d += mod_big;
            if (d == 1) probe(b);
            int c = 0;
            while (c < cells && ++x[c] == p2) x[c++] = 0;
            if (c == cells) break;
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> dist(0, p2 - 1);
        for (long s = 0; s < samples; ++s) {
            IntMatrix b = IntMatrix::identity(n);
            for (int r0 = 0; r0 < n; ++r0)
                for (int c0 = 0; c0 < n; ++c0) b.at(r0, c0) += p_to_i * dist(rng);
            // scale the first column by det^{-1} to land in SL; the factor
            // is 1 mod p^i, so the kernel-layer shape is preserved
            mpz_class d = b.det() % mod_big;
            if (d < 0) d += mod_big;
            mpz_class t;
            if (mpz_invert(t.get_mpz_t(), d.get_mpz_t(), mod_big.get_mpz_t()) == 0)
                throw std::logic_error("kernel sample determinant not invertible");
            for (int r0 = 0; r0 < n; ++r0) b.at(r0, 0) = (b.at(r0, 0) * t) % mod_big;
            probe(b);
        }
    }
    return rep;
}

nlohmann::ordered_json KernelCheckReport::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["p"] = p;
    j["i"] = i;
    j["mode"] = exhaustive ? "exhaustive" : "sampled";
    if (!exhaustive) {
        j["samples"] = samples;
        j["seed"] = seed;
    }
    j["checked"] = checked;
    j["nontrivial"] = nontrivial;
    j["order_violations"] = order_violations;
    j["power_violations"] = power_violations;
    j["exceptions_witnessed"] = exceptions_witnessed;
    j["pass"] = pass();
    return j;
}

StabilityReport stability_radius(const IntMatrix& gamma, const AdmissibleElement& eta, long cap,
                                 const StabilityOptions& opts) {
    if (cap < 2) throw std::invalid_argument("stability_radius: cap must be >= 2");
    validate_gamma(gamma, eta);
    const long window = opts.probe_window;
    const long r0 = eta.v == 2 ? 2 : 1;  // the (p,i) = (2,1) layer is excluded

    StabilityReport rep;
    rep.gamma = gamma.to_string();
    rep.v = eta.v;
    for (long r = r0; r <= cap + window; ++r)
        rep.n_values.emplace_back(r, n_of(gamma, eta, r, opts.nof));

    auto n_at = [&](long r) -> const mpz_class& { return rep.n_values[r - r0].second; };
    for (long R = r0; R <= cap; ++R) {
        long omega = 0;
        std::vector<int> eps;
        bool ok = true;
        for (long r = R; r < R + window; ++r) {
            const mpz_class& a = n_at(r);
            const mpz_class& b = n_at(r + 1);
            if (b % a != 0) {
                ok = false;
                break;
            }
            mpz_class q = b / a;
            if (q == 1) {
                eps.push_back(0);
                continue;
            }
            long w = valuation(q, mpz_class(eta.v));
            if (q != pow_mpz(mpz_class(eta.v), static_cast<unsigned long>(w))) {
                ok = false;
                break;
            }
            if (omega == 0)
                omega = w;
            else if (omega != w) {
                ok = false;
                break;
            }
            eps.push_back(1);
        }
        if (ok && (omega == 0 || eta.beta_eta % omega == 0)) {
            rep.radius = R;
            rep.omega = omega;
            rep.epsilons = std::move(eps);
            return rep;
        }
    }
    throw cap_exceeded("stability_radius: no stable window found up to cap " +
                       std::to_string(cap));
}

nlohmann::ordered_json StabilityReport::to_json() const {
    nlohmann::ordered_json j;
    j["gamma"] = gamma;
    j["v"] = v;
    nlohmann::ordered_json vals = nlohmann::ordered_json::array();
    for (const auto& [r, nv] : n_values) {
        nlohmann::ordered_json e;
        e["r"] = r;
        e["n"] = nv.get_str();
        vals.push_back(e);
    }
    j["n_values"] = vals;
    j["radius"] = radius;
    j["omega"] = omega;
    j["epsilons"] = epsilons;
    return j;
}

}  // namespace apgeo
