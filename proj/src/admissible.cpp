#include "apgeo/admissible.hpp"

#include <numeric>
#include <stdexcept>

#include "apgeo/number_theory.hpp"

namespace apgeo {

std::string to_string(GroupType t) {
    switch (t) {
        case GroupType::A1: return "A1";
        case GroupType::OneA: return "1A";
        case GroupType::TwoA: return "2A";
        case GroupType::BOneD: return "B/1D";
        case GroupType::C: return "C";
        case GroupType::TwoD: return "2D";
    }
    throw std::logic_error("unknown group type");
}

GroupType group_type_from_string(const std::string& s) {
    if (s == "A1") return GroupType::A1;
    if (s == "1A") return GroupType::OneA;
    if (s == "2A") return GroupType::TwoA;
    if (s == "B/1D" || s == "B" || s == "1D") return GroupType::BOneD;
    if (s == "C") return GroupType::C;
    if (s == "2D") return GroupType::TwoD;
    throw std::invalid_argument("unknown group type \"" + s + "\"");
}

namespace {

// beta, beta_eta and T from the exponent vector.
void finish_from_alpha(AdmissibleElement& e) {
    int n = e.n;
    e.beta.assign(n, std::vector<long>(n, 0));
    e.T.clear();
    long lcm_pos = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            mpq_class b = e.alpha[j] - e.alpha[i];
            b.canonicalize();
            if (b.get_den() != 1)
                throw std::logic_error("admissible recipe produced a non-integral beta");
            long bi = static_cast<long>(b.get_num().get_si());
            e.beta[i][j] = bi;
            if (bi > 0) {
                e.T.emplace_back(i + 1, j + 1);
                lcm_pos = lcm_pos == 0 ? bi : std::lcm(lcm_pos, bi);
            }
        }
    if (e.T.empty())
        throw std::invalid_argument("recipe produced an empty constraint set T");
    e.beta_eta = lcm_pos;
}

void require_offdiag(int n, std::pair<int, int> kk) {
    auto [k, kp] = kk;
    if (k < 1 || k > n || kp < 1 || kp > n)
        throw std::invalid_argument("entry pair out of range for n = " + std::to_string(n));
    if (k == kp) throw std::invalid_argument("entry pair must be off-diagonal");
}

}  // namespace

AdmissibleElement build_admissible(GroupType type, int n, long v, std::pair<int, int> kk,
                                   const RecipeOptions& opts) {
    if (n < 2 || n > 8) throw std::invalid_argument("dimension must be in [2,8]");
    if (v < 2 || !is_prime(mpz_class(v)))
        throw std::invalid_argument("v = " + std::to_string(v) + " is not a prime");
    require_offdiag(n, kk);
    auto [k, kp] = kk;

    AdmissibleElement e;
    e.type = type;
    e.n = n;
    e.v = v;
    e.kk = kk;
    e.alpha.assign(n, mpq_class(0));

    switch (type) {
        case GroupType::A1: {
            if (n != 2) throw std::invalid_argument("type A1 recipe is for n = 2");
            // eta = diag(v^{1/2}, v^{-1/2}) moving (1,2), the swap for (2,1)
            if (k == 1) {
                e.alpha[0] = mpq_class(1, 2);
                e.alpha[1] = mpq_class(-1, 2);
            } else {
                e.alpha[0] = mpq_class(-1, 2);
                e.alpha[1] = mpq_class(1, 2);
            }
            break;
        }
        case GroupType::OneA:
        case GroupType::TwoD: {
            // generic recipe: +1 at k, -1 at the mirror index n-k+1
            int mirror = n - k + 1;
            if (mirror == k)
                throw std::invalid_argument(
                    "generic recipe degenerates for the middle index k = " + std::to_string(k));
            e.alpha[k - 1] = 1;
            e.alpha[mirror - 1] = -1;
            break;
        }
        case GroupType::TwoA:
        case GroupType::BOneD: {
            if (!opts.p || !opts.q)
                throw std::invalid_argument("types 2A and B/1D need the signature (p,q)");
            int p = *opts.p, q = *opts.q;
            if (p < 1 || p > q || p + q != n)
                throw std::invalid_argument("signature must satisfy 1 <= p <= q, p + q = n");
            int id_block = q - p;  // leading indices 1..q-p are pinned to exponent 0
            auto paired = [&](int i) { return i > id_block; };
            auto iota = [&](int i) { return 2 * q + 1 - i; };
            if (!paired(k) && !paired(kp))
                throw std::invalid_argument(
                    "both indices lie in the identity block; the recipe cannot move that entry");
            if (paired(k) && paired(kp) && kp == iota(k))
                throw std::invalid_argument("entry pair lies on the form anti-diagonal");
            // move whichever index sits in the paired block, oriented so that
            // entry (k,k') is multiplied by v
            if (paired(k)) {
                e.alpha[k - 1] = 1;
                e.alpha[iota(k) - 1] = -1;
            } else {
                e.alpha[kp - 1] = -1;
                e.alpha[iota(kp) - 1] = 1;
            }
            break;
        }
        case GroupType::C: {
            if (!opts.p || !opts.q)
                throw std::invalid_argument("type C needs the signature (p,q)");
            int p = *opts.p, q = *opts.q;
            if (p < 1 || p > q || 2 * (p + q) != n)
                throw std::invalid_argument("type C needs 1 <= p <= q and n = 2(p+q)");
            auto in_f = [&](int i) { return i <= p || (i > p + q && i <= 2 * p + q); };
            if (in_f(k) == in_f(kp))
                throw std::invalid_argument(
                    "type C: indices must straddle the set {1..p, p+q+1..2p+q}");
            int half = n / 2;
            int mate = kp <= half ? kp + half : kp - half;
            e.alpha[kp - 1] = -1;
            e.alpha[mate - 1] = 1;
            break;
        }
    }
    finish_from_alpha(e);
    if (e.beta_at(k, kp) >= 0)
        throw std::logic_error("recipe orientation: entry (k,k') must be multiplied by v");
    return e;
}

bool is_admissible(const std::vector<std::vector<mpq_class>>& beta, GroupType type,
                   const RecipeOptions& opts) {
    int n = static_cast<int>(beta.size());
    if (n < 2) return false;
    for (const auto& row : beta)
        if (static_cast<int>(row.size()) != n) return false;
    // condition 1: integrality, zero diagonal
    for (int i = 0; i < n; ++i) {
        if (beta[i][i] != 0) return false;
        for (int j = 0; j < n; ++j) {
            mpq_class b = beta[i][j];
            b.canonicalize();
            if (b.get_den() != 1) return false;
        }
    }
    // must come from a diagonal exponent vector: beta_ij = alpha_j - alpha_i
    std::vector<mpq_class> alpha(n);
    for (int j = 0; j < n; ++j) alpha[j] = beta[0][j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (beta[i][j] != alpha[j] - alpha[i]) return false;
    // condition 2: constant on root subgroups. Vacuous for split SL_n
    // (types A1/1A: each off-diagonal cell is its own root position);
    // for the form types it is the pairing symmetry beta_ij = beta_i(j)i(i).
    if (type == GroupType::TwoA || type == GroupType::BOneD || type == GroupType::C) {
        if (!opts.p || !opts.q)
            throw std::invalid_argument("form types need the signature (p,q) to check condition 2");
        int p = *opts.p, q = *opts.q;
        auto iota = [&](int i1) {
            if (type == GroupType::C) {
                int half = n / 2;
                return i1 <= half ? i1 + half : i1 - half;
            }
            int id_block = q - p;
            return i1 <= id_block ? i1 : 2 * q + 1 - i1;
        };
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (beta[i - 1][j - 1] != beta[iota(j) - 1][iota(i) - 1]) return false;
    }
    // T nonempty (otherwise beta_eta is an lcm over the empty set)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (beta[i][j] > 0) return true;
    return false;
}

bool ScaledMatrix::integral() const {
    for (const auto& v : entries)
        if (v.get_den() != 1) return false;
    return true;
}

mpq_class ScaledMatrix::det() const {
    std::vector<mpq_class> a = entries;
    auto idx = [this](int i, int j) { return static_cast<size_t>(i) * n + j; };
    mpq_class result = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (a[idx(i, k)] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a[idx(k, j)], a[idx(piv, j)]);
            result = -result;
        }
        result *= a[idx(k, k)];
        for (int i = k + 1; i < n; ++i) {
            mpq_class factor = a[idx(i, k)] / a[idx(k, k)];
            for (int j = k; j < n; ++j) a[idx(i, j)] -= factor * a[idx(k, j)];
        }
    }
    return result;
}

IntMatrix ScaledMatrix::to_int_matrix() const {
    if (!integral()) throw std::domain_error("scaled matrix is not integral");
    IntMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = at(i, j).get_num();
    return m;
}

ScaledMatrix conjugate_scaled(const AdmissibleElement& eta, long r, const IntMatrix& a) {
    if (a.dim() != eta.n)
        throw std::invalid_argument("conjugate_scaled: dimension mismatch");
    if (r < 0) throw std::invalid_argument("conjugate_scaled: level must be >= 0");
    ScaledMatrix s;
    s.n = eta.n;
    s.entries.assign(static_cast<size_t>(eta.n) * eta.n, mpq_class(0));
    for (int i = 0; i < eta.n; ++i)
        for (int j = 0; j < eta.n; ++j) {
            long b = eta.beta[i][j];
            mpq_class val(a.at(i, j));
            if (b != 0 && r != 0) {
                mpz_class scale = pow_mpz(mpz_class(eta.v),
                                          static_cast<unsigned long>(r) *
                                              static_cast<unsigned long>(std::abs(b)));
                if (b < 0)
                    val *= mpq_class(scale);
                else
                    val /= mpq_class(scale);
            }
            val.canonicalize();
            s.at(i, j) = val;
        }
    return s;
}

nlohmann::ordered_json AdmissibleElement::to_json() const {
    nlohmann::ordered_json j;
    j["type"] = apgeo::to_string(type);
    j["n"] = n;
    j["v"] = v;
    j["kk"] = {kk.first, kk.second};
    nlohmann::ordered_json al = nlohmann::ordered_json::array();
    for (const auto& a : alpha) al.push_back(a.get_str());
    j["alpha"] = al;
    j["beta"] = beta;
    j["beta_eta"] = beta_eta;
    nlohmann::ordered_json t = nlohmann::ordered_json::array();
    for (auto [i, k] : T) t.push_back({i, k});
    j["T"] = t;
    return j;
}

}  // namespace apgeo
