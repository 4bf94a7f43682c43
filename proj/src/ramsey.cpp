#include "apgeo/ramsey.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "apgeo/number_theory.hpp"

namespace apgeo {

nlohmann::ordered_json Coloring::to_json() const {
    nlohmann::ordered_json j;
    j["colors"] = colors;
    j["num_colors"] = num_colors;
    return j;
}

std::optional<std::pair<int, int>> find_mono_ap(const Coloring& c, int k) {
    if (k < 1) throw std::invalid_argument("find_mono_ap: k must be >= 1");
    const int n = c.length();
    if (k == 1) return n >= 1 ? std::optional(std::make_pair(1, 0)) : std::nullopt;
    for (int start = 1; start <= n; ++start) {
        for (int d = 1; start + (k - 1) * d <= n; ++d) {
            int color = c.colors[start - 1];
            bool mono = true;
            for (int t = 1; t < k; ++t)
                if (c.colors[start + t * d - 1] != color) {
                    mono = false;
                    break;
                }
            if (mono) return std::make_pair(start, d);
        }
    }
    return std::nullopt;
}

namespace {

// Depth-first extension with incremental AP checking: a coloring survives
// only if no monochromatic k-AP ends at the newest position.
bool exists_ap_free_coloring(int r, int k, int n, std::vector<int>& colors) {
    int pos = static_cast<int>(colors.size());
    if (pos == n) return true;
    for (int col = 0; col < r; ++col) {
        bool ok = true;
        // check APs ending at index pos+1 (1-based) with k terms
        for (int d = 1; ok && pos + 1 - (k - 1) * d >= 1; ++d) {
            bool mono = true;
            for (int t = 1; t < k; ++t)
                if (colors[pos - t * d] != col) {
                    mono = false;
                    break;
                }
            if (mono) ok = false;
        }
        if (!ok) continue;
        colors.push_back(col);
        if (exists_ap_free_coloring(r, k, n, colors)) return true;
        colors.pop_back();
    }
    return false;
}

}  // namespace

VdwResult vdw_number(int r, int k, int cap) {
    if (r < 1 || k < 1 || cap < 1) throw std::invalid_argument("vdw_number: r, k, cap >= 1");
    VdwResult res;
    std::vector<int> witness;  // longest AP-free coloring seen
    for (int n = 1; n <= cap; ++n) {
        std::vector<int> colors;
        colors.reserve(n);
        if (exists_ap_free_coloring(r, k, n, colors)) {
            witness = colors;
        } else {
            res.w = n;
            res.lower_bound_witness.num_colors = r;
            res.lower_bound_witness.colors = witness;
            return res;
        }
    }
    res.lower_bound_witness.num_colors = r;
    res.lower_bound_witness.colors = witness;
    return res;  // w absent: unknown above cap
}

nlohmann::ordered_json VdwResult::to_json() const {
    nlohmann::ordered_json j;
    if (w.has_value())
        j["w"] = *w;
    else
        j["w"] = nullptr;
    j["lower_bound_witness"] = lower_bound_witness.colors;
    return j;
}

mpz_class TransferMap::big_d() const {
    mpz_class d_big = 1;
    for (const mpz_class& dv : divisors_sorted(mpz_class(d_m))) d_big *= dv;
    for (const mpz_class& dv : divisors_sorted(mpz_class(d_mp))) d_big *= dv;
    return d_big;
}

nlohmann::ordered_json TransferMap::to_json() const {
    nlohmann::ordered_json j;
    j["d_m"] = d_m;
    j["d_mp"] = d_mp;
    j["d"] = d;
    j["d_prime"] = d_prime;
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (auto [p, q] : assignment) pairs.push_back({p, q});
    j["assignment"] = pairs;
    return j;
}

TransferMap TransferMap::from_json(const nlohmann::json& j) {
    TransferMap tm;
    tm.d_m = j.at("d_m").get<long>();
    tm.d_mp = j.at("d_mp").get<long>();
    if (j.contains("d")) tm.d = j.at("d").get<long>();
    if (j.contains("d_prime")) tm.d_prime = j.at("d_prime").get<long>();
    for (const auto& pair : j.at("assignment")) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("transfer map: assignment entries are [p, q] pairs");
        tm.assignment.emplace_back(pair[0].get<long>(), pair[1].get<long>());
    }
    if (tm.assignment.empty())
        throw std::invalid_argument("transfer map: assignment must be nonempty");
    for (auto [p, q] : tm.assignment)
        if (p < 1 || q < 1 || tm.d_m % p != 0 || tm.d_mp % q != 0)
            throw std::invalid_argument("transfer map: pair does not divide the cover degrees");
    return tm;
}

TransferredProgression transfer_progression(const ProgressionWitness& w, const TransferMap& tm,
                                            int k, const BuildOptions& opts) {
    if (k < 1) throw std::invalid_argument("transfer_progression: k must be >= 1");
    if (tm.assignment.empty())
        throw std::invalid_argument("transfer_progression: empty divisor-pair assignment");
    for (auto [p, q] : tm.assignment)
        if (p < 1 || q < 1 || tm.d_m % p != 0 || tm.d_mp % q != 0)
            throw std::invalid_argument("transfer_progression: invalid divisor pair");
    if (tm.d_m % tm.d != 0 || tm.d_mp % tm.d_prime != 0)
        throw std::invalid_argument("transfer_progression: base pair must divide the degrees");

    mpz_class d_big = tm.big_d();

    // the progression we color must carry D inside C; rebuild if the input
    // does not (the builder reclears the divisor), then grow on demand
    BuildOptions build_opts = opts;
    build_opts.force_divisor = lcm(opts.force_divisor, d_big);
    auto rebuild = [&](int len) {
        if (w.contains.has_value())
            return build_progression_containing(w.contains->gamma, len, build_opts);
        return build_progression(w.gamma_abs, len, build_opts);
    };

    ProgressionWitness current = w;
    if (current.C % d_big != 0 || current.k < k) current = rebuild(std::max(current.k, k));

    for (;;) {
        // color index i by its cyclically assigned divisor pair
        std::map<std::pair<long, long>, int> palette;
        Coloring coloring;
        for (int i = 0; i < current.k; ++i) {
            auto pair = tm.assignment[i % tm.assignment.size()];
            auto [it, fresh] = palette.emplace(pair, static_cast<int>(palette.size()));
            coloring.colors.push_back(it->second);
        }
        coloring.num_colors = static_cast<int>(palette.size());
        if (auto found = find_mono_ap(coloring, k)) {
            auto [start, diff] = *found;
            auto pq = tm.assignment[(start - 1) % tm.assignment.size()];
            TransferredProgression out;
            out.witness = current;
            out.map = tm;
            out.p = pq.first;
            out.q = pq.second;
            out.D = d_big;
            // coefficient C' D d' p / (q d); q*d divides D, C' = C/D
            mpz_class c_prime = current.C / d_big;
            mpz_class scaled = d_big;
            mpz_class divisor = mpz_class(pq.second) * tm.d;
            if (scaled % divisor != 0)
                throw std::logic_error("transfer: q*d does not divide D");
            out.coefficient = c_prime * (scaled / divisor) * tm.d_prime * pq.first;
            out.mono_ap = {start, diff};
            out.k = k;
            for (int t = 0; t < k; ++t) {
                long idx = start + static_cast<long>(t) * diff;
                out.multipliers.push_back(out.coefficient *
                                          (mpz_class(current.a) * idx + current.b));
            }
            return out;
        }
        // no monochromatic AP yet: grow the witness
        int next_len = current.k + 1;
        if (next_len > opts.k_cap)
            throw cap_exceeded("transfer_progression: witness length cap reached without a "
                               "monochromatic progression");
        current = rebuild(next_len);
    }
}

nlohmann::ordered_json TransferredProgression::to_json() const {
    nlohmann::ordered_json j = witness.to_json();
    nlohmann::ordered_json t;
    t["d_m"] = map.d_m;
    t["d_mp"] = map.d_mp;
    t["d"] = map.d;
    t["d_prime"] = map.d_prime;
    t["p"] = p;
    t["q"] = q;
    t["D"] = D.get_str();
    t["coefficient"] = coefficient.get_str();
    t["mono_ap"] = {{"start", mono_ap.first}, {"difference", mono_ap.second}};
    t["k"] = k;
    nlohmann::ordered_json mults = nlohmann::ordered_json::array();
    for (const auto& m : multipliers) mults.push_back(m.get_str());
    t["multipliers"] = mults;
    j["transfer"] = t;
    return j;
}

}  // namespace apgeo
