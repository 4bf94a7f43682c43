#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "apgeo/progressions.hpp"
#include "json.hpp"

namespace apgeo {

struct Coloring {
    int num_colors = 1;
    std::vector<int> colors;  // colors[i] is the color of i+1, values in [0, num_colors)

    int length() const { return static_cast<int>(colors.size()); }
    nlohmann::ordered_json to_json() const;
};

// Least (start, difference) of a monochromatic k-term AP in the coloring of
// {1..N}, start-major; absent when none exists. k = 1 returns (1, 0).
std::optional<std::pair<int, int>> find_mono_ap(const Coloring& c, int k);

struct VdwResult {
    std::optional<int> w;           // least N forcing a monochromatic k-AP
    Coloring lower_bound_witness;   // a valid coloring one shorter (or cap long)

    nlohmann::ordered_json to_json() const;
};

// Exhaustive search for W(r,k) up to cap; cap exhaustion is a valid return
// (w absent) with the surviving cap-length coloring as witness.
VdwResult vdw_number(int r, int k, int cap);

/*
 * Simulated commensurability transfer: lifting through a common cover of
 * degrees (d_M, d_Mp) multiplies each length by a divisor ratio p/q. The
 * map assigns such a pair to every index (cyclically); D is the product of
 * all divisors of both degrees, so every transferred multiplier stays
 * integral by construction.
 */
struct TransferMap {
    long d_m = 1;
    long d_mp = 1;
    long d = 1;        // divisor pair applied when pulling the base length over
    long d_prime = 1;
    std::vector<std::pair<long, long>> assignment;  // cyclic (p, q) pairs

    mpz_class big_d() const;  // prod of divisors of d_m times prod of divisors of d_mp
    nlohmann::ordered_json to_json() const;
    static TransferMap from_json(const nlohmann::json& j);
};

struct TransferredProgression {
    ProgressionWitness witness;  // the (possibly regrown) source progression
    TransferMap map;
    long p = 1, q = 1;           // the monochromatic color
    mpz_class D;
    mpz_class coefficient;       // C' D d' p / (q d), exactly integral
    std::pair<int, int> mono_ap; // (start, difference) over witness indices
    int k = 0;
    std::vector<mpz_class> multipliers;

    nlohmann::ordered_json to_json() const;
};

/*
 * Colors the indices of w by the map's divisor pairs and hunts for a
 * monochromatic k-term AP, growing the witness (rebuilding a longer one
 * with D cleared into C) until one appears or the growth cap is hit.
 */
TransferredProgression transfer_progression(const ProgressionWitness& w, const TransferMap& tm,
                                            int k, const BuildOptions& opts = {});

}  // namespace apgeo
