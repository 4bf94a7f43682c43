#pragma once

#include <vector>

#include "apgeo/matrix.hpp"

namespace apgeo::testing {

// Fixed hyperbolic corpus: 24 elements of SL(2,Z) with |trace| <= 20,
// mixing companion matrices, symmetric words, and negative traces. The
// (2,1) entries avoid large prime factors so the probed n-value ladders
// jump cleanly from level 1 on.
inline std::vector<IntMatrix> hyperbolic_corpus() {
    std::vector<IntMatrix> out;
    for (long t : {3, 4, 5, 6, 7, 8, 9, 10, 11, 12, -3, -4, -5, -6})
        out.push_back(IntMatrix::from_rows({{t, -1}, {1, 0}}));
    out.push_back(IntMatrix::from_rows({{2, 1}, {1, 1}}));
    out.push_back(IntMatrix::from_rows({{1, 1}, {1, 2}}));
    out.push_back(IntMatrix::from_rows({{6, 1}, {5, 1}}));
    out.push_back(IntMatrix::from_rows({{5, 3}, {3, 2}}));
    out.push_back(IntMatrix::from_rows({{5, 2}, {2, 1}}));
    out.push_back(IntMatrix::from_rows({{7, 5}, {4, 3}}));
    out.push_back(IntMatrix::from_rows({{4, 1}, {3, 1}}));
    out.push_back(IntMatrix::from_rows({{10, 3}, {3, 1}}));
    out.push_back(IntMatrix::from_rows({{9, 4}, {2, 1}}));
    out.push_back(IntMatrix::from_rows({{11, 4}, {8, 3}}));
    return out;
}

}  // namespace apgeo::testing
