#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apgeo/matrix.hpp"
#include "json.hpp"

namespace apgeo {

enum class GroupType { A1, OneA, TwoA, BOneD, C, TwoD };

std::string to_string(GroupType t);
GroupType group_type_from_string(const std::string& s);

/*
 * A diagonal commensurator element eta = diag(v^alpha_1, ..., v^alpha_n),
 * kept purely as exponent data: conjugation scales entry (i,j) by
 * v^(alpha_i - alpha_j) = v^(-beta_ij), so beta_ij = alpha_j - alpha_i.
 * T collects the positions with beta_ij > 0; these carry the divisibility
 * conditions v^(r beta_ij) | gamma_ij for eta^r gamma eta^(-r) to be
 * integral. Index pairs are 1-based throughout this module.
 */
struct AdmissibleElement {
    GroupType type;
    int n;
    long v;
    std::pair<int, int> kk;            // the entry the recipe moves
    std::vector<mpq_class> alpha;      // size n
    std::vector<std::vector<long>> beta;  // n x n, beta[i][j] 0-based storage
    long beta_eta;                     // lcm of the positive beta values
    std::vector<std::pair<int, int>> T;  // 1-based, ascending

    long beta_at(int i1, int j1) const { return beta[i1 - 1][j1 - 1]; }
    nlohmann::ordered_json to_json() const;
};

struct RecipeOptions {
    std::optional<int> p;  // signature, for types 2A / B-1D / C
    std::optional<int> q;
};

/*
 * Builds the per-type admissible element moving entry (k,k'); every recipe
 * is normalized so that entry (k,k') is multiplied by a positive power of v
 * (beta_{kk'} < 0) and the divisibility constraints sit at the transposed
 * positions. Throws when the recipe's index constraints are violated.
 */
AdmissibleElement build_admissible(GroupType type, int n, long v, std::pair<int, int> kk,
                                   const RecipeOptions& opts = {});

/*
 * Checks the two admissibility conditions on a rational beta matrix: all
 * entries integral, and beta constant on root subgroups. For split SL_n
 * every off-diagonal cell is its own root position, so the second condition
 * is vacuous; for the form types it is checked structurally as symmetry
 * under the form pairing (which needs the signature). Also requires a
 * consistent difference structure and T nonempty.
 */
bool is_admissible(const std::vector<std::vector<mpq_class>>& beta, GroupType type,
                   const RecipeOptions& opts = {});

// Entrywise v^(-r beta_ij) * a_ij as exact rationals.
struct ScaledMatrix {
    int n;
    std::vector<mpq_class> entries;

    mpq_class& at(int i, int j) { return entries[static_cast<size_t>(i) * n + j]; }
    const mpq_class& at(int i, int j) const { return entries[static_cast<size_t>(i) * n + j]; }
    bool integral() const;
    mpq_class det() const;
    IntMatrix to_int_matrix() const;  // throws if not integral
};

ScaledMatrix conjugate_scaled(const AdmissibleElement& eta, long r, const IntMatrix& a);

}  // namespace apgeo
