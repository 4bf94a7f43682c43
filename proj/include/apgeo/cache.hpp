#pragma once

#include <gmpxx.h>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>

#include "apgeo/matrix.hpp"

namespace apgeo {

/*
 * Append-only JSON-lines cache of n-table values, keyed by a stable hash of
 * the matrix plus (v, r). A hit is an optimization only and must equal
 * recomputation; corrupt lines are skipped with a warning on stderr.
 * Single-writer: concurrent processes must use distinct cache files.
 */
class NTableCache {
public:
    explicit NTableCache(std::filesystem::path path);

    std::optional<mpz_class> lookup(const std::string& gamma_hash, long v, long r) const;
    void store(const std::string& gamma_hash, long v, long r, const mpz_class& n_value);

    static std::string hash_matrix(const IntMatrix& m);

    const std::filesystem::path& path() const { return path_; }
    int skipped_lines() const { return skipped_; }
    int entries() const;

private:
    std::filesystem::path path_;
    int skipped_ = 0;
    std::map<std::tuple<std::string, long, long>, mpz_class> table_;
};

}  // namespace apgeo
