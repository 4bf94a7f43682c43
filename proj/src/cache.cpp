#include "apgeo/cache.hpp"

#include <fstream>
#include <iostream>

#include "apgeo/number_theory.hpp"
#include "json.hpp"

namespace apgeo {

NTableCache::NTableCache(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;  // absent file: cold cache
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            auto j = nlohmann::json::parse(line);
            std::string hash = j.at("gamma_hash").get<std::string>();
            long v = j.at("v").get<long>();
            long r = j.at("r").get<long>();
            mpz_class n;
            if (mpz_set_str(n.get_mpz_t(), j.at("n_value").get<std::string>().c_str(), 10) != 0)
                throw std::invalid_argument("bad n_value");
            table_[{hash, v, r}] = n;
        } catch (const std::exception& e) {
            ++skipped_;
            std::cerr << "warning: skipping corrupt cache line " << lineno << " in "
                      << path_.string() << ": " << e.what() << "\n";
        }
    }
}

std::optional<mpz_class> NTableCache::lookup(const std::string& gamma_hash, long v, long r) const {
    auto it = table_.find({gamma_hash, v, r});
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

void NTableCache::store(const std::string& gamma_hash, long v, long r, const mpz_class& n_value) {
    auto key = std::make_tuple(gamma_hash, v, r);
    if (table_.count(key)) return;
    table_[key] = n_value;
    std::ofstream out(path_, std::ios::app);
    nlohmann::ordered_json j;
    j["gamma_hash"] = gamma_hash;
    j["v"] = v;
    j["r"] = r;
    j["n_value"] = n_value.get_str();
    out << j.dump() << "\n";
}

std::string NTableCache::hash_matrix(const IntMatrix& m) {
    std::string canonical = std::to_string(m.dim()) + ":" + m.to_string();
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical)));
    return buf;
}

int NTableCache::entries() const { return static_cast<int>(table_.size()); }

}  // namespace apgeo
