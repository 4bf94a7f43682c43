#include "apgeo/matrix.hpp"

#include <sstream>
#include <stdexcept>

#include "apgeo/number_theory.hpp"

namespace apgeo {

namespace {

void check_dim(int n) {
    if (n < 2 || n > 8)
        throw std::invalid_argument("matrix dimension must be in [2,8], got " + std::to_string(n));
}

}  // namespace

IntMatrix::IntMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n) { check_dim(n); }

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(std::vector<std::vector<long>> rows) {
    int n = static_cast<int>(rows.size());
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("from_rows: ragged row");
        for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::parse(const std::string& text) {
    std::vector<std::vector<mpz_class>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<mpz_class> entries;
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) {
            // trim spaces
            size_t b = cell.find_first_not_of(" \t");
            size_t e = cell.find_last_not_of(" \t");
            if (b == std::string::npos)
                throw std::invalid_argument("matrix parse: empty entry in \"" + text + "\"");
            mpz_class v;
            if (mpz_set_str(v.get_mpz_t(), cell.substr(b, e - b + 1).c_str(), 10) != 0)
                throw std::invalid_argument("matrix parse: bad integer \"" + cell + "\"");
            entries.push_back(v);
        }
        rows.push_back(std::move(entries));
    }
    int n = static_cast<int>(rows.size());
    check_dim(n);
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("matrix parse: not square: \"" + text + "\"");
        for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

std::string IntMatrix::to_string() const {
    std::string out;
    for (int i = 0; i < n_; ++i) {
        if (i) out += ';';
        for (int j = 0; j < n_; ++j) {
            if (j) out += ',';
            out += at(i, j).get_str();
        }
    }
    return out;
}

nlohmann::ordered_json IntMatrix::to_json() const {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < n_; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < n_; ++j) row.push_back(at(i, j).get_str());
        rows.push_back(row);
    }
    return rows;
}

IntMatrix IntMatrix::from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("matrix json: expected array of rows");
    int n = static_cast<int>(j.size());
    check_dim(n);
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != n)
            throw std::invalid_argument("matrix json: not square");
        for (int k = 0; k < n; ++k) {
            const auto& cell = j[i][k];
            mpz_class v;
            if (cell.is_string()) {
                if (mpz_set_str(v.get_mpz_t(), cell.get<std::string>().c_str(), 10) != 0)
                    throw std::invalid_argument("matrix json: bad integer string");
            } else if (cell.is_number_integer()) {
                v = mpz_class(cell.get<long>());
            } else {
                throw std::invalid_argument("matrix json: entry must be string or integer");
            }
            m.at(i, k) = v;
        }
    }
    return m;
}

mpz_class IntMatrix::trace() const {
    mpz_class t = 0;
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

mpz_class IntMatrix::det() const {
    // Bareiss fraction-free elimination; all divisions are exact.
    int n = n_;
    std::vector<mpz_class> a = e_;
    auto idx = [n](int i, int j) { return static_cast<size_t>(i) * n + j; };
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[idx(k, k)] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[idx(i, k)] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a[idx(k, j)], a[idx(piv, j)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class num = a[idx(i, j)] * a[idx(k, k)] - a[idx(i, k)] * a[idx(k, j)];
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                a[idx(i, j)] = q;
            }
            a[idx(i, k)] = 0;
        }
        prev = a[idx(k, k)];
    }
    return sign * a[idx(n - 1, n - 1)];
}

bool IntMatrix::is_identity() const { return *this == identity(n_); }

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("mat_mul: dimension mismatch " + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()));
    int n = a.dim();
    IntMatrix c(n);
    mpz_class acc, t;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            acc = 0;
            for (int k = 0; k < n; ++k) {
                t = a.at(i, k) * b.at(k, j);
                acc += t;
            }
            c.at(i, j) = acc;
        }
    return c;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return mat_mul(a, b); }

IntMatrix mat_pow(const IntMatrix& a, const mpz_class& e) {
    if (e < 0) throw std::invalid_argument("mat_pow: exponent must be >= 0");
    IntMatrix result = IntMatrix::identity(a.dim());
    IntMatrix sq = a;
    mp_bitcnt_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return result;
    for (mp_bitcnt_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mat_mul(result, sq);
        if (i + 1 < bits) sq = mat_mul(sq, sq);
    }
    return result;
}

ResidueMatrix::ResidueMatrix(int n, const mpz_class& modulus)
    : n_(n), m_(modulus), e_(static_cast<size_t>(n) * n) {
    check_dim(n);
    auto [p, r] = prime_power_split(modulus);
    p_ = p;
    r_ = r;
}

ResidueMatrix ResidueMatrix::identity(int n, const mpz_class& modulus) {
    ResidueMatrix m(n, modulus);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1 % modulus;
    return m;
}

ResidueMatrix ResidueMatrix::reduce(const IntMatrix& a, const mpz_class& modulus) {
    ResidueMatrix m(a.dim(), modulus);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            mpz_class v = a.at(i, j) % modulus;
            if (v < 0) v += modulus;
            m.at(i, j) = v;
        }
    return m;
}

bool ResidueMatrix::is_identity() const { return *this == identity(n_, m_); }

mpz_class ResidueMatrix::det() const {
    IntMatrix lift(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) lift.at(i, j) = at(i, j);
    mpz_class d = lift.det() % m_;
    if (d < 0) d += m_;
    return d;
}

std::string ResidueMatrix::to_string() const {
    std::string out;
    for (int i = 0; i < n_; ++i) {
        if (i) out += ';';
        for (int j = 0; j < n_; ++j) {
            if (j) out += ',';
            out += at(i, j).get_str();
        }
    }
    out += " mod " + m_.get_str();
    return out;
}

ResidueMatrix mat_mul(const ResidueMatrix& a, const ResidueMatrix& b) {
    if (a.dim() != b.dim() || a.modulus() != b.modulus())
        throw std::invalid_argument("residue mat_mul: dimension or modulus mismatch");
    int n = a.dim();
    ResidueMatrix c(n, a.modulus());
    mpz_class acc;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            acc = 0;
            for (int k = 0; k < n; ++k) acc += a.at(i, k) * b.at(k, j);
            c.at(i, j) = acc % a.modulus();
        }
    return c;
}

ResidueMatrix mat_pow_mod(const ResidueMatrix& a, const mpz_class& e) {
    if (e < 0) throw std::invalid_argument("mat_pow_mod: exponent must be >= 0");
    ResidueMatrix result = ResidueMatrix::identity(a.dim(), a.modulus());
    if (e == 0) return result;
    ResidueMatrix sq = a;
    mp_bitcnt_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (mp_bitcnt_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mat_mul(result, sq);
        if (i + 1 < bits) sq = mat_mul(sq, sq);
    }
    return result;
}

ResidueMatrix mat_pow_mod(const IntMatrix& a, const mpz_class& e, const mpz_class& m) {
    return mat_pow_mod(ResidueMatrix::reduce(a, m), e);
}

}  // namespace apgeo
