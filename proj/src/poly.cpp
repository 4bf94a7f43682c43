#include "apgeo/poly.hpp"

namespace apgeo {

std::string MonicPoly::to_string() const {
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const mpz_class& c = coeff[k];
        if (c == 0 && k != degree()) continue;
        if (out.empty()) {
            out += (c < 0 ? "-" : "");
        } else {
            out += (c < 0 ? " - " : " + ");
        }
        mpz_class a = abs(c);
        bool show_coeff = (a != 1) || (k == 0);
        if (show_coeff) out += a.get_str();
        if (k >= 1) out += "z";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

MonicPoly char_poly(const IntMatrix& a) {
    const int n = a.dim();
    MonicPoly p;
    p.coeff.assign(static_cast<size_t>(n) + 1, 0);
    p.coeff[n] = 1;
    IntMatrix m = IntMatrix::identity(n);  // M_0 = I for the first step A*M_0
    mpz_class c = 1;                       // c_n
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            // M_k = A*M_{k-1} + c_{n-k+1} I
            for (int i = 0; i < n; ++i) m.at(i, i) += c;
        }
        m = mat_mul(a, m);
        mpz_class t = m.trace();
        mpz_class ck;
        mpz_divexact_ui(ck.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k));
        c = -ck;
        p.coeff[n - k] = c;
    }
    return p;
}

}  // namespace apgeo
