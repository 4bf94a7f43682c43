#include "apgeo/geodesics.hpp"

#include <mpfr.h>

#include <stdexcept>

#include "apgeo/number_theory.hpp"

namespace apgeo {

namespace {

// Split t^2 - 4 = f^2 * d0 with d0 the fundamental discriminant.
std::pair<mpz_class, mpz_class> discriminant_split(const mpz_class& disc) {
    mpz_class square_part = 1, d = 1;
    for (const auto& [p, e] : factor(disc)) {
        for (int i = 0; i + 1 < e; i += 2) square_part *= p;
        if (e % 2 == 1) d *= p;
    }
    mpz_class d0, f;
    if (d % 4 == 1) {
        d0 = d;
        f = square_part;
    } else {
        d0 = 4 * d;
        if (square_part % 2 != 0)
            throw std::logic_error("discriminant_split: odd square part with even discriminant");
        f = square_part / 2;
    }
    return {d0, f};
}

HyperbolicElement make_hyperbolic(const IntMatrix& a, const mpz_class& t, const mpz_class& d0,
                                  const mpz_class& f) {
    mpz_class abs_t = abs(t);
    QuadUnit lambda(d0, abs_t, f);  // norm (t^2 - (t^2-4))/4 = +1
    return HyperbolicElement{a, t, sgn(t) > 0 ? 1 : -1, d0, f, lambda};
}

}  // namespace

Classification classify(const IntMatrix& a) {
    if (a.dim() != 2) throw std::invalid_argument("classify: expected a 2x2 matrix");
    mpz_class d = a.det();
    if (d != 1)
        throw std::invalid_argument("classify: determinant is " + d.get_str() + ", not 1");
    mpz_class t = a.trace();
    mpz_class abs_t = abs(t);
    if (abs_t < 2) return {ElementClass::Elliptic, std::nullopt};
    if (abs_t == 2) return {ElementClass::Parabolic, std::nullopt};
    auto [d0, f] = discriminant_split(t * t - 4);
    return {ElementClass::Hyperbolic, make_hyperbolic(a, t, d0, f)};
}

HyperbolicElement hyperbolic_from(const IntMatrix& a) {
    Classification c = classify(a);
    if (c.cls != ElementClass::Hyperbolic)
        throw std::invalid_argument("matrix " + a.to_string() + " is not hyperbolic");
    return *c.hyperbolic;
}

HyperbolicElement hyperbolic_with_field(const IntMatrix& a, const mpz_class& d0) {
    if (a.dim() != 2) throw std::invalid_argument("expected a 2x2 matrix");
    if (a.det() != 1) throw std::invalid_argument("determinant is not 1");
    mpz_class t = a.trace();
    if (abs(t) <= 2) throw std::invalid_argument("matrix is not hyperbolic");
    mpz_class disc = t * t - 4;
    mpz_class q = disc / d0;
    mpz_class f;
    if (disc % d0 != 0 || !is_square(q, &f))
        throw std::invalid_argument("trace^2 - 4 is not f^2 * " + d0.get_str());
    return make_hyperbolic(a, t, d0, f);
}

double LengthClass::approx() const {
    QuadUnit u = norm_one_generator(d0);
    mpfr_t v;
    mpfr_init2(v, 128);
    mpfr_set_z(v, u.d0().get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(v, v, MPFR_RNDN);
    mpfr_mul_z(v, v, u.b().get_mpz_t(), MPFR_RNDN);
    mpfr_add_z(v, v, u.a().get_mpz_t(), MPFR_RNDN);
    mpfr_div_ui(v, v, 2, MPFR_RNDN);
    mpfr_log(v, v, MPFR_RNDN);
    mpfr_mul_ui(v, v, 2, MPFR_RNDN);
    mpfr_mul_z(v, v, multiplier.get_mpz_t(), MPFR_RNDN);
    double out = mpfr_get_d(v, MPFR_RNDN);
    mpfr_clear(v);
    return out;
}

std::string LengthClass::numeric(int digits) const {
    QuadUnit u = norm_one_generator(d0);
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 4 + 64);
    mpfr_t v;
    mpfr_init2(v, prec);
    mpfr_set_z(v, u.d0().get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(v, v, MPFR_RNDN);
    mpfr_mul_z(v, v, u.b().get_mpz_t(), MPFR_RNDN);
    mpfr_add_z(v, v, u.a().get_mpz_t(), MPFR_RNDN);
    mpfr_div_ui(v, v, 2, MPFR_RNDN);
    mpfr_log(v, v, MPFR_RNDN);
    mpfr_mul_ui(v, v, 2, MPFR_RNDN);
    mpfr_mul_z(v, v, multiplier.get_mpz_t(), MPFR_RNDN);
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v);
    std::string out(s);
    mpfr_free_str(s);
    mpfr_clear(v);
    return out;
}

nlohmann::ordered_json LengthClass::to_json() const {
    nlohmann::ordered_json j;
    j["d0"] = d0.fits_slong_p() ? nlohmann::ordered_json(d0.get_si())
                                : nlohmann::ordered_json(d0.get_str());
    j["base_trace"] = base_trace.fits_slong_p() ? nlohmann::ordered_json(base_trace.get_si())
                                                : nlohmann::ordered_json(base_trace.get_str());
    j["multiplier"] = multiplier.get_str();
    return j;
}

LengthClass LengthClass::from_json(const nlohmann::json& j) {
    auto read = [](const nlohmann::json& v) {
        mpz_class out;
        if (v.is_string()) {
            if (mpz_set_str(out.get_mpz_t(), v.get<std::string>().c_str(), 10) != 0)
                throw std::invalid_argument("LengthClass json: bad integer");
        } else {
            out = mpz_class(v.get<long>());
        }
        return out;
    };
    return LengthClass{read(j.at("d0")), read(j.at("base_trace")), read(j.at("multiplier"))};
}

LengthClass length_class(const HyperbolicElement& g) {
    QuadUnit u = norm_one_generator(g.d0);
    return LengthClass{g.d0, u.trace(), unit_exponent(g.lambda)};
}

std::optional<std::pair<IntMatrix, mpz_class>> proper_root(const HyperbolicElement& g) {
    mpz_class e = unit_exponent(g.lambda);
    if (e == 1) return std::nullopt;
    QuadUnit u = norm_one_generator(g.d0);
    QuadUnit se = g.signed_lambda();
    for (const mpz_class& m : divisors_sorted(e)) {
        if (m < 2) continue;
        QuadUnit w = u.pow(e / m);
        for (int s : {1, -1}) {
            QuadUnit nu = s > 0 ? w : -w;
            // candidate root x*I + y*gamma with x + y*se = nu in the field
            mpq_class y(nu.b(), se.b());
            y.canonicalize();
            mpq_class x = (mpq_class(nu.a()) - y * mpq_class(se.a())) / 2;
            x.canonicalize();
            IntMatrix mu(2);
            bool integral = true;
            for (int i = 0; i < 2 && integral; ++i)
                for (int j = 0; j < 2 && integral; ++j) {
                    mpq_class v = y * mpq_class(g.matrix.at(i, j));
                    if (i == j) v += x;
                    v.canonicalize();
                    if (v.get_den() != 1) {
                        integral = false;
                        break;
                    }
                    mu.at(i, j) = v.get_num();
                }
            if (integral && mat_pow(mu, m) == g.matrix) return std::make_pair(mu, m);
        }
    }
    return std::nullopt;
}

bool is_primitive(const HyperbolicElement& g) { return !proper_root(g).has_value(); }

bool is_absolutely_primitive(const HyperbolicElement& g) {
    return unit_exponent(g.lambda) == 1;
}

bool poly_in_P(const mpz_class& t) { return abs(t) > 2; }

IntMatrix companion_of_trace(const mpz_class& t) {
    IntMatrix m(2);
    m.at(0, 0) = t;
    m.at(0, 1) = -1;
    m.at(1, 0) = 1;
    m.at(1, 1) = 0;
    return m;
}

std::pair<HyperbolicElement, mpz_class> abs_prim_root(const HyperbolicElement& g) {
    mpz_class e = unit_exponent(g.lambda);
    QuadUnit u = norm_one_generator(g.d0);
    IntMatrix mu = companion_of_trace(u.trace());
    return {hyperbolic_with_field(mu, g.d0), e};
}

}  // namespace apgeo
