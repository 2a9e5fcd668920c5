#include "risecap/capacity.hpp"

#include <cmath>
#include <stdexcept>

#include "risecap/errors.hpp"
#include "risecap/quadrature.hpp"
#include "risecap/specfun.hpp"

namespace risecap {

namespace {
constexpr double kLn2 = 0.6931471805599453094;
}

void validate(const Scenario& scn) {
    if (scn.n_elements < 1)
        throw std::invalid_argument("Scenario: n_elements must be >= 1");
    if (!(scn.beta_b_sq > 0.0) || !(scn.beta_e_sq > 0.0))
        throw std::invalid_argument("Scenario: path gains must be positive");
    if (!(scn.snr_tx > 0.0))
        throw std::invalid_argument("Scenario: snr_tx must be positive");
    validate(scn.hop_a);
    validate(scn.hop_r);
    validate(scn.eav);
}

double legit_capacity_cf(const KGParams& kg, double gain) {
    if (!(gain > 0.0))
        throw std::invalid_argument("legit_capacity_cf: requires gain > 0");
    const double h = 0.5 * (kg.k + kg.m);
    const double d = 0.5 * (kg.k - kg.m);
    MeijerGSpec spec;
    spec.m = 4;
    spec.n = 1;
    spec.p = 2;
    spec.q = 4;
    spec.a = {-h, 1.0 - h};
    spec.b = {d, -d, -h, -h};
    const double z = kg.xi * kg.xi / gain;
    const SignedLog g = meijer_g_log(spec, z);
    const double log_pref = -h * std::log(gain) + 2.0 * h * std::log(kg.xi) -
                            std::lgamma(kg.k) - std::lgamma(kg.m) -
                            std::log(kLn2);
    return g.sign * std::exp(log_pref + g.log_abs);
}

double eav_capacity_cf(const MixtureGamma& eav, double gain) {
    if (!(gain > 0.0))
        throw std::invalid_argument("eav_capacity_cf: requires gain > 0");
    validate(eav);
    double total = 0.0;
    for (const MgTerm& t : eav.terms) {
        MeijerGSpec spec;
        spec.m = 1;
        spec.n = 3;
        spec.p = 3;
        spec.q = 2;
        spec.a = {1.0, 1.0, 1.0 - t.b};
        spec.b = {1.0, 0.0};
        const SignedLog g = meijer_g_log(spec, gain / eav.c);
        const double lt = std::log(t.a) - t.b * std::log(eav.c) -
                          std::log(kLn2) + g.log_abs;
        total += g.sign * std::exp(lt);
    }
    return total;
}

KGParams cascade_kg(const Scenario& scn) {
    validate(scn);
    double mom[7];
    for (int n = 0; n <= 6; ++n)
        mom[n] = product_pair_moment(scn.hop_a, scn.hop_r, n);
    const CascadeMoments cm = sum_moments(
        [&](int n) { return mom[n]; }, scn.n_elements);
    return kg_fit(cm);
}

EscResult ergodic_secrecy_capacity(const Scenario& scn) {
    const KGParams kg = cascade_kg(scn);
    EscResult r;
    r.cb = legit_capacity_cf(kg, scn.beta_b_sq * scn.snr_tx);
    r.ce = eav_capacity_cf(scn.eav, scn.beta_e_sq * scn.snr_tx);
    r.cs = r.cb - r.ce;
    r.method = Method::closed_form;
    return r;
}

EscResult ergodic_secrecy_capacity_quad(const Scenario& scn,
                                        const QuadratureConfig& cfg) {
    const KGParams kg = cascade_kg(scn);
    EscResult r;
    r.cb = legit_capacity_quad(kg, scn.beta_b_sq * scn.snr_tx, cfg);
    r.ce = eav_capacity_quad(scn.eav, scn.beta_e_sq * scn.snr_tx, cfg);
    r.cs = r.cb - r.ce;
    r.method = Method::quadrature;
    return r;
}

} // namespace risecap
