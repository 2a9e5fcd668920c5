#pragma once

#include <optional>

#include "risecap/cascade.hpp"
#include "risecap/mg_model.hpp"
#include "risecap/quadrature.hpp"

namespace risecap {

// Full link description. Envelope distributions are unit-mean-power fits; the
// large-scale link budget rides in the beta^2 geometric gains.
struct Scenario {
    int n_elements = 1;   // N reflecting elements
    MixtureGamma hop_a;   // TX -> element hop (i.i.d. across elements)
    MixtureGamma hop_r;   // element -> RX hop
    MixtureGamma eav;     // direct TX -> eavesdropper channel
    double beta_b_sq = 1; // legitimate-link geometric gain, linear
    double beta_e_sq = 1; // eavesdropper geometric gain, linear
    double snr_tx = 1;    // P_s / N_o, linear
};

void validate(const Scenario& scn);

enum class Method { closed_form, quadrature, monte_carlo };

struct EscResult {
    double cb; // legitimate ergodic capacity, bits/s/Hz
    double ce; // eavesdropper ergodic capacity, bits/s/Hz
    double cs; // cb - ce (signed, not clamped)
    Method method = Method::closed_form;
    std::optional<double> ci_halfwidth; // Monte Carlo only
};

// Closed-form E[log2(1 + gain A^2)] for a KG-distributed cascade A:
//   (1/ln2) gain^-h Xi^2h / (Gamma(k)Gamma(m))
//     * G^{4,1}_{2,4}(Xi^2/gain | -h, 1-h ; d, -d, -h, -h)
// with h = (k+m)/2, d = (k-m)/2. Assembled in log space.
double legit_capacity_cf(const KGParams& kg, double gain);

// Closed-form E[log2(1 + gain X^2)] for an MG envelope X:
//   sum_l a_l c^-b_l / ln2 * G^{1,3}_{3,2}(gain/c | 1, 1, 1-b_l ; 1, 0)
double eav_capacity_cf(const MixtureGamma& eav, double gain);

// Moment-match the N-element cascade of a scenario to KG shapes.
KGParams cascade_kg(const Scenario& scn);

// product moments -> sum moments -> KG fit -> closed forms; cs = cb - ce.
EscResult ergodic_secrecy_capacity(const Scenario& scn);

// Same pipeline with both capacities evaluated by the quadrature oracle.
EscResult ergodic_secrecy_capacity_quad(const Scenario& scn,
                                        const QuadratureConfig& cfg = {});

} // namespace risecap
