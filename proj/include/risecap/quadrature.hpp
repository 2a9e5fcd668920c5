#pragma once

#include "risecap/cascade.hpp"
#include "risecap/mg_model.hpp"

namespace risecap {

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;
};

// Generalized-K envelope density f_A(x) = 4 Xi^(k+m)/(Gamma(k)Gamma(m))
//   * x^(k+m-1) K_{k-m}(2 Xi x).  Evaluated in log space internally.
double kg_pdf(const KGParams& kg, double x);

// E[log2(1 + gain * A^2)] under the KG density, by adaptive quadrature on the
// power variable y = x^2 (log-singularity tamed, exponential tail truncated).
double legit_capacity_quad(const KGParams& kg, double gain,
                           const QuadratureConfig& cfg = {});

// E[log2(1 + gain * X^2)] under an MG envelope, same scheme.
double eav_capacity_quad(const MixtureGamma& eav, double gain,
                         const QuadratureConfig& cfg = {});

} // namespace risecap
