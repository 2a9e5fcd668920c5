#pragma once

#include <vector>

namespace risecap {

struct MgTerm {
    double a; // weight coefficient
    double b; // Gamma shape
};

// Mixture-Gamma envelope distribution:
//   f_X(x) = sum_i 2 a_i x^(2 b_i - 1) exp(-c x^2),  x >= 0
// with one exponential rate c shared by all terms. A valid instance satisfies
// sum_i a_i Gamma(b_i) c^(-b_i) = 1 (the PDF integrates to one).
struct MixtureGamma {
    std::vector<MgTerm> terms;
    double c = 1.0;
};

// Throws std::invalid_argument on nonpositive parameters or a term set whose
// normalization sum deviates from 1 by more than 1e-9.
void validate(const MixtureGamma& dist);

// Envelope PDF at x >= 0.
double mg_pdf(const MixtureGamma& dist, double x);

// E[X^n] = sum_i a_i Gamma(b_i + n/2) c^-(b_i + n/2); n = 0 gives 1.
double mg_envelope_moment(const MixtureGamma& dist, int n);

// P(X <= x); the power X^2 is a Gamma mixture, so this is a weighted sum of
// regularized lower incomplete gammas. Used by samplers and KS-style tests.
double mg_envelope_cdf(const MixtureGamma& dist, double x);

// Rice envelope fit with `terms` mixture components: b_n = n, c = 1 + K_r,
// weights from delta(K_r, n) = K_r^(n-1) (1+K_r)^n / (exp(K_r) ((n-1)!)^2),
// normalized so the PDF integrates to one. K_r is linear scale (not dB).
// Zero-weight tail terms (e.g. the whole tail at K_r = 0) are dropped.
MixtureGamma fit_rice(double k_factor, int terms);

// Single-term Nakagami-m (unit mean power): a = m^m/Gamma(m), b = c = m.
MixtureGamma fit_nakagami(double m);

// Single-term Rayleigh with mean power omega: a = c = 1/omega, b = 1.
MixtureGamma fit_rayleigh(double mean_power);

} // namespace risecap
