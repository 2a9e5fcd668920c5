#pragma once

#include <functional>

#include "risecap/mg_model.hpp"

namespace risecap {

// Even moments mu_A(2), mu_A(4), mu_A(6) of the cascade A = sum_i |h_A,i||h_R,i|.
struct CascadeMoments {
    double mu2, mu4, mu6;
};

// Moment-matched generalized-K parameters of the cascade.
struct KGParams {
    double k;     // larger shape
    double m;     // smaller shape
    double xi;    // scale, xi = sqrt(k*m/omega)
    double omega; // mean power = mu2
};

// Throws std::invalid_argument when the moment sequence is impossible
// (Jensen: mu4 > mu2^2; Lyapunov: mu4^2 <= mu2*mu6).
void validate(const CascadeMoments& mom);

// mu_chi(n) = E[(X1 X2)^n] for independent MG envelopes.
double product_pair_moment(const MixtureGamma& d1, const MixtureGamma& d2, int n);

// Moments of the sum of N i.i.d. copies of chi, where mu_chi(t) supplies
// E[chi^t] for t = 0..6. Binomial recurrence over partial sums:
//   mu_{S_j}(l) = sum_t C(l,t) mu_{S_{j-1}}(l-t) mu_chi(t)
// which equals the full multinomial expansion at O(N l^2) cost.
CascadeMoments sum_moments(const std::function<double(int)>& mu_chi, int N);

// Match (mu2, mu4, mu6) to KG shapes via the quadratic whose roots are k, m:
//   aA x^2 + bA x + cA = 0
//   aA = mu6 mu2 + mu2^2 mu4 - 2 mu4^2
//   bA = mu6 mu2 - 4 mu4^2 + 3 mu2^2 mu4
//   cA = 2 mu2^2 mu4
// Returns roots ordered k >= m, omega = mu2, xi = sqrt(k m / omega).
// Throws ModelFitError when the quadratic degenerates, the discriminant is
// negative, or a root is not positive.
KGParams kg_fit(const CascadeMoments& mom);

} // namespace risecap
