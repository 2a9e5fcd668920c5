#include "risecap/cascade.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "risecap/errors.hpp"

namespace risecap {

void validate(const CascadeMoments& mom) {
    if (!(mom.mu2 > 0.0) || !(mom.mu4 > 0.0) || !(mom.mu6 > 0.0))
        throw std::invalid_argument("CascadeMoments: moments must be positive");
    if (!(mom.mu4 > mom.mu2 * mom.mu2 * (1.0 - 1e-12)))
        throw std::invalid_argument(
            "CascadeMoments: mu4 <= mu2^2 violates Jensen");
    if (mom.mu4 * mom.mu4 > mom.mu2 * mom.mu6 * (1.0 + 1e-12))
        throw std::invalid_argument(
            "CascadeMoments: mu4^2 > mu2*mu6 violates Lyapunov");
}

double product_pair_moment(const MixtureGamma& d1, const MixtureGamma& d2,
                           int n) {
    return mg_envelope_moment(d1, n) * mg_envelope_moment(d2, n);
}

CascadeMoments sum_moments(const std::function<double(int)>& mu_chi, int N) {
    if (N < 1)
        throw std::invalid_argument("sum_moments: requires N >= 1");
    constexpr int kMaxOrder = 6;
    // C(l, t) for l, t <= 6
    std::array<std::array<double, kMaxOrder + 1>, kMaxOrder + 1> binom{};
    for (int l = 0; l <= kMaxOrder; ++l) {
        binom[l][0] = 1.0;
        for (int t = 1; t <= l; ++t)
            binom[l][t] = binom[l - 1][t - 1] + (t <= l - 1 ? binom[l - 1][t] : 0.0);
    }
    std::array<double, kMaxOrder + 1> chi{};
    for (int t = 0; t <= kMaxOrder; ++t) chi[t] = mu_chi(t);
    std::array<double, kMaxOrder + 1> cur = chi; // moments of S_1
    for (int j = 2; j <= N; ++j) {
        std::array<double, kMaxOrder + 1> next{};
        for (int l = 0; l <= kMaxOrder; ++l) {
            double acc = 0.0;
            for (int t = 0; t <= l; ++t)
                acc += binom[l][t] * cur[l - t] * chi[t];
            next[l] = acc;
        }
        cur = next;
    }
    return {cur[2], cur[4], cur[6]};
}

KGParams kg_fit(const CascadeMoments& mom) {
    validate(mom);
    const double mu2 = mom.mu2, mu4 = mom.mu4, mu6 = mom.mu6;
    const double aA = mu6 * mu2 + mu2 * mu2 * mu4 - 2.0 * mu4 * mu4;
    const double bA = mu6 * mu2 - 4.0 * mu4 * mu4 + 3.0 * mu2 * mu2 * mu4;
    const double cA = 2.0 * mu2 * mu2 * mu4;
    const double scale = std::fabs(mu6 * mu2) + mu4 * mu4 + mu2 * mu2 * mu4;
    if (std::fabs(aA) <= 1e-12 * scale)
        throw ModelFitError(
            "kg_fit: shape quadratic degenerates (aA = " + std::to_string(aA) +
            "); the moment set is not generalized-K representable");
    double disc = bA * bA - 4.0 * aA * cA;
    if (disc < 0.0) {
        if (disc > -1e-12 * bA * bA)
            disc = 0.0; // double root within rounding: k = m is legitimate
        else
            throw ModelFitError("kg_fit: negative discriminant " +
                                std::to_string(disc) +
                                "; the moment set is not generalized-K "
                                "representable");
    }
    // numerically stable quadratic roots
    const double sq = std::sqrt(disc);
    const double qq = -0.5 * (bA + (bA >= 0.0 ? sq : -sq));
    double r1 = qq / aA;
    double r2 = (qq != 0.0) ? cA / qq : r1;
    if (r1 < r2) std::swap(r1, r2);
    if (!(r2 > 0.0) || !std::isfinite(r1))
        throw ModelFitError("kg_fit: nonpositive shape root (k = " +
                            std::to_string(r1) + ", m = " + std::to_string(r2) +
                            ")");
    return {r1, r2, std::sqrt(r1 * r2 / mom.mu2), mom.mu2};
}

} // namespace risecap
