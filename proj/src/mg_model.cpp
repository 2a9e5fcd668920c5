#include "risecap/mg_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "risecap/specfun.hpp"

namespace risecap {

namespace {

// log of the normalization weight a_i Gamma(b_i) c^-b_i from its log parts
double log_weight(double log_a, double b, double log_c) {
    return log_a + std::lgamma(b) - b * log_c;
}

} // namespace

void validate(const MixtureGamma& dist) {
    if (dist.terms.empty())
        throw std::invalid_argument("MixtureGamma: no terms");
    if (!(dist.c > 0.0))
        throw std::invalid_argument("MixtureGamma: rate c must be positive");
    double norm = 0.0;
    for (const MgTerm& t : dist.terms) {
        if (!(t.a > 0.0) || !(t.b > 0.0))
            throw std::invalid_argument(
                "MixtureGamma: term coefficients must be positive");
        norm += std::exp(log_weight(std::log(t.a), t.b, std::log(dist.c)));
    }
    if (std::fabs(norm - 1.0) > 1e-9)
        throw std::invalid_argument(
            "MixtureGamma: PDF does not integrate to 1 (sum a Gamma(b) c^-b = " +
            std::to_string(norm) + ")");
}

double mg_pdf(const MixtureGamma& dist, double x) {
    if (x < 0.0)
        throw std::domain_error("mg_pdf: requires x >= 0");
    if (x == 0.0) {
        // only a b = 1/2 term would make the density finite-positive here
        double v = 0.0;
        for (const MgTerm& t : dist.terms)
            if (t.b == 0.5) v += 2.0 * t.a;
        return v;
    }
    const double lx = std::log(x);
    const double x2 = x * x;
    double sum = 0.0;
    for (const MgTerm& t : dist.terms)
        sum += std::exp(std::log(2.0 * t.a) + (2.0 * t.b - 1.0) * lx -
                        dist.c * x2);
    return sum;
}

double mg_envelope_moment(const MixtureGamma& dist, int n) {
    if (n < 0)
        throw std::domain_error("mg_envelope_moment: requires n >= 0");
    const double log_c = std::log(dist.c);
    double sum = 0.0;
    for (const MgTerm& t : dist.terms) {
        const double s = t.b + 0.5 * n;
        sum += std::exp(std::log(t.a) + std::lgamma(s) - s * log_c);
    }
    return sum;
}

double mg_envelope_cdf(const MixtureGamma& dist, double x) {
    if (x < 0.0)
        throw std::domain_error("mg_envelope_cdf: requires x >= 0");
    if (x == 0.0) return 0.0;
    const double y = dist.c * x * x;
    const double log_c = std::log(dist.c);
    double sum = 0.0;
    for (const MgTerm& t : dist.terms) {
        const double w = std::exp(log_weight(std::log(t.a), t.b, log_c));
        sum += w * reg_lower_gamma(t.b, y);
    }
    return std::min(sum, 1.0);
}

MixtureGamma fit_rice(double k_factor, int terms) {
    if (!(k_factor >= 0.0))
        throw std::invalid_argument("fit_rice: requires K_r >= 0");
    if (terms < 1)
        throw std::invalid_argument("fit_rice: requires at least one term");
    const double c = 1.0 + k_factor;
    const double log_c = std::log(c);
    const double log_k = k_factor > 0.0 ? std::log(k_factor) : 0.0;
    // log delta_n = (n-1) ln K_r + n ln(1+K_r) - K_r - 2 ln (n-1)!
    std::vector<double> log_delta(terms);
    int live = k_factor > 0.0 ? terms : 1; // the tail vanishes at K_r = 0
    for (int n = 1; n <= live; ++n)
        log_delta[n - 1] = (n - 1) * log_k + n * log_c - k_factor -
                           2.0 * std::lgamma((double)n);
    // log-sum-exp of the normalizing denominator sum delta_n Gamma(n) c^-n
    double max_lw = -1e300;
    for (int n = 1; n <= live; ++n)
        max_lw = std::max(max_lw, log_weight(log_delta[n - 1], n, log_c));
    double denom = 0.0;
    for (int n = 1; n <= live; ++n)
        denom += std::exp(log_weight(log_delta[n - 1], n, log_c) - max_lw);
    const double log_denom = max_lw + std::log(denom);

    MixtureGamma out;
    out.c = c;
    out.terms.reserve(live);
    for (int n = 1; n <= live; ++n)
        out.terms.push_back({std::exp(log_delta[n - 1] - log_denom), (double)n});
    return out;
}

MixtureGamma fit_nakagami(double m) {
    if (!(m >= 0.5))
        throw std::invalid_argument("fit_nakagami: requires m >= 0.5, got " +
                                    std::to_string(m));
    MixtureGamma out;
    out.c = m;
    out.terms.push_back({std::exp(m * std::log(m) - std::lgamma(m)), m});
    return out;
}

MixtureGamma fit_rayleigh(double mean_power) {
    if (!(mean_power > 0.0))
        throw std::invalid_argument("fit_rayleigh: requires mean power > 0");
    MixtureGamma out;
    out.c = 1.0 / mean_power;
    out.terms.push_back({1.0 / mean_power, 1.0});
    return out;
}

} // namespace risecap
