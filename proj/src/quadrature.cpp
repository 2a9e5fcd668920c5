#include "risecap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "adaptive_gk.hpp"
#include "risecap/errors.hpp"
#include "risecap/specfun.hpp"

namespace risecap {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

// Both capacities are integrals of exp(log_density(y)) * log2(1 + gain*y) in
// the power variable y = x^2. The density peak can sit at e#300 scales for
// large KG shapes, so everything is located and integrated in log space:
// find the peak of the full log-integrand on a log grid, expand to the
// +/- 50-nat support, integrate the peak-normalized integrand adaptively.
template <class LogF>
double capacity_integral(LogF&& log_f, double y_scale,
                         const QuadratureConfig& cfg, const char* what) {
    const double lo0 = std::log(y_scale) - 20.0;
    const double hi0 = std::log(y_scale) + 10.0;
    const int kScan = 240;
    double peak = -1e300, l_peak = std::log(y_scale);
    for (int i = 0; i <= kScan; ++i) {
        const double ly = lo0 + (hi0 - lo0) * i / kScan;
        const double v = log_f(std::exp(ly));
        if (v > peak) {
            peak = v;
            l_peak = ly;
        }
    }
    if (!(peak > -1e300))
        throw ConvergenceError(std::string(what) + ": integrand vanished");
    const double drop = 50.0;
    double l_lo = l_peak, l_hi = l_peak;
    while (log_f(std::exp(l_lo)) > peak - drop) l_lo -= 0.5;
    while (log_f(std::exp(l_hi)) > peak - drop) l_hi += 0.25;
    // integrate in y on [exp(l_lo), exp(l_hi)], split at the peak to help the
    // subdivision find the mass quickly
    const auto f = [&](double y) { return std::exp(log_f(y) - peak); };
    const double y_lo = std::exp(l_lo), y_mid = std::exp(l_peak),
                 y_hi = std::exp(l_hi);
    const double left = detail::integrate_adaptive(
        f, y_lo, y_mid, cfg.rel_tol, 1e-300, cfg.max_subdivisions, what);
    const double right = detail::integrate_adaptive(
        f, y_mid, y_hi, cfg.rel_tol, 1e-300, cfg.max_subdivisions, what);
    return std::exp(peak) * (left + right);
}

double log_capacity_factor(double gain, double y) {
    // ln(log2(1 + gain y)), -inf at y = 0
    const double t = gain * y;
    if (t <= 0.0) return -1e300;
    return std::log(std::log1p(t) / kLn2);
}

// log of the KG power density f_{A^2}(y)
struct KgLogPowerPdf {
    double k, m, xi;
    double log_norm;
    explicit KgLogPowerPdf(const KGParams& kg)
        : k(kg.k), m(kg.m), xi(kg.xi),
          log_norm(std::log(2.0) + (kg.k + kg.m) * std::log(kg.xi) -
                   std::lgamma(kg.k) - std::lgamma(kg.m)) {}
    double operator()(double y) const {
        return log_norm + (0.5 * (k + m) - 1.0) * std::log(y) +
               bessel_k_log(k - m, 2.0 * xi * std::sqrt(y));
    }
};

// log of the MG power density f_{X^2}(y) = sum a_l y^(b_l - 1) e^(-c y)
double mg_log_power_pdf(const MixtureGamma& d, double y) {
    const double ly = std::log(y);
    double mx = -1e300;
    std::vector<double> ls(d.terms.size());
    for (size_t i = 0; i < d.terms.size(); ++i) {
        ls[i] = std::log(d.terms[i].a) + (d.terms[i].b - 1.0) * ly - d.c * y;
        mx = std::max(mx, ls[i]);
    }
    if (!(mx > -1e300)) return -1e300;
    double s = 0.0;
    for (double v : ls) s += std::exp(v - mx);
    return mx + std::log(s);
}

} // namespace

double kg_pdf(const KGParams& kg, double x) {
    if (!(x > 0.0))
        throw std::domain_error("kg_pdf: requires x > 0");
    const double lp = std::log(4.0) + (kg.k + kg.m) * std::log(kg.xi) -
                      std::lgamma(kg.k) - std::lgamma(kg.m) +
                      (kg.k + kg.m - 1.0) * std::log(x) +
                      bessel_k_log(kg.k - kg.m, 2.0 * kg.xi * x);
    return std::exp(lp);
}

double legit_capacity_quad(const KGParams& kg, double gain,
                           const QuadratureConfig& cfg) {
    if (!(gain > 0.0))
        throw std::invalid_argument("legit_capacity_quad: requires gain > 0");
    const KgLogPowerPdf lp(kg);
    const auto log_f = [&](double y) {
        return lp(y) + log_capacity_factor(gain, y);
    };
    return capacity_integral(log_f, std::max(kg.omega, 1e-12), cfg,
                             "legit_capacity_quad");
}

double eav_capacity_quad(const MixtureGamma& eav, double gain,
                         const QuadratureConfig& cfg) {
    if (!(gain > 0.0))
        throw std::invalid_argument("eav_capacity_quad: requires gain > 0");
    double b_max = 0.0;
    for (const MgTerm& t : eav.terms) b_max = std::max(b_max, t.b);
    const double y_scale = std::max(b_max, 1.0) / eav.c;
    const auto log_f = [&](double y) {
        return mg_log_power_pdf(eav, y) + log_capacity_factor(gain, y);
    };
    return capacity_integral(log_f, y_scale, cfg, "eav_capacity_quad");
}

} // namespace risecap
