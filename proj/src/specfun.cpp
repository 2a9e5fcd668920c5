#include "risecap/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "adaptive_gk.hpp"
#include "risecap/errors.hpp"

namespace risecap {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2Pi = 1.8378770664093454836; // ln(2*pi)
constexpr double kInf = std::numeric_limits<double>::infinity();

// B_{2n} / (2n (2n-1)) for the Stirling series
constexpr double kStirling[10] = {
    8.3333333333333333e-02,  -2.7777777777777778e-03,
    7.9365079365079365e-04,  -5.9523809523809524e-04,
    8.4175084175084175e-04,  -1.9175269175269175e-03,
    6.4102564102564103e-03,  -2.9550653594771242e-02,
    1.7964437236883057e-01,  -1.3924322169059011e+00};

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 &&
           z.real() == std::floor(z.real());
}

// Stirling expansion, valid once Re(z) or |Im(z)| is large enough.
cplx log_gamma_stirling(cplx z) {
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series = 0.0;
    cplx term = inv;
    for (double coef : kStirling) {
        series += coef * term;
        term *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * kLn2Pi + series;
}

// ln sin(pi z), stable for large |Im z|; any 2*pi*i*k branch offset is
// irrelevant to callers that only exponentiate.
cplx log_sin_pi(cplx z) {
    if (z.imag() >= 0.0) {
        const cplx w = std::exp(cplx(0.0, 2.0 * kPi) * z);
        return cplx(0.0, -kPi) * z + std::log(1.0 - w) +
               cplx(-std::log(2.0), kPi / 2.0);
    }
    return std::conj(log_sin_pi(std::conj(z)));
}

cplx log_gamma_impl(cplx z) {
    if (z.imag() < 0.0) return std::conj(log_gamma_impl(std::conj(z)));
    if (z.real() < 0.5) {
        // reflection keeps the Stirling argument away from the negative axis
        return std::log(kPi) - log_sin_pi(z) - log_gamma_impl(1.0 - z);
    }
    cplx shift = 0.0;
    while (std::abs(z) < 16.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return log_gamma_stirling(z) - shift;
}

} // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (is_nonpositive_integer(z))
        throw std::domain_error("log_gamma: pole at nonpositive integer " +
                                std::to_string(z.real()));
    return log_gamma_impl(z);
}

double log_gamma(double x) {
    if (x <= 0.0)
        throw std::domain_error("log_gamma: requires x > 0, got " +
                                std::to_string(x));
    return std::lgamma(x);
}

// ---------------------------------------------------------------------------
// Modified Bessel K via the cosh integral
//   K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt
// evaluated in log space so huge orders neither under- nor overflow.
// ---------------------------------------------------------------------------

namespace {

double log_cosh(double u) {
    u = std::fabs(u);
    return u + std::log1p(std::exp(-2.0 * u)) - std::log(2.0);
}

} // namespace

double bessel_k_log(double nu, double x) {
    if (!(x > 0.0))
        throw std::domain_error("bessel_k: requires x > 0, got " +
                                std::to_string(x));
    nu = std::fabs(nu);
    // K_nu(x) = e^-x Int exp(q(t)) dt with q(t) = -2x sinh^2(t/2) +
    // log cosh(nu t). Writing x(cosh t - 1) as 2x sinh^2(t/2) keeps the
    // exponent free of large-term cancellation for big x.
    const auto log_q = [nu, x](double t) {
        const double s = std::sinh(0.5 * t);
        return -2.0 * x * s * s + log_cosh(nu * t);
    };
    // q is maximal inside [0, asinh(nu/x)]
    const double t_hi = std::asinh(nu / x);
    double peak = 0.0;
    double t_peak = 0.0;
    const int kScan = 96;
    for (int i = 1; i <= kScan; ++i) {
        const double t = t_hi * i / kScan;
        const double v = log_q(t);
        if (v > peak) {
            peak = v;
            t_peak = t;
        }
    }
    // upper cutoff where the integrand is 1e-26 of its peak
    double t_end = std::max(t_hi, t_peak) + 1.0;
    while (log_q(t_end) > peak - 60.0) t_end *= 1.5;
    const auto f = [&](double t) { return std::exp(log_q(t) - peak); };
    // rounding of the O(|q|) exponent terms caps the attainable relative
    // accuracy of the peak-normalized integrand
    const double s_pk = std::sinh(0.5 * t_peak);
    const double exponent_mag =
        2.0 * x * s_pk * s_pk + log_cosh(nu * t_peak) + std::fabs(peak) + 1.0;
    const double rel_tol =
        std::max(1e-13, 32.0 * std::numeric_limits<double>::epsilon() *
                            exponent_mag);
    const double body = detail::integrate_adaptive(
        f, 0.0, t_end, rel_tol, 1e-300, 4000, "bessel_k");
    return -x + peak + std::log(body);
}

double bessel_k(double nu, double x) { return std::exp(bessel_k_log(nu, x)); }

// ---------------------------------------------------------------------------
// Incomplete gamma: series for the lower part, Lentz continued fraction for
// the upper part, switched at x = s + 1.
// ---------------------------------------------------------------------------

namespace {

// P(s,x) by the lower series
double lower_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < 1000; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16)
            return sum * std::exp(s * std::log(x) - x - std::lgamma(s));
    }
    throw ConvergenceError("reg_lower_gamma: series did not converge");
}

// Q(s,x)*Gamma(s) = Gamma(s,x) = e^{-x} x^s * CF via modified Lentz
double upper_cf_log(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16)
            return s * std::log(x) - x + std::log(h);
    }
    throw ConvergenceError("upper_inc_gamma: continued fraction stalled");
}

} // namespace

double upper_inc_gamma(double s, double x) {
    if (!(s > 0.0))
        throw std::domain_error("upper_inc_gamma: requires s > 0");
    if (x < 0.0)
        throw std::domain_error("upper_inc_gamma: requires x >= 0");
    if (x == 0.0) return std::tgamma(s);
    if (x < s + 1.0)
        return std::tgamma(s) * (1.0 - lower_series(s, x));
    return std::exp(upper_cf_log(s, x));
}

double reg_lower_gamma(double s, double x) {
    if (!(s > 0.0))
        throw std::domain_error("reg_lower_gamma: requires s > 0");
    if (x < 0.0)
        throw std::domain_error("reg_lower_gamma: requires x >= 0");
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) return lower_series(s, x);
    return 1.0 - std::exp(upper_cf_log(s, x) - std::lgamma(s));
}

// ---------------------------------------------------------------------------
// Meijer G along a vertical Mellin-Barnes contour.
//
// F(s) = prod_{j<=m} Gamma(b_j - s) prod_{j<=n} Gamma(1 - a_j + s)
//      / [prod_{j>m} Gamma(1 - b_j + s) prod_{j>n} Gamma(a_j - s)] * z^s
//
// The abscissa sigma must satisfy max_j<=n(a_j) - 1 < sigma < min_j<=m(b_j).
// For real z > 0, F(conj s) = conj F(s), so
//   G = (1/pi) int_0^inf Re F(sigma + i t) dt.
// |F| decays like exp(-omega t) with omega = (2(m+n) - p - q) pi/2; panels of
// width ~3/omega are integrated adaptively and the sweep stops once three
// consecutive panels peak below 1e-16 of the running peak. Everything is
// assembled in log space: near-minimal |F(sigma)| is selected by a scan plus
// golden-section refinement, which keeps the cancellation ratio tame (the
// integral of e^{-z} at z = 1e3 needs sigma near -z).
// ---------------------------------------------------------------------------

namespace {

struct Contour {
    const MeijerGSpec& sp;
    double ln_z;

    // log F(s); denominator poles (zeros of F) surface as -inf real part
    cplx log_f(cplx s) const {
        cplx acc = s * ln_z;
        for (int j = 0; j < sp.m; ++j) acc += log_gamma_impl(sp.b[j] - s);
        for (int j = 0; j < sp.n; ++j) acc += log_gamma_impl(1.0 - sp.a[j] + s);
        for (int j = sp.m; j < sp.q; ++j) {
            const cplx arg = 1.0 - sp.b[j] + s;
            if (is_nonpositive_integer(arg)) return cplx(-kInf, 0.0);
            acc -= log_gamma_impl(arg);
        }
        for (int j = sp.n; j < sp.p; ++j) {
            const cplx arg = sp.a[j] - s;
            if (is_nonpositive_integer(arg)) return cplx(-kInf, 0.0);
            acc -= log_gamma_impl(arg);
        }
        return acc;
    }

    double log_abs_f(double sigma) const { return log_f(cplx(sigma, 0.0)).real(); }
};

void validate_spec(const MeijerGSpec& sp) {
    if (sp.m < 0 || sp.n < 0 || sp.p < 0 || sp.q < 0 || sp.m > sp.q ||
        sp.n > sp.p)
        throw std::invalid_argument("meijer_g: require 0 <= m <= q, 0 <= n <= p");
    if ((int)sp.a.size() != sp.p || (int)sp.b.size() != sp.q)
        throw std::invalid_argument("meijer_g: parameter list sizes must be p, q");
    for (double v : sp.a)
        if (!std::isfinite(v)) throw std::invalid_argument("meijer_g: bad a");
    for (double v : sp.b)
        if (!std::isfinite(v)) throw std::invalid_argument("meijer_g: bad b");
}

// Minimize log|F(sigma)| over (lo, hi); either side may be infinite.
double choose_sigma(const Contour& ct, double lo, double hi) {
    constexpr double kMargin = 1e-3;
    constexpr double kCap = 5e4;
    double a, b; // golden-section bracket
    if (std::isfinite(lo) && std::isfinite(hi)) {
        a = lo + kMargin * (hi - lo);
        b = hi - kMargin * (hi - lo);
    } else {
        // geometric probe away from the finite edge (exactly one side is
        // finite for the supported classes)
        const bool from_hi = std::isfinite(hi);
        const double edge = from_hi ? hi : lo;
        const double dir = from_hi ? -1.0 : 1.0;
        double best_v = kInf, best_d = 0.25;
        double d = 0.25;
        int rising = 0;
        while (d < kCap) {
            const double v = ct.log_abs_f(edge + dir * d);
            if (v < best_v) {
                best_v = v;
                best_d = d;
                rising = 0;
            } else if (++rising >= 3) {
                break;
            }
            d *= 2.0;
        }
        const double inner = std::max(best_d / 2.0, 0.05);
        const double outer = std::min(best_d * 2.0, kCap);
        a = std::min(edge + dir * inner, edge + dir * outer);
        b = std::max(edge + dir * inner, edge + dir * outer);
        a = std::max(a, std::isfinite(lo) ? lo + kMargin : -kCap);
        b = std::min(b, std::isfinite(hi) ? hi - kMargin : kCap);
    }
    // coarse scan, then golden section
    const int kScan = 33;
    double best_x = a, best_v = kInf;
    for (int i = 0; i <= kScan; ++i) {
        const double x = a + (b - a) * i / kScan;
        const double v = ct.log_abs_f(x);
        if (v < best_v) {
            best_v = v;
            best_x = x;
        }
    }
    double g_lo = std::max(a, best_x - (b - a) / kScan);
    double g_hi = std::min(b, best_x + (b - a) / kScan);
    const double kGolden = 0.6180339887498949;
    double x1 = g_hi - kGolden * (g_hi - g_lo);
    double x2 = g_lo + kGolden * (g_hi - g_lo);
    double f1 = ct.log_abs_f(x1), f2 = ct.log_abs_f(x2);
    for (int i = 0; i < 60 && g_hi - g_lo > 1e-6; ++i) {
        if (f1 < f2) {
            g_hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = g_hi - kGolden * (g_hi - g_lo);
            f1 = ct.log_abs_f(x1);
        } else {
            g_lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = g_lo + kGolden * (g_hi - g_lo);
            f2 = ct.log_abs_f(x2);
        }
    }
    return 0.5 * (g_lo + g_hi);
}

} // namespace

SignedLog meijer_g_log(const MeijerGSpec& sp, double z, double rel_tol) {
    validate_spec(sp);
    if (!(z > 0.0))
        throw std::invalid_argument("meijer_g: requires z > 0");
    const double omega = (2.0 * (sp.m + sp.n) - sp.p - sp.q) * kPi / 2.0;
    if (omega <= 1e-12)
        throw ContourError(
            "meijer_g: Mellin-Barnes line integral diverges for this class "
            "(2(m+n) <= p+q)");
    double lo = -kInf, hi = kInf;
    for (int j = 0; j < sp.n; ++j) lo = std::max(lo, sp.a[j] - 1.0);
    for (int j = 0; j < sp.m; ++j) hi = std::min(hi, sp.b[j]);
    if (!(lo < hi - 1e-12))
        throw ContourError("meijer_g: no separating contour abscissa (window " +
                           std::to_string(lo) + " .. " + std::to_string(hi) +
                           " is empty)");
    if (!std::isfinite(lo) && !std::isfinite(hi))
        throw ContourError("meijer_g: unbounded contour window (m = n = 0) "
                           "is not supported");

    const Contour ct{sp, std::log(z)};
    const double sigma = choose_sigma(ct, lo, hi);

    // scaled integrand g(t) = exp(Re w - scale) cos(Im w), w = log F(sigma+it)
    double scale = ct.log_abs_f(sigma);
    for (double t = 0.125; !std::isfinite(scale) && t < 2.0; t *= 2.0)
        scale = ct.log_f(cplx(sigma, t)).real();
    if (!std::isfinite(scale)) scale = 0.0;
    double peak = 0.0;       // max |g| seen so far, in current scaling
    double panel_max = 0.0;  // max |g| within the current panel
    const auto g = [&](double t) {
        const cplx w = ct.log_f(cplx(sigma, t));
        const double mag = std::exp(w.real() - scale);
        panel_max = std::max(panel_max, mag);
        return mag * std::cos(w.imag());
    };

    const double panel_rel = std::max(1e-13, 0.01 * rel_tol);
    const double width = std::clamp(3.0 / omega, 0.5, 4.0);
    const int max_panels = 6000;
    double acc = 0.0;
    int quiet_panels = 0;
    for (int k = 0; k < max_panels; ++k) {
        const double t0 = k * width;
        panel_max = 0.0;
        const double tol_abs = std::max(peak, 1.0) * 1e-16;
        acc += detail::integrate_adaptive(g, t0, t0 + width, panel_rel,
                                          tol_abs, 2000, "meijer_g panel");
        peak = std::max(peak, panel_max);
        if (peak > 1e40) { // renormalize before anything can overflow
            const double bump = std::log(peak);
            acc *= std::exp(-bump);
            scale += bump;
            panel_max *= std::exp(-bump);
            peak = 1.0;
        }
        if (panel_max < 1e-16 * peak) {
            if (++quiet_panels >= 3) {
                return {scale + std::log(std::fabs(acc) / kPi),
                        acc > 0.0 ? 1 : (acc < 0.0 ? -1 : 0)};
            }
        } else {
            quiet_panels = 0;
        }
    }
    throw ConvergenceError("meijer_g: contour tail not converged after " +
                           std::to_string(max_panels) + " panels");
}

double meijer_g(const MeijerGSpec& sp, double z, double rel_tol) {
    const SignedLog r = meijer_g_log(sp, z, rel_tol);
    return r.sign * std::exp(r.log_abs);
}

} // namespace risecap
