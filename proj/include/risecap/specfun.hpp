#pragma once

#include <complex>
#include <vector>

namespace risecap {

// Principal-branch log Gamma. Rejects poles (nonpositive integers).
std::complex<double> log_gamma(std::complex<double> z);

// Real-argument convenience, x > 0.
double log_gamma(double x);

// Modified Bessel function of the second kind, real order, x > 0.
// The _log variant returns ln K_nu(x) and is the working representation:
// K_nu under/overflows doubles once |nu| grows past a few hundred.
double bessel_k(double nu, double x);
double bessel_k_log(double nu, double x);

// Upper incomplete gamma Gamma(s, x), s > 0, x >= 0, and the regularized
// lower counterpart P(s, x) = 1 - Gamma(s, x)/Gamma(s).
double upper_inc_gamma(double s, double x);
double reg_lower_gamma(double s, double x);

// G^{m,n}_{p,q}(z | a_1..a_p ; b_1..b_q)
struct MeijerGSpec {
    int m = 0, n = 0, p = 0, q = 0;
    std::vector<double> a;
    std::vector<double> b;
};

struct SignedLog {
    double log_abs; // ln|value|
    int sign;       // -1, 0, +1
};

// Numerical Mellin-Barnes evaluation along a vertical contour Re(s) = sigma.
// Throws ContourError when no separating abscissa exists (or the line
// integral cannot converge), ConvergenceError when tail truncation fails.
double meijer_g(const MeijerGSpec& spec, double z, double rel_tol = 1e-10);
SignedLog meijer_g_log(const MeijerGSpec& spec, double z, double rel_tol = 1e-10);

} // namespace risecap
