#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "risecap/errors.hpp"
#include "risecap/specfun.hpp"

using namespace risecap;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;

double rel(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}
} // namespace

TEST_CASE("log_gamma agrees with std::lgamma on the real axis") {
    for (double x : {0.07, 0.5, 1.0, 1.5, 4.2, 16.0, 221.5}) {
        const cplx lg = log_gamma(cplx(x, 0.0));
        CHECK(std::fabs(lg.real() - std::lgamma(x)) <=
              1e-13 * std::max(1.0, std::fabs(std::lgamma(x))));
        CHECK(lg.imag() == 0.0);
        CHECK(std::fabs(log_gamma(x) - lg.real()) <=
              1e-13 * std::max(1.0, std::fabs(lg.real())));
    }
}

TEST_CASE("log_gamma at 1+i") {
    // reference: 30-digit arbitrary-precision evaluation
    const cplx lg = log_gamma(cplx(1.0, 1.0));
    CHECK(std::fabs(lg.real() - -0.650923199301856338885) < 1e-14);
    CHECK(std::fabs(lg.imag() - -0.301640320467533197888) < 1e-14);
}

TEST_CASE("log_gamma reflection identity") {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z), checked where the reflection
    // branch of the implementation is active (Re z < 0.5)
    const std::vector<cplx> zs = {{-2.3, 0.7}, {0.2, -1.4}, {-5.5, 3.3},
                                  {0.4, 0.0},  {-0.9, 0.1}};
    for (const cplx& z : zs) {
        const cplx lhs = std::exp(log_gamma(z) + log_gamma(1.0 - z));
        const cplx rhs = kPi / std::sin(kPi * z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("log_gamma conjugate symmetry is exact") {
    for (const cplx& z : {cplx(3.7, 2.2), cplx(0.3, -8.0), cplx(-1.5, 0.4)}) {
        const cplx a = log_gamma(z);
        const cplx b = log_gamma(std::conj(z));
        CHECK(a.real() == b.real());
        CHECK(a.imag() == -b.imag());
    }
}

TEST_CASE("log_gamma rejects poles and bad reals") {
    CHECK_THROWS_AS(log_gamma(cplx(0.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(log_gamma(cplx(-3.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.25), std::domain_error);
}

TEST_CASE("bessel_k known values") {
    // K_{1/2}(x) = sqrt(pi/(2x)) e^-x
    CHECK(rel(bessel_k(0.5, 1.0), 0.46106850444789455844) < 1e-12);
    CHECK(rel(bessel_k(0.0, 2.0), 0.113893872749533435653) < 1e-12);
    CHECK(rel(bessel_k(3.7, 2.2), 0.974755956176711302048) < 1e-12);
    CHECK(bessel_k(-3.7, 2.2) == bessel_k(3.7, 2.2)); // even in the order
}

TEST_CASE("bessel_k_log handles magnitudes doubles cannot") {
    CHECK(rel(bessel_k_log(37.5, 11.0), std::log(85640991224826.916)) < 1e-13);
    // far tail: closed form for nu = 1/2
    const double x = 800.0;
    const double want = 0.5 * std::log(kPi / (2.0 * x)) - x;
    CHECK(rel(bessel_k_log(0.5, x), want) < 1e-12);
    CHECK_THROWS_AS(bessel_k(0.0, -1.0), std::domain_error);
}

TEST_CASE("incomplete gamma values and complement") {
    CHECK(rel(upper_inc_gamma(2.5, 1.3), 1.01211360070320342941) < 1e-12);
    CHECK(rel(upper_inc_gamma(1.0, 0.7), std::exp(-0.7)) < 1e-13);
    for (double s : {0.3, 1.0, 2.5, 7.0}) {
        CHECK(reg_lower_gamma(s, 0.0) == 0.0);
        for (double x : {0.1, 1.0, 5.0, 30.0}) {
            const double p = reg_lower_gamma(s, x);
            const double q = upper_inc_gamma(s, x) / std::tgamma(s);
            CHECK(std::fabs(p + q - 1.0) < 1e-12);
        }
    }
    CHECK_THROWS_AS(upper_inc_gamma(-1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(reg_lower_gamma(1.0, -2.0), std::domain_error);
}

// Identity batteries for the Mellin-Barnes evaluator. Each pins the contour
// machinery against an elementary function over z in [1e-3, 1e3].
static std::vector<double> log_grid() {
    std::vector<double> zs;
    for (int i = 0; i <= 24; ++i) zs.push_back(std::pow(10.0, -3.0 + 0.25 * i));
    return zs;
}

TEST_CASE("meijer_g reproduces exp(-z)") {
    MeijerGSpec spec;
    spec.m = 1;
    spec.q = 1;
    spec.b = {0.0};
    for (double z : log_grid()) {
        const SignedLog g = meijer_g_log(spec, z);
        CHECK(g.sign == 1);
        CHECK(std::fabs(g.log_abs - -z) <= 1e-7); // rel err of the value
        if (z < 600.0) CHECK(rel(meijer_g(spec, z), std::exp(-z)) < 1e-7);
    }
}

TEST_CASE("meijer_g reproduces log(1+z)") {
    MeijerGSpec spec;
    spec.m = 1;
    spec.n = 2;
    spec.p = 2;
    spec.q = 2;
    spec.a = {1.0, 1.0};
    spec.b = {1.0, 0.0};
    for (double z : log_grid())
        CHECK(rel(meijer_g(spec, z), std::log1p(z)) < 1e-7);
}

TEST_CASE("meijer_g reproduces the Bessel K pair") {
    // 2 K_nu(2 sqrt z) = G^{2,0}_{0,2}(z | - ; nu/2, -nu/2); nu = 0 doubles
    // the pole at the origin, which stresses the log-derivative panels
    for (double nu : {0.0, 0.77, 2.4}) {
        MeijerGSpec spec;
        spec.m = 2;
        spec.q = 2;
        spec.b = {0.5 * nu, -0.5 * nu};
        for (double z : log_grid()) {
            const double want = 2.0 * bessel_k(nu, 2.0 * std::sqrt(z));
            CHECK(rel(meijer_g(spec, z), want) < 1e-7);
        }
    }
}

TEST_CASE("meijer_g pinned value with a repeated lower pair") {
    MeijerGSpec spec;
    spec.m = 2;
    spec.q = 2;
    spec.b = {0.0, 0.0};
    CHECK(rel(meijer_g(spec, 1.0), 2.0 * 0.113893872749533435653) < 1e-10);
}

TEST_CASE("meijer_g rejects malformed specs") {
    MeijerGSpec bad;
    bad.m = 2;
    bad.q = 1;
    bad.b = {0.0};
    CHECK_THROWS_AS(meijer_g(bad, 1.0), std::invalid_argument);

    MeijerGSpec sizes;
    sizes.m = 1;
    sizes.q = 1;
    sizes.b = {0.0, 1.0}; // q = 1 but two b entries
    CHECK_THROWS_AS(meijer_g(sizes, 1.0), std::invalid_argument);

    MeijerGSpec ok;
    ok.m = 1;
    ok.q = 1;
    ok.b = {0.0};
    CHECK_THROWS_AS(meijer_g(ok, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(meijer_g(ok, 0.0), std::invalid_argument);
}

TEST_CASE("meijer_g reports an impossible contour") {
    // poles of Gamma(b+s) start at -2 and poles of Gamma(1-a-s) end at -2.2:
    // no vertical line separates the families
    MeijerGSpec spec;
    spec.m = 1;
    spec.n = 1;
    spec.p = 1;
    spec.q = 1;
    spec.a = {3.2};
    spec.b = {2.0};
    CHECK_THROWS_AS(meijer_g(spec, 1.0), ContourError);
}
