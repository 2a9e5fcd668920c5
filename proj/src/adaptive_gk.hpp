#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "risecap/errors.hpp"

namespace risecap::detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK dqk15).
inline constexpr double kGkNode[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kGkWeight[8] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018,
    0.14065325971552591, 0.16900472663926790, 0.19035057806478540,
    0.20443294007529889, 0.20948214108472782};
inline constexpr double kGaussWeight[4] = {
    0.12948496616886969, 0.27970539148927664, 0.38183005050511894,
    0.41795918367346938};

struct PanelEstimate {
    double value;
    double error;
    double peak; // max |f| sampled, for magnitude tracking
};

template <class F>
PanelEstimate gk15(F&& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double kron = 0.0, gauss = 0.0, peak = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kGkNode[i];
        const double f1 = f(mid - dx);
        const double f2 = f(mid + dx);
        peak = std::max(peak, std::max(std::fabs(f1), std::fabs(f2)));
        kron += kGkWeight[i] * (f1 + f2);
        if (i % 2 == 1) gauss += kGaussWeight[i / 2] * (f1 + f2);
    }
    const double fc = f(mid);
    peak = std::max(peak, std::fabs(fc));
    kron += kGkWeight[7] * fc;
    gauss += kGaussWeight[3] * fc;
    kron *= h;
    gauss *= h;
    return {kron, std::fabs(kron - gauss), peak};
}

// Globally adaptive bisection on [a, b]. Stops when the summed error estimate
// meets max(abs_tol, rel_tol * |integral|); throws ConvergenceError otherwise.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol,
                          double abs_tol, int max_subdivisions,
                          const char* what) {
    struct Seg {
        double a, b, value, error;
        bool operator<(const Seg& o) const { return error < o.error; }
    };
    std::priority_queue<Seg> queue;
    PanelEstimate first = gk15(f, a, b);
    queue.push({a, b, first.value, first.error});
    double total = first.value;
    double total_err = first.error;
    for (int iter = 0; iter < max_subdivisions; ++iter) {
        if (total_err <= std::max(abs_tol, rel_tol * std::fabs(total)))
            return total;
        Seg worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval exhausted at double resolution; accept its estimate
            total_err -= worst.error;
            continue;
        }
        PanelEstimate left = gk15(f, worst.a, mid);
        PanelEstimate right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push({worst.a, mid, left.value, left.error});
        queue.push({mid, worst.b, right.value, right.error});
    }
    if (total_err <= std::max(abs_tol, rel_tol * std::fabs(total)))
        return total;
    throw ConvergenceError(std::string(what) +
                           ": adaptive quadrature did not converge");
}

} // namespace risecap::detail
