// attractiveness.hpp
//
// The sufficient-attractiveness inequality E[1/(1+X)] <= 1 and its
// closed-form specializations: Bernoulli probability thresholds, the
// uniform-distribution value, and the minimal upper support b_min(a) with
// its Lambert-W characterization.

#pragma once

#include "kellyfreq/pmf.hpp"

namespace kellyfreq {

struct AttractReport {
    double theta = 0.0;         // E[1/(1+X)], +inf if an atom sits at -1
    bool satisfied = false;     // theta <= 1
    double jensen_bound = 0.0;  // 1/theta - 1, a lower bound on E[X]
    double ex = 0.0;            // E[X]
};

AttractReport theta(const ReturnPmf& dist);

// Minimal win probability making a two-point gamble on {x_min, x_max}
// sufficiently attractive: |x_min| (1 + x_max) / (x_max - x_min).
// For the symmetric gamble on {-gamma, +gamma} this is (1+gamma)/2.
double bernoulli_threshold(double x_min, double x_max);

// E[1/(1+X)] for X uniform on [a, b]: log((1+b)/(1+a)) / (b - a).
double uniform_theta(double a, double b);

// Smallest b > 0 making the uniform distribution on [a, b] sufficiently
// attractive; the unique positive solution of e^b/(1+b) = e^a/(1+a).
// b_min computes both routes and verifies they agree within 1e-9.
double b_min(double a);
double b_min_bisection(double a);
double b_min_lambert(double a);  // -1 - W_{-1}(-(1+a) e^{-(1+a)})

// Lower real branch of the Lambert W function: the solution w <= -1 of
// w e^w = x for x in [-1/e, 0). Halley iteration from a log-based initial
// guess (branch-point series near -1/e), residual |w e^w - x| <= 1e-13 |x|.
double lambert_w_m1(double x);

}  // namespace kellyfreq
