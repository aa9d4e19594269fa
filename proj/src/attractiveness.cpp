// attractiveness.cpp
//
// E[1/(1+X)] and the closed-form machinery around it. b_min(a) is solved
// two ways on purpose: root bisection of f(b) = f(a) with f(t) = e^t/(1+t),
// and the Lambert-W formula; agreement is a free correctness check.

#include "kellyfreq/attractiveness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kellyfreq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log f(t) up to a constant: strictly decreasing on (-1, 0), strictly
// increasing on (0, inf), minimum 0 at t = 0. Same sign structure as
// f(b) - f(a) without ever overflowing.
double log_f(double t) { return t - std::log1p(t); }

void require_lower_support(double a) {
    if (!(a > -1.0) || !(a < 0.0))
        throw std::invalid_argument("lower support must lie in (-1, 0)");
}

}  // namespace

AttractReport theta(const ReturnPmf& dist) {
    AttractReport rep;
    bool infinite = false;
    long double acc = 0.0L;
    for (const Atom& a : dist.atoms()) {
        if (a.x == -1.0)
            infinite = true;
        else
            acc += static_cast<long double>(a.p) / (1.0 + a.x);
    }
    rep.theta = infinite ? kInf : static_cast<double>(acc);
    rep.satisfied = rep.theta <= 1.0 + 1e-14;
    rep.jensen_bound = 1.0 / rep.theta - 1.0;
    rep.ex = dist.mean();
    return rep;
}

double bernoulli_threshold(double x_min, double x_max) {
    if (!(x_min >= -1.0) || !(x_min < 0.0))
        throw std::invalid_argument("worst return must lie in [-1, 0)");
    if (!(x_max > 0.0) || !std::isfinite(x_max))
        throw std::invalid_argument("best return must be positive and finite");
    return -x_min * (1.0 + x_max) / (x_max - x_min);
}

double uniform_theta(double a, double b) {
    require_lower_support(a);
    if (!(b > 0.0) || !std::isfinite(b))
        throw std::invalid_argument("upper support must be positive and finite");
    return (std::log1p(b) - std::log1p(a)) / (b - a);
}

double b_min_bisection(double a) {
    require_lower_support(a);
    const double target = log_f(a);
    double hi = 1.0;
    while (log_f(hi) < target) hi *= 2.0;
    double lo = 0.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (log_f(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double b_min_lambert(double a) {
    require_lower_support(a);
    const double u = 1.0 + a;
    return -1.0 - lambert_w_m1(-u * std::exp(-u));
}

double b_min(double a) {
    const double via_bisection = b_min_bisection(a);
    const double via_lambert = b_min_lambert(a);
    if (std::abs(via_bisection - via_lambert) > 1e-9)
        throw std::logic_error("b_min cross-check failed: bisection and Lambert routes disagree");
    return via_lambert;
}

double lambert_w_m1(double x) {
    static const double kBranchPoint = -std::exp(-1.0);
    if (!(x >= kBranchPoint) || !(x < 0.0))
        throw std::invalid_argument("argument must lie in [-1/e, 0)");
    if (x == kBranchPoint) return -1.0;

    // Initial guess: branch-point series in q = sqrt(2(1 + e x)) when close
    // to -1/e (where the log form degenerates), asymptotic log form otherwise.
    const double q2 = 2.0 * (1.0 + std::exp(1.0) * x);
    double w;
    if (q2 < 1e-3) {
        const double q = std::sqrt(q2 > 0.0 ? q2 : 0.0);
        w = -1.0 - q - q * q / 3.0 - 11.0 / 72.0 * q * q * q;
    } else {
        const double l1 = std::log(-x);
        w = l1 - std::log(-l1);
    }

    const double tol = 1e-14 * std::abs(x);
    for (int it = 0; it < 48; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (std::abs(f) <= tol) break;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) break;
        const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if (denom == 0.0 || !std::isfinite(denom)) break;
        const double next = w - f / denom;
        if (next == w) break;
        w = next;
    }

    if (std::abs(w * std::exp(w) - x) > 1e-13 * std::abs(x)) {
        // Halley stalled (possible only at the extreme ends); fall back to
        // bisection on w e^w, monotone on (-inf, -1].
        double lo = -2.0;
        while (lo * std::exp(lo) < x) lo *= 2.0;
        double hi = -1.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            if (mid * std::exp(mid) < x)
                hi = mid;
            else
                lo = mid;
        }
        w = 0.5 * (lo + hi);
    }
    return w;
}

}  // namespace kellyfreq
