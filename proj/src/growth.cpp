// growth.cpp
//
// Expected log growth evaluation and its maximization over the feasible
// fraction set. The objective is concave, so the optimizer bisects on the
// analytic derivative; regions where some 1 + K x~ <= 0 behave like
// derivative -infinity and the bisection shrinks away from them.

#include "kellyfreq/growth.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace kellyfreq {

namespace {

constexpr double kIntervalTol = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Cost-modified atoms plus the bookkeeping needed to evaluate g and g'.
struct ModifiedPmf {
    std::vector<Atom> atoms;
    int n;
    double log1pr;
};

ModifiedPmf apply_costs(const TotalReturnPmf& total, const CostModel& costs) {
    ModifiedPmf mod;
    mod.n = total.n();
    mod.log1pr = std::log1p(costs.r);
    const double discount = std::pow(1.0 + costs.r, total.n());
    mod.atoms.reserve(total.atoms().size());
    for (const Atom& a : total.atoms())
        mod.atoms.push_back({(1.0 + a.x) / discount - costs.epsilon - 1.0, a.p});
    return mod;
}

double value_at(const ModifiedPmf& mod, double k) {
    long double acc = 0.0L;
    for (const Atom& a : mod.atoms) {
        const double t = 1.0 + k * a.x;
        if (!(t > 0.0)) return kNegInf;
        acc += static_cast<long double>(a.p) * std::log1p(k * a.x);
    }
    return mod.log1pr + static_cast<double>(acc) / mod.n;
}

double derivative_at(const ModifiedPmf& mod, double k) {
    long double acc = 0.0L;
    for (const Atom& a : mod.atoms) {
        const double t = 1.0 + k * a.x;
        if (!(t > 0.0)) return kNegInf;
        acc += static_cast<long double>(a.p) * a.x / t;
    }
    return static_cast<double>(acc) / mod.n;
}

}  // namespace

CostModel::CostModel(double epsilon_, double r_) : epsilon(epsilon_), r(r_) {
    if (!(epsilon >= 0.0) || !(epsilon <= 1.0))
        throw std::invalid_argument("transaction cost must lie in [0, 1]");
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("interest rate must be nonnegative and finite");
}

const char* to_string(Boundary b) {
    switch (b) {
        case Boundary::interior: return "interior";
        case Boundary::lower: return "lower";
        case Boundary::upper: return "upper";
    }
    return "?";
}

TotalReturnPmf modified_total_return(const TotalReturnPmf& total,
                                     const CostModel& costs) {
    ModifiedPmf mod = apply_costs(total, costs);
    return TotalReturnPmf(total.n(), std::move(mod.atoms), total.merged());
}

double growth_value(const TotalReturnPmf& total, double k, const CostModel& costs) {
    if (!(k >= 0.0) || !std::isfinite(k))
        throw std::invalid_argument("fraction must be nonnegative and finite");
    return value_at(apply_costs(total, costs), k);
}

double growth_derivative(const TotalReturnPmf& total, double k,
                         const CostModel& costs) {
    if (!(k >= 0.0) || !std::isfinite(k))
        throw std::invalid_argument("fraction must be nonnegative and finite");
    return derivative_at(apply_costs(total, costs), k);
}

double feasible_k_max(const CostModel& costs) { return 1.0 / (1.0 + costs.epsilon); }

OptResult optimize_growth(const TotalReturnPmf& total, const CostModel& costs) {
    if (total.atoms().empty()) throw std::invalid_argument("invalid distribution");

    const ModifiedPmf mod = apply_costs(total, costs);
    const double kmax = feasible_k_max(costs);

    OptResult res;
    res.n = total.n();
    res.k_max = kmax;

    double d0 = derivative_at(mod, 0.0);
    res.evaluations = 1;
    if (d0 <= 0.0) {
        // No edge after costs: not betting is optimal.
        res.k_star = 0.0;
        res.g_star = mod.log1pr;
        res.boundary = Boundary::lower;
        return res;
    }

    double dmax = derivative_at(mod, kmax);
    ++res.evaluations;
    if (dmax >= 0.0) {
        res.k_star = kmax;
        res.g_star = value_at(mod, kmax);
        res.boundary = Boundary::upper;
        return res;
    }

    // d(lo) > 0 >= d(hi) throughout; a -inf at hi (total-loss atom at full
    // stake) just means hi keeps moving left.
    double lo = 0.0, hi = kmax;
    while (hi - lo > kIntervalTol) {
        const double mid = 0.5 * (lo + hi);
        ++res.evaluations;
        if (derivative_at(mod, mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    res.k_star = 0.5 * (lo + hi);
    res.g_star = value_at(mod, res.k_star);
    res.boundary = Boundary::interior;
    return res;
}

OptResult bernoulli_closed_form(double p, int n) {
    if (!(p > 0.5) || !(p <= 1.0))
        throw std::invalid_argument("win probability must lie in (1/2, 1]");
    if (n < 1) throw std::invalid_argument("periods must be >= 1");

    OptResult res;
    res.n = n;
    res.k_max = 1.0;
    if (p == 1.0) {
        res.k_star = 1.0;
        res.g_star = std::log(2.0);
        res.boundary = Boundary::upper;
        return res;
    }
    const double pn = std::pow(p, n);
    const double twon = std::pow(2.0, n);
    res.k_star = (std::pow(2.0 * p, n) - 1.0) / (twon - 1.0);
    res.g_star = pn * std::log(p) +
                 ((1.0 - pn) / n) * std::log((1.0 - pn) / (twon - 1.0)) +
                 std::log(2.0);
    res.boundary = Boundary::interior;
    return res;
}

OptResult bernoulli_cost_closed_form(double p, int n, double epsilon) {
    if (!(p > 0.5) || !(p <= 1.0))
        throw std::invalid_argument("win probability must lie in (1/2, 1]");
    if (n < 1) throw std::invalid_argument("periods must be >= 1");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("transaction cost must lie in (0, 1)");

    OptResult res;
    res.n = n;
    res.k_max = 1.0 / (1.0 + epsilon);

    const double twon = std::pow(2.0, n);
    const double p_eps = std::pow((1.0 + epsilon) / twon, 1.0 / n);
    if (p <= p_eps) {
        res.k_star = 0.0;
        res.g_star = 0.0;
        res.boundary = Boundary::lower;
        return res;
    }

    const double pn = std::pow(p, n);
    const double b = 1.0 + epsilon;
    const double a = twon - b;
    res.k_star = (twon * pn - b) / (b * a);
    if (p == 1.0) {
        res.g_star = std::log(twon / b) / n;
        res.boundary = Boundary::upper;
        return res;
    }
    // The optimum of the displayed objective, put on a per-period basis so
    // values are comparable across n.
    res.g_star = (pn * std::log(twon * pn / b) +
                  (1.0 - pn) * std::log(twon * (1.0 - pn) / a)) /
                 n;
    res.boundary = Boundary::interior;
    return res;
}

}  // namespace kellyfreq
