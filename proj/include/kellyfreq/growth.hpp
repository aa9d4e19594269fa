// growth.hpp
//
// Expected logarithmic growth of wealth under fixed-fraction betting, with
// transaction costs and interest lumped into the returns, plus the
// closed-form optima for the even-money Bernoulli gamble.

#pragma once

#include "kellyfreq/pmf.hpp"

namespace kellyfreq {

// Transaction-cost fraction charged on each bet update and per-period
// interest rate earned in the meantime.
struct CostModel {
    double epsilon = 0.0;
    double r = 0.0;

    CostModel() = default;
    CostModel(double epsilon, double r);  // validates 0 <= epsilon <= 1, r >= 0
};

enum class Boundary { interior, lower, upper };

const char* to_string(Boundary b);

struct OptResult {
    int n = 0;
    double k_star = 0.0;    // optimal betting fraction
    double g_star = 0.0;    // optimal per-period expected log growth
    double k_max = 1.0;     // upper end of the feasible fraction set
    Boundary boundary = Boundary::interior;
    int evaluations = 0;    // derivative evaluations spent by the optimizer
};

// Lumps costs into the returns: each atom x becomes
// (1+x)/(1+r)^n - epsilon - 1. Probabilities are unchanged. Note the result
// can have atoms below -1 when epsilon > 0; feasibility is restored by the
// survival bound feasible_k_max.
TotalReturnPmf modified_total_return(const TotalReturnPmf& total,
                                     const CostModel& costs);

// g_n(K) = log(1+r) + (1/n) sum_i p_i log(1 + K x~_i) over the modified
// atoms x~. Returns -infinity when any 1 + K x~_i <= 0; that is a value,
// not an error.
double growth_value(const TotalReturnPmf& total, double k,
                    const CostModel& costs = CostModel());

// Analytic derivative g'(K) = (1/n) sum_i p_i x~_i / (1 + K x~_i), with the
// same -infinity convention as growth_value.
double growth_derivative(const TotalReturnPmf& total, double k,
                         const CostModel& costs = CostModel());

// Survival bound on the fraction: 1/(1+epsilon). Equals 1 when costless.
double feasible_k_max(const CostModel& costs);

// Maximizes growth_value over K in [0, feasible_k_max] by bisection on the
// analytic derivative (the objective is concave). Interval tolerance 1e-12.
OptResult optimize_growth(const TotalReturnPmf& total,
                          const CostModel& costs = CostModel());

// Optimal fraction and growth for the even-money gamble X in {-1, +1} with
// win probability p, betting every n periods:
//   K* = (2^n p^n - 1) / (2^n - 1)
//   g* = p^n log p + ((1 - p^n)/n) log((1 - p^n)/(2^n - 1)) + log 2
// Requires 1/2 < p <= 1.
OptResult bernoulli_closed_form(double p, int n);

// Same gamble with transaction cost 0 < epsilon < 1 and r = 0. Below the
// threshold p_eps = ((1+epsilon)/2^n)^(1/n) the optimum is no betting.
// Otherwise
//   K* = (2^n p^n - epsilon - 1) / ((epsilon+1)(2^n - epsilon - 1))
// and g* is returned per period, i.e. normalized by 1/n so values are
// comparable across n.
OptResult bernoulli_cost_closed_form(double p, int n, double epsilon);

}  // namespace kellyfreq
