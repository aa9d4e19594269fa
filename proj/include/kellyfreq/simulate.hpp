// simulate.hpp
//
// Monte-Carlo simulation of the wealth recursion V <- (1 + K X) V with a
// fixed fraction applied every n periods, validating that realized log
// growth concentrates at the analytic objective.

#pragma once

#include <cstdint>
#include <functional>

#include "kellyfreq/growth.hpp"
#include "kellyfreq/pmf.hpp"

namespace kellyfreq {

struct SimConfig {
    double k = 0.0;          // betting fraction, in [0, feasible_k_max]
    int n = 1;               // periods between bet updates
    long horizon = 0;        // total periods, a positive multiple of n
    long trials = 1;
    std::uint64_t seed = 0;
    CostModel costs;
    double v0 = 1.0;         // initial wealth
};

struct SimResult {
    double mean_log_growth = 0.0;  // per-period, averaged over surviving trials
    double std_error = 0.0;        // standard error of that average
    long ruin_count = 0;           // trials whose wealth hit <= 0
    bool ruin_excluded = false;    // ruined trials were left out of the mean
};

// Called after every block with (trial, elapsed periods, wealth); also once
// per trial at period 0 with the initial wealth. Must not throw.
using TrajectoryObserver = std::function<void(long, long, double)>;

// Runs cfg.trials independent paths of horizon/n blocks. Each block draws n
// i.i.d. returns from dist by inverse-CDF sampling, forms the modified
// block return, and updates wealth by V <- V (1+r)^n (1 + K X~). Trials use
// seeds split deterministically from cfg.seed, so results are bit-identical
// for identical inputs.
SimResult simulate(const ReturnPmf& dist, const SimConfig& cfg,
                   const TrajectoryObserver& observer = {});

}  // namespace kellyfreq
