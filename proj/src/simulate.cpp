// simulate.cpp
//
// Seeded Monte-Carlo of the fixed-fraction wealth recursion. Each trial
// gets its own generator seeded by a splitmix64 stream off the master seed,
// and uniforms come from the top 53 bits of mt19937_64 output, so results
// are reproducible bit-for-bit.

#include "kellyfreq/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace kellyfreq {

namespace {

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double canonical_u(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

void validate(const ReturnPmf& dist, const SimConfig& cfg) {
    (void)dist;
    if (cfg.n < 1) throw std::invalid_argument("rebalance period must be >= 1");
    if (cfg.horizon < cfg.n || cfg.horizon % cfg.n != 0)
        throw std::invalid_argument("horizon must be a positive multiple of the rebalance period");
    if (cfg.trials < 1) throw std::invalid_argument("trial count must be >= 1");
    if (!(cfg.v0 > 0.0) || !std::isfinite(cfg.v0))
        throw std::invalid_argument("initial wealth must be positive");
    const double kmax = feasible_k_max(cfg.costs);
    if (!(cfg.k >= 0.0) || cfg.k > kmax)
        throw std::invalid_argument("fraction must lie in [0, 1/(1+epsilon)]");
}

}  // namespace

SimResult simulate(const ReturnPmf& dist, const SimConfig& cfg,
                   const TrajectoryObserver& observer) {
    validate(dist, cfg);

    const std::vector<Atom>& atoms = dist.atoms();
    std::vector<double> cdf(atoms.size());
    long double acc = 0.0L;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        acc += atoms[i].p;
        cdf[i] = static_cast<double>(acc);
    }
    cdf.back() = 1.0;  // guard against rounding shortfall at the top

    const long blocks = cfg.horizon / cfg.n;
    const double rn = std::pow(1.0 + cfg.costs.r, cfg.n);
    const double log_rn = cfg.n * std::log1p(cfg.costs.r);

    std::vector<double> per_trial;
    per_trial.reserve(static_cast<std::size_t>(cfg.trials));
    long ruined = 0;

    // Wealth is tracked in the log domain: long horizons overflow the raw
    // product long before the per-period growth stops being representable.
    for (long t = 0; t < cfg.trials; ++t) {
        std::mt19937_64 eng(splitmix64_at(cfg.seed, static_cast<std::uint64_t>(t)));
        double log_v = 0.0;  // log of V / v0
        if (observer) observer(t, 0, cfg.v0);
        bool alive = true;
        for (long b = 0; b < blocks; ++b) {
            double block_factor = 1.0;
            for (int j = 0; j < cfg.n; ++j) {
                const double u = canonical_u(eng);
                const std::size_t idx = static_cast<std::size_t>(
                    std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
                block_factor *= 1.0 + atoms[idx].x;
            }
            const double x_block = block_factor / rn - cfg.costs.epsilon - 1.0;
            const double bet_factor = 1.0 + cfg.k * x_block;
            if (!(bet_factor > 0.0)) {
                alive = false;
                if (observer) observer(t, (b + 1) * cfg.n, 0.0);
                break;
            }
            log_v += log_rn + std::log(bet_factor);
            if (observer) observer(t, (b + 1) * cfg.n, cfg.v0 * std::exp(log_v));
        }
        if (alive)
            per_trial.push_back(log_v / static_cast<double>(cfg.horizon));
        else
            ++ruined;
    }

    SimResult res;
    res.ruin_count = ruined;
    res.ruin_excluded = ruined > 0;
    if (per_trial.empty()) {
        res.mean_log_growth = -std::numeric_limits<double>::infinity();
        res.std_error = 0.0;
        return res;
    }
    const std::size_t m = per_trial.size();
    long double sum = 0.0L;
    for (double g : per_trial) sum += g;
    const double mean = static_cast<double>(sum / static_cast<long double>(m));
    double se = 0.0;
    if (m > 1) {
        long double ss = 0.0L;
        for (double g : per_trial) {
            const long double d = static_cast<long double>(g) - mean;
            ss += d * d;
        }
        se = std::sqrt(static_cast<double>(ss) /
                       (static_cast<double>(m) * static_cast<double>(m - 1)));
    }
    res.mean_log_growth = mean;
    res.std_error = se;
    return res;
}

}  // namespace kellyfreq
