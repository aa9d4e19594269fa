// oracles.hpp
//
// Test-only reference implementations, deliberately independent of the
// library's convolution path: total-return distributions built by explicit
// enumeration of every outcome sequence.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "kellyfreq/pmf.hpp"

namespace oracles {

// Enumerates all m^n outcome sequences with an odometer, computes each
// product of (1+x) factors in sequence order, then clusters values that
// agree within 1e-12 relative on (1+x). Feasible for m <= 4, n <= 8.
inline std::vector<kellyfreq::Atom> brute_force_total(const kellyfreq::ReturnPmf& base,
                                                      int n) {
    const std::vector<kellyfreq::Atom>& atoms = base.atoms();
    const std::size_t m = atoms.size();

    struct Outcome {
        double g;
        double p;
    };
    std::vector<Outcome> outcomes;
    std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
    for (;;) {
        double g = 1.0, p = 1.0;
        for (std::size_t k = 0; k < digits.size(); ++k) {
            g *= 1.0 + atoms[digits[k]].x;
            p *= atoms[digits[k]].p;
        }
        outcomes.push_back({g, p});
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == m) digits[pos++] = 0;
        if (pos == digits.size()) break;
    }

    std::sort(outcomes.begin(), outcomes.end(),
              [](const Outcome& a, const Outcome& b) { return a.g < b.g; });

    std::vector<kellyfreq::Atom> result;
    std::size_t i = 0;
    while (i < outcomes.size()) {
        const double head = outcomes[i].g;
        const double limit = head * (1.0 + 1e-12);
        double psum = 0.0, gsum = 0.0;
        std::size_t j = i;
        for (; j < outcomes.size() && outcomes[j].g <= limit; ++j) {
            psum += outcomes[j].p;
            gsum += outcomes[j].p * outcomes[j].g;
        }
        result.push_back({gsum / psum - 1.0, psum});
        i = j;
    }
    return result;
}

// Small random distributions (2..max_atoms atoms, well-separated support in
// (-0.9, 2)) for oracle comparisons.
inline kellyfreq::ReturnPmf small_random_pmf(std::uint64_t seed, int max_atoms = 4) {
    std::mt19937_64 eng(seed);
    auto u = [&eng] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
    const int m = 2 + static_cast<int>(u() * (max_atoms - 1));
    std::vector<double> xs;
    for (;;) {
        xs.clear();
        for (int i = 0; i < m; ++i) xs.push_back(-0.9 + u() * 2.9);
        std::sort(xs.begin(), xs.end());
        bool ok = true;
        for (int i = 0; i + 1 < m; ++i)
            if (xs[static_cast<std::size_t>(i + 1)] - xs[static_cast<std::size_t>(i)] < 1e-3)
                ok = false;
        if (ok) break;
    }
    std::vector<double> ws;
    long double wsum = 0.0L;
    for (int i = 0; i < m; ++i) {
        ws.push_back(0.1 + u());
        wsum += ws.back();
    }
    std::vector<kellyfreq::Atom> atoms;
    for (int i = 0; i < m; ++i)
        atoms.push_back({xs[static_cast<std::size_t>(i)],
                         static_cast<double>(ws[static_cast<std::size_t>(i)] / wsum)});
    return kellyfreq::ReturnPmf(std::move(atoms), "oracle-random");
}

}  // namespace oracles
