// experiments.hpp
//
// Frequency sweeps, conjecture scans, and the study tables behind the
// tool's standard outputs, all emitted as deterministic CSV.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "kellyfreq/attractiveness.hpp"
#include "kellyfreq/growth.hpp"
#include "kellyfreq/pmf.hpp"

namespace kellyfreq {

struct SweepRow {
    int n = 0;
    double k_star = 0.0;
    double g_star = 0.0;
    double e_star = 0.0;  // g_1* - g_n*, exactly 0 for the n = 1 row
    double theta = 0.0;   // attractiveness of the base distribution
    bool merged = false;  // lossy atom merging occurred at this n
};

// One optimization per n = 1..n_max on the n-period total return of dist.
std::vector<SweepRow> frequency_sweep(const ReturnPmf& dist, int n_max,
                                      const CostModel& costs = CostModel(),
                                      std::size_t cap = kDefaultAtomCap);

// Scan for a violation of "g_n* is non-increasing in n" (costless). A
// violation would be a counterexample of real interest, so the first
// offending triple is reported verbatim.
struct Conjecture1Report {
    bool violated = false;
    int n = 0;  // first n with g_n* < g_{n+1}* - tol, 0 if none
    double g_n = 0.0;
    double g_next = 0.0;
    double tol = 0.0;
    std::vector<SweepRow> rows;
};

Conjecture1Report conjecture1_scan(const ReturnPmf& dist, int n_max,
                                   double tol = 1e-10,
                                   std::size_t cap = kDefaultAtomCap);

// Contingency between the attractiveness inequality (theta <= 1) and flat
// growth across frequencies (max_n |g_1* - g_n*| <= eq_tol). eq_tol
// separates optimizer-level equality (~1e-12) from the smallest genuine
// gaps seen near thresholds (~1e-4).
struct Conjecture2Report {
    bool satisfied = false;
    bool flat = false;
    double theta = 0.0;
    double max_gap = 0.0;
    double eq_tol = 0.0;
    std::vector<SweepRow> rows;
};

Conjecture2Report conjecture2_scan(const ReturnPmf& dist, int n_max,
                                   double eq_tol = 1e-9,
                                   std::size_t cap = kDefaultAtomCap);

// Per-period optimal growth of the even-money gamble under transaction
// cost epsilon, for each p and n = 1..n_max, with the best waiting period.
struct Figure3Table {
    double epsilon = 0.0;
    int n_max = 0;
    std::vector<double> p_values;
    std::vector<std::vector<double>> k_star;  // [p index][n-1]
    std::vector<std::vector<double>> g_star;
    std::vector<int> argmax_n;                // per p, smallest maximizer
};

Figure3Table figure3_table(const std::vector<double>& p_list, int n_max,
                           double epsilon);

// (|a|, b_min(a)) rows, sorted ascending in |a|.
struct Figure5Row {
    double abs_a = 0.0;
    double b_min = 0.0;
};

std::vector<Figure5Row> figure5_table(const std::vector<double>& a_grid);

// CSV emission. Doubles are printed with 17 significant digits and lines
// end in LF, so identical inputs give bit-identical files. A nonempty
// `source` adds a leading "# source=<source>" comment line.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os,
                     const std::string& source = "");
void write_figure3_csv(const Figure3Table& table, std::ostream& os);
void write_figure5_csv(const std::vector<Figure5Row>& rows, std::ostream& os);

// Seeded generators for the conjecture evidence suites: 3-6 atoms with
// support inside (-0.95, 3) and renormalized positive weights. The
// rejection-filtered variants redraw deterministically until the predicate
// holds, so a given seed always yields the same distribution.
ReturnPmf random_pmf(std::uint64_t seed);
ReturnPmf random_attractive_pmf(std::uint64_t seed);    // theta <= 1
ReturnPmf random_positive_edge_pmf(std::uint64_t seed); // E[X] > 0

}  // namespace kellyfreq
