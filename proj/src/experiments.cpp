// experiments.cpp
//
// Sweeps over the waiting period n, conjecture scans, study tables, and
// their CSV emission. Everything here is deterministic: fixed formatting,
// fixed random-pmf scheme, no time or locale dependence.

#include "kellyfreq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

namespace kellyfreq {

namespace {

void format_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

void format_int(std::string& out, long v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%ld", v);
    out += buf;
}

}  // namespace

std::vector<SweepRow> frequency_sweep(const ReturnPmf& dist, int n_max,
                                      const CostModel& costs, std::size_t cap) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    const double base_theta = theta(dist).theta;

    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max));
    TotalReturnBuilder builder(dist, cap);
    double g1 = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) builder.step();
        const TotalReturnPmf total = builder.build();
        const OptResult opt = optimize_growth(total, costs);
        if (n == 1) g1 = opt.g_star;
        rows.push_back({n, opt.k_star, opt.g_star, n == 1 ? 0.0 : g1 - opt.g_star,
                        base_theta, total.merged()});
    }
    return rows;
}

Conjecture1Report conjecture1_scan(const ReturnPmf& dist, int n_max, double tol,
                                   std::size_t cap) {
    if (n_max < 2) throw std::invalid_argument("n_max must be >= 2");
    Conjecture1Report rep;
    rep.tol = tol;
    rep.rows = frequency_sweep(dist, n_max, CostModel(), cap);
    for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) {
        if (rep.rows[i].g_star < rep.rows[i + 1].g_star - tol) {
            rep.violated = true;
            rep.n = rep.rows[i].n;
            rep.g_n = rep.rows[i].g_star;
            rep.g_next = rep.rows[i + 1].g_star;
            break;
        }
    }
    return rep;
}

Conjecture2Report conjecture2_scan(const ReturnPmf& dist, int n_max, double eq_tol,
                                   std::size_t cap) {
    if (n_max < 2) throw std::invalid_argument("n_max must be >= 2");
    Conjecture2Report rep;
    rep.eq_tol = eq_tol;
    rep.rows = frequency_sweep(dist, n_max, CostModel(), cap);
    rep.theta = rep.rows.front().theta;
    rep.satisfied = rep.theta <= 1.0 + 1e-14;
    rep.max_gap = 0.0;
    for (const SweepRow& row : rep.rows)
        rep.max_gap = std::max(rep.max_gap, std::abs(row.e_star));
    rep.flat = rep.max_gap <= eq_tol;
    return rep;
}

Figure3Table figure3_table(const std::vector<double>& p_list, int n_max,
                           double epsilon) {
    if (p_list.empty()) throw std::invalid_argument("p list must not be empty");
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    Figure3Table table;
    table.epsilon = epsilon;
    table.n_max = n_max;
    table.p_values = p_list;
    for (double p : p_list) {
        std::vector<double> ks, gs;
        ks.reserve(static_cast<std::size_t>(n_max));
        gs.reserve(static_cast<std::size_t>(n_max));
        int best = 1;
        for (int n = 1; n <= n_max; ++n) {
            const OptResult res = bernoulli_cost_closed_form(p, n, epsilon);
            ks.push_back(res.k_star);
            gs.push_back(res.g_star);
            if (res.g_star > gs[static_cast<std::size_t>(best - 1)]) best = n;
        }
        table.k_star.push_back(std::move(ks));
        table.g_star.push_back(std::move(gs));
        table.argmax_n.push_back(best);
    }
    return table;
}

std::vector<Figure5Row> figure5_table(const std::vector<double>& a_grid) {
    if (a_grid.empty()) throw std::invalid_argument("a grid must not be empty");
    std::vector<Figure5Row> rows;
    rows.reserve(a_grid.size());
    for (double a : a_grid) rows.push_back({std::abs(a), b_min(a)});
    std::sort(rows.begin(), rows.end(),
              [](const Figure5Row& l, const Figure5Row& r) { return l.abs_a < r.abs_a; });
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os,
                     const std::string& source) {
    std::string out;
    if (!source.empty()) out += "# source=" + source + "\n";
    out += "n,k_star,g_star,e_star,theta,merged\n";
    for (const SweepRow& row : rows) {
        format_int(out, row.n);
        out += ',';
        format_double(out, row.k_star);
        out += ',';
        format_double(out, row.g_star);
        out += ',';
        format_double(out, row.e_star);
        out += ',';
        format_double(out, row.theta);
        out += ',';
        out += row.merged ? '1' : '0';
        out += '\n';
    }
    os << out;
}

void write_figure3_csv(const Figure3Table& table, std::ostream& os) {
    std::string out = "# source=figure3\n";
    out += "p,n,k_star,g_star,argmax_n\n";
    for (std::size_t i = 0; i < table.p_values.size(); ++i) {
        for (int n = 1; n <= table.n_max; ++n) {
            format_double(out, table.p_values[i]);
            out += ',';
            format_int(out, n);
            out += ',';
            format_double(out, table.k_star[i][static_cast<std::size_t>(n - 1)]);
            out += ',';
            format_double(out, table.g_star[i][static_cast<std::size_t>(n - 1)]);
            out += ',';
            format_int(out, table.argmax_n[i]);
            out += '\n';
        }
    }
    os << out;
}

void write_figure5_csv(const std::vector<Figure5Row>& rows, std::ostream& os) {
    std::string out = "# source=figure5\n";
    out += "abs_a,b_min\n";
    for (const Figure5Row& row : rows) {
        format_double(out, row.abs_a);
        out += ',';
        format_double(out, row.b_min);
        out += '\n';
    }
    os << out;
}

namespace {

double canonical_u(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t round) {
    std::uint64_t z = seed + (round + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

ReturnPmf draw_pmf(std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    const int m = 3 + static_cast<int>(canonical_u(eng) * 4.0);  // 3..6 atoms
    std::vector<double> xs;
    for (;;) {
        xs.clear();
        for (int i = 0; i < m; ++i) xs.push_back(-0.95 + canonical_u(eng) * 3.95);
        std::sort(xs.begin(), xs.end());
        bool separated = true;
        for (int i = 0; i + 1 < m; ++i)
            if (xs[static_cast<std::size_t>(i + 1)] - xs[static_cast<std::size_t>(i)] < 1e-6)
                separated = false;
        if (separated) break;
    }
    std::vector<double> ws(static_cast<std::size_t>(m));
    long double wsum = 0.0L;
    for (double& w : ws) {
        w = 0.05 + canonical_u(eng);
        wsum += w;
    }
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        atoms.push_back({xs[static_cast<std::size_t>(i)],
                         static_cast<double>(ws[static_cast<std::size_t>(i)] / wsum)});
    char label[48];
    std::snprintf(label, sizeof label, "random(seed=%llu)",
                  static_cast<unsigned long long>(seed));
    return ReturnPmf(std::move(atoms), label);
}

}  // namespace

ReturnPmf random_pmf(std::uint64_t seed) { return draw_pmf(mix_seed(seed, 0)); }

ReturnPmf random_attractive_pmf(std::uint64_t seed) {
    for (std::uint64_t round = 0;; ++round) {
        ReturnPmf pmf = draw_pmf(mix_seed(seed, round));
        if (theta(pmf).theta <= 1.0) return pmf;
    }
}

ReturnPmf random_positive_edge_pmf(std::uint64_t seed) {
    for (std::uint64_t round = 0;; ++round) {
        ReturnPmf pmf = draw_pmf(mix_seed(seed, round));
        if (pmf.mean() > 0.0) return pmf;
    }
}

}  // namespace kellyfreq
