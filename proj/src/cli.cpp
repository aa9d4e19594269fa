// cli.cpp
//
// Subcommand front end: optimize, sweep, attract, costs, bmin, simulate,
// conjectures. Single results go out as JSON objects, tables as CSV, both
// with doubles at 17 significant digits so output is reproducible and
// round-trips exactly.

#include "kellyfreq/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kellyfreq/attractiveness.hpp"
#include "kellyfreq/experiments.hpp"
#include "kellyfreq/growth.hpp"
#include "kellyfreq/pmf.hpp"
#include "kellyfreq/simulate.hpp"

namespace kellyfreq {

namespace {

std::string jnum(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* jbool(bool b) { return b ? "true" : "false"; }

std::vector<double> parse_doubles(const std::string& text, const char* flag) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        double v = 0.0;
        const char* begin = text.data() + pos;
        const char* end = text.data() + comma;
        auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc() || res.ptr != end)
            throw CLI::ValidationError(std::string(flag) +
                                       ": expected a comma-separated list of numbers");
        values.push_back(v);
        pos = comma + 1;
    }
    return values;
}

struct DistArgs {
    std::string bernoulli;
    std::string uniform;
    std::string dist_file;
    std::string dump_dist;
};

void add_dist_flags(CLI::App* cmd, DistArgs& d) {
    cmd->add_option("--bernoulli", d.bernoulli,
                    "two-point gamble 'p,gamma': wins gamma w.p. p, loses gamma otherwise");
    cmd->add_option("--uniform", d.uniform,
                    "uniform returns 'a,b[,m]', midpoint-discretized into m atoms (default 64)");
    cmd->add_option("--dist-file", d.dist_file,
                    "CSV distribution file with header 'x,p', one atom per row");
    cmd->add_option("--dump-dist", d.dump_dist,
                    "also write the parsed distribution as CSV to this path");
}

void check_one_dist(const DistArgs& d) {
    const int given = static_cast<int>(!d.bernoulli.empty()) +
                      static_cast<int>(!d.uniform.empty()) +
                      static_cast<int>(!d.dist_file.empty());
    if (given != 1)
        throw CLI::ValidationError(
            "exactly one of --bernoulli, --uniform, --dist-file is required");
}

struct UniformSpec {
    double a, b;
    int m;
};

UniformSpec parse_uniform(const std::string& text) {
    const std::vector<double> v = parse_doubles(text, "--uniform");
    if (v.size() != 2 && v.size() != 3)
        throw CLI::ValidationError("--uniform expects 'a,b' or 'a,b,m'");
    UniformSpec spec{v[0], v[1], 64};
    if (v.size() == 3) {
        spec.m = static_cast<int>(v[2]);
        if (static_cast<double>(spec.m) != v[2])
            throw CLI::ValidationError("--uniform atom count must be an integer");
    }
    return spec;
}

ReturnPmf resolve_dist(const DistArgs& d) {
    check_one_dist(d);
    if (!d.bernoulli.empty()) {
        const std::vector<double> v = parse_doubles(d.bernoulli, "--bernoulli");
        if (v.size() != 2) throw CLI::ValidationError("--bernoulli expects 'p,gamma'");
        return ReturnPmf::bernoulli(v[0], v[1]);
    }
    if (!d.uniform.empty()) {
        const UniformSpec u = parse_uniform(d.uniform);
        return ReturnPmf::uniform(u.a, u.b, u.m);
    }
    std::ifstream in(d.dist_file);
    if (!in) throw std::runtime_error("cannot open distribution file: " + d.dist_file);
    return ReturnPmf::read_csv(in, "file(" + d.dist_file + ")");
}

void maybe_dump(const DistArgs& d, const ReturnPmf& pmf) {
    if (d.dump_dist.empty()) return;
    std::ofstream out(d.dump_dist, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open dump file: " + d.dump_dist);
    pmf.write_csv(out);
}

// Resolves --output: results go to the file when given, else to the
// session's output stream.
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void write_opt_json(const OptResult& res, std::ostream& os) {
    std::ostringstream s;
    s << "{\"n\": " << res.n << ", \"k_star\": " << jnum(res.k_star)
      << ", \"g_star\": " << jnum(res.g_star) << ", \"k_max\": " << jnum(res.k_max)
      << ", \"boundary\": \"" << to_string(res.boundary)
      << "\", \"evaluations\": " << res.evaluations << "}\n";
    os << s.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kelly fractions and expected log growth as a function of betting frequency"};
    app.require_subcommand(1);

    // optimize
    DistArgs opt_dist;
    int opt_n = 1;
    double opt_eps = 0.0, opt_r = 0.0;
    std::size_t opt_cap = kDefaultAtomCap;
    std::string opt_output;
    CLI::App* optimize = app.add_subcommand(
        "optimize", "optimal fraction and growth for one waiting period (JSON)");
    add_dist_flags(optimize, opt_dist);
    optimize->add_option("--n", opt_n, "periods between bet updates")->default_val(1);
    optimize->add_option("--epsilon", opt_eps, "transaction-cost fraction");
    optimize->add_option("--r", opt_r, "per-period interest rate");
    optimize->add_option("--cap", opt_cap, "atom cap for the total-return pmf");
    optimize->add_option("-o,--output", opt_output, "write result to this file");

    // sweep
    DistArgs sweep_dist;
    int sweep_nmax = 10;
    double sweep_eps = 0.0, sweep_r = 0.0;
    std::size_t sweep_cap = kDefaultAtomCap;
    std::string sweep_output;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "optimal growth for every waiting period n = 1..n_max (CSV)");
    add_dist_flags(sweep, sweep_dist);
    sweep->add_option("--n-max", sweep_nmax, "largest waiting period")->default_val(10);
    sweep->add_option("--epsilon", sweep_eps, "transaction-cost fraction");
    sweep->add_option("--r", sweep_r, "per-period interest rate");
    sweep->add_option("--cap", sweep_cap, "atom cap for the total-return pmf");
    sweep->add_option("-o,--output", sweep_output, "write table to this file");

    // attract
    DistArgs att_dist;
    std::string att_output;
    CLI::App* attract = app.add_subcommand(
        "attract", "attractiveness report E[1/(1+X)] (JSON; adds b_min for --uniform)");
    add_dist_flags(attract, att_dist);
    attract->add_option("-o,--output", att_output, "write result to this file");

    // costs
    std::string costs_plist = "0.6,0.7,0.8,0.9";
    int costs_nmax = 10;
    double costs_eps = 0.1;
    std::string costs_output;
    CLI::App* costs_cmd = app.add_subcommand(
        "costs", "per-period optimal growth under transaction costs, per p and n (CSV)");
    costs_cmd->add_option("--p-list", costs_plist, "comma-separated win probabilities");
    costs_cmd->add_option("--n-max", costs_nmax, "largest waiting period")->default_val(10);
    costs_cmd->add_option("--epsilon", costs_eps, "transaction-cost fraction")
        ->default_val(0.1);
    costs_cmd->add_option("-o,--output", costs_output, "write table to this file");

    // bmin
    std::string bmin_grid = "-0.9,-0.8,-0.7,-0.6,-0.5,-0.4,-0.3,-0.2,-0.1";
    std::string bmin_output;
    CLI::App* bmin_cmd = app.add_subcommand(
        "bmin", "minimal attractive upper support b_min(a) for uniform returns (CSV)");
    bmin_cmd->add_option("--a-grid", bmin_grid, "comma-separated lower supports in (-1, 0)");
    bmin_cmd->add_option("-o,--output", bmin_output, "write table to this file");

    // simulate
    DistArgs sim_dist;
    SimConfig sim_cfg;
    double sim_eps = 0.0, sim_r = 0.0;
    std::string sim_traj, sim_output;
    CLI::App* sim_cmd = app.add_subcommand(
        "simulate", "Monte-Carlo check of the wealth recursion (JSON)");
    add_dist_flags(sim_cmd, sim_dist);
    sim_cmd->add_option("--k", sim_cfg.k, "betting fraction")->required();
    sim_cmd->add_option("--n", sim_cfg.n, "periods between bet updates")->default_val(1);
    sim_cmd->add_option("--horizon", sim_cfg.horizon, "total periods, a multiple of n")
        ->required();
    sim_cmd->add_option("--trials", sim_cfg.trials, "independent paths")->default_val(100);
    sim_cmd->add_option("--seed", sim_cfg.seed, "reproducibility seed");
    sim_cmd->add_option("--epsilon", sim_eps, "transaction-cost fraction");
    sim_cmd->add_option("--r", sim_r, "per-period interest rate");
    sim_cmd->add_option("--v0", sim_cfg.v0, "initial wealth")->default_val(1.0);
    sim_cmd->add_option("--trajectories", sim_traj,
                        "dump per-trial wealth paths as CSV to this path (large)");
    sim_cmd->add_option("-o,--output", sim_output, "write result to this file");

    // conjectures
    DistArgs conj_dist;
    int conj_nmax = 10;
    double conj_tol = 1e-10, conj_eqtol = 1e-9;
    std::size_t conj_cap = kDefaultAtomCap;
    std::string conj_output;
    CLI::App* conj_cmd = app.add_subcommand(
        "conjectures", "monotonicity and flatness scan reports (JSON)");
    add_dist_flags(conj_cmd, conj_dist);
    conj_cmd->add_option("--n-max", conj_nmax, "largest waiting period")->default_val(10);
    conj_cmd->add_option("--tol", conj_tol, "slack for the monotonicity scan");
    conj_cmd->add_option("--eq-tol", conj_eqtol, "slack for the flatness scan");
    conj_cmd->add_option("--cap", conj_cap, "atom cap for the total-return pmf");
    conj_cmd->add_option("-o,--output", conj_output, "write result to this file");

    try {
        app.parse(argc, argv);

        if (optimize->parsed()) {
            const ReturnPmf pmf = resolve_dist(opt_dist);
            maybe_dump(opt_dist, pmf);
            OutputTarget target(opt_output, out);
            const TotalReturnPmf total = total_return_pmf(pmf, opt_n, opt_cap);
            write_opt_json(optimize_growth(total, CostModel(opt_eps, opt_r)),
                           target.stream());
        } else if (sweep->parsed()) {
            const ReturnPmf pmf = resolve_dist(sweep_dist);
            maybe_dump(sweep_dist, pmf);
            OutputTarget target(sweep_output, out);
            write_sweep_csv(
                frequency_sweep(pmf, sweep_nmax, CostModel(sweep_eps, sweep_r), sweep_cap),
                target.stream());
        } else if (attract->parsed()) {
            check_one_dist(att_dist);
            OutputTarget target(att_output, out);
            if (!att_dist.uniform.empty()) {
                const UniformSpec u = parse_uniform(att_dist.uniform);
                const double th = uniform_theta(u.a, u.b);
                maybe_dump(att_dist, ReturnPmf::uniform(u.a, u.b, u.m));
                std::ostringstream s;
                s << "{\"theta\": " << jnum(th)
                  << ", \"satisfied\": " << jbool(th <= 1.0 + 1e-14)
                  << ", \"jensen_bound\": " << jnum(1.0 / th - 1.0)
                  << ", \"ex\": " << jnum(0.5 * (u.a + u.b))
                  << ", \"b_min\": " << jnum(b_min(u.a)) << "}\n";
                target.stream() << s.str();
            } else {
                const ReturnPmf pmf = resolve_dist(att_dist);
                maybe_dump(att_dist, pmf);
                const AttractReport rep = theta(pmf);
                std::ostringstream s;
                s << "{\"theta\": " << jnum(rep.theta)
                  << ", \"satisfied\": " << jbool(rep.satisfied)
                  << ", \"jensen_bound\": " << jnum(rep.jensen_bound)
                  << ", \"ex\": " << jnum(rep.ex) << "}\n";
                target.stream() << s.str();
            }
        } else if (costs_cmd->parsed()) {
            OutputTarget target(costs_output, out);
            write_figure3_csv(figure3_table(parse_doubles(costs_plist, "--p-list"),
                                            costs_nmax, costs_eps),
                              target.stream());
        } else if (bmin_cmd->parsed()) {
            OutputTarget target(bmin_output, out);
            write_figure5_csv(figure5_table(parse_doubles(bmin_grid, "--a-grid")),
                              target.stream());
        } else if (sim_cmd->parsed()) {
            const ReturnPmf pmf = resolve_dist(sim_dist);
            maybe_dump(sim_dist, pmf);
            OutputTarget target(sim_output, out);
            sim_cfg.costs = CostModel(sim_eps, sim_r);
            SimResult res;
            if (!sim_traj.empty()) {
                std::ofstream traj(sim_traj, std::ios::binary);
                if (!traj)
                    throw std::runtime_error("cannot open trajectory file: " + sim_traj);
                traj << "trial,step,v\n";
                res = simulate(pmf, sim_cfg, [&traj](long trial, long step, double v) {
                    char buf[96];
                    std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g\n", trial, step, v);
                    traj << buf;
                });
            } else {
                res = simulate(pmf, sim_cfg);
            }
            std::ostringstream s;
            s << "{\"mean_log_growth\": " << jnum(res.mean_log_growth)
              << ", \"std_error\": " << jnum(res.std_error)
              << ", \"ruin_count\": " << res.ruin_count
              << ", \"ruin_excluded\": " << jbool(res.ruin_excluded) << "}\n";
            target.stream() << s.str();
        } else if (conj_cmd->parsed()) {
            const ReturnPmf pmf = resolve_dist(conj_dist);
            maybe_dump(conj_dist, pmf);
            OutputTarget target(conj_output, out);
            const Conjecture1Report c1 = conjecture1_scan(pmf, conj_nmax, conj_tol, conj_cap);
            const Conjecture2Report c2 = conjecture2_scan(pmf, conj_nmax, conj_eqtol, conj_cap);
            std::ostringstream s;
            s << "{\"conjecture1\": {\"violated\": " << jbool(c1.violated)
              << ", \"n\": " << c1.n << ", \"g_n\": " << jnum(c1.g_n)
              << ", \"g_next\": " << jnum(c1.g_next) << ", \"tol\": " << jnum(c1.tol)
              << "}, \"conjecture2\": {\"satisfied\": " << jbool(c2.satisfied)
              << ", \"flat\": " << jbool(c2.flat) << ", \"theta\": " << jnum(c2.theta)
              << ", \"max_gap\": " << jnum(c2.max_gap)
              << ", \"eq_tol\": " << jnum(c2.eq_tol) << "}}\n";
            target.stream() << s.str();
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace kellyfreq
