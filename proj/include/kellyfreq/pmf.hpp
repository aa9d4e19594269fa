// pmf.hpp
//
// Finite point-mass return distributions and the induced distribution of
// the n-period total return prod(1+X_k) - 1.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kellyfreq {

struct Atom {
    double x;  // return value, >= -1
    double p;  // probability, > 0
};

// Default bound on the atom count of a total-return distribution. Above it,
// adjacent atoms are merged lossily (see TotalReturnPmf::merged).
inline constexpr std::size_t kDefaultAtomCap = 100000;

// Single-period return distribution as a finite list of point masses.
// Atoms are strictly increasing in x and probabilities sum to 1 within 1e-12.
class ReturnPmf {
public:
    ReturnPmf(std::vector<Atom> atoms, std::string label);

    // Two-point gamble: loses gamma with probability 1-p, wins gamma with
    // probability p. Requires 0 < p < 1 and 0 < gamma <= 1.
    static ReturnPmf bernoulli(double p, double gamma);

    // Midpoint discretization of the uniform distribution on [a, b] into m
    // equal subintervals, one atom of mass 1/m at each midpoint.
    // Requires -1 < a < 0 < b and m >= 2.
    static ReturnPmf uniform(double a, double b, int m);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::string& label() const { return label_; }
    std::size_t size() const { return atoms_.size(); }
    double min_x() const { return atoms_.front().x; }
    double max_x() const { return atoms_.back().x; }
    double mean() const;
    bool has_total_loss_atom() const;  // atom at exactly -1

    // CSV with header "x,p", one atom per row, 17 significant digits.
    void write_csv(std::ostream& os) const;
    static ReturnPmf read_csv(std::istream& is, std::string label = "csv");

private:
    std::vector<Atom> atoms_;
    std::string label_;
};

// Distribution of the total return over n periods. Atoms are strictly
// increasing and probabilities sum to 1 within 1e-9. `merged` signals that
// the atom cap forced lossy merging, so atom values are bucket means of
// log(1+x) rather than exact lattice points.
class TotalReturnPmf {
public:
    TotalReturnPmf(int n, std::vector<Atom> atoms, bool merged);

    int n() const { return n_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    bool merged() const { return merged_; }
    double mean() const;

private:
    int n_;
    std::vector<Atom> atoms_;
    bool merged_;
};

// Builds total-return distributions one period at a time, so a sweep over
// n can reuse the work done for n-1. State after construction is n=1.
class TotalReturnBuilder {
public:
    TotalReturnBuilder(const ReturnPmf& base, std::size_t cap = kDefaultAtomCap);

    void step();  // extend by one period
    int periods() const { return n_; }
    bool merged() const { return merged_; }
    TotalReturnPmf build() const;

private:
    struct Mass {
        double g;  // 1 + x, strictly positive
        double p;
    };

    std::vector<Mass> reduce_materialized(std::vector<Mass> products) const;
    std::vector<Mass> reduce_streaming() const;

    std::vector<Mass> base_pos_;
    double base_zero_;  // probability of the x = -1 atom of the base
    std::vector<Mass> pos_;
    double zero_;
    bool merged_;
    int n_;
    std::size_t cap_;
};

// Distribution of prod_{k<n}(1+X(k)) - 1 for i.i.d. X ~ base, by iterated
// convolution in the multiplicative domain. Atoms whose (1+x) values agree
// within 1e-12 relative are merged exactly; if the atom count would exceed
// cap, adjacent atoms in log(1+x) order are merged preserving total
// probability and the probability-weighted mean of log(1+x).
TotalReturnPmf total_return_pmf(const ReturnPmf& base, int n,
                                std::size_t cap = kDefaultAtomCap);

}  // namespace kellyfreq
