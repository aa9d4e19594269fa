// pmf.cpp
//
// Point-mass distributions and the multiplicative convolution that induces
// the n-period total return. The pipeline works on g = 1 + x factors: an
// atom at x = -1 contributes g = 0 and is tracked as a separate mass that
// absorbs every product it touches, so logs are only ever taken of strictly
// positive values.

#include "kellyfreq/pmf.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace kellyfreq {

namespace {

// Relative tolerance on (1+x) under which atoms count as the same lattice
// point: wide enough to collapse floating-point duplicates of commuted
// products, narrow enough to keep genuinely distinct atoms apart.
constexpr double kMergeRelTol = 1e-12;

// Largest pairwise-product count that is materialized and sorted exactly.
// Beyond it the step switches to streaming bucket accumulation, which is
// lossy by construction.
constexpr std::size_t kExactProductLimit = 4000000;

long double sum_probabilities(const std::vector<Atom>& atoms) {
    long double s = 0.0L;
    for (const Atom& a : atoms) s += a.p;
    return s;
}

void format_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

ReturnPmf::ReturnPmf(std::vector<Atom> atoms, std::string label)
    : atoms_(std::move(atoms)), label_(std::move(label)) {
    if (atoms_.empty())
        throw std::invalid_argument("return pmf needs at least one atom");
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        if (!std::isfinite(a.x))
            throw std::invalid_argument("atom value must be finite");
        if (a.x < -1.0)
            throw std::invalid_argument("atom value must be >= -1");
        if (!(a.p > 0.0) || !std::isfinite(a.p))
            throw std::invalid_argument("atom probability must be positive");
        if (i > 0 && !(atoms_[i - 1].x < a.x))
            throw std::invalid_argument("atom values must be strictly increasing");
    }
    long double s = sum_probabilities(atoms_);
    if (std::abs(static_cast<double>(s - 1.0L)) > 1e-12)
        throw std::invalid_argument("atom probabilities must sum to 1");
}

ReturnPmf ReturnPmf::bernoulli(double p, double gamma) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("bernoulli win probability must lie in (0, 1)");
    if (!(gamma > 0.0) || !(gamma <= 1.0))
        throw std::invalid_argument("bernoulli payoff scale must lie in (0, 1]");
    char label[64];
    std::snprintf(label, sizeof label, "bernoulli(p=%g, gamma=%g)", p, gamma);
    return ReturnPmf({{-gamma, 1.0 - p}, {gamma, p}}, label);
}

ReturnPmf ReturnPmf::uniform(double a, double b, int m) {
    if (!(a > -1.0) || !(a < 0.0))
        throw std::invalid_argument("uniform lower support must lie in (-1, 0)");
    if (!(b > 0.0) || !std::isfinite(b))
        throw std::invalid_argument("uniform upper support must be positive and finite");
    if (m < 2)
        throw std::invalid_argument("uniform discretization needs at least 2 atoms");
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(m));
    const double width = (b - a) / m;
    const double prob = 1.0 / m;
    for (int i = 0; i < m; ++i)
        atoms.push_back({a + (i + 0.5) * width, prob});
    char label[96];
    std::snprintf(label, sizeof label, "uniform(a=%g, b=%g, m=%d)", a, b, m);
    return ReturnPmf(std::move(atoms), label);
}

double ReturnPmf::mean() const {
    long double s = 0.0L;
    for (const Atom& a : atoms_) s += static_cast<long double>(a.p) * a.x;
    return static_cast<double>(s);
}

bool ReturnPmf::has_total_loss_atom() const { return atoms_.front().x == -1.0; }

void ReturnPmf::write_csv(std::ostream& os) const {
    std::string out = "x,p\n";
    for (const Atom& a : atoms_) {
        format_double(out, a.x);
        out += ',';
        format_double(out, a.p);
        out += '\n';
    }
    os << out;
}

ReturnPmf ReturnPmf::read_csv(std::istream& is, std::string label) {
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("distribution csv is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,p")
        throw std::invalid_argument("distribution csv must start with header 'x,p'");
    std::vector<Atom> atoms;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("distribution csv line " +
                                        std::to_string(line_no) + ": expected 'x,p'");
        Atom a{};
        const char* begin = line.data();
        auto rx = std::from_chars(begin, begin + comma, a.x);
        auto rp = std::from_chars(begin + comma + 1, begin + line.size(), a.p);
        if (rx.ec != std::errc() || rx.ptr != begin + comma ||
            rp.ec != std::errc() || rp.ptr != begin + line.size())
            throw std::invalid_argument("distribution csv line " +
                                        std::to_string(line_no) + ": malformed number");
        atoms.push_back(a);
    }
    return ReturnPmf(std::move(atoms), std::move(label));
}

TotalReturnPmf::TotalReturnPmf(int n, std::vector<Atom> atoms, bool merged)
    : n_(n), atoms_(std::move(atoms)), merged_(merged) {
    if (n_ < 1) throw std::invalid_argument("periods must be >= 1");
    if (atoms_.empty())
        throw std::invalid_argument("total-return pmf needs at least one atom");
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (!std::isfinite(atoms_[i].x) || !(atoms_[i].p > 0.0))
            throw std::invalid_argument("total-return atom out of range");
        if (i > 0 && !(atoms_[i - 1].x < atoms_[i].x))
            throw std::invalid_argument("total-return atoms must be strictly increasing");
    }
    long double s = sum_probabilities(atoms_);
    if (std::abs(static_cast<double>(s - 1.0L)) > 1e-9)
        throw std::invalid_argument("total-return probabilities must sum to 1");
}

double TotalReturnPmf::mean() const {
    long double s = 0.0L;
    for (const Atom& a : atoms_) s += static_cast<long double>(a.p) * a.x;
    return static_cast<double>(s);
}

TotalReturnBuilder::TotalReturnBuilder(const ReturnPmf& base, std::size_t cap)
    : base_zero_(0.0), zero_(0.0), merged_(false), n_(1), cap_(cap) {
    if (cap < base.size())
        throw std::invalid_argument("atom cap must be at least the base atom count");
    base_pos_.reserve(base.size());
    for (const Atom& a : base.atoms()) {
        if (a.x == -1.0)
            base_zero_ = a.p;
        else
            base_pos_.push_back({1.0 + a.x, a.p});
    }
    pos_ = base_pos_;
    zero_ = base_zero_;
}

// Exact path: sort the materialized products and collapse runs whose g
// values agree within kMergeRelTol of the run head, keeping the
// probability-weighted mean. Falls through to the lossy grid when the
// deduplicated count still exceeds the cap.
std::vector<TotalReturnBuilder::Mass> TotalReturnBuilder::reduce_materialized(
    std::vector<Mass> products) const {
    std::sort(products.begin(), products.end(),
              [](const Mass& a, const Mass& b) { return a.g < b.g; });
    std::vector<Mass> out;
    std::size_t i = 0;
    while (i < products.size()) {
        const double head = products[i].g;
        const double limit = head * (1.0 + kMergeRelTol);
        double psum = 0.0, gsum = 0.0;
        std::size_t j = i;
        for (; j < products.size() && products[j].g <= limit; ++j) {
            psum += products[j].p;
            gsum += products[j].p * products[j].g;
        }
        out.push_back({gsum / psum, psum});
        i = j;
    }
    return out;
}

// Lossy reduction used by both step paths: partition the log(1+x) range
// into `cap` equal buckets and merge everything inside a bucket to its
// probability-weighted mean log. This preserves total probability and
// E[log(1+X_total)] exactly (up to rounding), which is what keeps growth
// values at full stake immune to the merge.
namespace {

struct LogBuckets {
    double lmin, scale;
    std::size_t cap;
    std::vector<double> psum, plsum;

    LogBuckets(double lmin_, double lmax_, std::size_t cap_)
        : lmin(lmin_), scale(0.0), cap(cap_), psum(cap_, 0.0), plsum(cap_, 0.0) {
        if (lmax_ > lmin_) scale = static_cast<double>(cap_) / (lmax_ - lmin_);
    }

    void add(double l, double p) {
        double t = (l - lmin) * scale;
        if (t < 0.0) t = 0.0;
        std::size_t idx = static_cast<std::size_t>(t);
        if (idx >= cap) idx = cap - 1;
        psum[idx] += p;
        plsum[idx] += p * l;
    }
};

}  // namespace

std::vector<TotalReturnBuilder::Mass> TotalReturnBuilder::reduce_streaming() const {
    std::vector<double> la(pos_.size()), lb(base_pos_.size());
    for (std::size_t i = 0; i < pos_.size(); ++i) la[i] = std::log(pos_[i].g);
    for (std::size_t j = 0; j < base_pos_.size(); ++j) lb[j] = std::log(base_pos_[j].g);

    LogBuckets buckets(la.front() + lb.front(), la.back() + lb.back(), cap_);
    for (std::size_t i = 0; i < pos_.size(); ++i) {
        const double li = la[i];
        const double pi = pos_[i].p;
        for (std::size_t j = 0; j < base_pos_.size(); ++j)
            buckets.add(li + lb[j], pi * base_pos_[j].p);
    }
    std::vector<Mass> out;
    for (std::size_t idx = 0; idx < cap_; ++idx)
        if (buckets.psum[idx] > 0.0)
            out.push_back({std::exp(buckets.plsum[idx] / buckets.psum[idx]),
                           buckets.psum[idx]});
    return out;
}

void TotalReturnBuilder::step() {
    zero_ = zero_ + base_zero_ - zero_ * base_zero_;

    if (!pos_.empty() && !base_pos_.empty() &&
        !std::isfinite(pos_.back().g * base_pos_.back().g))
        throw std::overflow_error("total return exceeds double range");

    const std::size_t count = pos_.size() * base_pos_.size();
    if (count > 0 && count <= kExactProductLimit) {
        std::vector<Mass> products;
        products.reserve(count);
        for (const Mass& a : pos_)
            for (const Mass& b : base_pos_)
                products.push_back({a.g * b.g, a.p * b.p});
        std::vector<Mass> out = reduce_materialized(std::move(products));
        if (out.size() > cap_) {
            LogBuckets buckets(std::log(out.front().g), std::log(out.back().g), cap_);
            for (const Mass& m : out) buckets.add(std::log(m.g), m.p);
            out.clear();
            for (std::size_t idx = 0; idx < cap_; ++idx)
                if (buckets.psum[idx] > 0.0)
                    out.push_back({std::exp(buckets.plsum[idx] / buckets.psum[idx]),
                                   buckets.psum[idx]});
            merged_ = true;
        }
        pos_ = std::move(out);
    } else if (count > 0) {
        pos_ = reduce_streaming();
        merged_ = true;
    }
    ++n_;
}

TotalReturnPmf TotalReturnBuilder::build() const {
    std::vector<Atom> atoms;
    atoms.reserve(pos_.size() + 1);
    if (zero_ > 0.0) atoms.push_back({-1.0, zero_});
    for (const Mass& m : pos_) atoms.push_back({m.g - 1.0, m.p});
    // Distinct g values this close to 0 can collapse onto the same x; fold
    // their probabilities so the atom list stays strictly increasing.
    std::size_t w = 0;
    for (std::size_t i = 1; i < atoms.size(); ++i) {
        if (atoms[i].x == atoms[w].x)
            atoms[w].p += atoms[i].p;
        else
            atoms[++w] = atoms[i];
    }
    if (!atoms.empty()) atoms.resize(w + 1);
    return TotalReturnPmf(n_, std::move(atoms), merged_);
}

TotalReturnPmf total_return_pmf(const ReturnPmf& base, int n, std::size_t cap) {
    if (n < 1) throw std::invalid_argument("periods must be >= 1");
    TotalReturnBuilder builder(base, cap);
    for (int k = 1; k < n; ++k) builder.step();
    return builder.build();
}

}  // namespace kellyfreq
