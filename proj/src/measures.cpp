#include "ifslab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <limits>
#include <string>
#include <thread>
#include <type_traits>

#include "ifslab/error.hpp"
#include "ifslab/rng.hpp"
#include "ifslab/stochastic.hpp"

namespace ifslab {

namespace {

constexpr double kMassTol = 1e-9;

void check_bins(int n) {
    if (n < 1) fail(ErrorCode::Parameter, "measure grid needs at least one bin");
}

int grid_bin(Interval dom, int n, double x) {
    const double u = (x - dom.lo) / dom.length() * n;
    if (!(u >= 0.0)) return 0;
    return std::min(n - 1, static_cast<int>(u));
}

void check_weights(std::span<const double> w, int k) {
    if (static_cast<int>(w.size()) != k) fail(ErrorCode::Shape, "need one weight per map");
    double s = 0.0;
    for (double x : w) {
        if (!(x > 0.0)) fail(ErrorCode::Parameter, "weights must be strictly positive");
        s += x;
    }
    if (std::abs(s - 1.0) > 1e-12) fail(ErrorCode::Parameter, "weights must sum to 1");
}

/// Integral over [x0, x1] of the piecewise-uniform density of `m`.
class GridCdf {
public:
    GridCdf(Interval dom, std::span<const double> m) : dom_(dom), m_(m), cum_(m.size() + 1, 0.0) {
        for (std::size_t i = 0; i < m.size(); ++i) cum_[i + 1] = cum_[i] + m[i];
    }

    double operator()(double x) const {
        const int n = static_cast<int>(m_.size());
        const double u = std::clamp((x - dom_.lo) / dom_.length() * n, 0.0, static_cast<double>(n));
        const int b = std::min(n - 1, static_cast<int>(u));
        return cum_[static_cast<std::size_t>(b)] + m_[static_cast<std::size_t>(b)] * (u - b);
    }

private:
    Interval dom_;
    std::span<const double> m_;
    std::vector<double> cum_;
};

/// Integral of |F - G| where F - G is linear on each bin.
double cdf_l1(std::span<const double> a, std::span<const double> b, double width) {
    double fa = 0.0, fb = 0.0, acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d0 = fa - fb;
        fa += a[i];
        fb += b[i];
        const double d1 = fa - fb;
        if ((d0 >= 0.0) == (d1 >= 0.0) || d0 == 0.0 || d1 == 0.0)
            acc += 0.5 * (std::abs(d0) + std::abs(d1));
        else
            acc += 0.5 * (d0 * d0 + d1 * d1) / (std::abs(d0) + std::abs(d1));
    }
    return acc * width;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

GridMeasure::GridMeasure(Interval domain, std::vector<double> masses) : domain_(domain), masses_(std::move(masses)) {
    if (!(domain.lo < domain.hi)) fail(ErrorCode::Domain, "measure domain must satisfy lo < hi");
    check_bins(static_cast<int>(masses_.size()));
    double s = 0.0;
    for (double m : masses_) {
        if (!(m >= 0.0)) fail(ErrorCode::Parameter, "bin masses must be >= 0");
        s += m;
    }
    if (std::abs(s - 1.0) > kMassTol) fail(ErrorCode::Parameter, "grid measure must have total mass 1, got " + num(s));
}

GridMeasure GridMeasure::uniform(Interval domain, int n_bins) {
    check_bins(n_bins);
    return GridMeasure(domain, std::vector<double>(static_cast<std::size_t>(n_bins), 1.0 / n_bins));
}

GridMeasure GridMeasure::dirac(Interval domain, int n_bins, double x) {
    check_bins(n_bins);
    if (!domain.contains(x)) fail(ErrorCode::Domain, "dirac point outside the domain");
    std::vector<double> m(static_cast<std::size_t>(n_bins), 0.0);
    m[static_cast<std::size_t>(grid_bin(domain, n_bins, x))] = 1.0;
    return GridMeasure(domain, std::move(m));
}

Interval GridMeasure::bin(int i) const {
    const double w = bin_width();
    return {domain_.lo + w * i, i + 1 == bins() ? domain_.hi : domain_.lo + w * (i + 1)};
}

int GridMeasure::bin_of(double x) const { return grid_bin(domain_, bins(), x); }

double GridMeasure::total() const {
    double s = 0.0;
    for (double m : masses_) s += m;
    return s;
}

double GridMeasure::mean() const {
    double s = 0.0;
    for (int i = 0; i < bins(); ++i) s += masses_[static_cast<std::size_t>(i)] * bin(i).midpoint();
    return s / total();
}

double GridMeasure::variance() const {
    const double mu = mean();
    const double w = bin_width();
    double s = 0.0;
    for (int i = 0; i < bins(); ++i) {
        const double d = bin(i).midpoint() - mu;
        s += masses_[static_cast<std::size_t>(i)] * (d * d + w * w / 12.0);
    }
    return s / total();
}

HatMeasure::HatMeasure(Interval domain, std::vector<std::vector<double>> sections)
    : domain_(domain), sections_(std::move(sections)) {
    if (!(domain.lo < domain.hi)) fail(ErrorCode::Domain, "measure domain must satisfy lo < hi");
    if (sections_.empty()) fail(ErrorCode::InvalidAlphabet, "hat measure needs at least one section");
    n_bins_ = static_cast<int>(sections_.front().size());
    check_bins(n_bins_);
    double s = 0.0;
    for (const auto& sec : sections_) {
        if (static_cast<int>(sec.size()) != n_bins_) fail(ErrorCode::Shape, "sections must share one grid");
        for (double m : sec) {
            if (!(m >= 0.0)) fail(ErrorCode::Parameter, "bin masses must be >= 0");
            s += m;
        }
    }
    if (std::abs(s - 1.0) > kMassTol) fail(ErrorCode::Parameter, "hat measure must have total mass 1, got " + num(s));
}

HatMeasure HatMeasure::uniform(Interval domain, int n_bins, std::span<const double> weights) {
    check_bins(n_bins);
    std::vector<std::vector<double>> secs;
    for (double w : weights) secs.emplace_back(static_cast<std::size_t>(n_bins), w / n_bins);
    return HatMeasure(domain, std::move(secs));
}

HatMeasure HatMeasure::dirac(Interval domain, int n_bins, int k, int symbol, double x) {
    check_bins(n_bins);
    if (symbol < 1 || symbol > k) fail(ErrorCode::Index, "section symbol out of range");
    if (!domain.contains(x)) fail(ErrorCode::Domain, "dirac point outside the domain");
    std::vector<std::vector<double>> secs(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(n_bins), 0.0));
    secs[static_cast<std::size_t>(symbol - 1)][static_cast<std::size_t>(grid_bin(domain, n_bins, x))] = 1.0;
    return HatMeasure(domain, std::move(secs));
}

std::span<const double> HatMeasure::section(int symbol) const {
    if (symbol < 1 || symbol > sections()) fail(ErrorCode::Index, "section symbol out of range");
    return sections_[static_cast<std::size_t>(symbol - 1)];
}

std::vector<double> HatMeasure::section_masses() const {
    std::vector<double> out;
    for (const auto& sec : sections_) {
        double s = 0.0;
        for (double m : sec) s += m;
        out.push_back(s);
    }
    return out;
}

double HatMeasure::total() const {
    double s = 0.0;
    for (double m : section_masses()) s += m;
    return s;
}

GridMeasure HatMeasure::marginal() const {
    std::vector<double> m(static_cast<std::size_t>(n_bins_), 0.0);
    for (const auto& sec : sections_)
        for (std::size_t b = 0; b < sec.size(); ++b) m[b] += sec[b];
    return GridMeasure(domain_, std::move(m));
}

std::vector<double> pushforward_masses(const PiecewiseMonotoneMap& t, Interval domain, std::span<const double> masses) {
    const int n = static_cast<int>(masses.size());
    check_bins(n);
    const GridCdf cdf(domain, masses);
    const double w = domain.length() / n;
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (const MonotoneBranch& br : t.branches()) {
        const Interval sub = br.sub_domain();
        const double branch_mass = cdf(sub.hi) - cdf(sub.lo);
        if (branch_mass == 0.0) continue;
        const Interval range = br.image(sub);
        if (br.direction() == 0 || range.lo == range.hi) {
            out[static_cast<std::size_t>(grid_bin(domain, n, range.lo))] += branch_mass;
            continue;
        }
        const int first = grid_bin(domain, n, range.lo);
        const int last = grid_bin(domain, n, range.hi);
        // Preimages of consecutive bin edges bracket the source mass of each
        // target bin; the clamped inverse makes the sum telescope to branch_mass.
        double f_prev = cdf(br.inverse(domain.lo + w * first));
        if (first == 0) f_prev = cdf(br.inverse(-std::numeric_limits<double>::infinity()));
        for (int c = first; c <= last; ++c) {
            const double edge = c == last ? std::numeric_limits<double>::infinity() : domain.lo + w * (c + 1);
            const double f_next = cdf(br.inverse(edge));
            out[static_cast<std::size_t>(c)] += std::abs(f_next - f_prev);
            f_prev = f_next;
        }
    }
    return out;
}

GridMeasure pushforward(const PiecewiseMonotoneMap& t, const GridMeasure& mu) {
    return GridMeasure(mu.domain(), pushforward_masses(t, mu.domain(), mu.masses()));
}

GridMeasure markov_step(const Ifs& f, std::span<const double> weights, const GridMeasure& mu) {
    check_weights(weights, f.size());
    if (mu.domain() != f.domain()) fail(ErrorCode::Domain, "measure and IFS live on different domains");
    std::vector<double> out(static_cast<std::size_t>(mu.bins()), 0.0);
    for (int i = 0; i < f.size(); ++i) {
        const auto part = pushforward_masses(f.maps()[static_cast<std::size_t>(i)], mu.domain(), mu.masses());
        for (std::size_t b = 0; b < out.size(); ++b) out[b] += weights[static_cast<std::size_t>(i)] * part[b];
    }
    return GridMeasure(mu.domain(), std::move(out));
}

HatMeasure generalized_markov_step(const Ifs& f, const TransitionMatrix& p, const HatMeasure& hat) {
    const int k = f.size();
    if (p.size() != k || hat.sections() != k) fail(ErrorCode::Shape, "matrix, sections and maps must agree on k");
    if (hat.domain() != f.domain()) fail(ErrorCode::Domain, "measure and IFS live on different domains");
    const std::size_t n = static_cast<std::size_t>(hat.bins());
    std::vector<std::vector<double>> out;
    for (int j = 0; j < k; ++j) {
        // By linearity, push the p_ij-weighted sum of sections once.
        std::vector<double> mixed(n, 0.0);
        for (int i = 0; i < k; ++i) {
            const double pij = p(i, j);
            if (pij == 0.0) continue;
            const auto sec = hat.section(i + 1);
            for (std::size_t b = 0; b < n; ++b) mixed[b] += pij * sec[b];
        }
        out.push_back(pushforward_masses(f.map(j + 1), hat.domain(), mixed));
    }
    return HatMeasure(hat.domain(), std::move(out));
}

double w1_distance(const GridMeasure& mu, const GridMeasure& nu) {
    if (mu.domain() != nu.domain() || mu.bins() != nu.bins()) fail(ErrorCode::Shape, "w1_distance needs a shared grid");
    return cdf_l1(mu.masses(), nu.masses(), mu.bin_width());
}

double w1_distance(const HatMeasure& mu, const HatMeasure& nu) {
    if (mu.domain() != nu.domain() || mu.bins() != nu.bins() || mu.sections() != nu.sections())
        fail(ErrorCode::Shape, "w1_distance needs a shared grid");
    double s = 0.0;
    for (int i = 1; i <= mu.sections(); ++i) s += cdf_l1(mu.section(i), nu.section(i), mu.bin_width());
    return s;
}

CodingSource CodingSource::bernoulli(std::vector<double> weights) {
    CodingSource s;
    s.kind = Kind::Bernoulli;
    s.weights = std::move(weights);
    return s;
}

CodingSource CodingSource::markov(TransitionMatrix q, std::vector<double> initial) {
    CodingSource s;
    s.kind = Kind::Markov;
    s.weights = std::move(initial);
    s.chain = std::move(q);
    return s;
}

std::vector<CodingSample> coding_samples(const Ifs& f, const CodingSource& src, const CodingOptions& opts) {
    if (opts.n_samples < 1 || opts.prefix_len < 1) fail(ErrorCode::Parameter, "coding_pushforward needs samples and prefix >= 1");
    if (!(opts.tol > 0.0)) fail(ErrorCode::Parameter, "coding_pushforward needs tol > 0");
    check_bins(opts.n_bins);
    if (static_cast<int>(src.weights.size()) != f.size()) fail(ErrorCode::Shape, "source alphabet does not match the IFS");
    if (src.kind == CodingSource::Kind::Markov && (!src.chain || src.chain->size() != f.size()))
        fail(ErrorCode::Shape, "markov source needs a k x k matrix");

    std::vector<CodingSample> out(opts.n_samples);
    auto run = [&](std::size_t begin, std::size_t end) {
        std::vector<int> word(static_cast<std::size_t>(opts.prefix_len));
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint64_t seed = derive_seed(opts.seed, i);
            if (src.kind == CodingSource::Kind::Bernoulli) {
                for (std::size_t n = 0; n < word.size(); ++n)
                    word[n] = draw_category(src.weights, to_unit(derive_seed(seed, n))) + 1;
            } else {
                int state = draw_category(src.weights, to_unit(derive_seed(seed, 0)));
                word[0] = state + 1;
                for (std::size_t n = 1; n < word.size(); ++n) {
                    state = draw_category(src.chain->row(state), to_unit(derive_seed(seed, n)));
                    word[n] = state + 1;
                }
            }
            Interval iv = f.domain();
            for (auto it = word.rbegin(); it != word.rend(); ++it) iv = f.map(*it).image(iv);
            CodingSample& s = out[i];
            s.symbol = word[0];
            s.point = iv.midpoint();
            s.bin = iv.length() <= opts.tol ? grid_bin(f.domain(), opts.n_bins, s.point) : -1;
        }
    };
    const std::size_t workers = static_cast<std::size_t>(std::max(1, opts.workers));
    if (workers == 1) {
        run(0, opts.n_samples);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (opts.n_samples + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t b = w * chunk, e = std::min(opts.n_samples, b + chunk);
            if (b < e) pool.emplace_back(run, b, e);
        }
        for (auto& t : pool) t.join();
    }
    return out;
}

CodingResult coding_pushforward(const Ifs& f, const CodingSource& src, const CodingOptions& opts) {
    const auto samples = coding_samples(f, src, opts);
    const int k = f.size();
    const std::size_t n = static_cast<std::size_t>(opts.n_bins);
    // Integer counts keep the result independent of summation order.
    std::vector<std::vector<std::size_t>> counts(static_cast<std::size_t>(k), std::vector<std::size_t>(n, 0));
    std::size_t resolved = 0;
    for (const CodingSample& s : samples)
        if (s.bin >= 0) {
            ++counts[static_cast<std::size_t>(s.symbol - 1)][static_cast<std::size_t>(s.bin)];
            ++resolved;
        }
    if (resolved == 0)
        fail(ErrorCode::DegenerateOutput, "coding_pushforward: all " + std::to_string(samples.size()) +
                                              " samples unresolved (unresolved_fraction=1)");
    std::vector<std::vector<double>> secs(static_cast<std::size_t>(k), std::vector<double>(n, 0.0));
    std::vector<double> marginal(n, 0.0);
    for (std::size_t i = 0; i < secs.size(); ++i)
        for (std::size_t b = 0; b < n; ++b) {
            secs[i][b] = static_cast<double>(counts[i][b]) / static_cast<double>(resolved);
            marginal[b] += static_cast<double>(counts[i][b]);
        }
    for (double& m : marginal) m /= static_cast<double>(resolved);
    CodingResult r{GridMeasure(f.domain(), std::move(marginal)), std::nullopt,
                   1.0 - static_cast<double>(resolved) / static_cast<double>(samples.size()), resolved};
    if (src.kind == CodingSource::Kind::Markov) r.hat = HatMeasure(f.domain(), std::move(secs));
    return r;
}

namespace {

template <class M, class Step>
MeasureProbe probe_trajectories(std::vector<M> cur, double tol, int max_iter, Step step) {
    if (cur.empty()) fail(ErrorCode::Parameter, "stability probe needs at least one start");
    MeasureProbe r;
    for (int it = 1; it <= max_iter; ++it) {
        double moved = 0.0;
        for (auto& m : cur) {
            M next = step(m);
            moved = std::max(moved, w1_distance(m, next));
            m = std::move(next);
        }
        double pair = 0.0;
        for (std::size_t a = 0; a < cur.size(); ++a)
            for (std::size_t b = a + 1; b < cur.size(); ++b) pair = std::max(pair, w1_distance(cur[a], cur[b]));
        r.iterations = it;
        r.last_step = moved;
        r.max_pairwise = pair;
        if (moved <= tol && pair <= tol) {
            r.stable = true;
            break;
        }
    }
    if constexpr (std::is_same_v<M, GridMeasure>)
        r.limit = cur.front();
    else
        r.hat_limit = cur.front();
    return r;
}

}  // namespace

MeasureProbe stability_probe_measures(const Ifs& f, std::span<const double> weights,
                                      const std::vector<GridMeasure>& starts, double tol, int max_iter) {
    check_weights(weights, f.size());
    return probe_trajectories(starts, tol, max_iter, [&](const GridMeasure& m) { return markov_step(f, weights, m); });
}

MeasureProbe stability_probe_measures(const Ifs& f, const TransitionMatrix& p, const std::vector<HatMeasure>& starts,
                                      double tol, int max_iter, bool restrict_to_stationary) {
    std::vector<HatMeasure> init = starts;
    if (restrict_to_stationary) {
        const auto pbar = stationary_vector(p);
        for (auto& h : init) {
            if (h.sections() != p.size()) fail(ErrorCode::Shape, "matrix and sections must agree on k");
            const auto mass = h.section_masses();
            std::vector<std::vector<double>> secs;
            for (int i = 0; i < h.sections(); ++i) {
                const auto src = h.section(i + 1);
                const double target = pbar[static_cast<std::size_t>(i)], have = mass[static_cast<std::size_t>(i)];
                std::vector<double> sec(src.begin(), src.end());
                for (double& m : sec) m = have > 0.0 ? m * target / have : target / h.bins();
                secs.push_back(std::move(sec));
            }
            h = HatMeasure(h.domain(), std::move(secs));
        }
    }
    return probe_trajectories(std::move(init), tol, max_iter,
                              [&](const HatMeasure& m) { return generalized_markov_step(f, p, m); });
}

IntervalSet support_estimate(const GridMeasure& mu, double mass_tol) {
    if (!(mass_tol >= 0.0 && mass_tol < 1.0)) fail(ErrorCode::Parameter, "support_estimate needs mass_tol in [0,1)");
    const double cut = mass_tol / mu.bins();
    std::vector<Interval> raw;
    for (int i = 0; i < mu.bins(); ++i)
        if (mu.masses()[static_cast<std::size_t>(i)] > cut) raw.push_back(mu.bin(i));
    NormalizeOptions opts;
    opts.max_parts = std::max<std::size_t>(opts.max_parts, raw.size());
    return IntervalSet::normalize(std::move(raw), mu.domain(), opts);
}

void write_csv(std::ostream& os, const GridMeasure& mu) {
    os << "bin_lo,bin_hi,mass\n";
    for (int i = 0; i < mu.bins(); ++i) {
        const Interval b = mu.bin(i);
        os << num(b.lo) << ',' << num(b.hi) << ',' << num(mu.masses()[static_cast<std::size_t>(i)]) << '\n';
    }
}

void write_csv(std::ostream& os, const HatMeasure& mu) {
    os << "section,bin_lo,bin_hi,mass\n";
    const double w = mu.bin_width();
    for (int s = 1; s <= mu.sections(); ++s) {
        const auto sec = mu.section(s);
        for (int i = 0; i < mu.bins(); ++i) {
            const double lo = mu.domain().lo + w * i;
            const double hi = i + 1 == mu.bins() ? mu.domain().hi : mu.domain().lo + w * (i + 1);
            os << s << ',' << num(lo) << ',' << num(hi) << ',' << num(sec[static_cast<std::size_t>(i)]) << '\n';
        }
    }
}

}  // namespace ifslab
