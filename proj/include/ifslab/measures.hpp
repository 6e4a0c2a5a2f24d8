#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ifslab/ifs.hpp"
#include "ifslab/intervals.hpp"
#include "ifslab/matrix.hpp"

namespace ifslab {

/// Probability measure with a piecewise-uniform density on a uniform grid.
class GridMeasure {
public:
    GridMeasure(Interval domain, std::vector<double> masses);

    static GridMeasure uniform(Interval domain, int n_bins);
    /// All mass in the bin containing x.
    static GridMeasure dirac(Interval domain, int n_bins, double x);

    const Interval& domain() const noexcept { return domain_; }
    int bins() const noexcept { return static_cast<int>(masses_.size()); }
    double bin_width() const noexcept { return domain_.length() / bins(); }
    Interval bin(int i) const;
    int bin_of(double x) const;
    std::span<const double> masses() const noexcept { return masses_; }

    double total() const;
    double mean() const;
    double variance() const;

private:
    Interval domain_;
    std::vector<double> masses_;
};

/// Measure on X x {1..k} given by k unnormalized sections on a shared grid.
class HatMeasure {
public:
    HatMeasure(Interval domain, std::vector<std::vector<double>> sections);

    /// Section i carries weights[i] spread uniformly.
    static HatMeasure uniform(Interval domain, int n_bins, std::span<const double> weights);
    /// All mass in section `symbol` (1-based), in the bin containing x.
    static HatMeasure dirac(Interval domain, int n_bins, int k, int symbol, double x);

    const Interval& domain() const noexcept { return domain_; }
    int bins() const noexcept { return n_bins_; }
    int sections() const noexcept { return static_cast<int>(sections_.size()); }
    double bin_width() const noexcept { return domain_.length() / n_bins_; }
    /// 1-based.
    std::span<const double> section(int symbol) const;
    std::vector<double> section_masses() const;
    double total() const;
    /// Sum of the sections, a probability measure on X.
    GridMeasure marginal() const;

private:
    Interval domain_;
    int n_bins_ = 0;
    std::vector<std::vector<double>> sections_;
};

/// Masses moved by T on the grid of `domain`: output bin b receives the
/// source mass of T^{-1}(b), integrating the piecewise-uniform density over
/// the exact preimage of each branch.
std::vector<double> pushforward_masses(const PiecewiseMonotoneMap& t, Interval domain, std::span<const double> masses);
GridMeasure pushforward(const PiecewiseMonotoneMap& t, const GridMeasure& mu);

/// sum_i w_i T_i* mu.
GridMeasure markov_step(const Ifs& f, std::span<const double> weights, const GridMeasure& mu);

/// Section j of the result is sum_i p_ij T_j* mu_i.
HatMeasure generalized_markov_step(const Ifs& f, const TransitionMatrix& p, const HatMeasure& hat);

/// Exact W1 between the piecewise-uniform representatives.
double w1_distance(const GridMeasure& mu, const GridMeasure& nu);
/// Sum over sections of the L1 distance between section CDFs.
double w1_distance(const HatMeasure& mu, const HatMeasure& nu);

struct CodingSource {
    enum class Kind { Bernoulli, Markov };
    Kind kind = Kind::Bernoulli;
    std::vector<double> weights;  ///< Bernoulli weights, or initial vector of the chain.
    std::optional<TransitionMatrix> chain;

    static CodingSource bernoulli(std::vector<double> weights);
    /// Sequences of the chain `q` started from `initial`; with q the inverse
    /// matrix of P and initial = pbar this samples the inverse Markov measure.
    static CodingSource markov(TransitionMatrix q, std::vector<double> initial);
};

struct CodingOptions {
    std::size_t n_samples = 100000;
    int prefix_len = 40;
    double tol = 1e-9;
    int n_bins = 1024;
    std::uint64_t seed = 1;
    int workers = 1;
};

struct CodingSample {
    int bin = -1;      ///< -1 when the prefix image is wider than tol.
    int symbol = 0;    ///< First symbol of the sequence.
    double point = 0;  ///< Midpoint of the prefix image.
};

/// One entry per sample; sample i uses the substream derive_seed(seed, i),
/// so the output does not depend on the worker count.
std::vector<CodingSample> coding_samples(const Ifs& f, const CodingSource& src, const CodingOptions& opts);

struct CodingResult {
    GridMeasure measure;
    std::optional<HatMeasure> hat;  ///< Markov sources: mass sits in the section of the first symbol.
    double unresolved_fraction = 0.0;
    std::size_t resolved = 0;
};

/// Monte-Carlo estimate of the push-forward of the sequence measure by the
/// coding map. Throws DegenerateOutput when no sample resolves.
CodingResult coding_pushforward(const Ifs& f, const CodingSource& src, const CodingOptions& opts);

struct MeasureProbe {
    bool stable = false;
    int iterations = 0;
    double max_pairwise = 0.0;
    double last_step = 0.0;
    std::optional<GridMeasure> limit;
    std::optional<HatMeasure> hat_limit;
};

MeasureProbe stability_probe_measures(const Ifs& f, std::span<const double> weights,
                                      const std::vector<GridMeasure>& starts, double tol, int max_iter);
/// With restrict_to_stationary, each start is first rescaled so its section
/// masses equal the stationary vector of p (an empty section gets its share
/// spread uniformly). Off by default: for primitive p any start converges.
MeasureProbe stability_probe_measures(const Ifs& f, const TransitionMatrix& p, const std::vector<HatMeasure>& starts,
                                      double tol, int max_iter, bool restrict_to_stationary = false);

/// Union of the bins holding more than mass_tol / n_bins.
IntervalSet support_estimate(const GridMeasure& mu, double mass_tol);

/// "bin_lo,bin_hi,mass" rows after a header line.
void write_csv(std::ostream& os, const GridMeasure& mu);
/// "section,bin_lo,bin_hi,mass" rows after a header line.
void write_csv(std::ostream& os, const HatMeasure& mu);

}  // namespace ifslab
