#pragma once

#include <array>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ifslab/intervals.hpp"
#include "ifslab/symbolic.hpp"

namespace ifslab {

/// Continuous monotone map on a closed sub-interval of the ambient domain.
class MonotoneBranch {
public:
    enum class Form { Linear, Quadratic, Generic };

    /// Segment from (sub.lo, y_lo) to (sub.hi, y_hi).
    static MonotoneBranch linear(Interval sub, double y_lo, double y_hi);
    /// a*x^2 + b*x + c restricted to `sub`, where it must be monotone.
    static MonotoneBranch quadratic(Interval sub, double a, double b, double c);
    /// Caller-certified monotone function; the direction is checked by sampling.
    static MonotoneBranch generic(Interval sub, std::function<double(double)> f, bool increasing);

    Form form() const noexcept { return form_; }
    const Interval& sub_domain() const noexcept { return sub_; }
    /// +1 increasing, -1 decreasing, 0 constant.
    int direction() const noexcept { return direction_; }
    bool is_linear() const noexcept { return form_ == Form::Linear; }
    /// Slope of a linear branch.
    double slope() const noexcept { return (y_hi_ - y_lo_) / (sub_.hi - sub_.lo); }
    const std::array<double, 3>& coefficients() const noexcept { return coef_; }

    double operator()(double x) const;
    /// Image of [a,b] intersected with the sub-domain; callers pass a subset.
    Interval image(Interval part) const;
    /// The x in the sub-domain with f(x) = y, clamped at the ends of the
    /// range. Undefined for constant branches.
    double inverse(double y) const;
    /// Strictly monotone on `j` (so injective there).
    bool strictly_monotone_on(Interval j) const;

private:
    MonotoneBranch() = default;
    void verify_monotone() const;

    Form form_ = Form::Linear;
    Interval sub_;
    double y_lo_ = 0.0, y_hi_ = 0.0;
    std::array<double, 3> coef_{};
    std::function<double(double)> fn_;
    int direction_ = 0;
};

/// Continuous self-map given by monotone branches partitioning the domain.
class PiecewiseMonotoneMap {
public:
    PiecewiseMonotoneMap(Interval domain, std::vector<MonotoneBranch> branches);

    /// Piecewise-linear map through the given vertices; first and last x
    /// are the domain endpoints.
    static PiecewiseMonotoneMap from_vertices(const std::vector<std::pair<double, double>>& vertices);
    static PiecewiseMonotoneMap affine(Interval domain, double slope, double intercept);
    static PiecewiseMonotoneMap quadratic(Interval domain, double a, double b, double c);

    const Interval& domain() const noexcept { return domain_; }
    const std::vector<MonotoneBranch>& branches() const noexcept { return branches_; }
    bool piecewise_linear() const noexcept;

    double operator()(double x) const;
    /// Exact image of an interval (continuity makes it an interval).
    Interval image(Interval part) const;

private:
    Interval domain_;
    std::vector<MonotoneBranch> branches_;
};

/// k >= 1 continuous self-maps of a common closed interval.
class Ifs {
public:
    Ifs(Interval domain, std::vector<PiecewiseMonotoneMap> maps, std::string name = {});

    const Interval& domain() const noexcept { return domain_; }
    int size() const noexcept { return static_cast<int>(maps_.size()); }
    /// 1-based, matching symbols.
    const PiecewiseMonotoneMap& map(int symbol) const;
    const std::vector<PiecewiseMonotoneMap>& maps() const noexcept { return maps_; }
    const std::string& name() const noexcept { return name_; }

private:
    Interval domain_;
    std::vector<PiecewiseMonotoneMap> maps_;
    std::string name_;
};

std::vector<std::string> preset_names();
/// "cantor", "example-3-4", "figure-2", "flip", "nonregular-6-1",
/// "porcupine-6-2", "bony-6-3", plus "identity" and "cantor-3" (Cantor maps
/// with T1 duplicated as a third symbol).
Ifs preset(const std::string& name);

/// Wall-clock limit shared by long-running searches.
struct Deadline {
    std::optional<std::chrono::steady_clock::time_point> at;

    static Deadline after_seconds(double s);
    bool expired() const;
};

IntervalSet map_image(const PiecewiseMonotoneMap& t, const IntervalSet& a, const NormalizeOptions& opts = {});

/// Barnsley-Hutchinson operator: union of the images under every map.
IntervalSet bh_apply(const Ifs& f, const IntervalSet& a, const NormalizeOptions& opts = {});

struct StarResult {
    IntervalSet set;
    int iterations = 0;
    bool converged = false;
};

/// Nested iteration A, B(A), B^2(A), ... of a B-invariant set.
StarResult star_set(const Ifs& f, const IntervalSet& a, double tol, int max_iter);

/// T_{w0} o ... o T_{wn}(domain).
Interval word_interval(const Ifs& f, const Word& w);
IntervalSet word_image(const Ifs& f, const Word& w);

IntervalSet fibre_approx(const Ifs& f, const SymbolStream& s, int depth);

struct TargetOptions {
    /// Words kept alive at one depth before the search gives up.
    std::size_t max_pending = std::size_t{1} << 22;
    Deadline deadline;
};

struct TargetResult {
    IntervalSet atoms;
    IntervalSet undecided;
    bool complete = false;
    bool budget_exhausted = false;
    int depth_reached = 0;
    std::size_t atom_words = 0;
};

/// Breadth-first refinement over words: images of diameter <= tol become
/// atoms, the rest are refined up to max_depth.
TargetResult target_approx(const Ifs& f, double tol, int max_depth, const TargetOptions& opts = {});

/// First word (length-lexicographic) whose image has diameter <= tol.
std::optional<Word> weakly_hyperbolic_witness(const Ifs& f, double tol, int max_depth);

enum class ConleyVerdict { Attracts, Escapes, Inconclusive };

struct ConleyResult {
    ConleyVerdict verdict = ConleyVerdict::Inconclusive;
    IntervalSet residual;
    IntervalSet final_set;
    int iterations = 0;
    double distance = 0.0;
};

std::string to_string(ConleyVerdict v);

/// Iterates B on the closed eps-neighbourhood of A. Iterates are kept
/// bounded by closing gaps narrower than tol/10 (an outer approximation).
ConleyResult conley_probe(const Ifs& f, const IntervalSet& a, double eps, double tol, int max_iter);

/// B^n(fatten(A, v0_eps)) stays inside fatten(A, v_eps) for n <= n_iter.
bool stability_probe(const Ifs& f, const IntervalSet& a, double v_eps, double v0_eps, int n_iter);

/// h_s(B(A), A) <= tol.
bool invariance_check(const Ifs& f, const IntervalSet& a, double tol);

/// Grid-cell cover of {x : max_i |T_i(x) - x| <= tol}; empty if none.
IntervalSet common_fixed_points(const Ifs& f, double tol, int grid_n);

/// Exact Lipschitz constant of T_{w0} o ... o T_{wn} for piecewise-linear maps.
double lipschitz_exact(const Ifs& f, const Word& w);

}  // namespace ifslab
