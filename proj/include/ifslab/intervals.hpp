#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace ifslab {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const noexcept { return hi - lo; }
    double midpoint() const noexcept { return 0.5 * (lo + hi); }
    bool contains(double x) const noexcept { return lo <= x && x <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct NormalizeOptions {
    /// Gaps no wider than this are closed during normalization.
    double merge_eps = 1e-12;
    std::size_t max_parts = std::size_t{1} << 16;
};

/// A finite union of disjoint closed intervals inside a closed domain.
///
/// Parts are sorted and separated by gaps wider than the merge tolerance used
/// to build them. Degenerate parts (points) are kept. The empty set is a
/// valid value but most operations reject it, since the compact sets we
/// model are nonempty.
class IntervalSet {
public:
    IntervalSet() = default;

    static IntervalSet empty(Interval domain);
    static IntervalSet whole(Interval domain);
    static IntervalSet normalize(std::vector<Interval> raw, Interval domain,
                                 const NormalizeOptions& opts = {});

    const Interval& domain() const noexcept { return domain_; }
    std::span<const Interval> parts() const noexcept { return parts_; }
    std::size_t size() const noexcept { return parts_.size(); }
    bool is_empty() const noexcept { return parts_.empty(); }

    double min() const;
    double max() const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    Interval domain_{0.0, 1.0};
    std::vector<Interval> parts_;
};

/// Throws ErrorCode::Empty when the set is empty.
void require_nonempty(const IntervalSet& a, const char* what);

/// Distance from a point to the nearest part.
double distance(double x, const IntervalSet& b);

/// One-sided Hausdorff distance sup_{a in A} d(a, B).
double semi_hausdorff(const IntervalSet& a, const IntervalSet& b);
double hausdorff(const IntervalSet& a, const IntervalSet& b);

IntervalSet fatten(const IntervalSet& a, double eps, const NormalizeOptions& opts = {});

/// Outer coarsening: fatten by resolution/2, then normalize.
IntervalSet coarsen(const IntervalSet& a, double resolution);

/// Closes every gap of width <= max_gap without moving the outer endpoints
/// (a morphological closing). Keeps part counts bounded by domain/max_gap.
IntervalSet bridge_gaps(const IntervalSet& a, double max_gap);

IntervalSet unite(const IntervalSet& a, const IntervalSet& b, const NormalizeOptions& opts = {});
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);

/// Closure of the points of A farther than tol from B.
IntervalSet residual(const IntervalSet& a, const IntervalSet& b, double tol);

double diam(const IntervalSet& a);
double measure(const IntervalSet& a);
bool contains(const IntervalSet& a, double x, double tol = 0.0);
bool subset_within(const IntervalSet& a, const IntervalSet& b, double tol);
bool intersects(const IntervalSet& a, Interval probe);

/// "# domain lo hi" header, then one "a,b" line per part, 17 significant digits.
void write_csv(std::ostream& os, const IntervalSet& a);
IntervalSet read_csv(std::istream& is);

}  // namespace ifslab
