#include "ifslab/chaos.hpp"

#include <algorithm>

#include "ifslab/error.hpp"

namespace ifslab {

Orbit orbit(const Ifs& f, double x0, const SymbolStream& stream, std::size_t n) {
    if (!f.domain().contains(x0)) fail(ErrorCode::Domain, "orbit start outside the domain");
    if (n < 1) fail(ErrorCode::Parameter, "orbit length must be >= 1");
    if (stream.alphabet_size() != f.size()) fail(ErrorCode::Shape, "stream alphabet does not match the IFS");
    Orbit o;
    o.x0 = x0;
    o.points.reserve(n);
    double x = x0;
    for (std::size_t i = 0; i < n; ++i) {
        x = std::clamp(f.map(stream.at(i))(x), f.domain().lo, f.domain().hi);
        o.points.push_back(x);
    }
    return o;
}

IntervalSet tail_cover(const Orbit& o, const Interval& domain, std::size_t from, double resolution) {
    if (from >= o.points.size()) fail(ErrorCode::Parameter, "tail start beyond the orbit");
    if (!(resolution > 0.0)) fail(ErrorCode::Parameter, "resolution must be > 0");
    const double h = resolution / 2;
    std::vector<Interval> raw;
    raw.reserve(o.points.size() - from);
    for (std::size_t i = from; i < o.points.size(); ++i) {
        const double x = o.points[i];
        raw.push_back({std::max(domain.lo, x - h), std::min(domain.hi, x + h)});
    }
    NormalizeOptions opts;
    opts.max_parts = std::max(opts.max_parts, raw.size());
    return IntervalSet::normalize(std::move(raw), domain, opts);
}

ChaosProbe chaos_probe(const Ifs& f, double x0, const SymbolStream& stream, std::size_t n, std::size_t from,
                       double resolution, const std::optional<IntervalSet>& reference, double target_tol) {
    if (!reference) fail(ErrorCode::Usage, "chaos_probe needs a reference set");
    ChaosProbe r;
    r.cover = tail_cover(orbit(f, x0, stream, n), f.domain(), from, resolution);
    r.distance = hausdorff(r.cover, *reference);
    r.tolerance = std::max(2 * resolution, 2 * target_tol);
    r.pass = r.distance <= r.tolerance;
    return r;
}

}  // namespace ifslab
