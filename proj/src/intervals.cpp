#include "ifslab/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "ifslab/error.hpp"

namespace ifslab {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void check_domain(Interval domain) {
    if (!(domain.lo < domain.hi) || !std::isfinite(domain.lo) || !std::isfinite(domain.hi))
        fail(ErrorCode::Domain, "domain must satisfy lo < hi, got [" + fmt17(domain.lo) + "," +
                                    fmt17(domain.hi) + "]");
}

void check_same_domain(const IntervalSet& a, const IntervalSet& b) {
    if (a.domain() != b.domain()) fail(ErrorCode::Domain, "interval sets live on different domains");
}

}  // namespace

IntervalSet IntervalSet::empty(Interval domain) {
    check_domain(domain);
    IntervalSet s;
    s.domain_ = domain;
    return s;
}

IntervalSet IntervalSet::whole(Interval domain) {
    IntervalSet s = empty(domain);
    s.parts_.push_back(domain);
    return s;
}

IntervalSet IntervalSet::normalize(std::vector<Interval> raw, Interval domain,
                                   const NormalizeOptions& opts) {
    IntervalSet s = empty(domain);
    // Values a hair outside the domain come from rounding in map evaluation.
    const double slack = opts.merge_eps + 4.0 * std::numeric_limits<double>::epsilon() *
                                              std::max(std::abs(domain.lo), std::abs(domain.hi));
    for (Interval& iv : raw) {
        if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi)
            fail(ErrorCode::MalformedInterval,
                 "malformed interval [" + fmt17(iv.lo) + "," + fmt17(iv.hi) + "]");
        if (iv.lo < domain.lo - slack || iv.hi > domain.hi + slack)
            fail(ErrorCode::Domain, "interval [" + fmt17(iv.lo) + "," + fmt17(iv.hi) +
                                        "] lies outside the domain");
        iv.lo = std::clamp(iv.lo, domain.lo, domain.hi);
        iv.hi = std::clamp(iv.hi, domain.lo, domain.hi);
    }
    std::sort(raw.begin(), raw.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi); });
    for (const Interval& iv : raw) {
        if (!s.parts_.empty() && iv.lo - s.parts_.back().hi <= opts.merge_eps) {
            s.parts_.back().hi = std::max(s.parts_.back().hi, iv.hi);
        } else {
            if (s.parts_.size() == opts.max_parts)
                fail(ErrorCode::Overflow,
                     "interval set exceeds max_parts=" + std::to_string(opts.max_parts));
            s.parts_.push_back(iv);
        }
    }
    return s;
}

double IntervalSet::min() const {
    require_nonempty(*this, "min");
    return parts_.front().lo;
}

double IntervalSet::max() const {
    require_nonempty(*this, "max");
    return parts_.back().hi;
}

void require_nonempty(const IntervalSet& a, const char* what) {
    if (a.is_empty()) fail(ErrorCode::Empty, std::string(what) + ": empty interval set");
}

double distance(double x, const IntervalSet& b) {
    require_nonempty(b, "distance");
    auto parts = b.parts();
    // First part whose hi >= x.
    auto it = std::lower_bound(parts.begin(), parts.end(), x,
                               [](const Interval& iv, double v) { return iv.hi < v; });
    double d = std::numeric_limits<double>::infinity();
    if (it != parts.end()) d = it->lo <= x ? 0.0 : it->lo - x;
    if (it != parts.begin()) d = std::min(d, x - std::prev(it)->hi);
    return d;
}

double semi_hausdorff(const IntervalSet& a, const IntervalSet& b) {
    require_nonempty(a, "semi_hausdorff");
    require_nonempty(b, "semi_hausdorff");
    check_same_domain(a, b);
    // On a part of A the distance to B is piecewise linear; its maxima sit at
    // the part endpoints or at midpoints of gaps of B.
    auto bp = b.parts();
    std::vector<double> gap_mid;
    gap_mid.reserve(bp.size());
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) gap_mid.push_back(0.5 * (bp[i].hi + bp[i + 1].lo));
    double h = 0.0;
    for (const Interval& iv : a.parts()) {
        h = std::max({h, distance(iv.lo, b), distance(iv.hi, b)});
        auto first = std::lower_bound(gap_mid.begin(), gap_mid.end(), iv.lo);
        for (auto it = first; it != gap_mid.end() && *it <= iv.hi; ++it) h = std::max(h, distance(*it, b));
    }
    return h;
}

double hausdorff(const IntervalSet& a, const IntervalSet& b) {
    return std::max(semi_hausdorff(a, b), semi_hausdorff(b, a));
}

IntervalSet fatten(const IntervalSet& a, double eps, const NormalizeOptions& opts) {
    if (!(eps >= 0.0)) fail(ErrorCode::Parameter, "fatten: eps must be >= 0");
    require_nonempty(a, "fatten");
    const Interval dom = a.domain();
    std::vector<Interval> raw;
    raw.reserve(a.size());
    for (const Interval& iv : a.parts())
        raw.push_back({std::max(dom.lo, iv.lo - eps), std::min(dom.hi, iv.hi + eps)});
    return IntervalSet::normalize(std::move(raw), dom, opts);
}

IntervalSet coarsen(const IntervalSet& a, double resolution) {
    if (!(resolution > 0.0)) fail(ErrorCode::Parameter, "coarsen: resolution must be > 0");
    return fatten(a, 0.5 * resolution);
}

IntervalSet bridge_gaps(const IntervalSet& a, double max_gap) {
    if (!(max_gap >= 0.0)) fail(ErrorCode::Parameter, "bridge_gaps: max_gap must be >= 0");
    if (a.is_empty()) return a;
    NormalizeOptions opts;
    opts.merge_eps = std::max(opts.merge_eps, max_gap);
    return IntervalSet::normalize({a.parts().begin(), a.parts().end()}, a.domain(), opts);
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b, const NormalizeOptions& opts) {
    check_same_domain(a, b);
    std::vector<Interval> raw(a.parts().begin(), a.parts().end());
    raw.insert(raw.end(), b.parts().begin(), b.parts().end());
    return IntervalSet::normalize(std::move(raw), a.domain(), opts);
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
    check_same_domain(a, b);
    std::vector<Interval> out;
    auto ap = a.parts();
    auto bp = b.parts();
    std::size_t i = 0, j = 0;
    while (i < ap.size() && j < bp.size()) {
        double lo = std::max(ap[i].lo, bp[j].lo);
        double hi = std::min(ap[i].hi, bp[j].hi);
        if (lo <= hi) out.push_back({lo, hi});
        if (ap[i].hi < bp[j].hi) ++i; else ++j;
    }
    NormalizeOptions opts;
    opts.max_parts = std::max(opts.max_parts, out.size());
    return IntervalSet::normalize(std::move(out), a.domain(), opts);
}

IntervalSet residual(const IntervalSet& a, const IntervalSet& b, double tol) {
    require_nonempty(a, "residual");
    NormalizeOptions big;
    big.max_parts = std::max(big.max_parts, b.size() + 1);
    const IntervalSet near = fatten(b, tol, big);
    const Interval dom = a.domain();
    std::vector<Interval> comp;
    double cursor = dom.lo;
    for (const Interval& iv : near.parts()) {
        if (iv.lo > cursor) comp.push_back({cursor, iv.lo});
        cursor = iv.hi;
    }
    if (cursor < dom.hi) comp.push_back({cursor, dom.hi});
    if (comp.empty()) return IntervalSet::empty(dom);
    NormalizeOptions opts;
    opts.max_parts = std::max(opts.max_parts, comp.size() + a.size());
    const IntervalSet cut = intersect(a, IntervalSet::normalize(std::move(comp), dom, opts));
    // Points where A merely touches the boundary of the tol-neighbourhood are not residual.
    std::vector<Interval> kept;
    for (const Interval& iv : cut.parts())
        if (iv.length() > 0.0 || distance(iv.lo, b) > tol) kept.push_back(iv);
    if (kept.empty()) return IntervalSet::empty(dom);
    return IntervalSet::normalize(std::move(kept), dom, opts);
}

double diam(const IntervalSet& a) {
    require_nonempty(a, "diam");
    return a.parts().back().hi - a.parts().front().lo;
}

double measure(const IntervalSet& a) {
    require_nonempty(a, "measure");
    double m = 0.0;
    for (const Interval& iv : a.parts()) m += iv.length();
    return m;
}

bool contains(const IntervalSet& a, double x, double tol) {
    if (a.is_empty()) return false;
    return distance(x, a) <= tol;
}

bool subset_within(const IntervalSet& a, const IntervalSet& b, double tol) {
    return semi_hausdorff(a, b) <= tol;
}

bool intersects(const IntervalSet& a, Interval probe) {
    for (const Interval& iv : a.parts())
        if (iv.lo <= probe.hi && probe.lo <= iv.hi) return true;
    return false;
}

void write_csv(std::ostream& os, const IntervalSet& a) {
    os << "# domain " << fmt17(a.domain().lo) << ' ' << fmt17(a.domain().hi) << '\n';
    for (const Interval& iv : a.parts()) os << fmt17(iv.lo) << ',' << fmt17(iv.hi) << '\n';
}

IntervalSet read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) fail(ErrorCode::Io, "interval csv: missing header");
    std::istringstream head(line);
    std::string hash, word;
    Interval dom;
    if (!(head >> hash >> word >> dom.lo >> dom.hi) || hash != "#" || word != "domain")
        fail(ErrorCode::Io, "interval csv: bad header '" + line + "'");
    std::vector<Interval> raw;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) fail(ErrorCode::Io, "interval csv: bad row '" + line + "'");
        try {
            raw.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
        } catch (const std::exception&) {
            fail(ErrorCode::Io, "interval csv: bad row '" + line + "'");
        }
    }
    NormalizeOptions opts;
    opts.max_parts = std::max(opts.max_parts, raw.size());
    return IntervalSet::normalize(std::move(raw), dom, opts);
}

}  // namespace ifslab
