#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ifslab/error.hpp"
#include "ifslab/ifs.hpp"

namespace ifslab {

namespace {

constexpr int kMonotoneSamples = 257;
constexpr double kSeamTol = 1e-12;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void check_sub(Interval sub) {
    if (!(sub.lo < sub.hi) || !std::isfinite(sub.lo) || !std::isfinite(sub.hi))
        fail(ErrorCode::Construction, "branch sub-domain must satisfy lo < hi");
}

int sign_of(double d) { return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0); }

}  // namespace

MonotoneBranch MonotoneBranch::linear(Interval sub, double y_lo, double y_hi) {
    check_sub(sub);
    MonotoneBranch b;
    b.form_ = Form::Linear;
    b.sub_ = sub;
    b.y_lo_ = y_lo;
    b.y_hi_ = y_hi;
    b.direction_ = sign_of(y_hi - y_lo);
    return b;
}

MonotoneBranch MonotoneBranch::quadratic(Interval sub, double a, double b, double c) {
    check_sub(sub);
    MonotoneBranch br;
    br.form_ = Form::Quadratic;
    br.sub_ = sub;
    br.coef_ = {a, b, c};
    if (a != 0.0) {
        const double vertex = -b / (2.0 * a);
        if (vertex > sub.lo && vertex < sub.hi)
            fail(ErrorCode::Construction, "quadratic branch has its vertex " + num(vertex) +
                                              " inside the sub-domain, so it is not monotone");
    }
    br.y_lo_ = br(sub.lo);
    br.y_hi_ = br(sub.hi);
    br.direction_ = sign_of(br.y_hi_ - br.y_lo_);
    br.verify_monotone();
    return br;
}

MonotoneBranch MonotoneBranch::generic(Interval sub, std::function<double(double)> f, bool increasing) {
    check_sub(sub);
    if (!f) fail(ErrorCode::Construction, "generic branch needs a callable");
    MonotoneBranch br;
    br.form_ = Form::Generic;
    br.sub_ = sub;
    br.fn_ = std::move(f);
    br.y_lo_ = br.fn_(sub.lo);
    br.y_hi_ = br.fn_(sub.hi);
    br.direction_ = sign_of(br.y_hi_ - br.y_lo_);
    if (br.direction_ != 0 && (br.direction_ > 0) != increasing)
        fail(ErrorCode::Construction, "generic branch contradicts its certified direction");
    br.verify_monotone();
    return br;
}

void MonotoneBranch::verify_monotone() const {
    double prev = (*this)(sub_.lo);
    for (int i = 1; i < kMonotoneSamples; ++i) {
        const double x = sub_.lo + (sub_.hi - sub_.lo) * i / (kMonotoneSamples - 1);
        const double y = (*this)(x);
        const double step = y - prev;
        if ((direction_ >= 0 && step < -kSeamTol) || (direction_ <= 0 && step > kSeamTol))
            fail(ErrorCode::Construction, "branch on [" + num(sub_.lo) + "," + num(sub_.hi) +
                                              "] is not monotone near x=" + num(x));
        prev = y;
    }
}

double MonotoneBranch::operator()(double x) const {
    switch (form_) {
        case Form::Linear:
            // Weighted form reproduces both endpoint values exactly.
            return (y_lo_ * (sub_.hi - x) + y_hi_ * (x - sub_.lo)) / (sub_.hi - sub_.lo);
        case Form::Quadratic:
            return (coef_[0] * x + coef_[1]) * x + coef_[2];
        case Form::Generic:
            return fn_(x);
    }
    return 0.0;
}

Interval MonotoneBranch::image(Interval part) const {
    const double a = std::max(part.lo, sub_.lo);
    const double b = std::min(part.hi, sub_.hi);
    double ya = a == sub_.lo ? y_lo_ : (*this)(a);
    double yb = b == sub_.hi ? y_hi_ : (*this)(b);
    if (ya > yb) std::swap(ya, yb);
    if (form_ == Form::Quadratic && coef_[0] != 0.0) {
        const double vertex = -coef_[1] / (2.0 * coef_[0]);
        if (vertex > a && vertex < b) {
            const double yv = (*this)(vertex);
            ya = std::min(ya, yv);
            yb = std::max(yb, yv);
        }
    }
    return {ya, yb};
}

double MonotoneBranch::inverse(double y) const {
    if (direction_ == 0) return sub_.lo;
    const bool inc = direction_ > 0;
    const double ymin = inc ? y_lo_ : y_hi_;
    const double ymax = inc ? y_hi_ : y_lo_;
    if (y <= ymin) return inc ? sub_.lo : sub_.hi;
    if (y >= ymax) return inc ? sub_.hi : sub_.lo;
    if (form_ == Form::Linear) {
        const double x = sub_.lo + (y - y_lo_) * (sub_.hi - sub_.lo) / (y_hi_ - y_lo_);
        return std::clamp(x, sub_.lo, sub_.hi);
    }
    double lo = sub_.lo, hi = sub_.hi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const bool below = inc ? (*this)(mid) < y : (*this)(mid) > y;
        (below ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

bool MonotoneBranch::strictly_monotone_on(Interval j) const {
    const double a = std::max(j.lo, sub_.lo);
    const double b = std::min(j.hi, sub_.hi);
    if (a > b) return true;
    if (direction_ == 0) return a == b;
    switch (form_) {
        case Form::Linear:
            return true;
        case Form::Quadratic: {
            const double A = coef_[0], B = coef_[1];
            if (A == 0.0) return B != 0.0;
            const double vertex = -B / (2.0 * A);
            return !(vertex > a && vertex < b);
        }
        case Form::Generic: {
            double prev = (*this)(a);
            for (int i = 1; i < kMonotoneSamples; ++i) {
                const double y = (*this)(a + (b - a) * i / (kMonotoneSamples - 1));
                if (direction_ * (y - prev) <= 0.0) return false;
                prev = y;
            }
            return true;
        }
    }
    return false;
}

PiecewiseMonotoneMap::PiecewiseMonotoneMap(Interval domain, std::vector<MonotoneBranch> branches)
    : domain_(domain), branches_(std::move(branches)) {
    if (!(domain.lo < domain.hi)) fail(ErrorCode::Domain, "map domain must satisfy lo < hi");
    if (branches_.empty()) fail(ErrorCode::Construction, "map needs at least one branch");
    std::sort(branches_.begin(), branches_.end(),
              [](const MonotoneBranch& x, const MonotoneBranch& y) { return x.sub_domain().lo < y.sub_domain().lo; });
    if (std::abs(branches_.front().sub_domain().lo - domain.lo) > kSeamTol ||
        std::abs(branches_.back().sub_domain().hi - domain.hi) > kSeamTol)
        fail(ErrorCode::Construction, "branches must cover the whole domain");
    for (std::size_t i = 0; i + 1 < branches_.size(); ++i) {
        const MonotoneBranch& l = branches_[i];
        const MonotoneBranch& r = branches_[i + 1];
        if (std::abs(l.sub_domain().hi - r.sub_domain().lo) > kSeamTol)
            fail(ErrorCode::Construction, "branch sub-domains leave a gap or overlap near x=" + num(l.sub_domain().hi));
        const double yl = l(l.sub_domain().hi);
        const double yr = r(r.sub_domain().lo);
        if (std::abs(yl - yr) > kSeamTol)
            fail(ErrorCode::Construction, "map is discontinuous at x=" + num(l.sub_domain().hi) + " (" + num(yl) +
                                              " vs " + num(yr) + ")");
    }
    for (const MonotoneBranch& b : branches_) {
        const Interval im = b.image(b.sub_domain());
        if (im.lo < domain.lo - kSeamTol || im.hi > domain.hi + kSeamTol)
            fail(ErrorCode::Construction, "branch image [" + num(im.lo) + "," + num(im.hi) + "] leaves the domain");
    }
}

PiecewiseMonotoneMap PiecewiseMonotoneMap::from_vertices(const std::vector<std::pair<double, double>>& vertices) {
    if (vertices.size() < 2) fail(ErrorCode::Construction, "piecewise-linear map needs >= 2 vertices");
    std::vector<MonotoneBranch> br;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        br.push_back(MonotoneBranch::linear({vertices[i].first, vertices[i + 1].first}, vertices[i].second,
                                            vertices[i + 1].second));
    Interval dom{vertices.front().first, vertices.back().first};
    return PiecewiseMonotoneMap(dom, std::move(br));
}

PiecewiseMonotoneMap PiecewiseMonotoneMap::affine(Interval domain, double slope, double intercept) {
    return PiecewiseMonotoneMap(
        domain, {MonotoneBranch::linear(domain, slope * domain.lo + intercept, slope * domain.hi + intercept)});
}

PiecewiseMonotoneMap PiecewiseMonotoneMap::quadratic(Interval domain, double a, double b, double c) {
    return PiecewiseMonotoneMap(domain, {MonotoneBranch::quadratic(domain, a, b, c)});
}

bool PiecewiseMonotoneMap::piecewise_linear() const noexcept {
    return std::all_of(branches_.begin(), branches_.end(), [](const MonotoneBranch& b) { return b.is_linear(); });
}

double PiecewiseMonotoneMap::operator()(double x) const {
    if (x < domain_.lo - kSeamTol || x > domain_.hi + kSeamTol)
        fail(ErrorCode::Domain, "point " + num(x) + " outside the map domain");
    x = std::clamp(x, domain_.lo, domain_.hi);
    auto it = std::lower_bound(branches_.begin(), branches_.end(), x,
                               [](const MonotoneBranch& b, double v) { return b.sub_domain().hi < v; });
    if (it == branches_.end()) --it;
    return (*it)(x);
}

Interval PiecewiseMonotoneMap::image(Interval part) const {
    const double a = std::max(part.lo, domain_.lo);
    const double b = std::min(part.hi, domain_.hi);
    auto it = std::lower_bound(branches_.begin(), branches_.end(), a,
                               [](const MonotoneBranch& br, double v) { return br.sub_domain().hi < v; });
    if (it == branches_.end()) --it;
    Interval out = it->image({a, b});
    for (++it; it != branches_.end() && it->sub_domain().lo <= b; ++it) {
        const Interval im = it->image({a, b});
        out.lo = std::min(out.lo, im.lo);
        out.hi = std::max(out.hi, im.hi);
    }
    return out;
}

Ifs::Ifs(Interval domain, std::vector<PiecewiseMonotoneMap> maps, std::string name)
    : domain_(domain), maps_(std::move(maps)), name_(std::move(name)) {
    if (maps_.empty()) fail(ErrorCode::InvalidAlphabet, "an IFS needs at least one map");
    for (const auto& m : maps_) {
        if (std::abs(m.domain().lo - domain.lo) > kSeamTol || std::abs(m.domain().hi - domain.hi) > kSeamTol)
            fail(ErrorCode::Domain, "every map must share the IFS domain");
        const Interval im = m.image(domain);
        if (im.lo < domain.lo - kSeamTol || im.hi > domain.hi + kSeamTol)
            fail(ErrorCode::Construction, "a map sends the domain outside itself");
    }
}

const PiecewiseMonotoneMap& Ifs::map(int symbol) const {
    if (symbol < 1 || symbol > size())
        fail(ErrorCode::Index, "symbol " + std::to_string(symbol) + " outside {1.." + std::to_string(size()) + "}");
    return maps_[static_cast<std::size_t>(symbol - 1)];
}

namespace {

struct PlFixedPoint {
    double x;
    double slope;
};

std::vector<PlFixedPoint> pl_fixed_points(const PiecewiseMonotoneMap& t) {
    std::vector<PlFixedPoint> out;
    for (const MonotoneBranch& b : t.branches()) {
        const double s = b.slope();
        if (s == 1.0) continue;
        const Interval sub = b.sub_domain();
        const double x = (b(sub.lo) - s * sub.lo) / (1.0 - s);
        if (x < sub.lo - kSeamTol || x > sub.hi + kSeamTol) continue;
        if (!out.empty() && std::abs(out.back().x - x) < 1e-9) continue;
        out.push_back({x, s});
    }
    return out;
}

Ifs make_nonregular() {
    const Interval unit{0.0, 1.0};
    auto t1 = PiecewiseMonotoneMap::quadratic(unit, -1.0, 2.0, 0.0);
    auto t2 = PiecewiseMonotoneMap::from_vertices({{0.0, 0.1}, {0.33, 0.25}, {0.45, 0.52}, {1.0, 0.7}});
    // Qualitative shape: T2 has an attracting, a repelling and an attracting
    // fixed point, T2([0,1]) sits inside (0,1), and T1(p1) < max T2.
    const auto fp = pl_fixed_points(t2);
    const Interval range = t2.image(unit);
    if (fp.size() != 3 || std::abs(fp[0].slope) >= 1.0 || std::abs(fp[1].slope) <= 1.0 ||
        std::abs(fp[2].slope) >= 1.0 || !(range.lo > 0.0 && range.hi < 1.0) || !(t1(fp[0].x) < range.hi))
        fail(ErrorCode::Construction, "nonregular preset lost its fixed-point structure");
    return Ifs(unit, {t1, t2}, "nonregular-6-1");
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"cantor", "example-3-4", "figure-2", "flip", "nonregular-6-1", "porcupine-6-2", "bony-6-3",
            "identity", "cantor-3"};
}

Ifs preset(const std::string& name) {
    const Interval unit{0.0, 1.0};
    if (name == "cantor")
        return Ifs(unit,
                   {PiecewiseMonotoneMap::affine(unit, 1.0 / 3.0, 0.0),
                    PiecewiseMonotoneMap::affine(unit, 1.0 / 3.0, 2.0 / 3.0)},
                   name);
    if (name == "cantor-3")
        return Ifs(unit,
                   {PiecewiseMonotoneMap::affine(unit, 1.0 / 3.0, 0.0),
                    PiecewiseMonotoneMap::affine(unit, 1.0 / 3.0, 2.0 / 3.0),
                    PiecewiseMonotoneMap::affine(unit, 1.0 / 3.0, 0.0)},
                   name);
    if (name == "example-3-4") {
        const Interval dom{0.0, 2.0};
        return Ifs(dom,
                   {PiecewiseMonotoneMap::affine(dom, 1.0 / 3.0, 0.0),
                    PiecewiseMonotoneMap::from_vertices({{0.0, 2.0 / 3.0}, {1.0, 1.0}, {2.0, 2.0}})},
                   name);
    }
    if (name == "figure-2")
        return Ifs(unit,
                   {PiecewiseMonotoneMap::from_vertices({{0.0, 0.5}, {0.5, 1.0}, {1.0, 1.0}}),
                    PiecewiseMonotoneMap::from_vertices({{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.5}})},
                   name);
    if (name == "flip")
        return Ifs(unit, {PiecewiseMonotoneMap::affine(unit, 1.0, 0.0), PiecewiseMonotoneMap::affine(unit, -1.0, 1.0)},
                   name);
    if (name == "nonregular-6-1") return make_nonregular();
    if (name == "porcupine-6-2") {
        constexpr double lambda = 0.9;
        return Ifs(unit,
                   {PiecewiseMonotoneMap::affine(unit, -lambda, lambda),
                    PiecewiseMonotoneMap::quadratic(unit, -1.0, 2.0, 0.0)},
                   name);
    }
    if (name == "bony-6-3")
        return Ifs(unit,
                   {PiecewiseMonotoneMap::from_vertices({{0.0, 0.0}, {0.6, 0.2}, {1.0, 0.8}}),
                    PiecewiseMonotoneMap::from_vertices({{0.0, 0.15}, {0.4, 0.8}, {1.0, 1.0}})},
                   name);
    if (name == "identity") return Ifs(unit, {PiecewiseMonotoneMap::affine(unit, 1.0, 0.0)}, name);
    fail(ErrorCode::Usage, "unknown preset '" + name + "'");
}

}  // namespace ifslab
