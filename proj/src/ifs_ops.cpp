#include <algorithm>
#include <cmath>

#include "ifslab/error.hpp"
#include "ifslab/ifs.hpp"

namespace ifslab {

namespace {

/// Absorbs rounding in compositions so that, e.g., a depth-8 Cantor image
/// counts as having diameter 3^-8.
bool small_enough(double d, double tol) { return d <= tol * (1.0 + 1e-9); }

Interval compose_image(const Ifs& f, std::span<const int> word) {
    Interval iv = f.domain();
    for (auto it = word.rbegin(); it != word.rend(); ++it) iv = f.map(*it).image(iv);
    return iv;
}

}  // namespace

Deadline Deadline::after_seconds(double s) {
    Deadline d;
    if (s > 0.0)
        d.at = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(s));
    return d;
}

bool Deadline::expired() const { return at && std::chrono::steady_clock::now() >= *at; }

IntervalSet map_image(const PiecewiseMonotoneMap& t, const IntervalSet& a, const NormalizeOptions& opts) {
    require_nonempty(a, "map_image");
    std::vector<Interval> raw;
    raw.reserve(a.size());
    for (const Interval& iv : a.parts()) raw.push_back(t.image(iv));
    return IntervalSet::normalize(std::move(raw), a.domain(), opts);
}

IntervalSet bh_apply(const Ifs& f, const IntervalSet& a, const NormalizeOptions& opts) {
    require_nonempty(a, "bh_apply");
    if (a.domain() != f.domain()) fail(ErrorCode::Domain, "set and IFS live on different domains");
    std::vector<Interval> raw;
    raw.reserve(a.size() * static_cast<std::size_t>(f.size()));
    for (const auto& t : f.maps())
        for (const Interval& iv : a.parts()) raw.push_back(t.image(iv));
    return IntervalSet::normalize(std::move(raw), a.domain(), opts);
}

StarResult star_set(const Ifs& f, const IntervalSet& a, double tol, int max_iter) {
    require_nonempty(a, "star_set");
    if (!subset_within(bh_apply(f, a), a, 1e-12))
        fail(ErrorCode::Precondition, "star_set needs a B-invariant start set (B(A) inside A)");
    StarResult r{a, 0, false};
    for (int it = 1; it <= max_iter; ++it) {
        IntervalSet next = bh_apply(f, r.set);
        const double step = hausdorff(r.set, next);
        r.set = std::move(next);
        r.iterations = it;
        if (step <= tol) {
            r.converged = true;
            break;
        }
    }
    return r;
}

Interval word_interval(const Ifs& f, const Word& w) { return compose_image(f, w.symbols()); }

IntervalSet word_image(const Ifs& f, const Word& w) {
    if (w.empty()) fail(ErrorCode::Parameter, "word_image needs a nonempty word");
    return IntervalSet::normalize({word_interval(f, w)}, f.domain());
}

IntervalSet fibre_approx(const Ifs& f, const SymbolStream& s, int depth) {
    if (depth < 1) fail(ErrorCode::Parameter, "fibre_approx needs depth >= 1");
    const auto prefix = s.prefix(static_cast<std::size_t>(depth));
    return IntervalSet::normalize({compose_image(f, prefix)}, f.domain());
}

TargetResult target_approx(const Ifs& f, double tol, int max_depth, const TargetOptions& opts) {
    if (!(tol > 0.0)) fail(ErrorCode::Parameter, "target_approx needs tol > 0");
    if (max_depth < 1) fail(ErrorCode::Parameter, "target_approx needs max_depth >= 1");
    const int k = f.size();
    std::vector<Interval> atoms, undecided;
    // Words of the current depth, stored back to back.
    std::vector<int> frontier;
    for (int s = 1; s <= k; ++s) frontier.push_back(s);
    TargetResult r;
    for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
        r.depth_reached = depth;
        const std::size_t n_words = frontier.size() / static_cast<std::size_t>(depth);
        std::vector<int> next;
        bool stop = false;
        for (std::size_t w = 0; w < n_words; ++w) {
            std::span<const int> word(frontier.data() + w * static_cast<std::size_t>(depth),
                                      static_cast<std::size_t>(depth));
            const Interval iv = compose_image(f, word);
            if (small_enough(iv.length(), tol)) {
                atoms.push_back(iv);
                ++r.atom_words;
                continue;
            }
            if (depth == max_depth || stop) {
                undecided.push_back(iv);
                continue;
            }
            if ((w & 1023) == 0 && opts.deadline.expired()) stop = true;
            if (next.size() / static_cast<std::size_t>(depth + 1) + static_cast<std::size_t>(k) > opts.max_pending)
                stop = true;
            if (stop) {
                r.budget_exhausted = true;
                undecided.push_back(iv);
                continue;
            }
            for (int s = 1; s <= k; ++s) {
                next.insert(next.end(), word.begin(), word.end());
                next.push_back(s);
            }
        }
        if (stop) break;
        frontier = std::move(next);
    }
    NormalizeOptions big;
    big.max_parts = std::max({big.max_parts, atoms.size(), undecided.size()});
    r.atoms = IntervalSet::normalize(std::move(atoms), f.domain(), big);
    r.undecided = IntervalSet::normalize(std::move(undecided), f.domain(), big);
    r.complete = r.undecided.is_empty() && !r.budget_exhausted;
    return r;
}

std::optional<Word> weakly_hyperbolic_witness(const Ifs& f, double tol, int max_depth) {
    if (!(tol > 0.0)) fail(ErrorCode::Parameter, "weakly_hyperbolic_witness needs tol > 0");
    const int k = f.size();
    // Level n holds the images of all words of length n in lexicographic
    // order; prepending s to every word keeps that order.
    std::vector<Interval> level{f.domain()};
    constexpr std::size_t kMaxLevel = std::size_t{1} << 24;
    for (int len = 1; len <= max_depth; ++len) {
        if (level.size() * static_cast<std::size_t>(k) > kMaxLevel)
            fail(ErrorCode::Budget, "weakly_hyperbolic_witness: word level too large at length " + std::to_string(len));
        std::vector<Interval> next;
        next.reserve(level.size() * static_cast<std::size_t>(k));
        for (int s = 1; s <= k; ++s)
            for (const Interval& iv : level) next.push_back(f.map(s).image(iv));
        for (std::size_t idx = 0; idx < next.size(); ++idx) {
            if (!small_enough(next[idx].length(), tol)) continue;
            std::vector<int> sym(static_cast<std::size_t>(len));
            std::size_t rem = idx;
            for (int p = len - 1; p >= 0; --p) {
                sym[static_cast<std::size_t>(p)] = static_cast<int>(rem % static_cast<std::size_t>(k)) + 1;
                rem /= static_cast<std::size_t>(k);
            }
            return Word(k, std::move(sym));
        }
        level = std::move(next);
    }
    return std::nullopt;
}

std::string to_string(ConleyVerdict v) {
    switch (v) {
        case ConleyVerdict::Attracts: return "attracts";
        case ConleyVerdict::Escapes: return "escapes";
        case ConleyVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

ConleyResult conley_probe(const Ifs& f, const IntervalSet& a, double eps, double tol, int max_iter) {
    require_nonempty(a, "conley_probe");
    if (!(eps > 0.0) || !(tol > 0.0)) fail(ErrorCode::Parameter, "conley_probe needs eps > 0 and tol > 0");
    const double gap = tol / 10.0;
    IntervalSet u = fatten(a, eps);
    ConleyResult r;
    for (int it = 0; it <= max_iter; ++it) {
        r.iterations = it;
        r.distance = hausdorff(u, a);
        if (r.distance <= tol) {
            r.verdict = ConleyVerdict::Attracts;
            r.final_set = u;
            return r;
        }
        if (it == max_iter) break;
        IntervalSet next = bridge_gaps(bh_apply(f, u), gap);
        const double step = hausdorff(u, next);
        u = std::move(next);
        // Only a sequence that has itself stopped moving may be read as escaping.
        if (step <= gap) {
            r.iterations = it + 1;
            r.distance = hausdorff(u, a);
            if (r.distance > tol) {
                r.verdict = ConleyVerdict::Escapes;
                r.residual = residual(u, a, tol);
                r.final_set = u;
                return r;
            }
        }
    }
    r.final_set = u;
    r.verdict = r.distance <= tol ? ConleyVerdict::Attracts : ConleyVerdict::Inconclusive;
    return r;
}

bool stability_probe(const Ifs& f, const IntervalSet& a, double v_eps, double v0_eps, int n_iter) {
    require_nonempty(a, "stability_probe");
    if (!(v0_eps > 0.0) || !(v0_eps <= v_eps))
        fail(ErrorCode::Parameter, "stability_probe needs 0 < v0_eps <= v_eps");
    const IntervalSet v = fatten(a, v_eps);
    // Gap closing keeps iterates bounded; it only enlarges them, so a pass is
    // still a pass for the exact iterates.
    const double gap = (v_eps - v0_eps) / (4.0 * std::max(1, n_iter));
    IntervalSet w = fatten(a, v0_eps);
    for (int n = 1; n <= n_iter; ++n) {
        w = bh_apply(f, w);
        if (gap > 0.0) w = bridge_gaps(w, gap);
        if (!subset_within(w, v, 1e-12)) return false;
    }
    return true;
}

bool invariance_check(const Ifs& f, const IntervalSet& a, double tol) {
    require_nonempty(a, "invariance_check");
    return semi_hausdorff(bh_apply(f, a), a) <= tol;
}

namespace {

double lipschitz_bound(const PiecewiseMonotoneMap& t) {
    double l = 0.0;
    for (const MonotoneBranch& b : t.branches()) {
        const Interval sub = b.sub_domain();
        switch (b.form()) {
            case MonotoneBranch::Form::Linear:
                l = std::max(l, std::abs(b.slope()));
                break;
            case MonotoneBranch::Form::Quadratic: {
                const auto& c = b.coefficients();
                l = std::max({l, std::abs(2 * c[0] * sub.lo + c[1]), std::abs(2 * c[0] * sub.hi + c[1])});
                break;
            }
            case MonotoneBranch::Form::Generic: {
                constexpr int n = 256;
                for (int i = 0; i < n; ++i) {
                    const double x0 = sub.lo + sub.length() * i / n;
                    const double x1 = sub.lo + sub.length() * (i + 1) / n;
                    l = std::max(l, 2.0 * std::abs(b(x1) - b(x0)) / (x1 - x0));
                }
                break;
            }
        }
    }
    return l;
}

}  // namespace

IntervalSet common_fixed_points(const Ifs& f, double tol, int grid_n) {
    if (grid_n < 2) fail(ErrorCode::Parameter, "common_fixed_points needs grid_n >= 2");
    if (!(tol >= 0.0)) fail(ErrorCode::Parameter, "common_fixed_points needs tol >= 0");
    const Interval dom = f.domain();
    const double h = dom.length() / grid_n;
    std::vector<double> lips;
    for (const auto& t : f.maps()) lips.push_back(lipschitz_bound(t) + 1.0);
    std::vector<Interval> cells;
    for (int c = 0; c < grid_n; ++c) {
        const double x0 = dom.lo + h * c;
        const double x1 = c + 1 == grid_n ? dom.hi : dom.lo + h * (c + 1);
        const double xm = 0.5 * (x0 + x1);
        bool all = true;
        for (int i = 0; i < f.size() && all; ++i) {
            const auto& t = f.maps()[static_cast<std::size_t>(i)];
            const double g0 = t(x0) - x0, g1 = t(x1) - x1, gm = t(xm) - xm;
            const bool root = (g0 <= 0.0 && g1 >= 0.0) || (g0 >= 0.0 && g1 <= 0.0) || (g0 * gm <= 0.0);
            // |T(x) - x| varies by at most (Lip + 1) * h/2 away from the samples.
            const double near = std::min({std::abs(g0), std::abs(g1), std::abs(gm)}) -
                                lips[static_cast<std::size_t>(i)] * 0.25 * h;
            all = root || near <= tol;
        }
        if (all) cells.push_back({x0, x1});
    }
    if (cells.empty()) return IntervalSet::empty(dom);
    NormalizeOptions opts;
    opts.max_parts = std::max(opts.max_parts, cells.size());
    return IntervalSet::normalize(std::move(cells), dom, opts);
}

double lipschitz_exact(const Ifs& f, const Word& w) {
    if (w.empty()) return 1.0;
    for (int s : w.symbols())
        if (!f.map(s).piecewise_linear())
            fail(ErrorCode::Unsupported, "lipschitz_exact needs piecewise-linear maps (symbol " + std::to_string(s) + ")");
    // Pieces of the domain on which the composition built so far is affine.
    struct Piece {
        double x0, x1;  // domain sub-interval
        double y0, y1;  // composition values at its ends
        double slope;
    };
    const auto syms = w.symbols();
    std::vector<Piece> pieces;
    for (const MonotoneBranch& b : f.map(syms.back()).branches()) {
        const Interval sub = b.sub_domain();
        pieces.push_back({sub.lo, sub.hi, b(sub.lo), b(sub.hi), b.slope()});
    }
    for (auto it = syms.rbegin() + 1; it != syms.rend(); ++it) {
        const PiecewiseMonotoneMap& t = f.map(*it);
        std::vector<Piece> next;
        for (const Piece& p : pieces) {
            // Split p where its values cross a breakpoint of t.
            std::vector<double> cuts{p.x0, p.x1};
            const double ylo = std::min(p.y0, p.y1), yhi = std::max(p.y0, p.y1);
            if (p.slope != 0.0)
                for (const MonotoneBranch& b : t.branches()) {
                    const double bp = b.sub_domain().hi;
                    if (bp > ylo && bp < yhi) cuts.push_back(p.x0 + (bp - p.y0) / p.slope);
                }
            std::sort(cuts.begin(), cuts.end());
            for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
                const double x0 = cuts[c], x1 = cuts[c + 1];
                if (!(x1 > x0)) continue;
                const double y0 = p.y0 + p.slope * (x0 - p.x0);
                const double y1 = p.y0 + p.slope * (x1 - p.x0);
                const double ym = 0.5 * (y0 + y1);
                const auto& brs = t.branches();
                auto br = std::lower_bound(brs.begin(), brs.end(), ym,
                                           [](const MonotoneBranch& b, double v) { return b.sub_domain().hi < v; });
                if (br == brs.end()) --br;
                next.push_back({x0, x1, (*br)(y0), (*br)(y1), br->slope() * p.slope});
            }
        }
        pieces = std::move(next);
    }
    double l = 0.0;
    for (const Piece& p : pieces)
        if (p.x1 > p.x0) l = std::max(l, std::abs(p.slope));
    return l;
}

}  // namespace ifslab
