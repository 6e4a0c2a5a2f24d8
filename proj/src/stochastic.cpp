#include "ifslab/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ifslab/error.hpp"

namespace ifslab {

namespace {

using BoolMatrix = std::vector<std::vector<char>>;

BoolMatrix support_of(const TransitionMatrix& p) {
    const int k = p.size();
    BoolMatrix m(static_cast<std::size_t>(k), std::vector<char>(static_cast<std::size_t>(k), 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = p(i, j) > 0.0;
    return m;
}

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
    const std::size_t k = a.size();
    BoolMatrix c(k, std::vector<char>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l])
                for (std::size_t j = 0; j < k; ++j) c[i][j] = c[i][j] || b[l][j];
    return c;
}

}  // namespace

bool is_irreducible(const TransitionMatrix& p) {
    const int k = p.size();
    for (int start = 0; start < k; ++start) {
        std::vector<char> seen(static_cast<std::size_t>(k), 0);
        std::vector<int> stack{start};
        seen[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            const int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < k; ++j)
                if (p(i, j) > 0.0 && !seen[static_cast<std::size_t>(j)]) {
                    seen[static_cast<std::size_t>(j)] = 1;
                    stack.push_back(j);
                }
        }
        if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return false;
    }
    return true;
}

bool is_primitive(const TransitionMatrix& p) {
    if (!is_irreducible(p)) return false;
    const int k = p.size();
    const int power = (k - 1) * (k - 1) + 1;
    const BoolMatrix base = support_of(p);
    BoolMatrix acc = base;
    for (int n = 1; n < power; ++n) acc = bool_product(acc, base);
    for (const auto& row : acc)
        if (std::find(row.begin(), row.end(), 0) != row.end()) return false;
    return true;
}

std::vector<double> stationary_vector(const TransitionMatrix& p, double tol, int max_iter) {
    if (!is_irreducible(p)) fail(ErrorCode::Structure, "stationary_vector needs an irreducible matrix");
    const std::size_t k = static_cast<std::size_t>(p.size());
    std::vector<double> v(k, 1.0 / static_cast<double>(k));
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> next = p.left_multiply(v);
        double change = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            next[i] = 0.5 * (next[i] + v[i]);
            sum += next[i];
        }
        for (std::size_t i = 0; i < k; ++i) {
            next[i] /= sum;
            change += std::abs(next[i] - v[i]);
        }
        v = std::move(next);
        if (change <= tol) return v;
    }
    fail(ErrorCode::Convergence, "stationary_vector did not converge in " + std::to_string(max_iter) + " iterations");
}

TransitionMatrix inverse_matrix(const TransitionMatrix& p, std::span<const double> pbar) {
    const int k = p.size();
    if (static_cast<int>(pbar.size()) != k) fail(ErrorCode::Shape, "stationary vector length mismatch");
    for (double x : pbar)
        if (!(x > 0.0)) fail(ErrorCode::Degeneracy, "inverse_matrix needs a strictly positive stationary vector");
    const auto moved = p.left_multiply(pbar);
    double defect = 0.0;
    for (int i = 0; i < k; ++i) defect += std::abs(moved[static_cast<std::size_t>(i)] - pbar[static_cast<std::size_t>(i)]);
    if (defect > 1e-9) fail(ErrorCode::Precondition, "inverse_matrix: vector is not stationary for P");
    std::vector<double> q(static_cast<std::size_t>(k * k));
    for (int i = 0; i < k; ++i) {
        double row = 0.0;
        for (int j = 0; j < k; ++j) {
            const double v = pbar[static_cast<std::size_t>(j)] / pbar[static_cast<std::size_t>(i)] * p(j, i);
            q[static_cast<std::size_t>(i * k + j)] = v;
            row += v;
        }
        // Rows sum to (pbar P)_i / p_i, one up to the stationarity defect.
        for (int j = 0; j < k; ++j) q[static_cast<std::size_t>(i * k + j)] /= row;
    }
    return TransitionMatrix(k, std::move(q));
}

void check_invariant_injective(const Ifs& f, Interval j) {
    const Interval dom = f.domain();
    if (!(j.lo < j.hi) || j.lo < dom.lo || j.hi > dom.hi)
        fail(ErrorCode::Precondition, "J must be a non-trivial closed interval inside the domain");
    for (int s = 1; s <= f.size(); ++s) {
        const auto& t = f.map(s);
        const Interval im = t.image(j);
        if (im.lo < j.lo - 1e-12 || im.hi > j.hi + 1e-12)
            fail(ErrorCode::Precondition, "map " + std::to_string(s) + " does not send J into J");
        int dir = 0;
        for (const MonotoneBranch& b : t.branches()) {
            const Interval sub = b.sub_domain();
            if (std::min(sub.hi, j.hi) - std::max(sub.lo, j.lo) <= 0.0) continue;
            if (b.direction() == 0 || !b.strictly_monotone_on(j) || (dir != 0 && dir != b.direction()))
                fail(ErrorCode::Precondition, "map " + std::to_string(s) + " is not injective on J");
            dir = b.direction();
        }
    }
}

namespace {

struct Candidate {
    Word word;
    Interval image;
};

/// Words of length 1..max_depth with their images, length-lexicographic,
/// grouped by length.
std::vector<std::vector<Candidate>> word_levels(const Ifs& f, int max_depth) {
    const int k = f.size();
    std::vector<std::vector<Candidate>> levels;
    std::vector<Candidate> level{{Word(k, {}), f.domain()}};
    constexpr std::size_t kMaxWords = std::size_t{1} << 22;
    std::size_t total = 0;
    for (int len = 1; len <= max_depth; ++len) {
        total += level.size() * static_cast<std::size_t>(k);
        if (total > kMaxWords) fail(ErrorCode::Budget, "witness search exceeds the word budget at length " + std::to_string(len));
        std::vector<Candidate> next;
        next.reserve(level.size() * static_cast<std::size_t>(k));
        for (int s = 1; s <= k; ++s)
            for (const Candidate& c : level) {
                std::vector<int> sym{s};
                sym.insert(sym.end(), c.word.symbols().begin(), c.word.symbols().end());
                next.push_back({Word(k, std::move(sym)), f.map(s).image(c.image)});
            }
        level = next;
        levels.push_back(std::move(next));
    }
    return levels;
}

bool disjoint(Interval a, Interval b) { return a.hi < b.lo || b.hi < a.lo; }

std::optional<WordPair> search_pairs(const std::vector<std::vector<Candidate>>& levels,
                                     const std::function<bool(const Candidate&)>& usable,
                                     const std::function<bool(const Candidate&, const Candidate&)>& pair_ok) {
    std::vector<std::vector<const Candidate*>> kept(levels.size());
    for (std::size_t l = 0; l < levels.size(); ++l)
        for (const Candidate& c : levels[l])
            if (usable(c)) kept[l].push_back(&c);
    for (std::size_t d = 0; d < kept.size(); ++d) {
        const auto& top = kept[d];
        for (std::size_t lu = 0; lu <= d; ++lu)
            for (std::size_t iu = 0; iu < kept[lu].size(); ++iu) {
                const Candidate& u = *kept[lu][iu];
                for (std::size_t iv = lu == d ? iu + 1 : 0; iv < top.size(); ++iv) {
                    const Candidate& v = *top[iv];
                    if (disjoint(u.image, v.image) && pair_ok(u, v)) return WordPair{u.word, v.word};
                }
            }
    }
    return std::nullopt;
}

bool inside(Interval a, Interval j) { return a.lo >= j.lo - 1e-12 && a.hi <= j.hi + 1e-12; }

}  // namespace

std::optional<WordPair> split_check(const Ifs& f, const TransitionMatrix& p, std::span<const double> pbar, Interval j,
                                    int max_depth) {
    if (p.size() != f.size()) fail(ErrorCode::Shape, "matrix size does not match the number of maps");
    check_invariant_injective(f, j);
    const auto levels = word_levels(f, max_depth);
    return search_pairs(
        levels, [&](const Candidate& c) { return inside(c.image, j) && cylinder_measure(p, pbar, c.word) > 0.0; },
        [](const Candidate& u, const Candidate& v) { return u.word[0] == v.word[0]; });
}

std::optional<WordPair> separability_check(const Ifs& f, Interval j, int max_depth) {
    check_invariant_injective(f, j);
    const auto levels = word_levels(f, max_depth);
    return search_pairs(
        levels, [&](const Candidate& c) { return inside(c.image, j); },
        [](const Candidate&, const Candidate&) { return true; });
}

RigidityResult rigidity_check(const Ifs& f, const TransitionMatrix& p, std::span<const double> pbar, int symbol,
                              double tol, int max_depth) {
    if (p.size() != f.size()) fail(ErrorCode::Shape, "matrix size does not match the number of maps");
    if (symbol < 1 || symbol > f.size()) fail(ErrorCode::Index, "rigidity_check: symbol out of range");
    if (!(tol > 0.0)) fail(ErrorCode::Parameter, "rigidity_check needs tol > 0");
    check_invariant_injective(f, f.domain());
    const auto levels = word_levels(f, max_depth);
    RigidityResult r;
    r.witness = search_pairs(
        levels,
        [&](const Candidate& c) {
            return c.word[0] == symbol && c.image.length() <= tol * (1.0 + 1e-9) &&
                   cylinder_measure(p, pbar, c.word) > 0.0;
        },
        [](const Candidate&, const Candidate&) { return true; });
    r.split_on_symbol = r.witness.has_value();
    return r;
}

}  // namespace ifslab
