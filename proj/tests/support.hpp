#pragma once

// Oracles and generators shared by the unit, property and acceptance tests.
// Oracles recompute expected values without going through the library code
// under test.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ifslab/ifs.hpp"
#include "ifslab/intervals.hpp"
#include "ifslab/matrix.hpp"

namespace testsupport {

using ifslab::Interval;
using ifslab::IntervalSet;

/// Level-n middle-thirds set in [0,1], built from ternary digit strings in {0,2}^n.
inline std::vector<Interval> pre_cantor_parts(int level, double scale = 1.0) {
    std::vector<Interval> out;
    const std::uint64_t count = std::uint64_t{1} << level;
    const double len = std::pow(3.0, -level);
    out.reserve(count);
    for (std::uint64_t code = 0; code < count; ++code) {
        // Digits are read most significant first so the output stays sorted.
        double left = 0.0, place = 1.0;
        for (int d = level - 1; d >= 0; --d) {
            place /= 3.0;
            if ((code >> d) & 1u) left += 2.0 * place;
        }
        out.push_back({left * scale, (left + len) * scale});
    }
    return out;
}

inline IntervalSet pre_cantor(int level, Interval domain = {0.0, 1.0}) {
    ifslab::NormalizeOptions opts;
    opts.merge_eps = 0.0;
    opts.max_parts = (std::size_t{1} << level) + 1;
    return IntervalSet::normalize(pre_cantor_parts(level), domain, opts);
}

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(eng); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
};

/// 1..max_parts random closed intervals (some degenerate) in the domain.
inline IntervalSet random_set(Rng& rng, Interval dom, int max_parts = 6) {
    std::vector<Interval> raw;
    const int n = rng.integer(1, max_parts);
    for (int i = 0; i < n; ++i) {
        double a = rng.uniform(dom.lo, dom.hi), b = rng.uniform(dom.lo, dom.hi);
        if (a > b) std::swap(a, b);
        if (rng.integer(0, 7) == 0) b = a;
        raw.push_back({a, b});
    }
    return IntervalSet::normalize(raw, dom);
}

/// Row-stochastic k x k matrix with some zero entries, irreducible.
inline ifslab::TransitionMatrix random_irreducible(Rng& rng, int k) {
    for (;;) {
        std::vector<double> e(static_cast<std::size_t>(k * k));
        for (int i = 0; i < k; ++i) {
            double s = 0.0;
            for (int j = 0; j < k; ++j) {
                double v = rng.integer(0, 3) == 0 ? 0.0 : rng.uniform(0.05, 1.0);
                e[static_cast<std::size_t>(i * k + j)] = v;
                s += v;
            }
            if (s == 0.0) {
                e[static_cast<std::size_t>(i * k + (i + 1) % k)] = 1.0;
                s = 1.0;
            }
            for (int j = 0; j < k; ++j) e[static_cast<std::size_t>(i * k + j)] /= s;
        }
        // Warshall closure, kept independent of the library.
        std::vector<int> r(static_cast<std::size_t>(k * k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                r[static_cast<std::size_t>(i * k + j)] = (i == j || e[static_cast<std::size_t>(i * k + j)] > 0) ? 1 : 0;
        for (int m = 0; m < k; ++m)
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    if (r[static_cast<std::size_t>(i * k + m)] && r[static_cast<std::size_t>(m * k + j)])
                        r[static_cast<std::size_t>(i * k + j)] = 1;
        bool ok = true;
        for (int v : r) ok = ok && v;
        if (!ok) continue;
        return ifslab::TransitionMatrix(k, e);
    }
}

/// Stationary vector by Gaussian elimination on pbar (P - I) = 0, sum = 1.
inline std::vector<double> solve_stationary(const ifslab::TransitionMatrix& p) {
    const int k = p.size();
    std::vector<std::vector<double>> a(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k + 1), 0.0));
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i) a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = p(i, j) - (i == j ? 1.0 : 0.0);
    }
    for (int i = 0; i < k; ++i) a[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i)] = 1.0;
    a[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(k)] = 1.0;
    for (int c = 0; c < k; ++c) {
        int piv = c;
        for (int r = c + 1; r < k; ++r)
            if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) >
                std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)]))
                piv = r;
        std::swap(a[static_cast<std::size_t>(c)], a[static_cast<std::size_t>(piv)]);
        for (int r = 0; r < k; ++r) {
            if (r == c) continue;
            const double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] / a[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
            for (int q = c; q <= k; ++q) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(q)] -= f * a[static_cast<std::size_t>(c)][static_cast<std::size_t>(q)];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) x[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    return x;
}

}  // namespace testsupport
