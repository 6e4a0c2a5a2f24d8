#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ifslab/error.hpp"
#include "ifslab/intervals.hpp"
#include "support.hpp"

using namespace ifslab;

namespace {

const Interval unit{0.0, 1.0};

IntervalSet make(std::vector<Interval> parts, Interval dom = unit) { return IntervalSet::normalize(std::move(parts), dom); }

ErrorCode code_of(const auto& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode{0};
}

// Hausdorff distance of two sets sampled on a fine grid.
double grid_hausdorff(const IntervalSet& a, const IntervalSet& b, int n) {
    auto dist = [](double x, const IntervalSet& s) {
        double best = INFINITY;
        for (const Interval& p : s.parts()) best = std::min(best, x < p.lo ? p.lo - x : x > p.hi ? x - p.hi : 0.0);
        return best;
    };
    auto one_side = [&](const IntervalSet& s, const IntervalSet& t) {
        double worst = 0.0;
        for (const Interval& p : s.parts()) {
            worst = std::max({worst, dist(p.lo, t), dist(p.hi, t)});
            for (int i = 1; i < n; ++i) worst = std::max(worst, dist(p.lo + (p.hi - p.lo) * i / n, t));
        }
        return worst;
    };
    return std::max(one_side(a, b), one_side(b, a));
}

}  // namespace

TEST_CASE("normalize merges overlapping and touching parts") {
    CHECK(make({{0, 0.5}, {0.4, 1}}) == IntervalSet::whole(unit));
    CHECK(make({{0, 0.5}, {0.5, 1}}) == IntervalSet::whole(unit));
    const IntervalSet two = make({{2.0 / 3, 1}, {0, 1.0 / 3}});
    REQUIRE(two.size() == 2);
    CHECK(two.parts()[0] == Interval{0, 1.0 / 3});
    CHECK(two.parts()[1] == Interval{2.0 / 3, 1});
}

TEST_CASE("normalize rejects bad input") {
    CHECK(code_of([] { make({{0.5, 1.5}}); }) == ErrorCode::Domain);
    CHECK(code_of([] { make({{0.6, 0.5}}); }) == ErrorCode::MalformedInterval);
}

TEST_CASE("normalize is idempotent") {
    testsupport::Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        const IntervalSet a = testsupport::random_set(rng, unit);
        std::vector<Interval> raw(a.parts().begin(), a.parts().end());
        CHECK(IntervalSet::normalize(raw, unit) == a);
    }
}

TEST_CASE("hausdorff examples") {
    const IntervalSet whole = IntervalSet::whole(unit);
    CHECK(hausdorff(whole, whole) == 0.0);
    CHECK(hausdorff(make({{0, 0}}), make({{1, 1}})) == 1.0);
    CHECK(hausdorff(make({{0, 1.0 / 3}, {2.0 / 3, 1}}), whole) == doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK(code_of([&] { hausdorff(IntervalSet::empty(unit), whole); }) == ErrorCode::Empty);
}

TEST_CASE("hausdorff agrees with a grid oracle") {
    testsupport::Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        const IntervalSet a = testsupport::random_set(rng, unit);
        const IntervalSet b = testsupport::random_set(rng, unit);
        CHECK(std::abs(hausdorff(a, b) - grid_hausdorff(a, b, 10000)) <= 1e-4);
    }
}

TEST_CASE("fatten examples") {
    CHECK(fatten(make({{0.5, 0.5}}), 0.1).parts()[0].lo == doctest::Approx(0.4));
    CHECK(fatten(make({{0.5, 0.5}}), 0.1).parts()[0].hi == doctest::Approx(0.6));
    CHECK(fatten(IntervalSet::whole(unit), 0.3) == IntervalSet::whole(unit));
    CHECK(fatten(make({{0, 0}, {1, 1}}), 0.6) == IntervalSet::whole(unit));
    CHECK(code_of([] { fatten(IntervalSet::whole(unit), -0.1); }) == ErrorCode::Parameter);
}

TEST_CASE("fatten is monotone in eps and contains the set") {
    testsupport::Rng rng(13);
    for (int t = 0; t < 200; ++t) {
        const IntervalSet a = testsupport::random_set(rng, unit);
        const double e1 = rng.uniform(0.0, 0.1), e2 = e1 + rng.uniform(0.0, 0.1);
        CHECK(subset_within(a, fatten(a, e1), 0.0));
        CHECK(subset_within(fatten(a, e1), fatten(a, e2), 0.0));
    }
}

TEST_CASE("diam, measure, contains, subset") {
    const IntervalSet c1 = make({{0, 1.0 / 3}, {2.0 / 3, 1}});
    CHECK(diam(c1) == 1.0);
    CHECK(measure(c1) == doctest::Approx(2.0 / 3));
    CHECK(contains(c1, 0.2));
    CHECK_FALSE(contains(c1, 0.5));
    CHECK(subset_within(make({{0.1, 0.2}}), IntervalSet::whole(unit), 0.0));
    CHECK_FALSE(subset_within(IntervalSet::whole(unit), c1, 0.1));
    CHECK(subset_within(IntervalSet::whole(unit), c1, 1.0 / 6 + 1e-15));
}

TEST_CASE("csv round trip is exact") {
    testsupport::Rng rng(14);
    for (int t = 0; t < 50; ++t) {
        const IntervalSet a = testsupport::random_set(rng, Interval{-1.0, 2.0});
        std::stringstream ss;
        write_csv(ss, a);
        CHECK(read_csv(ss) == a);
    }
}
