#include <cmath>

#include "doctest.h"
#include "ifslab/error.hpp"
#include "ifslab/ifs.hpp"
#include "support.hpp"

using namespace ifslab;
using testsupport::pre_cantor;

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

}  // namespace

TEST_CASE("map_image") {
    const auto third = PiecewiseMonotoneMap::affine(unit, 1.0 / 3, 0.0);
    CHECK(hausdorff(map_image(third, IntervalSet::whole(unit)), make({{0, 1.0 / 3}})) <= 1e-16);
    const Ifs fig = preset("figure-2");
    CHECK(map_image(fig.map(1), IntervalSet::whole(unit)) == make({{0.5, 1}}));
    const auto logistic = PiecewiseMonotoneMap::quadratic(unit, -1.0, 2.0, 0.0);
    CHECK(hausdorff(map_image(logistic, make({{0, 0.5}})), make({{0, 0.75}})) <= 1e-15);
}

TEST_CASE("bh_apply") {
    const Ifs cantor = preset("cantor");
    CHECK(hausdorff(bh_apply(cantor, IntervalSet::whole(unit)), pre_cantor(1)) <= 1e-16);
    const Ifs ex = preset("example-3-4");
    const Interval dom{0, 2};
    CHECK(bh_apply(ex, IntervalSet::whole(dom)) == IntervalSet::whole(dom));
    const Ifs id = preset("identity");
    testsupport::Rng rng(21);
    for (int t = 0; t < 20; ++t) {
        const IntervalSet a = testsupport::random_set(rng, unit);
        CHECK(bh_apply(id, a) == a);
    }
}

TEST_CASE("star_set") {
    const Ifs cantor = preset("cantor");
    for (int n = 1; n <= 8; ++n) {
        const StarResult r = star_set(cantor, IntervalSet::whole(unit), 0.0, n);
        CHECK(r.iterations == n);
        CHECK(hausdorff(r.set, pre_cantor(n)) <= 1e-15);
        CHECK(measure(r.set) == doctest::Approx(std::pow(2.0 / 3, n)).epsilon(1e-12));
    }
    const Ifs ex = preset("example-3-4");
    const StarResult r = star_set(ex, IntervalSet::whole({0, 2}), 1e-12, 50);
    CHECK(r.converged);
    CHECK(r.iterations == 1);
    CHECK(r.set == IntervalSet::whole({0, 2}));
    CHECK(star_set(preset("identity"), IntervalSet::whole(unit), 1e-12, 10).set == IntervalSet::whole(unit));
    CHECK(code_of([&] { star_set(cantor, make({{0.4, 0.6}}), 1e-9, 10); }) == ErrorCode::Precondition);
}

TEST_CASE("star_set iterates are nested") {
    const Ifs bony = preset("bony-6-3");
    IntervalSet prev = IntervalSet::whole(unit);
    for (int n = 1; n <= 10; ++n) {
        const IntervalSet next = bh_apply(bony, prev);
        CHECK(subset_within(next, prev, 1e-15));
        prev = next;
    }
}

TEST_CASE("word_image") {
    const Ifs cantor = preset("cantor");
    CHECK(hausdorff(word_image(cantor, Word(2, {1, 1})), make({{0, 1.0 / 9}})) <= 1e-16);
    CHECK(hausdorff(word_image(cantor, Word(2, {1, 2})), make({{2.0 / 9, 1.0 / 3}})) <= 1e-16);
    for (const char* name : {"bony-6-3", "figure-2", "porcupine-6-2"}) {
        const Ifs f = preset(name);
        for (int i = 1; i <= f.size(); ++i)
            CHECK(word_image(f, Word(f.size(), {i})) == map_image(f.map(i), IntervalSet::whole(f.domain())));
    }
}

TEST_CASE("fibre_approx") {
    const Ifs cantor = preset("cantor");
    const auto s = SymbolStream::disjunctive(2);
    for (int d = 1; d <= 20; ++d)
        CHECK(diam(fibre_approx(cantor, s, d)) == doctest::Approx(std::pow(3.0, -d)).epsilon(1e-9));

    const Ifs ex = preset("example-3-4");
    const IntervalSet fibre = fibre_approx(ex, SymbolStream::constant(2, 2), 60);
    CHECK(hausdorff(fibre, make({{1, 2}}, {0, 2})) <= 1e-12);

    const Ifs bony = preset("bony-6-3");
    const auto periodic = SymbolStream::periodic(Word(2, {1, 2}));
    double prev = INFINITY;
    for (int d = 1; d <= 40; ++d) {
        const double dm = diam(fibre_approx(bony, periodic, d));
        CHECK(dm <= prev + 1e-15);
        prev = dm;
    }
    CHECK(prev >= 0.05);
}

TEST_CASE("target_approx on the Cantor IFS is the level-8 set") {
    const Ifs cantor = preset("cantor");
    const TargetResult r = target_approx(cantor, std::pow(3.0, -8), 40);
    CHECK(r.complete);
    CHECK(r.undecided.is_empty());
    CHECK(r.atoms.size() == 256);
    CHECK(hausdorff(r.atoms, pre_cantor(8)) <= 1e-15);
}

TEST_CASE("target_approx finds three atoms") {
    // Alternating words keep images of length 1/2, so the search never completes.
    const TargetResult r = target_approx(preset("figure-2"), 1e-4, 60);
    CHECK_FALSE(r.budget_exhausted);
    REQUIRE(r.atoms.size() == 3);
    const double expect[] = {0.0, 0.5, 1.0};
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(r.atoms.parts()[i].lo - expect[i]) <= 1e-4);
        CHECK(std::abs(r.atoms.parts()[i].hi - expect[i]) <= 1e-4);
    }
}

TEST_CASE("target_approx on isometries decides nothing") {
    const TargetResult r = target_approx(preset("flip"), 0.5, 20);
    CHECK_FALSE(r.complete);
    CHECK(r.atoms.is_empty());
    CHECK(r.undecided == IntervalSet::whole(unit));
}

TEST_CASE("target atoms lie in every star set") {
    for (const char* name : {"cantor", "figure-2", "bony-6-3"}) {
        const Ifs f = preset(name);
        const TargetResult t = target_approx(f, 1e-3, 40);
        if (t.atoms.is_empty()) continue;
        const StarResult s = star_set(f, IntervalSet::whole(f.domain()), 1e-12, 8);
        CHECK_MESSAGE(subset_within(t.atoms, s.set, 1e-3), name);
        CHECK_MESSAGE(invariance_check(f, t.atoms, 2e-3), name);
    }
}

TEST_CASE("weakly_hyperbolic_witness") {
    const auto w = weakly_hyperbolic_witness(preset("cantor"), 0.01, 20);
    REQUIRE(w);
    CHECK(w->length() == 5);
    CHECK_FALSE(weakly_hyperbolic_witness(preset("flip"), 0.5, 20));
    const auto e = weakly_hyperbolic_witness(preset("example-3-4"), 0.01, 20);
    REQUIRE(e);
    CHECK(*e == Word(2, {1, 1, 1, 1, 1}));
}

TEST_CASE("conley_probe") {
    const Ifs cantor = preset("cantor");
    CHECK(conley_probe(cantor, pre_cantor(12), 0.05, 1e-4, 200).verdict == ConleyVerdict::Attracts);
    const Ifs id = preset("identity");
    CHECK(conley_probe(id, IntervalSet::whole(unit), 0.05, 1e-4, 50).verdict == ConleyVerdict::Attracts);

    const Ifs ex = preset("example-3-4");
    const ConleyResult r = conley_probe(ex, pre_cantor(9, {0, 2}), 0.05, 1e-4, 200);
    CHECK(r.verdict == ConleyVerdict::Escapes);
    // Points of [1, 1+eps) are fixed by T2, so they never leave.
    CHECK(subset_within(make({{1.001, 1.04}}, {0, 2}), r.residual, 0.0));
}

TEST_CASE("stability_probe") {
    CHECK(stability_probe(preset("example-3-4"), pre_cantor(9, {0, 2}), 0.1, 0.01, 50));
    CHECK(stability_probe(preset("cantor"), pre_cantor(9), 0.1, 0.05, 50));
    CHECK(stability_probe(preset("flip"), make({{0.5, 0.5}}), 0.1, 0.05, 50));
    CHECK_FALSE(stability_probe(preset("flip"), make({{0.2, 0.2}}), 0.1, 0.05, 50));
}

TEST_CASE("invariance_check") {
    CHECK(invariance_check(preset("cantor"), pre_cantor(10), std::pow(3.0, -10)));
    CHECK(invariance_check(preset("example-3-4"), make({{0, 1}}, {0, 2}), 1e-12));
    CHECK_FALSE(invariance_check(preset("cantor"), make({{0.4, 0.6}}), 0.01));
}

TEST_CASE("common_fixed_points") {
    const IntervalSet flip = common_fixed_points(preset("flip"), 1e-9, 1000);
    CHECK(contains(flip, 0.5));
    CHECK(diam(flip) <= 2e-3 + 1e-12);
    CHECK(common_fixed_points(preset("cantor"), 1e-6, 1000).is_empty());
    CHECK(common_fixed_points(preset("identity"), 1e-12, 100) == IntervalSet::whole(unit));
}

TEST_CASE("lipschitz_exact") {
    const Ifs third(unit, {PiecewiseMonotoneMap::affine(unit, 1.0 / 3, 0.0)});
    CHECK(lipschitz_exact(third, Word(1, {1, 1})) == doctest::Approx(1.0 / 9).epsilon(1e-15));
    const Ifs flip = preset("flip");
    for (const Word& w : enumerate_words(2, 4)) CHECK(lipschitz_exact(flip, w) == doctest::Approx(1.0));
    const Ifs bony = preset("bony-6-3");
    CHECK(lipschitz_exact(bony, Word(2, {1, 1, 1})) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(code_of([] { lipschitz_exact(preset("porcupine-6-2"), Word(2, {2})); }) == ErrorCode::Unsupported);
}

TEST_CASE("map construction errors") {
    CHECK(code_of([] { PiecewiseMonotoneMap::from_vertices({{0, 0}, {0.5, 1.2}, {1, 1}}); }) == ErrorCode::Construction);
    CHECK(code_of([] { preset("no-such-ifs"); }) == ErrorCode::Usage);
    CHECK(code_of([] {
              MonotoneBranch::generic(unit, [](double x) { return x * (1 - x); }, true);
          }) == ErrorCode::Construction);
}
