#include <cmath>

#include "doctest.h"
#include "ifslab/error.hpp"
#include "ifslab/stochastic.hpp"
#include "support.hpp"

using namespace ifslab;

namespace {

const Interval unit{0.0, 1.0};
const std::vector<double> half{0.5, 0.5};

TransitionMatrix cyclic3() { return TransitionMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}); }

bool disjoint_in(const Ifs& f, const WordPair& w, Interval j) {
    const Interval a = word_interval(f, w.first), b = word_interval(f, w.second);
    return (a.hi < b.lo || b.hi < a.lo) && j.lo <= std::min(a.lo, b.lo) && std::max(a.hi, b.hi) <= j.hi;
}

}  // namespace

TEST_CASE("stationary_vector examples") {
    const auto c = stationary_vector(cyclic3());
    for (double v : c) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-12));
    const std::vector<double> w{0.2, 0.3, 0.5};
    const auto b = stationary_vector(TransitionMatrix::bernoulli(w));
    for (int i = 0; i < 3; ++i) CHECK(b[i] == doctest::Approx(w[i]).epsilon(1e-12));
    const auto p = stationary_vector(TransitionMatrix::from_rows({{0, 1}, {0.5, 0.5}}));
    CHECK(p[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK_THROWS_AS(stationary_vector(TransitionMatrix::from_rows({{1, 0}, {0, 1}})), Error);
}

TEST_CASE("stationary_vector agrees with a direct solve") {
    testsupport::Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        const auto p = testsupport::random_irreducible(rng, rng.integer(1, 6));
        const auto got = stationary_vector(p);
        const auto want = testsupport::solve_stationary(p);
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-9);
    }
}

TEST_CASE("irreducible and primitive") {
    const auto id = TransitionMatrix::from_rows({{1, 0}, {0, 1}});
    CHECK_FALSE(is_irreducible(id));
    CHECK(is_irreducible(cyclic3()));
    CHECK_FALSE(is_primitive(cyclic3()));
    CHECK(is_primitive(TransitionMatrix::from_rows({{0.1, 0.9}, {0.4, 0.6}})));
    CHECK(is_primitive(TransitionMatrix::from_rows({{0, 1}, {0.5, 0.5}})));
}

TEST_CASE("inverse_matrix examples") {
    const std::vector<double> third{1.0 / 3, 1.0 / 3, 1.0 / 3};
    const auto q = inverse_matrix(cyclic3(), third);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(q(i, j) == doctest::Approx(cyclic3()(j, i)));
    const auto sym = TransitionMatrix::from_rows({{0.2, 0.8}, {0.8, 0.2}});
    CHECK(inverse_matrix(sym, half) == sym);
    const auto p = TransitionMatrix::from_rows({{0, 1}, {0.5, 0.5}});
    const auto q2 = inverse_matrix(p, std::vector<double>{1.0 / 3, 2.0 / 3});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(q2(i, j) == doctest::Approx(p(i, j)).epsilon(1e-12));
    CHECK_THROWS_AS(inverse_matrix(p, std::vector<double>{0.0, 1.0}), Error);
}

TEST_CASE("inverse of the inverse is the original chain") {
    testsupport::Rng rng(32);
    for (int t = 0; t < 100; ++t) {
        const auto p = testsupport::random_irreducible(rng, rng.integer(1, 6));
        const auto pbar = stationary_vector(p);
        const auto q = inverse_matrix(p, pbar);
        const auto back = inverse_matrix(q, pbar);
        for (std::size_t i = 0; i < p.entries().size(); ++i) CHECK(std::abs(back.entries()[i] - p.entries()[i]) <= 1e-9);
    }
}

TEST_CASE("split_check") {
    const Ifs cantor = preset("cantor");
    const auto p = TransitionMatrix::bernoulli(half);
    const auto w = split_check(cantor, p, half, unit, 6);
    REQUIRE(w);
    CHECK(w->first == Word(2, {1, 1}));
    CHECK(w->second == Word(2, {1, 2}));
    CHECK_FALSE(split_check(preset("flip"), p, half, unit, 12));

    const Ifs nonreg = preset("nonregular-6-1");
    const auto n = split_check(nonreg, p, half, unit, 10);
    REQUIRE(n);
    CHECK(n->first[0] == n->second[0]);
    CHECK(disjoint_in(nonreg, *n, unit));
}

TEST_CASE("separability_check") {
    const auto w = separability_check(preset("cantor"), unit, 6);
    REQUIRE(w);
    CHECK(w->first == Word(2, {1}));
    CHECK(w->second == Word(2, {2}));
    CHECK_FALSE(separability_check(preset("flip"), unit, 12));
    const Ifs porc = preset("porcupine-6-2");
    const auto s = separability_check(porc, unit, 10);
    REQUIRE(s);
    CHECK(disjoint_in(porc, *s, unit));
}

TEST_CASE("split witnesses are separability witnesses") {
    const auto p = TransitionMatrix::bernoulli(half);
    for (const char* name : {"cantor", "nonregular-6-1", "bony-6-3"}) {
        const Ifs f = preset(name);
        const auto w = split_check(f, p, half, unit, 8);
        if (!w) continue;
        CHECK_MESSAGE(disjoint_in(f, *w, unit), name);
        CHECK(separability_check(f, unit, 8));
    }
}

TEST_CASE("split_check rejects a non-invariant J") {
    const auto p = TransitionMatrix::bernoulli(half);
    CHECK_THROWS_AS(split_check(preset("cantor"), p, half, Interval{0.5, 1.0}, 4), Error);
}

TEST_CASE("rigidity_check") {
    const auto p = TransitionMatrix::bernoulli(half);
    const RigidityResult c = rigidity_check(preset("cantor"), p, half, 1, 0.01, 10);
    CHECK(c.split_on_symbol);
    REQUIRE(c.witness);
    CHECK(c.witness->first[0] == 1);
    CHECK(c.witness->second[0] == 1);
    CHECK(diam(word_image(preset("cantor"), c.witness->first)) <= 0.01);

    const std::vector<double> third{1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK_FALSE(rigidity_check(preset("cantor-3"), cyclic3(), third, 1, 0.01, 10).split_on_symbol);
    CHECK_FALSE(rigidity_check(preset("flip"), p, half, 1, 0.01, 10).split_on_symbol);
}
