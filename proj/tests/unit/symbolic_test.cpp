#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "ifslab/error.hpp"
#include "ifslab/symbolic.hpp"

using namespace ifslab;

namespace {

TransitionMatrix cyclic3() { return TransitionMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}); }

}  // namespace

TEST_CASE("enumerate_words counts and order") {
    const auto w1 = enumerate_words(2, 1);
    REQUIRE(w1.size() == 2);
    CHECK(w1[0] == Word(2, {1}));
    CHECK(w1[1] == Word(2, {2}));
    const auto w2 = enumerate_words(2, 2);
    REQUIRE(w2.size() == 6);
    CHECK(w2[4] == Word(2, {2, 1}));
    CHECK(w2[5] == Word(2, {2, 2}));
    CHECK(enumerate_words(3, 2).size() == 12);
    CHECK(std::is_sorted(w2.begin(), w2.end()));
    CHECK_THROWS_AS(enumerate_words(0, 2), Error);
}

TEST_CASE("disjunctive stream prefix") {
    const auto s = SymbolStream::disjunctive(2);
    CHECK(s.prefix(8) == std::vector<int>{1, 2, 1, 1, 1, 2, 2, 1});
    const auto one = SymbolStream::disjunctive(1);
    for (std::size_t n = 0; n < 20; ++n) CHECK(one.at(n) == 1);
}

TEST_CASE("every word of length 3 occurs within the disjunctive bound") {
    const auto s = SymbolStream::disjunctive(2);
    const std::size_t bound = disjunctive_bound(2, 3);
    CHECK(bound == 34);
    const auto p = s.prefix(bound);
    for (const Word& w : enumerate_words(2, 3)) {
        if (w.length() != 3) continue;
        auto it = std::search(p.begin(), p.end(), w.symbols().begin(), w.symbols().end());
        CHECK_MESSAGE(it != p.end(), w.str());
    }
    const std::vector<int> block{2, 1, 2};
    CHECK(std::search(p.begin(), p.end(), block.begin(), block.end()) != p.end());
}

TEST_CASE("cylinder measure examples") {
    const std::vector<double> half{0.5, 0.5};
    CHECK(cylinder_measure(TransitionMatrix::bernoulli(half), half, Word(2, {1, 2})) == 0.25);
    const std::vector<double> third{1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK(cylinder_measure(cyclic3(), third, Word(3, {1, 2, 3})) == doctest::Approx(1.0 / 3));
    CHECK(cylinder_measure(cyclic3(), third, Word(3, {1, 1})) == 0.0);
    CHECK_THROWS_AS(cylinder_measure(cyclic3(), third, Word(4, {4})), Error);
}

TEST_CASE("cylinder measures are additive and sum to one") {
    const auto p = TransitionMatrix::from_rows({{0.2, 0.5, 0.3}, {0.6, 0.1, 0.3}, {0.25, 0.25, 0.5}});
    std::vector<double> pbar{1, 1, 1};
    for (int it = 0; it < 2000; ++it) pbar = p.left_multiply(pbar);
    const double s = std::accumulate(pbar.begin(), pbar.end(), 0.0);
    for (double& v : pbar) v /= s;
    for (int len = 1; len <= 6; ++len) {
        double total = 0.0;
        for (const Word& w : enumerate_words(3, len)) {
            if (static_cast<int>(w.length()) != len) continue;
            const double m = cylinder_measure(p, pbar, w);
            total += m;
            double children = 0.0;
            for (int j = 1; j <= 3; ++j) children += cylinder_measure(p, pbar, w.append(j));
            CHECK(children == doctest::Approx(m).epsilon(1e-12));
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("random streams are pure functions of their seed") {
    const auto a = SymbolStream::bernoulli({0.3, 0.7}, 42);
    const auto b = SymbolStream::bernoulli({0.3, 0.7}, 42);
    const auto pa = a.prefix(100000);
    CHECK(pa == b.prefix(100000));
    for (std::size_t n : {0ul, 17ul, 99999ul}) CHECK(a.at(n) == pa[n]);
    const auto ones = std::count(pa.begin(), pa.end(), 1);
    CHECK(std::abs(static_cast<double>(ones) / 100000 - 0.3) < 0.01);
    CHECK(SymbolStream::bernoulli({0.3, 0.7}, 43).prefix(64) != a.prefix(64));

    const auto m1 = SymbolStream::markov(cyclic3(), {1, 0, 0}, 5);
    CHECK(m1.prefix(7) == std::vector<int>{1, 2, 3, 1, 2, 3, 1});
}

TEST_CASE("periodic and constant streams") {
    const auto p = SymbolStream::periodic(Word(2, {1, 2, 2}));
    CHECK(p.prefix(7) == std::vector<int>{1, 2, 2, 1, 2, 2, 1});
    CHECK(SymbolStream::constant(3, 2).prefix(3) == std::vector<int>{2, 2, 2});
}
