#include "doctest.h"
#include "property_checks.hpp"

using namespace testsupport;

TEST_CASE("metric axioms of the Hausdorff distance") { CHECK(metric_axioms(5000, 7).empty()); }
TEST_CASE("B is monotone and additive") { CHECK(bh_monotone_additive(2000, 8).empty()); }
TEST_CASE("disjunctive prefixes cover every word") { CHECK(cover_identity(8).empty()); }
TEST_CASE("Markov operator keeps probability measures") { CHECK(measure_operator(200, 9).empty()); }
TEST_CASE("seeded outputs are reproducible") { CHECK(determinism().empty()); }
