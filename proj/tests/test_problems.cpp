// OneMinMax and LOTZ objective functions.

#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "frontgap/core.hpp"
#include "frontgap/problems.hpp"

using namespace frontgap;

namespace {

Genome bits(std::initializer_list<int> pattern) {
  Genome g(pattern.size());
  std::size_t i = 0;
  for (int b : pattern) g.set(i++, b != 0);
  return g;
}

}  // namespace

TEST_CASE("one-min-max counts zeros and ones") {
  REQUIRE(eval_one_min_max(bits({0, 0, 0, 0})) == ObjectiveVector{4, 0});
  REQUIRE(eval_one_min_max(bits({1, 1, 1, 1})) == ObjectiveVector{0, 4});
  REQUIRE(eval_one_min_max(bits({1, 0, 1, 0, 1})) == ObjectiveVector{2, 3});
}

TEST_CASE("one-min-max objectives always sum to n") {
  RngHandle rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Genome g = random_genome(131, rng);
    const ObjectiveVector f = eval_one_min_max(g);
    REQUIRE(f.f1 + f.f2 == 131);
    REQUIRE(f.f2 == static_cast<int>(g.count_ones()));
  }
}

TEST_CASE("lotz counts leading ones and trailing zeros") {
  REQUIRE(eval_lotz(bits({1, 1, 0, 0})) == ObjectiveVector{2, 2});
  REQUIRE(eval_lotz(bits({0, 1, 1, 0})) == ObjectiveVector{0, 1});
  REQUIRE(eval_lotz(bits({1, 1, 1, 1})) == ObjectiveVector{4, 0});
  REQUIRE(eval_lotz(bits({0, 0, 0, 0})) == ObjectiveVector{0, 4});
  REQUIRE(eval_lotz(bits({1, 0, 1, 0})) == ObjectiveVector{1, 1});
}

TEST_CASE("problem evaluate dispatches and validates the genome length") {
  const Problem omm{ProblemKind::one_min_max, 5};
  REQUIRE(omm.evaluate(bits({1, 0, 1, 0, 1})) == ObjectiveVector{2, 3});
  const Problem lotz{ProblemKind::lotz, 4};
  REQUIRE(lotz.evaluate(bits({1, 1, 0, 0})) == ObjectiveVector{2, 2});
  REQUIRE_THROWS_AS(omm.evaluate(bits({1, 0})), std::invalid_argument);
}
