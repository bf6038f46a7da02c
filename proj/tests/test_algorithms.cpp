// The three NSGA-II variants end to end: bookkeeping, determinism, runtime
// invariant checks, and reaching the extremes within a generous budget.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "frontgap/algorithms.hpp"

using namespace frontgap;

namespace {

AlgorithmConfig base_config(Variant variant, std::size_t n, std::size_t capacity,
                            std::uint64_t seed) {
  AlgorithmConfig cfg;
  cfg.variant = variant;
  cfg.problem = {ProblemKind::one_min_max, n};
  cfg.capacity = capacity;
  cfg.mating = variant == Variant::steady_state ? MatingScheme::random_uniform
                                                : MatingScheme::fair;
  cfg.mutation = MutationOp::one_bit;
  cfg.seed = seed;
  return cfg;
}

bool rows_equal(const TraceRow& a, const TraceRow& b) {
  return a.generation == b.generation && a.evaluations == b.evaluations &&
         a.extremes == b.extremes && a.mei == b.mei && a.distinct_f1 == b.distinct_f1 &&
         a.coverage == b.coverage;
}

}  // namespace

TEST_CASE("variant names") {
  REQUIRE(std::string(variant_name(Variant::classic_cd)) == "classic");
  REQUIRE(std::string(variant_name(Variant::current_cd)) == "current-cd");
  REQUIRE(std::string(variant_name(Variant::steady_state)) == "steady-state");
}

TEST_CASE("config validation") {
  AlgorithmConfig cfg = base_config(Variant::classic_cd, 10, 5, 1);
  REQUIRE_NOTHROW(cfg.validate());
  cfg.problem.n = 0;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config(Variant::current_cd, 10, 0, 1);
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config(Variant::steady_state, 10, 5, 1);
  cfg.mating = MatingScheme::fair;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("generational variants evaluate N offspring per generation") {
  for (Variant v : {Variant::classic_cd, Variant::current_cd}) {
    AlgorithmConfig cfg = base_config(v, 12, 6, 3);
    cfg.max_generations = 10;
    const RunTrace trace = run(cfg);
    REQUIRE(trace.rows.size() == 11);
    for (std::size_t g = 0; g < trace.rows.size(); ++g) {
      REQUIRE(trace.rows[g].generation == g);
      REQUIRE(trace.rows[g].evaluations == 6 * (g + 1));
    }
  }
}

TEST_CASE("the steady-state variant evaluates one offspring per iteration") {
  AlgorithmConfig cfg = base_config(Variant::steady_state, 12, 6, 4);
  cfg.max_generations = 25;
  const RunTrace trace = run(cfg);
  REQUIRE(trace.rows.size() == 26);
  for (std::size_t g = 0; g < trace.rows.size(); ++g) {
    REQUIRE(trace.rows[g].evaluations == 6 + g);
  }
}

TEST_CASE("zero generations yields only the initial snapshot") {
  AlgorithmConfig cfg = base_config(Variant::classic_cd, 10, 5, 5);
  cfg.max_generations = 0;
  const RunTrace trace = run(cfg);
  REQUIRE(trace.rows.size() == 1);
  REQUIRE(trace.rows[0].generation == 0);
  REQUIRE(trace.rows[0].evaluations == 5);
}

TEST_CASE("runs are deterministic in the seed") {
  AlgorithmConfig cfg = base_config(Variant::current_cd, 16, 6, 11);
  cfg.max_generations = 120;
  cfg.record_coverage = true;
  const RunTrace a = run(cfg);
  const RunTrace b = run(cfg);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t g = 0; g < a.rows.size(); ++g) REQUIRE(rows_equal(a.rows[g], b.rows[g]));
  REQUIRE(a.t0 == b.t0);

  cfg.seed = 12;
  const RunTrace c = run(cfg);
  bool all_equal = a.rows.size() == c.rows.size();
  for (std::size_t g = 0; all_equal && g < a.rows.size(); ++g) {
    all_equal = rows_equal(a.rows[g], c.rows[g]);
  }
  REQUIRE_FALSE(all_equal);
}

TEST_CASE("streaming run matches the stored trace") {
  AlgorithmConfig cfg = base_config(Variant::steady_state, 14, 5, 21);
  cfg.max_generations = 200;
  cfg.record_coverage = true;
  const RunTrace stored = run(cfg);
  std::vector<TraceRow> streamed;
  const std::optional<std::uint64_t> t0 =
      run(cfg, [&](const TraceRow& row) { streamed.push_back(row); });
  REQUIRE(streamed.size() == stored.rows.size());
  for (std::size_t g = 0; g < streamed.size(); ++g) {
    REQUIRE(rows_equal(streamed[g], stored.rows[g]));
  }
  REQUIRE(t0 == stored.t0);
}

TEST_CASE("detect_extremes on hand-built populations") {
  const Problem omm{ProblemKind::one_min_max, 4};
  Population pop;
  Individual a;
  a.genome = Genome(4);  // all zeros: f1 = 4
  a.objectives = omm.evaluate(a.genome);
  pop.members.push_back(a);
  REQUIRE_FALSE(detect_extremes(pop, omm));
  Individual b;
  b.genome = Genome(4);
  for (int i = 0; i < 4; ++i) b.genome.set(i, true);  // f1 = 0
  b.objectives = omm.evaluate(b.genome);
  pop.members.push_back(b);
  REQUIRE(detect_extremes(pop, omm));

  const Problem lotz{ProblemKind::lotz, 4};
  Population lp;
  lp.members.push_back(a);  // all zeros: f2 = 4
  lp.members[0].objectives = lotz.evaluate(lp.members[0].genome);
  REQUIRE_FALSE(detect_extremes(lp, lotz));
  lp.members.push_back(b);  // all ones: f1 = 4
  lp.members[1].objectives = lotz.evaluate(lp.members[1].genome);
  REQUIRE(detect_extremes(lp, lotz));
}

TEST_CASE("coverage recording is consistent with the summary columns") {
  AlgorithmConfig cfg = base_config(Variant::classic_cd, 18, 8, 31);
  cfg.max_generations = 150;
  cfg.record_coverage = true;
  const RunTrace trace = run(cfg);
  for (const TraceRow& row : trace.rows) {
    REQUIRE(row.coverage.size() == row.distinct_f1);
    REQUIRE(std::is_sorted(row.coverage.begin(), row.coverage.end()));
    int max_gap = 0;
    for (std::size_t i = 1; i < row.coverage.size(); ++i) {
      max_gap = std::max(max_gap, row.coverage[i] - row.coverage[i - 1]);
    }
    REQUIRE(row.mei == max_gap);
    const bool extremes = !row.coverage.empty() && row.coverage.front() == 0 &&
                          row.coverage.back() == 18;
    REQUIRE(row.extremes == extremes);
  }
  // Coverage stays empty when not requested.
  cfg.record_coverage = false;
  for (const TraceRow& row : run(cfg).rows) REQUIRE(row.coverage.empty());
}

TEST_CASE("current-cd with fair mating finds both extremes quickly") {
  std::size_t found = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    AlgorithmConfig cfg = base_config(Variant::current_cd, 20, 10, seed);
    cfg.max_generations = 3000;  // expected time is O(n log n) generations
    const RunTrace trace = run(cfg);
    if (trace.t0) {
      ++found;
      // Extremes, once found, persist to the end of the trace.
      for (const TraceRow& row : trace.rows) {
        if (row.generation >= *trace.t0) REQUIRE(row.extremes);
      }
    }
  }
  REQUIRE(found >= 19);
}

TEST_CASE("steady-state with uniform mating finds both extremes") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    AlgorithmConfig cfg = base_config(Variant::steady_state, 15, 6, seed);
    cfg.max_generations = 20000;
    const RunTrace trace = run(cfg);
    INFO("seed=" << seed);
    REQUIRE(trace.t0.has_value());
  }
}

TEST_CASE("tournament mating variants run clean") {
  for (Variant v : {Variant::classic_cd, Variant::current_cd, Variant::steady_state}) {
    AlgorithmConfig cfg = base_config(v, 14, 6, 77);
    cfg.mating = MatingScheme::binary_tournament;
    cfg.mutation = MutationOp::bit_wise;
    cfg.max_generations = 500;
    REQUIRE_NOTHROW(run(cfg));
  }
}

TEST_CASE("lotz runs clean under every variant") {
  for (Variant v : {Variant::classic_cd, Variant::current_cd, Variant::steady_state}) {
    AlgorithmConfig cfg = base_config(v, 12, 8, 13);
    cfg.problem = {ProblemKind::lotz, 12};
    cfg.mutation = MutationOp::bit_wise;
    cfg.max_generations = 1500;
    const RunTrace trace = run(cfg);
    REQUIRE(trace.rows.size() == 1501);
  }
}

TEST_CASE("no invariant trips across a battery of small configurations") {
  // Every proved guarantee is asserted inside the run loop; a violation
  // throws.  This sweeps all variants, matings, and mutations at small size.
  for (Variant v : {Variant::classic_cd, Variant::current_cd, Variant::steady_state}) {
    for (MatingScheme mate : {MatingScheme::fair, MatingScheme::random_uniform,
                              MatingScheme::binary_tournament}) {
      if (v == Variant::steady_state && mate == MatingScheme::fair) continue;
      for (MutationOp mut : {MutationOp::one_bit, MutationOp::bit_wise}) {
        for (std::size_t n : {10u, 17u}) {
          for (std::size_t capacity : {4u, 9u}) {
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
              AlgorithmConfig cfg = base_config(v, n, capacity, seed);
              cfg.mating = mate;
              cfg.mutation = mut;
              cfg.max_generations = v == Variant::steady_state ? 2000 : 400;
              REQUIRE_NOTHROW(run(cfg));
            }
          }
        }
      }
    }
  }
}
