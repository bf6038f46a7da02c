// Survival selection: the classic batch trim, the current-crowding-distance
// removal loop (checked move-for-move against the naive full-recompute
// oracle), and the steady-state single removal.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include "frontgap/core.hpp"
#include "frontgap/problems.hpp"
#include "frontgap/ranking.hpp"
#include "frontgap/survival.hpp"
#include "support/oracles.hpp"

using namespace frontgap;

namespace {

std::vector<Individual> pool_from_objectives(const std::vector<ObjectiveVector>& objs) {
  std::vector<Individual> pool(objs.size());
  for (std::size_t i = 0; i < objs.size(); ++i) {
    pool[i].id = i;
    pool[i].objectives = objs[i];
  }
  return pool;
}

// One-min-max style pool covering exactly the given f1 values (n implied by
// callers' choice of values).
std::vector<Individual> omm_pool(int n, const std::vector<int>& f1_values) {
  std::vector<ObjectiveVector> objs;
  objs.reserve(f1_values.size());
  for (int v : f1_values) objs.push_back({v, n - v});
  return pool_from_objectives(objs);
}

// Ranks, front partition, and crowding distances of every front: the state
// the selection engines expect on entry.
FrontPartition prepare(std::vector<Individual>& pool) {
  const FrontPartition part = non_dominated_sort(pool);
  for (const std::vector<std::size_t>& front : part.fronts) crowding_distance(pool, front);
  return part;
}

std::vector<int> survivor_f1(const std::vector<Individual>& pool,
                             const SelectionOutcome& outcome) {
  std::vector<int> values;
  for (std::size_t i : outcome.survivors) values.push_back(pool[i].objectives.f1);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace

TEST_CASE("tie keys are drawn in pool index order") {
  auto a = omm_pool(6, {0, 2, 4, 6});
  auto b = omm_pool(6, {6, 4, 2, 0});  // different members, same index count
  RngHandle ra(5);
  RngHandle rb(5);
  assign_tie_keys(a, ra);
  assign_tie_keys(b, rb);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].tie_key == b[i].tie_key);
    REQUIRE(a[i].tie_key >= 0.0);
    REQUIRE(a[i].tie_key < 1.0);
  }
}

TEST_CASE("classic trim on the adversarial hand case") {
  // f1 {0,1,2,3,4,6} on n=6, capacity 3.  Crowding: inf, 2/3, 2/3, 2/3, 1, inf.
  auto pool = omm_pool(6, {0, 1, 2, 3, 4, 6});
  const FrontPartition part = prepare(pool);
  REQUIRE(part.fronts.size() == 1);
  RngHandle rng(123);
  const SelectionOutcome out = select_classic(pool, 3, part, rng);
  REQUIRE(out.survivors.size() == 3);
  REQUIRE(survivor_f1(pool, out) == std::vector<int>{0, 4, 6});
  REQUIRE(out.removals.size() == 3);
  for (const Removal& r : out.removals) {
    REQUIRE(r.cdis == Catch::Approx(2.0 / 3.0));
    REQUIRE(r.id >= 1);
    REQUIRE(r.id <= 3);
  }
}

TEST_CASE("classic removals are ordered worst-first") {
  auto pool = omm_pool(8, {0, 1, 2, 4, 8});
  // Crowding: inf, 2/4=0.5, 3/4=0.75, 6/4=1.5, inf.
  const FrontPartition part = prepare(pool);
  RngHandle rng(9);
  const SelectionOutcome out = select_classic(pool, 3, part, rng);
  REQUIRE(out.removals.size() == 2);
  REQUIRE(out.removals[0].cdis == Catch::Approx(0.5));
  REQUIRE(out.removals[1].cdis == Catch::Approx(0.75));
  REQUIRE(survivor_f1(pool, out) == std::vector<int>{0, 4, 8});
}

TEST_CASE("a pool smaller than the capacity is rejected") {
  auto pool = omm_pool(6, {0, 3, 6});
  const FrontPartition part = prepare(pool);
  RngHandle rng(1);
  REQUIRE_THROWS_AS(select_classic(pool, 4, part, rng), std::invalid_argument);
  REQUIRE_THROWS_AS(select_current_cd(pool, 4, part, rng), std::invalid_argument);
}

TEST_CASE("four members can hold infinite crowding distance at once") {
  // Duplicated extremes: ids 0,1 at (4,0), id 2 at (2,2), ids 3,4 at (0,4).
  // Both objectives give their two boundary slots to distinct members, so
  // ids 0,1,3,4 are all infinite and the interior id 2 has distance 2.
  auto pool = pool_from_objectives({{4, 0}, {4, 0}, {2, 2}, {0, 4}, {0, 4}});
  const FrontPartition part = prepare(pool);
  REQUIRE(part.fronts.size() == 1);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  REQUIRE(pool[0].cdis == kInf);
  REQUIRE(pool[1].cdis == kInf);
  REQUIRE(pool[3].cdis == kInf);
  REQUIRE(pool[4].cdis == kInf);
  REQUIRE(pool[2].cdis == Catch::Approx(2.0));

  for (int engine = 0; engine < 2; ++engine) {
    auto copy = pool;
    const FrontPartition p2 = prepare(copy);
    RngHandle rng(55);
    const SelectionOutcome out = engine == 0 ? select_classic(copy, 4, p2, rng)
                                             : select_current_cd(copy, 4, p2, rng);
    REQUIRE(out.removals.size() == 1);
    REQUIRE(out.removals[0].id == 2);
    REQUIRE(out.removals[0].cdis == Catch::Approx(2.0));
  }
}

TEST_CASE("current-cd selection matches the naive oracle move for move") {
  RngHandle master(2025);
  for (int trial = 0; trial < 200; ++trial) {
    RngHandle setup = master.substream(static_cast<std::uint64_t>(trial));
    const std::size_t n = 6 + setup.next_below(15);           // 6..20
    const std::size_t m = 8 + setup.next_below(17);           // 8..24
    const std::size_t capacity = 4 + setup.next_below(std::min<std::size_t>(m - 4, 5));

    // Mix of one-min-max pools (always a single front) and synthetic
    // multi-front pools.
    std::vector<Individual> pool;
    if (trial % 2 == 0) {
      const Problem problem{ProblemKind::one_min_max, n};
      Population pop = fgtest::random_evaluated_population(problem, m, setup);
      pool = std::move(pop.members);
    } else {
      std::vector<ObjectiveVector> objs;
      for (std::size_t i = 0; i < m; ++i) {
        objs.push_back({static_cast<int>(setup.next_below(n + 1)),
                        static_cast<int>(setup.next_below(n + 1))});
      }
      pool = pool_from_objectives(objs);
    }

    auto fast_pool = pool;
    auto slow_pool = pool;
    const FrontPartition fast_part = prepare(fast_pool);
    const FrontPartition slow_part = prepare(slow_pool);

    const std::uint64_t selection_seed = setup.next_u64();
    RngHandle fast_rng(selection_seed);
    RngHandle slow_rng(selection_seed);
    const SelectionOutcome fast = select_current_cd(fast_pool, capacity, fast_part, fast_rng);
    const SelectionOutcome slow =
        naive_current_cd_oracle(slow_pool, capacity, slow_part, slow_rng);

    REQUIRE(fast.survivors == slow.survivors);
    REQUIRE(fast.removals.size() == slow.removals.size());
    for (std::size_t k = 0; k < fast.removals.size(); ++k) {
      REQUIRE(fast.removals[k].id == slow.removals[k].id);
      // Identical removal-time distances, bit for bit (NaN for deeper fronts).
      if (std::isnan(fast.removals[k].cdis)) {
        REQUIRE(std::isnan(slow.removals[k].cdis));
      } else {
        REQUIRE(fast.removals[k].cdis == slow.removals[k].cdis);
      }
    }
  }
}

TEST_CASE("workspace keys track the list-implied crowding distances") {
  RngHandle master(31337);
  for (int trial = 0; trial < 40; ++trial) {
    RngHandle rng = master.substream(static_cast<std::uint64_t>(trial));
    const std::size_t n = 8 + rng.next_below(10);
    const std::size_t m = 6 + rng.next_below(12);
    const Problem problem{ProblemKind::one_min_max, n};
    Population pop = fgtest::random_evaluated_population(problem, m, rng);
    std::vector<Individual>& pool = pop.members;
    const FrontPartition part = non_dominated_sort(pool);
    const std::vector<std::size_t>& front = part.fronts[0];
    if (front.size() < 3) continue;
    assign_tie_keys(pool, rng);
    const CrowdingAssignment assign = crowding_distance(pool, front);
    SelectionWorkspace ws(pool, front, assign);
    ws.verify();
    while (ws.remaining() > 1) {
      ws.remove_min();
      ws.verify();
    }
  }
}

TEST_CASE("queue operation count is linear in the number of removals") {
  RngHandle master(404);
  for (int trial = 0; trial < 50; ++trial) {
    RngHandle rng = master.substream(static_cast<std::uint64_t>(trial));
    const std::size_t n = 20 + rng.next_below(30);
    const std::size_t m = 20 + rng.next_below(60);
    const std::size_t capacity = 4 + rng.next_below(m - 10);
    const Problem problem{ProblemKind::one_min_max, n};
    Population pop = fgtest::random_evaluated_population(problem, m, rng);
    const FrontPartition part = prepare(pop.members);
    const std::size_t critical = part.fronts[0].size();
    if (critical <= capacity) continue;
    const SelectionOutcome out = select_current_cd(pop.members, capacity, part, rng);
    const std::uint64_t drop = critical - capacity;
    // Each removal costs one extract plus at most 4 neighbour updates of at
    // most 3 queue operations each.
    REQUIRE(out.queue_ops <= 13 * drop);
    REQUIRE(out.queue_ops >= drop);
  }
}

TEST_CASE("selection engines keep the extreme points (one-min-max, N >= 4)") {
  RngHandle master(808);
  for (int trial = 0; trial < 100; ++trial) {
    RngHandle rng = master.substream(static_cast<std::uint64_t>(trial));
    const std::size_t n = 10 + rng.next_below(20);
    const std::size_t m = 10 + rng.next_below(10);
    const std::size_t capacity = 4 + rng.next_below(m - 5);
    const Problem problem{ProblemKind::one_min_max, n};
    Population pop = fgtest::random_evaluated_population(problem, m, rng);
    // Force both extremes into the pool.
    pop.members[0].genome = Genome(n);
    pop.members[1].genome = Genome(n);
    for (std::size_t i = 0; i < n; ++i) pop.members[1].genome.set(i, true);
    for (Individual& ind : pop.members) ind.objectives = problem.evaluate(ind.genome);

    for (int engine = 0; engine < 2; ++engine) {
      auto pool = pop.members;
      const FrontPartition part = prepare(pool);
      const SelectionOutcome out = engine == 0 ? select_classic(pool, capacity, part, rng)
                                               : select_current_cd(pool, capacity, part, rng);
      const std::vector<int> values = survivor_f1(pool, out);
      REQUIRE(values.front() == 0);
      REQUIRE(values.back() == static_cast<int>(n));
    }
  }
}

TEST_CASE("steady-state selection equals a single current-cd removal") {
  RngHandle master(909);
  for (int trial = 0; trial < 200; ++trial) {
    RngHandle setup = master.substream(static_cast<std::uint64_t>(trial));
    const std::size_t n = 6 + setup.next_below(15);
    const std::size_t capacity = 4 + setup.next_below(8);
    const std::size_t m = capacity + 1;

    std::vector<Individual> pool;
    if (trial % 2 == 0) {
      const Problem problem{ProblemKind::one_min_max, n};
      Population pop = fgtest::random_evaluated_population(problem, m, setup);
      pool = std::move(pop.members);
    } else {
      std::vector<ObjectiveVector> objs;  // usually several fronts
      for (std::size_t i = 0; i < m; ++i) {
        objs.push_back({static_cast<int>(setup.next_below(5)),
                        static_cast<int>(setup.next_below(5))});
      }
      pool = pool_from_objectives(objs);
    }

    auto steady_pool = pool;
    auto batch_pool = pool;
    const FrontPartition steady_part = prepare(steady_pool);
    const FrontPartition batch_part = prepare(batch_pool);

    const std::uint64_t selection_seed = setup.next_u64();
    RngHandle steady_rng(selection_seed);
    RngHandle batch_rng(selection_seed);
    const SelectionOutcome steady =
        select_steady_state(steady_pool, capacity, steady_part, steady_rng);
    const SelectionOutcome batch =
        select_current_cd(batch_pool, capacity, batch_part, batch_rng);

    REQUIRE(steady.removals.size() == 1);
    REQUIRE(batch.removals.size() == 1);
    REQUIRE(steady.removals[0].id == batch.removals[0].id);
    REQUIRE(steady.survivors == batch.survivors);
  }
}

TEST_CASE("steady-state selection demands exactly capacity+1 members") {
  auto pool = omm_pool(6, {0, 1, 2, 3, 4, 6});
  const FrontPartition part = prepare(pool);
  RngHandle rng(3);
  REQUIRE_THROWS_AS(select_steady_state(pool, 6, part, rng), std::invalid_argument);
  REQUIRE_THROWS_AS(select_steady_state(pool, 4, part, rng), std::invalid_argument);
  REQUIRE_NOTHROW(select_steady_state(pool, 5, part, rng));
}

TEST_CASE("deeper fronts are discarded with unset crowding distance") {
  // Front 1: f1 {0,3,6}; front 2: two mutually incomparable dominated points.
  auto pool = pool_from_objectives({{0, 6}, {3, 3}, {6, 0}, {2, 2}, {5, 0}});
  const FrontPartition part = non_dominated_sort(pool);
  REQUIRE(part.fronts.size() == 2);
  // Engines require distances only up to the critical front.
  crowding_distance(pool, part.fronts[0]);
  RngHandle rng(77);
  const SelectionOutcome out = select_classic(pool, 2, part, rng);
  REQUIRE(out.survivors.size() == 2);
  REQUIRE(out.removals.size() == 3);
  REQUIRE_FALSE(std::isnan(out.removals[0].cdis));  // trimmed critical member
  REQUIRE(std::isnan(out.removals[1].cdis));
  REQUIRE(std::isnan(out.removals[2].cdis));
  const std::set<std::uint64_t> deeper{out.removals[1].id, out.removals[2].id};
  REQUIRE(deeper == std::set<std::uint64_t>{3, 4});
}

TEST_CASE("survivor indices are ascending and consistent with removals") {
  RngHandle master(1212);
  for (int trial = 0; trial < 50; ++trial) {
    RngHandle rng = master.substream(static_cast<std::uint64_t>(trial));
    const std::size_t n = 10;
    const std::size_t m = 8 + rng.next_below(8);
    const std::size_t capacity = 4 + rng.next_below(3);
    const Problem problem{ProblemKind::one_min_max, n};
    Population pop = fgtest::random_evaluated_population(problem, m, rng);
    const FrontPartition part = prepare(pop.members);
    const SelectionOutcome out = select_current_cd(pop.members, capacity, part, rng);
    REQUIRE(out.survivors.size() == capacity);
    REQUIRE(std::is_sorted(out.survivors.begin(), out.survivors.end()));
    REQUIRE(out.removals.size() == m - capacity);
    std::set<std::uint64_t> removed_ids;
    for (const Removal& r : out.removals) removed_ids.insert(r.id);
    for (std::size_t i : out.survivors) REQUIRE_FALSE(removed_ids.contains(pop.members[i].id));
  }
}
