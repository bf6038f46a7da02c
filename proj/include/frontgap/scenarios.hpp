// Two synthetic combined-population constructions on the OneMinMax front,
// and Monte-Carlo trials running one survival selection on them.  They
// exhibit the weakness of selecting by the initial crowding distance:
//
//   FullCoverage  R covers every f1 value 0..n (odd n >= 7, capacity
//                 N = (n+1)/2).  All inner members share the initial
//                 crowding distance 4/n, so classic selection keeps a
//                 uniformly random inner subset and leaves gaps of order
//                 log n with high probability.
//
//   Adversarial   n divisible by 3, f1(R) = [0..n/3+1] union
//                 {n/3 + 2i | i in 1..n/3}, capacity N = n/3 + 1.  Classic
//                 selection deterministically produces a gap of n/3 + 2,
//                 while an explicit alternating keep/delete pattern of the
//                 same pool stays below gap 4.

#ifndef FRONTGAP_SCENARIOS_HPP
#define FRONTGAP_SCENARIOS_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "frontgap/core.hpp"
#include "frontgap/metrics.hpp"
#include "frontgap/problems.hpp"
#include "frontgap/ranking.hpp"
#include "frontgap/stats.hpp"
#include "frontgap/survival.hpp"

namespace frontgap {

enum class ScenarioKind {
  full_coverage,
  adversarial,
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::full_coverage;
  std::size_t n = 0;

  static Scenario full_coverage(std::size_t n) {
    if (n < 7 || n % 2 == 0) {
      throw std::invalid_argument("Scenario: full coverage requires odd n >= 7");
    }
    return {ScenarioKind::full_coverage, n};
  }

  static Scenario adversarial(std::size_t n) {
    if (n < 3 || n % 3 != 0) {
      throw std::invalid_argument("Scenario: adversarial requires n divisible by 3, n >= 3");
    }
    return {ScenarioKind::adversarial, n};
  }

  // The capacity the construction is designed to be trimmed to.
  std::size_t capacity() const {
    return kind == ScenarioKind::full_coverage ? (n + 1) / 2 : n / 3 + 1;
  }
};

namespace detail {

// Canonical genome with the given number of ones (the leading positions).
// The constructions depend only on objective values, so any representative
// with the right ones-count would do.
inline Genome genome_with_ones(std::size_t n, std::size_t ones) {
  Genome g(n);
  for (std::size_t i = 0; i < ones; ++i) g.set(i, true);
  return g;
}

inline Population population_from_f1_values(std::size_t n, const std::vector<int>& f1_values,
                                            std::size_t capacity) {
  const Problem problem{ProblemKind::one_min_max, n};
  Population pop;
  pop.capacity = capacity;
  pop.members.reserve(f1_values.size());
  std::uint64_t id = 0;
  for (int v : f1_values) {
    Individual ind;
    ind.id = id++;
    ind.genome = genome_with_ones(n, n - static_cast<std::size_t>(v));
    ind.objectives = problem.evaluate(ind.genome);
    pop.members.push_back(std::move(ind));
  }
  return pop;
}

}  // namespace detail

// Combined population covering every f1 value 0..n, one individual each.
inline Population build_full_coverage(std::size_t n) {
  const Scenario s = Scenario::full_coverage(n);
  std::vector<int> values;
  values.reserve(n + 1);
  for (int v = 0; v <= static_cast<int>(n); ++v) values.push_back(v);
  return detail::population_from_f1_values(n, values, s.capacity());
}

// Combined population with f1 values [0..n/3+1] union {n/3 + 2i | i in
// 1..n/3}: a dense initial segment and a sparse tail of uniform spacing 2.
inline Population build_adversarial(std::size_t n) {
  const Scenario s = Scenario::adversarial(n);
  const int k = static_cast<int>(n) / 3;
  std::vector<int> values;
  values.reserve(2 * static_cast<std::size_t>(k) + 2);
  for (int v = 0; v <= k + 1; ++v) values.push_back(v);
  for (int i = 1; i <= k; ++i) values.push_back(k + 2 * i);
  return detail::population_from_f1_values(n, values, s.capacity());
}

inline Population build_scenario(const Scenario& s) {
  return s.kind == ScenarioKind::full_coverage ? build_full_coverage(s.n)
                                               : build_adversarial(s.n);
}

// The explicit keep/delete pattern showing the adversarial pool admits a
// much better selection than the classic engine's: keep even values of the
// dense segment and every other value of the sparse tail.  Returns exactly
// N = n/3 + 1 values containing 0 and n, with no gap exceeding 4.
inline std::vector<int> alternating_keep_values(std::size_t n) {
  Scenario::adversarial(n);  // validate
  const int k = static_cast<int>(n) / 3;
  std::vector<int> kept;
  if (k % 2 == 0) {
    for (int v = 0; v <= k; v += 2) kept.push_back(v);            // k/2 + 1 values
    for (int i = 2; i <= k; i += 2) kept.push_back(k + 2 * i);    // k/2 values, ends at n
  } else {
    for (int v = 0; v <= k - 1; v += 2) kept.push_back(v);        // (k+1)/2 values
    for (int i = 1; i <= k; i += 2) kept.push_back(k + 2 * i);    // (k+1)/2 values, ends at n
  }
  return kept;
}

enum class SelectionEngine {
  classic,
  current_cd,
};

// Monte-Carlo record of survivor-set MEI values over independent trials.
struct TrialStats {
  std::vector<int> samples;
  QuartileSummary summary;

  double fraction_at_least(int threshold) const {
    if (samples.empty()) return 0.0;
    std::size_t hits = 0;
    for (int s : samples) hits += s >= threshold ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(samples.size());
  }

  int max() const {
    int best = samples.front();
    for (int s : samples) best = std::max(best, s);
    return best;
  }
};

// Distinct survivor f1 values after one survival selection of `pool` down
// to `capacity` with the given engine.
inline std::vector<int> select_and_collect_f1(Population& pool, std::size_t capacity,
                                              SelectionEngine engine, RngHandle& rng) {
  const FrontPartition partition = non_dominated_sort(pool.members);
  const detail::FrontCut cut = detail::front_cut(partition, capacity);
  for (std::size_t i = 0; i <= cut.i_star; ++i) {
    crowding_distance(pool.members, partition.fronts[i]);
  }
  const SelectionOutcome outcome =
      engine == SelectionEngine::classic
          ? select_classic(pool.members, capacity, partition, rng)
          : select_current_cd(pool.members, capacity, partition, rng);
  std::vector<int> values;
  values.reserve(outcome.survivors.size());
  for (std::size_t idx : outcome.survivors) values.push_back(pool.members[idx].objectives.f1);
  return values;
}

// Builds the scenario pool afresh per trial, runs one survival selection,
// and records the MEI of the survivor f1 set.  Trial t uses RNG substream
// t, so results are independent of execution order.
inline TrialStats run_selection_trials(const Scenario& scenario, SelectionEngine engine,
                                       std::size_t trials, const RngHandle& rng) {
  if (trials == 0) throw std::invalid_argument("run_selection_trials: trials must be positive");
  TrialStats stats;
  stats.samples.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    RngHandle trial_rng = rng.substream(t);
    Population pool = build_scenario(scenario);
    const std::vector<int> values =
        select_and_collect_f1(pool, scenario.capacity(), engine, trial_rng);
    stats.samples.push_back(mei(FrontSubset::from_values(scenario.n, values)));
  }
  stats.summary = quartiles(stats.samples);
  return stats;
}

}  // namespace frontgap

#endif  // FRONTGAP_SCENARIOS_HPP
