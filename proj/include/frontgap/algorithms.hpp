// The full optimizer loops: classic NSGA-II, NSGA-II with survival selection
// by the current crowding distance, and the steady-state NSGA-II (one
// offspring per iteration, the worst member of the last front removed).
//
// A run is driven one generation at a time through OptimizerRun, so callers
// can stop adaptively (the experiment harness runs until the extreme points
// appear, then through a fixed window).  run() wraps it for the fixed-budget
// case.
//
// While it executes, a run cross-checks itself against the guarantees proved
// for these selection rules and throws TheoremViolation if the process ever
// contradicts one:
//
//   - the largest f1 value never decreases          (capacity >= 4)
//   - extreme points, once present, stay present    (capacity >= 4)
//   - current-cd/steady-state removals with both extremes in the pool have
//     crowding distance < 4/(N-3)                   (OneMinMax, capacity >= 4)
//   - once the extremes are present, the largest f1 gap never grows beyond
//     max(2n/(N-3), 1)                              (OneMinMax, capacity >= 4)
//
// The last two are not claimed (hence not checked) for the steady-state
// variant under binary-tournament mating.

#ifndef FRONTGAP_ALGORITHMS_HPP
#define FRONTGAP_ALGORITHMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frontgap/core.hpp"
#include "frontgap/problems.hpp"
#include "frontgap/ranking.hpp"
#include "frontgap/survival.hpp"
#include "frontgap/variation.hpp"

namespace frontgap {

enum class Variant {
  classic_cd,    // batch trim by the initially computed crowding distances
  current_cd,    // remove-one-update-neighbours loop
  steady_state,  // one offspring per iteration, one removal
};

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::classic_cd: return "classic";
    case Variant::current_cd: return "current-cd";
    case Variant::steady_state: return "steady-state";
  }
  return "?";
}

struct AlgorithmConfig {
  Variant variant = Variant::classic_cd;
  Problem problem;
  std::size_t capacity = 0;  // N
  MatingScheme mating = MatingScheme::fair;
  MutationOp mutation = MutationOp::one_bit;
  std::uint64_t max_generations = 0;
  std::uint64_t seed = 0;
  bool assert_invariants = true;  // throw TheoremViolation on contradiction
  bool record_coverage = false;   // store the sorted distinct f1 values per row

  void validate() const {
    if (problem.n == 0) throw std::invalid_argument("AlgorithmConfig: n must be positive");
    if (capacity == 0) throw std::invalid_argument("AlgorithmConfig: capacity must be positive");
    if (variant == Variant::steady_state && mating == MatingScheme::fair) {
      throw std::invalid_argument(
          "AlgorithmConfig: fair mating is not well-defined for the steady-state variant "
          "(it produces N parents per generation, the steady-state loop uses one)");
    }
  }
};

// A guarantee the implementation is supposed to satisfy failed to hold in an
// actual run; always a bug, never a statistical fluke.
class TheoremViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One per-generation trace record.  Generation 0 is the initial population.
struct TraceRow {
  std::uint64_t generation = 0;
  std::uint64_t evaluations = 0;
  bool extremes = false;        // both extreme points present in P_t
  int mei = 0;                  // largest gap between covered f1 values of P_t
  std::uint32_t distinct_f1 = 0;
  std::vector<int> coverage;    // sorted distinct f1 values; only if requested
};

struct RunTrace {
  std::vector<TraceRow> rows;
  std::optional<std::uint64_t> t0;  // first generation with both extremes present
};

// True iff both extreme points of the problem's Pareto front are present:
// f1 values 0 and n for OneMinMax, and for LOTZ the all-ones and all-zeros
// optima (f1 = n and f2 = n respectively).
inline bool detect_extremes(const Population& pop, const Problem& problem) {
  const int n = static_cast<int>(problem.n);
  bool low = false;
  bool high = false;
  for (const Individual& ind : pop.members) {
    if (problem.kind == ProblemKind::one_min_max) {
      low = low || ind.objectives.f1 == 0;
      high = high || ind.objectives.f1 == n;
    } else {
      high = high || ind.objectives.f1 == n;
      low = low || ind.objectives.f2 == n;
    }
  }
  return low && high;
}

namespace detail {

// Occupancy counts of the f1 values 0..n of the current population, with the
// derived coverage statistics each trace row needs.  Rebuilt per generation.
class CoverageBuffer {
 public:
  void rebuild(const Population& pop, std::size_t n) {
    counts_.assign(n + 1, 0);
    distinct_ = 0;
    for (const Individual& ind : pop.members) {
      if (counts_[static_cast<std::size_t>(ind.objectives.f1)]++ == 0) ++distinct_;
    }
    mei_ = 0;
    int last = -1;
    for (int v = 0; v <= static_cast<int>(n); ++v) {
      if (counts_[static_cast<std::size_t>(v)] == 0) continue;
      if (last >= 0) mei_ = std::max(mei_, v - last);
      last = v;
    }
  }

  int mei() const { return mei_; }
  std::uint32_t distinct() const { return distinct_; }
  bool covers(int v) const { return counts_[static_cast<std::size_t>(v)] != 0; }

  std::vector<int> values() const {
    std::vector<int> out;
    out.reserve(distinct_);
    for (std::size_t v = 0; v < counts_.size(); ++v) {
      if (counts_[v] != 0) out.push_back(static_cast<int>(v));
    }
    return out;
  }

 private:
  std::vector<std::uint32_t> counts_;
  std::uint32_t distinct_ = 0;
  int mei_ = 0;
};

}  // namespace detail

// One seeded optimizer run, advanced one generation (steady-state: one
// iteration) per step() call.
class OptimizerRun {
 public:
  explicit OptimizerRun(const AlgorithmConfig& config) : cfg_(config), rng_(config.seed) {
    cfg_.validate();
    pop_ = random_population(cfg_.problem.n, cfg_.capacity, rng_);
    for (Individual& ind : pop_.members) ind.objectives = cfg_.problem.evaluate(ind.genome);
    evaluations_ = pop_.members.size();
    next_id_ = pop_.members.size();
    // Rank and crowding distance of the initial population, so tournament
    // mating has them in the first generation.
    const FrontPartition partition = non_dominated_sort(pop_.members);
    for (const std::vector<std::size_t>& front : partition.fronts) {
      crowding_distance(pop_.members, front);
    }
    observe();
  }

  const AlgorithmConfig& config() const { return cfg_; }
  const Population& population() const { return pop_; }
  std::uint64_t generation() const { return generation_; }
  std::uint64_t evaluations() const { return evaluations_; }
  std::optional<std::uint64_t> t0() const { return t0_; }
  const TraceRow& last_row() const { return row_; }

  const TraceRow& step() {
    if (cfg_.variant == Variant::steady_state) {
      steady_step();
    } else {
      generational_step();
    }
    ++generation_;
    observe();
    return row_;
  }

 private:
  // Guarantees asserted only at proof strength: capacity >= 4 throughout,
  // OneMinMax for the crowding-distance bounds, and not for the
  // steady-state + binary-tournament combination the theory leaves open.
  bool assert_retention() const { return cfg_.assert_invariants && cfg_.capacity >= 4; }

  bool assert_cd_bounds() const {
    return assert_retention() && cfg_.problem.kind == ProblemKind::one_min_max &&
           !(cfg_.variant == Variant::steady_state &&
             cfg_.mating == MatingScheme::binary_tournament) &&
           cfg_.variant != Variant::classic_cd;
  }

  [[noreturn]] void violation(const std::string& what) const {
    throw TheoremViolation("generation " + std::to_string(generation_) + ", " +
                           variant_name(cfg_.variant) + ", n=" + std::to_string(cfg_.problem.n) +
                           ", N=" + std::to_string(cfg_.capacity) + ": " + what);
  }

  // Record the state of the current population and check the step against
  // the single-generation guarantees.
  void observe() {
    coverage_.rebuild(pop_, cfg_.problem.n);
    const bool extremes = detect_extremes(pop_, cfg_.problem);

    int max_f1 = std::numeric_limits<int>::min();
    for (const Individual& ind : pop_.members) max_f1 = std::max(max_f1, ind.objectives.f1);

    if (generation_ > 0 && assert_retention()) {
      if (max_f1 < prev_max_f1_) {
        violation("largest f1 value decreased from " + std::to_string(prev_max_f1_) + " to " +
                  std::to_string(max_f1));
      }
      if (row_.extremes && !extremes) {
        violation("an extreme point present in the parent population was lost");
      }
      if (assert_cd_bounds() && row_.extremes) {
        const int bound = gap_bound();
        if (coverage_.mei() > std::max(row_.mei, bound)) {
          violation("largest f1 gap grew from " + std::to_string(row_.mei) + " to " +
                    std::to_string(coverage_.mei()) + ", beyond the bound " +
                    std::to_string(bound));
        }
      }
    }
    prev_max_f1_ = max_f1;

    row_.generation = generation_;
    row_.evaluations = evaluations_;
    row_.extremes = extremes;
    row_.mei = coverage_.mei();
    row_.distinct_f1 = coverage_.distinct();
    row_.coverage = cfg_.record_coverage ? coverage_.values() : std::vector<int>{};
    if (extremes && !t0_) t0_ = generation_;
  }

  // Largest integer gap the bound max(2n/(N-3), 1) permits.
  int gap_bound() const {
    return std::max<int>(static_cast<int>(2 * cfg_.problem.n / (cfg_.capacity - 3)), 1);
  }

  Individual make_offspring(const Individual& parent) {
    Individual child;
    child.id = next_id_++;
    child.genome = mutate(parent.genome, cfg_.mutation, rng_);
    child.objectives = cfg_.problem.evaluate(child.genome);
    ++evaluations_;
    return child;
  }

  // Both extreme f1 values present in the combined pool (the hypothesis of
  // the removal-distance bound).
  bool pool_has_extreme_f1(const std::vector<Individual>& pool) const {
    bool low = false;
    bool high = false;
    for (const Individual& ind : pool) {
      low = low || ind.objectives.f1 == 0;
      high = high || ind.objectives.f1 == static_cast<int>(cfg_.problem.n);
    }
    return low && high;
  }

  void check_removals(const RemovalTrace& removals, bool pool_extremes) {
    if (!assert_cd_bounds() || !pool_extremes) return;
    const double bound = 4.0 / (static_cast<double>(cfg_.capacity) - 3.0);
    for (const Removal& r : removals) {
      if (std::isnan(r.cdis)) continue;  // discarded deeper front, distance never computed
      if (!(r.cdis < bound)) {
        violation("removed individual " + std::to_string(r.id) + " had crowding distance " +
                  std::to_string(r.cdis) + " >= 4/(N-3) = " + std::to_string(bound) +
                  " although both extremes were in the pool");
      }
    }
  }

  void generational_step() {
    const std::size_t n_parents = pop_.members.size();
    const std::vector<std::size_t> parents =
        select_parents(pop_, cfg_.mating, n_parents, rng_);

    pool_.clear();
    pool_.reserve(pop_.members.size() + parents.size());
    for (const Individual& ind : pop_.members) pool_.push_back(ind);
    for (std::size_t p : parents) pool_.push_back(make_offspring(pop_.members[p]));

    const FrontPartition partition = non_dominated_sort(pool_);
    const detail::FrontCut cut = detail::front_cut(partition, cfg_.capacity);
    for (std::size_t i = 0; i <= cut.i_star; ++i) {
      crowding_distance(pool_, partition.fronts[i]);
    }
    const bool pool_extremes = pool_has_extreme_f1(pool_);
    const SelectionOutcome outcome =
        cfg_.variant == Variant::classic_cd
            ? select_classic(pool_, cfg_.capacity, partition, rng_)
            : select_current_cd(pool_, cfg_.capacity, partition, rng_);
    check_removals(outcome.removals, pool_extremes);

    std::vector<Individual> next;
    next.reserve(cfg_.capacity);
    for (std::size_t idx : outcome.survivors) next.push_back(std::move(pool_[idx]));
    pop_.members = std::move(next);
  }

  void steady_step() {
    const std::vector<std::size_t> parents = select_parents(pop_, cfg_.mating, 1, rng_);
    pop_.members.push_back(make_offspring(pop_.members[parents.front()]));

    const FrontPartition partition = non_dominated_sort(pop_.members);
    for (const std::vector<std::size_t>& front : partition.fronts) {
      crowding_distance(pop_.members, front);
    }
    const bool pool_extremes = pool_has_extreme_f1(pop_.members);
    const SelectionOutcome outcome =
        select_steady_state(pop_.members, cfg_.capacity, partition, rng_);
    check_removals(outcome.removals, pool_extremes);

    // The survivor list is "all indices but one"; find the victim and close
    // the gap with a swap-pop (member order does not influence behaviour).
    std::size_t victim = pop_.members.size() - 1;
    for (std::size_t i = 0; i < outcome.survivors.size(); ++i) {
      if (outcome.survivors[i] != i) {
        victim = i;
        break;
      }
    }
    if (victim != pop_.members.size() - 1) {
      pop_.members[victim] = std::move(pop_.members.back());
    }
    pop_.members.pop_back();
  }

  AlgorithmConfig cfg_;
  RngHandle rng_;
  Population pop_;
  std::vector<Individual> pool_;  // reused combined-population buffer
  detail::CoverageBuffer coverage_;
  TraceRow row_;
  std::uint64_t generation_ = 0;
  std::uint64_t evaluations_ = 0;
  std::uint64_t next_id_ = 0;
  std::optional<std::uint64_t> t0_;
  int prev_max_f1_ = std::numeric_limits<int>::min();
};

// Fixed-budget run: the initial snapshot plus one row per generation.
inline RunTrace run(const AlgorithmConfig& config) {
  OptimizerRun opt(config);
  RunTrace trace;
  trace.rows.reserve(config.max_generations + 1);
  trace.rows.push_back(opt.last_row());
  for (std::uint64_t g = 0; g < config.max_generations; ++g) {
    trace.rows.push_back(opt.step());
  }
  trace.t0 = opt.t0();
  return trace;
}

// Streaming variant: rows are handed to `on_row` instead of being stored.
inline std::optional<std::uint64_t> run(const AlgorithmConfig& config,
                                        const std::function<void(const TraceRow&)>& on_row) {
  OptimizerRun opt(config);
  on_row(opt.last_row());
  for (std::uint64_t g = 0; g < config.max_generations; ++g) {
    on_row(opt.step());
  }
  return opt.t0();
}

}  // namespace frontgap

#endif  // FRONTGAP_ALGORITHMS_HPP
