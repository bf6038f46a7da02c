// Benchmark problems.  Both are bi-objective pseudo-Boolean functions with
// both objectives maximized.
//
//   OneMinMax  f(x) = (n - |x|_1, |x|_1): simultaneously minimize and
//              maximize the number of ones.  Every genome is Pareto-optimal;
//              the front is {(0,n), (1,n-1), ..., (n,0)}.
//   LOTZ       f(x) = (leading ones, trailing zeros).  Only genomes of the
//              form 1^a 0^b are Pareto-optimal, so populations generally
//              split into several non-domination levels.

#ifndef FRONTGAP_PROBLEMS_HPP
#define FRONTGAP_PROBLEMS_HPP

#include <stdexcept>
#include <string>

#include "frontgap/core.hpp"

namespace frontgap {

enum class ProblemKind { one_min_max, lotz };

inline ObjectiveVector eval_one_min_max(const Genome& g) {
  const int ones = static_cast<int>(g.count_ones());
  return {static_cast<int>(g.size()) - ones, ones};
}

inline ObjectiveVector eval_lotz(const Genome& g) {
  return {static_cast<int>(g.leading_ones()), static_cast<int>(g.trailing_zeros())};
}

struct Problem {
  ProblemKind kind = ProblemKind::one_min_max;
  std::size_t n = 0;

  ObjectiveVector evaluate(const Genome& g) const {
    if (g.size() != n) {
      throw std::invalid_argument("Problem::evaluate: genome length " +
                                  std::to_string(g.size()) + " does not match n=" +
                                  std::to_string(n));
    }
    return kind == ProblemKind::one_min_max ? eval_one_min_max(g) : eval_lotz(g);
  }
};

}  // namespace frontgap

#endif  // FRONTGAP_PROBLEMS_HPP
