// Parent selection and mutation.  Crossover is deliberately absent: the
// algorithms here are mutation-only.

#ifndef FRONTGAP_VARIATION_HPP
#define FRONTGAP_VARIATION_HPP

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "frontgap/core.hpp"

namespace frontgap {

enum class MatingScheme {
  fair,               // every member is parent exactly once, in member order
  random_uniform,     // i.i.d. uniform draws with replacement
  binary_tournament,  // two uniform draws with replacement; best of the two
};

enum class MutationOp {
  one_bit,   // flip exactly one uniformly chosen bit
  bit_wise,  // flip each bit independently with probability 1/n
};

// Indices of `count` parents drawn from pop.members.  `fair` requires
// count == |P| and yields 0..|P|-1; the sampling schemes draw with
// replacement.  binary_tournament prefers lower rank, then higher crowding
// distance, then a fair coin; it requires rank and cdis to be assigned.
inline std::vector<std::size_t> select_parents(const Population& pop, MatingScheme scheme,
                                               std::size_t count, RngHandle& rng) {
  const std::size_t m = pop.members.size();
  if (m == 0) throw std::invalid_argument("select_parents: empty population");
  std::vector<std::size_t> parents;
  parents.reserve(count);
  switch (scheme) {
    case MatingScheme::fair:
      if (count != m) {
        throw std::invalid_argument("select_parents: fair mating requires count == |P|");
      }
      for (std::size_t i = 0; i < m; ++i) parents.push_back(i);
      break;
    case MatingScheme::random_uniform:
      for (std::size_t i = 0; i < count; ++i) parents.push_back(rng.next_below(m));
      break;
    case MatingScheme::binary_tournament:
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t a = rng.next_below(m);
        const std::size_t b = rng.next_below(m);
        const Individual& ia = pop.members[a];
        const Individual& ib = pop.members[b];
        assert(ia.rank > 0 && ib.rank > 0 && !std::isnan(ia.cdis) && !std::isnan(ib.cdis));
        std::size_t winner;
        if (ia.rank != ib.rank) {
          winner = ia.rank < ib.rank ? a : b;
        } else if (ia.cdis != ib.cdis) {
          winner = ia.cdis > ib.cdis ? a : b;
        } else {
          winner = rng.next_bernoulli(0.5) ? a : b;  // coin only on exact tie
        }
        parents.push_back(winner);
      }
      break;
  }
  return parents;
}

// Mutated copy of `parent`.
inline Genome mutate(const Genome& parent, MutationOp op, RngHandle& rng) {
  Genome child = parent;
  const std::size_t n = parent.size();
  if (n == 0) throw std::invalid_argument("mutate: empty genome");
  switch (op) {
    case MutationOp::one_bit:
      child.flip(rng.next_below(n));
      break;
    case MutationOp::bit_wise: {
      const double rate = 1.0 / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (rng.next_bernoulli(rate)) child.flip(i);
      }
      break;
    }
  }
  return child;
}

}  // namespace frontgap

#endif  // FRONTGAP_VARIATION_HPP
