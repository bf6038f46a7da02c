// Core value types for bi-objective evolutionary search on pseudo-Boolean
// problems: packed bit-string genomes, integer objective vectors, individuals
// with ranking metadata, populations, and a seedable RNG facade with
// documented per-run substream derivation.

#ifndef FRONTGAP_CORE_HPP
#define FRONTGAP_CORE_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace frontgap {

// Fixed-length bit string, packed 64 bits per word.  Bit i of the genome is
// bit (i mod 64) of word (i div 64); unused high bits of the last word are
// kept zero so that whole-word operations (popcount, equality) stay exact.
class Genome {
 public:
  Genome() = default;

  explicit Genome(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & std::uint64_t{1};
  }

  void set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t count_ones() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  // Number of consecutive ones starting at position 0.
  std::size_t leading_ones() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) {
      const int c = std::countr_one(w);
      total += static_cast<std::size_t>(c);
      if (c < 64) break;
    }
    return total < n_ ? total : n_;
  }

  // Number of consecutive zeros ending at position n-1.
  std::size_t trailing_zeros() const {
    if (n_ == 0) return 0;
    std::size_t total = 0;
    std::size_t valid = n_ - 64 * (words_.size() - 1);  // bits used in last word
    for (std::size_t w = words_.size(); w-- > 0;) {
      // Shift the highest valid bit up to bit 63 so countl_zero sees only
      // genome bits.
      const int c = std::countl_zero(words_[w] << (64 - valid));
      const std::size_t here = std::min<std::size_t>(static_cast<std::size_t>(c), valid);
      total += here;
      if (here < valid) break;
      valid = 64;
    }
    return total;
  }

  friend bool operator==(const Genome&, const Genome&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// A point in bi-objective space; both objectives are maximized throughout.
struct ObjectiveVector {
  int f1 = 0;
  int f2 = 0;

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

// Strict Pareto dominance: u weakly better in both objectives and strictly
// better in at least one.  Equal vectors do not dominate each other.
inline bool strictly_dominates(const ObjectiveVector& u, const ObjectiveVector& v) {
  return u.f1 >= v.f1 && u.f2 >= v.f2 && (u.f1 > v.f1 || u.f2 > v.f2);
}

// One population member.  `rank` is the 1-based front index (0 = not yet
// assigned); `cdis` is the crowding distance (NaN = not yet assigned, may be
// +infinity for boundary members); `tie_key` is a uniform draw in [0,1) made
// once per survival-selection phase and used for all random tie-breaking in
// that phase.
struct Individual {
  std::uint64_t id = 0;
  Genome genome;
  ObjectiveVector objectives;
  int rank = 0;
  double cdis = std::numeric_limits<double>::quiet_NaN();
  double tie_key = 0.0;
};

struct Population {
  std::vector<Individual> members;
  std::size_t capacity = 0;  // the population size N the algorithm maintains
};

// Thin facade over std::mt19937_64.  Substream r of a handle with master
// seed s is an independent handle seeded with splitmix64(s XOR r); the
// splitmix64 finalizer is the documented mixing function, so any run can be
// reproduced from the master seed and the run index alone.
class RngHandle {
 public:
  explicit RngHandle(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // splitmix64 output function (Steele, Lea, Flood 2014).
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  RngHandle substream(std::uint64_t index) const { return RngHandle(mix(seed_ ^ index)); }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); rejection sampling keeps it exactly
  // uniform.  bound must be positive.
  std::size_t next_below(std::size_t bound) {
    if (bound == 0) throw std::invalid_argument("RngHandle::next_below: bound must be positive");
    const std::uint64_t b = bound;
    const std::uint64_t threshold = (0 - b) % b;  // 2^64 mod bound
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r < threshold);
    return static_cast<std::size_t>(r % b);
  }

  bool next_bernoulli(double p) { return next_unit() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Genome of length n with each bit i.i.d. uniform.
inline Genome random_genome(std::size_t n, RngHandle& rng) {
  Genome g(n);
  for (std::size_t i = 0; i < n; i += 64) {
    std::uint64_t w = rng.next_u64();
    const std::size_t bits = std::min<std::size_t>(64, n - i);
    if (bits < 64) w &= (std::uint64_t{1} << bits) - 1;
    for (std::size_t b = 0; b < bits; ++b) {
      if ((w >> b) & 1u) g.flip(i + b);
    }
  }
  return g;
}

// Fresh population of `size` uniformly random genomes with ids 0..size-1.
// Objectives are left unevaluated (zero); callers evaluate and count.
inline Population random_population(std::size_t n, std::size_t size, RngHandle& rng) {
  Population pop;
  pop.capacity = size;
  pop.members.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    Individual ind;
    ind.id = i;
    ind.genome = random_genome(n, rng);
    pop.members.push_back(std::move(ind));
  }
  return pop;
}

}  // namespace frontgap

#endif  // FRONTGAP_CORE_HPP
