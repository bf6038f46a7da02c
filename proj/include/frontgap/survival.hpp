// Survival selection: which N of the combined parent+offspring pool enter
// the next generation.
//
// Three engines share the front-cut rule of NSGA-II (keep all fronts that fit
// entirely, trim the critical front F_{i*}):
//
//   select_classic      trims F_{i*} by the crowding distances computed once
//                       on the full front, largest kept, batch removal.
//   select_current_cd   repeatedly removes a minimum-(cdis, tie_key) member
//                       of F_{i*} and re-derives the crowding distance of its
//                       at most four list neighbours (two per objective),
//                       using a priority queue with handles and twin
//                       doubly-linked neighbour lists.  An increase-key is
//                       realised as decrease-to-sentinel(-1), extract,
//                       reinsert.
//   select_steady_state removes exactly one individual, a minimum-crowding
//                       member of the last front, from a pool of size N+1.
//
// naive_current_cd_oracle recomputes all crowding distances from scratch
// after every single removal; it is the reference the fast engine is tested
// against.  All random tie-breaking goes through per-individual tie keys
// drawn once per selection phase in pool index order, so two engines started
// from identical RNG states make identical choices.

#ifndef FRONTGAP_SURVIVAL_HPP
#define FRONTGAP_SURVIVAL_HPP

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "frontgap/core.hpp"
#include "frontgap/ranking.hpp"

namespace frontgap {

struct Removal {
  std::uint64_t id = 0;
  // Crowding distance at the moment of removal.  NaN for members of fronts
  // beyond F_{i*}, which are discarded without their distances ever being
  // computed.
  double cdis = std::numeric_limits<double>::quiet_NaN();
};

using RemovalTrace = std::vector<Removal>;

struct SelectionOutcome {
  std::vector<std::size_t> survivors;  // indices into the pool, ascending
  RemovalTrace removals;               // in removal order
  std::uint64_t queue_ops = 0;         // priority-queue operations (current-cd only)
};

// Draw one uniform tie key in [0,1) per pool member, in index order.
inline void assign_tie_keys(std::span<Individual> pool, RngHandle& rng) {
  for (Individual& ind : pool) ind.tie_key = rng.next_unit();
}

namespace detail {

struct FrontCut {
  std::size_t i_star = 0;  // index of the critical front
  std::size_t before = 0;  // total size of fronts preceding it
};

inline FrontCut front_cut(const FrontPartition& partition, std::size_t capacity) {
  std::size_t cum = 0;
  for (std::size_t i = 0; i < partition.fronts.size(); ++i) {
    if (cum + partition.fronts[i].size() >= capacity) return {i, cum};
    cum += partition.fronts[i].size();
  }
  throw std::invalid_argument("survival selection: pool is smaller than the capacity");
}

// Binary min-heap over dense item indices with position handles, so keys of
// specific items can be decreased in O(log m).  Keys order lexicographically
// by (cdis, tie).  Every insert/extract/decrease after the initial build
// counts as one queue operation.
class IndexedMinHeap {
 public:
  struct Key {
    double cdis = 0.0;
    double tie = 0.0;
  };

  static bool key_less(const Key& a, const Key& b) {
    return a.cdis < b.cdis || (a.cdis == b.cdis && a.tie < b.tie);
  }

  void build(std::vector<Key> keys) {
    keys_ = std::move(keys);
    const std::size_t m = keys_.size();
    heap_.resize(m);
    pos_.resize(m);
    for (std::size_t i = 0; i < m; ++i) heap_[i] = i, pos_[i] = i;
    for (std::size_t i = m / 2; i-- > 0;) sift_down(i);
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool contains(std::size_t item) const { return pos_[item] != npos; }
  const Key& key_of(std::size_t item) const { return keys_[item]; }
  std::size_t top() const { return heap_.front(); }

  std::size_t extract_min() {
    ++ops_;
    const std::size_t item = heap_.front();
    swap_slots(0, heap_.size() - 1);
    heap_.pop_back();
    pos_[item] = npos;
    if (!heap_.empty()) sift_down(0);
    return item;
  }

  void insert(std::size_t item, Key key) {
    ++ops_;
    assert(!contains(item));
    keys_[item] = key;
    heap_.push_back(item);
    pos_[item] = heap_.size() - 1;
    sift_up(heap_.size() - 1);
  }

  void decrease_key(std::size_t item, Key key) {
    ++ops_;
    assert(contains(item) && !key_less(keys_[item], key));
    keys_[item] = key;
    sift_up(pos_[item]);
  }

  std::uint64_t ops() const { return ops_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void swap_slots(std::size_t a, std::size_t b) {
    std::swap(heap_[a], heap_[b]);
    pos_[heap_[a]] = a;
    pos_[heap_[b]] = b;
  }

  void sift_up(std::size_t slot) {
    while (slot > 0) {
      const std::size_t parent = (slot - 1) / 2;
      if (!key_less(keys_[heap_[slot]], keys_[heap_[parent]])) break;
      swap_slots(slot, parent);
      slot = parent;
    }
  }

  void sift_down(std::size_t slot) {
    const std::size_t m = heap_.size();
    for (;;) {
      std::size_t best = slot;
      const std::size_t l = 2 * slot + 1;
      const std::size_t r = 2 * slot + 2;
      if (l < m && key_less(keys_[heap_[l]], keys_[heap_[best]])) best = l;
      if (r < m && key_less(keys_[heap_[r]], keys_[heap_[best]])) best = r;
      if (best == slot) break;
      swap_slots(slot, best);
      slot = best;
    }
  }

  std::vector<Key> keys_;
  std::vector<std::size_t> heap_;  // heap slot -> item
  std::vector<std::size_t> pos_;   // item -> heap slot (npos if absent)
  std::uint64_t ops_ = 0;
};

}  // namespace detail

// Working state of the remove-min / update-neighbours loop on one front.
// Positions refer to the front vector the workspace was built from.  The
// invariant maintained (and checkable via verify()) is that every queued
// key equals the crowding distance implied by the current neighbour lists.
class SelectionWorkspace {
 public:
  SelectionWorkspace(std::span<Individual> pool, const std::vector<std::size_t>& front,
                     const CrowdingAssignment& assign)
      : pool_(pool), front_(&front), m_(front.size()), head_(m_), tail_(m_ + 1), live_(m_) {
    std::vector<detail::IndexedMinHeap::Key> keys(m_);
    for (std::size_t p = 0; p < m_; ++p) {
      keys[p] = {assign.value[p], pool_[front[p]].tie_key};
    }
    for (int obj = 0; obj < 2; ++obj) {
      next_[obj].assign(m_ + 2, static_cast<std::uint32_t>(tail_));
      prev_[obj].assign(m_ + 2, static_cast<std::uint32_t>(head_));
      std::size_t prev = head_;
      for (std::uint32_t p : assign.order[obj]) {
        next_[obj][prev] = p;
        prev_[obj][p] = static_cast<std::uint32_t>(prev);
        prev = p;
      }
      next_[obj][prev] = static_cast<std::uint32_t>(tail_);
      prev_[obj][tail_] = static_cast<std::uint32_t>(prev);
    }
    alive_.assign(m_, 1);
    heap_.build(std::move(keys));
  }

  std::size_t remaining() const { return live_; }
  bool alive(std::size_t position) const { return alive_[position] != 0; }
  double key_cdis(std::size_t position) const { return heap_.key_of(position).cdis; }
  std::uint64_t queue_ops() const { return heap_.ops(); }

  // Crowding distance of a live member as determined by its current list
  // neighbours and the current per-objective ranges.
  double implied_cdis(std::size_t position) const {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (int obj = 0; obj < 2; ++obj) {
      const std::size_t p = prev_[obj][position];
      const std::size_t nx = next_[obj][position];
      if (p == head_ || nx == tail_) return kInf;
      const double range = value_of(next_[obj][head_], obj) - value_of(prev_[obj][tail_], obj);
      if (range <= 0.0) continue;
      acc += (value_of(p, obj) - value_of(nx, obj)) / range;
    }
    return acc;
  }

  // Remove the minimum-(cdis, tie_key) member, unlink it, and re-derive the
  // keys of its surviving list neighbours.  Returns the removed front
  // position and its key crowding distance at removal.
  std::pair<std::size_t, double> remove_min() {
    if (live_ == 0) throw std::logic_error("SelectionWorkspace: nothing left to remove");
    const std::size_t victim = heap_.top();
    const double at_removal = heap_.key_of(victim).cdis;
    heap_.extract_min();
    std::array<std::size_t, 4> neighbours{};
    std::size_t count = 0;
    for (int obj = 0; obj < 2; ++obj) {
      neighbours[count++] = prev_[obj][victim];
      neighbours[count++] = next_[obj][victim];
      const std::size_t p = prev_[obj][victim];
      const std::size_t nx = next_[obj][victim];
      next_[obj][p] = static_cast<std::uint32_t>(nx);
      prev_[obj][nx] = static_cast<std::uint32_t>(p);
    }
    alive_[victim] = 0;
    --live_;
    if (std::isinf(at_removal)) {
      // A list boundary was removed (only reachable for capacities < 4, when
      // every remaining member is a boundary): objective ranges may have
      // changed, so re-derive every key, not just the neighbours'.
      refresh_all_keys();
    } else {
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t s = neighbours[i];
        if (s == head_ || s == tail_ || !alive_[s]) continue;
        bool duplicate = false;
        for (std::size_t j = 0; j < i; ++j) duplicate = duplicate || neighbours[j] == s;
        if (!duplicate) update_key(s);
      }
    }
    return {victim, at_removal};
  }

  // Checks the workspace invariant; throws std::logic_error on any mismatch.
  void verify() const {
    for (std::size_t p = 0; p < m_; ++p) {
      if (!alive_[p]) {
        if (heap_.contains(p)) throw std::logic_error("workspace: dead member still queued");
        continue;
      }
      if (!heap_.contains(p)) throw std::logic_error("workspace: live member missing from queue");
      const double implied = implied_cdis(p);
      const double queued = heap_.key_of(p).cdis;
      if (!(implied == queued)) {
        throw std::logic_error("workspace: queued key diverges from list-implied crowding distance");
      }
    }
  }

 private:
  double value_of(std::size_t position, int obj) const {
    return objective(pool_[(*front_)[position]], obj);
  }

  void update_key(std::size_t position) {
    const double tie = heap_.key_of(position).tie;
    const double now = heap_.key_of(position).cdis;
    const double next = implied_cdis(position);
    if (next == now) return;
    if (next < now) {
      heap_.decrease_key(position, {next, tie});
      return;
    }
    // Increase-key: decrease to the sentinel below all legal values (-1;
    // legal crowding distances are >= 0), extract, reinsert with the new key.
    heap_.decrease_key(position, {-1.0, tie});
    const std::size_t out = heap_.extract_min();
    assert(out == position);
    (void)out;
    heap_.insert(position, {next, tie});
  }

  void refresh_all_keys() {
    for (std::size_t p = next_[0][head_]; p != tail_; p = next_[0][p]) update_key(p);
  }

  std::span<Individual> pool_;
  const std::vector<std::size_t>* front_;
  std::size_t m_;
  std::size_t head_;
  std::size_t tail_;
  std::size_t live_;
  std::array<std::vector<std::uint32_t>, 2> next_;
  std::array<std::vector<std::uint32_t>, 2> prev_;
  std::vector<char> alive_;
  detail::IndexedMinHeap heap_;
};

namespace detail {

// Survivors common to all engines: the fronts before F_{i*} plus the kept
// part of F_{i*}, as ascending pool indices; removals from deeper fronts are
// appended with unset (NaN) crowding distance.
inline SelectionOutcome assemble_outcome(std::span<Individual> pool,
                                         const FrontPartition& partition, const FrontCut& cut,
                                         std::vector<std::size_t> kept_critical,
                                         RemovalTrace removals) {
  SelectionOutcome out;
  out.survivors.reserve(cut.before + kept_critical.size());
  for (std::size_t i = 0; i < cut.i_star; ++i) {
    out.survivors.insert(out.survivors.end(), partition.fronts[i].begin(),
                         partition.fronts[i].end());
  }
  out.survivors.insert(out.survivors.end(), kept_critical.begin(), kept_critical.end());
  std::sort(out.survivors.begin(), out.survivors.end());
  out.removals = std::move(removals);
  for (std::size_t i = cut.i_star + 1; i < partition.fronts.size(); ++i) {
    for (std::size_t idx : partition.fronts[i]) {
      Removal discarded;  // keeps the NaN default: these distances were never computed
      discarded.id = pool[idx].id;
      out.removals.push_back(discarded);
    }
  }
  return out;
}

}  // namespace detail

// Classic NSGA-II survival: keep the fronts that fit, then the members of
// the critical front with the largest once-computed crowding distance;
// boundary ties fall to the tie keys (equivalent to a uniform choice among
// tied members).  Crowding distances must already be computed for
// F_1..F_{i*}; they are not recomputed during removal.  Removals list the
// trimmed critical-front members by ascending (cdis, tie_key) first, then
// the discarded deeper fronts.
inline SelectionOutcome select_classic(std::span<Individual> pool, std::size_t capacity,
                                       const FrontPartition& partition, RngHandle& rng) {
  if (capacity == 0) throw std::invalid_argument("select_classic: capacity must be positive");
  assign_tie_keys(pool, rng);
  const detail::FrontCut cut = detail::front_cut(partition, capacity);
  const std::vector<std::size_t>& critical = partition.fronts[cut.i_star];
  const std::size_t keep = capacity - cut.before;

  std::vector<std::size_t> order(critical.size());
  for (std::size_t p = 0; p < critical.size(); ++p) order[p] = p;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Individual& ia = pool[critical[a]];
    const Individual& ib = pool[critical[b]];
    assert(!std::isnan(ia.cdis) && !std::isnan(ib.cdis));
    if (ia.cdis != ib.cdis) return ia.cdis > ib.cdis;
    if (ia.tie_key != ib.tie_key) return ia.tie_key > ib.tie_key;
    return ia.id < ib.id;
  });

  std::vector<std::size_t> kept;
  kept.reserve(keep);
  for (std::size_t p = 0; p < keep; ++p) kept.push_back(critical[order[p]]);
  RemovalTrace removals;
  removals.reserve(critical.size() - keep);
  for (std::size_t p = critical.size(); p-- > keep;) {
    const Individual& ind = pool[critical[order[p]]];
    removals.push_back({ind.id, ind.cdis});
  }
  return detail::assemble_outcome(pool, partition, cut, std::move(kept), std::move(removals));
}

// Survival with crowding distances kept current during the removal loop, via
// the workspace above.  O((|R|-N) log |R|) queue operations.  Surviving
// critical-front members carry their final (current) crowding distances.
inline SelectionOutcome select_current_cd(std::span<Individual> pool, std::size_t capacity,
                                          const FrontPartition& partition, RngHandle& rng) {
  if (capacity == 0) throw std::invalid_argument("select_current_cd: capacity must be positive");
  assign_tie_keys(pool, rng);
  const detail::FrontCut cut = detail::front_cut(partition, capacity);
  const std::vector<std::size_t>& critical = partition.fronts[cut.i_star];
  const std::size_t keep = capacity - cut.before;
  const std::size_t drop = critical.size() - keep;

  RemovalTrace removals;
  removals.reserve(drop);
  std::vector<std::size_t> kept;
  kept.reserve(keep);
  std::uint64_t queue_ops = 0;
  if (drop == 0) {
    kept = critical;
  } else {
    const CrowdingAssignment assign = crowding_distance(pool, critical);
    SelectionWorkspace ws(pool, critical, assign);
    for (std::size_t k = 0; k < drop; ++k) {
      const auto [position, at_removal] = ws.remove_min();
      removals.push_back({pool[critical[position]].id, at_removal});
    }
    for (std::size_t p = 0; p < critical.size(); ++p) {
      if (ws.alive(p)) {
        kept.push_back(critical[p]);
        pool[critical[p]].cdis = ws.key_cdis(p);
      }
    }
    queue_ops = ws.queue_ops();
  }
  SelectionOutcome out =
      detail::assemble_outcome(pool, partition, cut, std::move(kept), std::move(removals));
  out.queue_ops = queue_ops;
  return out;
}

// Reference implementation of current-crowding survival: after every single
// removal, recompute all crowding distances of the shrunken critical front
// from scratch.  Started from the same RNG state, it makes exactly the same
// choices as select_current_cd.
inline SelectionOutcome naive_current_cd_oracle(std::span<Individual> pool, std::size_t capacity,
                                                const FrontPartition& partition, RngHandle& rng) {
  if (capacity == 0) {
    throw std::invalid_argument("naive_current_cd_oracle: capacity must be positive");
  }
  assign_tie_keys(pool, rng);
  const detail::FrontCut cut = detail::front_cut(partition, capacity);
  std::vector<std::size_t> remaining = partition.fronts[cut.i_star];
  const std::size_t keep = capacity - cut.before;

  RemovalTrace removals;
  removals.reserve(remaining.size() - keep);
  while (remaining.size() > keep) {
    const CrowdingAssignment assign = crowding_distance(pool, remaining);
    std::size_t worst = 0;
    for (std::size_t p = 1; p < remaining.size(); ++p) {
      const Individual& cand = pool[remaining[p]];
      const Individual& cur = pool[remaining[worst]];
      const bool better = assign.value[p] < assign.value[worst] ||
                          (assign.value[p] == assign.value[worst] &&
                           (cand.tie_key < cur.tie_key ||
                            (cand.tie_key == cur.tie_key && cand.id < cur.id)));
      if (better) worst = p;
    }
    removals.push_back({pool[remaining[worst]].id, assign.value[worst]});
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(worst));
  }
  return detail::assemble_outcome(pool, partition, cut, std::move(remaining),
                                  std::move(removals));
}

// Steady-state survival: the pool holds N+1 individuals; remove one
// minimum-(cdis, tie_key) member of the last front.  Crowding distances of
// the last front must already be computed.
inline SelectionOutcome select_steady_state(std::span<Individual> pool, std::size_t capacity,
                                            const FrontPartition& partition, RngHandle& rng) {
  if (pool.size() != capacity + 1) {
    throw std::invalid_argument("select_steady_state: pool must hold capacity+1 individuals");
  }
  assign_tie_keys(pool, rng);
  const std::vector<std::size_t>& last = partition.fronts.back();
  std::size_t worst = 0;
  for (std::size_t p = 1; p < last.size(); ++p) {
    const Individual& cand = pool[last[p]];
    const Individual& cur = pool[last[worst]];
    assert(!std::isnan(cand.cdis) && !std::isnan(cur.cdis));
    const bool better =
        cand.cdis < cur.cdis ||
        (cand.cdis == cur.cdis &&
         (cand.tie_key < cur.tie_key || (cand.tie_key == cur.tie_key && cand.id < cur.id)));
    if (better) worst = p;
  }
  SelectionOutcome out;
  const std::size_t victim = last[worst];
  out.removals.push_back({pool[victim].id, pool[victim].cdis});
  out.survivors.reserve(pool.size() - 1);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (i != victim) out.survivors.push_back(i);
  }
  return out;
}

}  // namespace frontgap

#endif  // FRONTGAP_SURVIVAL_HPP
