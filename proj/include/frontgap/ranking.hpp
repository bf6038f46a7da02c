// Non-dominated sorting and crowding distance in the sense of Deb, Pratap,
// Agarwal, Meyarivan, "A fast and elitist multiobjective genetic algorithm:
// NSGA-II", IEEE TEVC 6(2), 2002, doi:10.1109/4235.996017, for two maximized
// objectives.
//
// The sort uses the bi-objective sweep: sort by (f1 desc, f2 desc), then
// assign each point to the first front whose current maximum f2 does not
// dominate it (binary search over the monotone tail array).  This is
// O(m log m) and produces exactly the partition of the O(m^2) peeling
// definition; the test suite cross-checks the two on random instances.

#ifndef FRONTGAP_RANKING_HPP
#define FRONTGAP_RANKING_HPP

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "frontgap/core.hpp"

namespace frontgap {

inline int objective(const Individual& ind, int which) {
  return which == 0 ? ind.objectives.f1 : ind.objectives.f2;
}

// Fronts hold indices into the pool passed to non_dominated_sort; fronts are
// disjoint, cover the pool, and front k+1 members are each dominated by some
// front k member.
struct FrontPartition {
  std::vector<std::vector<std::size_t>> fronts;
};

// Partition `pool` into non-domination levels and write 1-based front
// indices into the members' rank fields.
inline FrontPartition non_dominated_sort(std::span<Individual> pool) {
  FrontPartition part;
  const std::size_t m = pool.size();
  if (m == 0) return part;

  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const ObjectiveVector& u = pool[a].objectives;
    const ObjectiveVector& v = pool[b].objectives;
    if (u.f1 != v.f1) return u.f1 > v.f1;
    if (u.f2 != v.f2) return u.f2 > v.f2;
    return pool[a].id < pool[b].id;  // deterministic member order within fronts
  });

  // tail[k] = largest f2 seen in front k so far.  Once a point lands in
  // front k, every later point with f2 <= tail[k] is dominated by some
  // member of front k (it has weakly smaller f1 and is not an exact
  // duplicate).  tail is non-increasing, which makes binary search valid.
  std::vector<int> tail;
  std::size_t i = 0;
  while (i < m) {
    // Points with identical objective vectors never dominate each other and
    // share a front; process the duplicate group atomically.
    std::size_t j = i;
    while (j < m && pool[order[j]].objectives == pool[order[i]].objectives) ++j;
    const int v = pool[order[i]].objectives.f2;
    const std::size_t k = static_cast<std::size_t>(
        std::partition_point(tail.begin(), tail.end(), [&](int t) { return t >= v; }) -
        tail.begin());
    if (k == tail.size()) {
      tail.push_back(v);
      part.fronts.emplace_back();
    } else {
      tail[k] = v;
    }
    for (; i < j; ++i) {
      part.fronts[k].push_back(order[i]);
      pool[order[i]].rank = static_cast<int>(k) + 1;
    }
  }
  return part;
}

// Crowding distances of one front plus the per-objective sorted orders they
// were computed from.  `value[p]` belongs to front[p]; `order[obj]` lists
// front positions sorted by that objective descending, ties by ascending id.
struct CrowdingAssignment {
  std::vector<double> value;
  std::array<std::vector<std::uint32_t>, 2> order;
};

// Crowding distance of every member of `front` (indices into `pool`).  Per
// objective the front is sorted descending (ties by ascending id); the two
// boundary members get +infinity, interior member j accumulates
// (f(S_{j-1}) - f(S_{j+1})) / (f(S_first) - f(S_last)).  A zero objective
// range contributes 0 for interior members while the boundaries still get
// +infinity.  Results are also written into the members' cdis fields.
inline CrowdingAssignment crowding_distance(std::span<Individual> pool,
                                            const std::vector<std::size_t>& front) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t m = front.size();
  CrowdingAssignment out;
  out.value.assign(m, 0.0);
  for (int obj = 0; obj < 2; ++obj) {
    std::vector<std::uint32_t>& ord = out.order[obj];
    ord.resize(m);
    std::iota(ord.begin(), ord.end(), 0u);
    std::sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
      const int fa = objective(pool[front[a]], obj);
      const int fb = objective(pool[front[b]], obj);
      if (fa != fb) return fa > fb;
      return pool[front[a]].id < pool[front[b]].id;
    });
    if (m == 0) continue;
    out.value[ord.front()] = kInf;
    out.value[ord.back()] = kInf;
    const double range = objective(pool[front[ord.front()]], obj) -
                         objective(pool[front[ord.back()]], obj);
    if (range <= 0.0) continue;  // all values equal: interior contribution is 0
    for (std::size_t j = 1; j + 1 < m; ++j) {
      const double gap = objective(pool[front[ord[j - 1]]], obj) -
                         objective(pool[front[ord[j + 1]]], obj);
      out.value[ord[j]] += gap / range;
    }
  }
  for (std::size_t p = 0; p < m; ++p) pool[front[p]].cdis = out.value[p];
  return out;
}

}  // namespace frontgap

#endif  // FRONTGAP_RANKING_HPP
