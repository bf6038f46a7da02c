// Small order statistics shared by the experiment harness, the scenario
// trials, and the tests: nearest-rank quartiles of pooled integer samples
// and per-block (min, median, max) summaries of a steady-state trace.

#ifndef FRONTGAP_STATS_HPP
#define FRONTGAP_STATS_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace frontgap {

struct QuartileSummary {
  int q1 = 0;
  int q2 = 0;
  int q3 = 0;
  std::size_t count = 0;
};

namespace detail {

// Nearest-rank order statistic: the element at 1-based rank ceil(q * m) of
// the sorted sample.
inline int nearest_rank(const std::vector<int>& sorted, double q) {
  const std::size_t m = sorted.size();
  std::size_t rank = static_cast<std::size_t>(q * static_cast<double>(m));
  if (static_cast<double>(rank) < q * static_cast<double>(m)) ++rank;  // ceil
  if (rank < 1) rank = 1;
  return sorted[rank - 1];
}

}  // namespace detail

// Nearest-rank quartiles at ranks ceil(m/4), ceil(m/2), ceil(3m/4).
inline QuartileSummary quartiles(std::vector<int> samples) {
  if (samples.empty()) throw std::invalid_argument("quartiles: empty sample");
  std::sort(samples.begin(), samples.end());
  QuartileSummary out;
  out.q1 = detail::nearest_rank(samples, 0.25);
  out.q2 = detail::nearest_rank(samples, 0.5);
  out.q3 = detail::nearest_rank(samples, 0.75);
  out.count = samples.size();
  return out;
}

// One block of a steady-state trace: iterations are grouped into consecutive
// blocks of `block_size` (iteration g, 1-based, falls into block ceil(g /
// block_size)); a shorter final block is kept and flagged partial.
struct BlockStats {
  std::size_t block = 0;  // 1-based block index
  std::size_t length = 0;
  int min = 0;
  int median = 0;
  int max = 0;
  bool partial = false;
};

inline std::vector<BlockStats> block_stats(const std::vector<int>& series,
                                           std::size_t block_size) {
  if (block_size == 0) throw std::invalid_argument("block_stats: block size must be positive");
  std::vector<BlockStats> out;
  for (std::size_t start = 0; start < series.size(); start += block_size) {
    const std::size_t len = std::min(block_size, series.size() - start);
    std::vector<int> block(series.begin() + static_cast<std::ptrdiff_t>(start),
                           series.begin() + static_cast<std::ptrdiff_t>(start + len));
    std::sort(block.begin(), block.end());
    BlockStats row;
    row.block = start / block_size + 1;
    row.length = len;
    row.min = block.front();
    row.median = detail::nearest_rank(block, 0.5);
    row.max = block.back();
    row.partial = len < block_size;
    out.push_back(row);
  }
  return out;
}

}  // namespace frontgap

#endif  // FRONTGAP_STATS_HPP
