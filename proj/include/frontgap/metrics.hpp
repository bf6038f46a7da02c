// Approximation quality of a set of OneMinMax Pareto-front points, measured
// three ways:
//
//   mei   largest empty interval: the maximum gap between consecutive
//         covered first-objective values,
//   eps   multiplicative epsilon-dominance of the full integer front,
//   hv    hypervolume w.r.t. a reference point r = (r1, r2), r1, r2 <= 0.
//
// A front subset is abstracted to its set of distinct f1 values: on the
// OneMinMax front the second objective is determined by the first, so a
// sorted value list {j_1 < ... < j_m} with j in [0..n] carries everything
// these metrics need.

#ifndef FRONTGAP_METRICS_HPP
#define FRONTGAP_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frontgap/core.hpp"
#include "frontgap/problems.hpp"

namespace frontgap {

// Distinct, strictly increasing f1 values of a OneMinMax front subset.
class FrontSubset {
 public:
  FrontSubset(std::size_t n, std::vector<int> sorted_values) : n_(n), values_(std::move(sorted_values)) {
    if (n_ == 0) throw std::invalid_argument("FrontSubset: n must be positive");
    if (values_.empty()) throw std::invalid_argument("FrontSubset: empty value set");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] < 0 || values_[i] > static_cast<int>(n_)) {
        throw std::invalid_argument("FrontSubset: value " + std::to_string(values_[i]) +
                                    " outside [0.." + std::to_string(n_) + "]");
      }
      if (i > 0 && values_[i] <= values_[i - 1]) {
        throw std::invalid_argument("FrontSubset: values must be strictly increasing");
      }
    }
  }

  // Normalizing factory: sorts and deduplicates.
  static FrontSubset from_values(std::size_t n, std::vector<int> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return FrontSubset(n, std::move(values));
  }

  // Distinct f1 values of a population (evaluated on OneMinMax).
  static FrontSubset from_population(const Population& pop, const Problem& problem) {
    std::vector<int> values;
    values.reserve(pop.members.size());
    for (const Individual& ind : pop.members) values.push_back(ind.objectives.f1);
    return from_values(problem.n, std::move(values));
  }

  std::size_t n() const { return n_; }
  const std::vector<int>& values() const { return values_; }
  bool has_extremes() const { return values_.front() == 0 && values_.back() == static_cast<int>(n_); }

 private:
  std::size_t n_;
  std::vector<int> values_;
};

// Maximum empty interval: largest gap between consecutive covered values.
// A single covered value has no interior gaps and yields 0 (flagged as
// degenerate in MetricReport).  Gaps outside [min value, max value] are not
// counted; without the extremes this deliberately ignores the uncovered
// boundary regions.
inline int mei(const FrontSubset& s) {
  const std::vector<int>& v = s.values();
  int best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) best = std::max(best, v[i] - v[i - 1]);
  return best;
}

// Best mei any extreme-containing subset of at most `capacity` values can
// achieve: ceil(n / (capacity - 1)).
inline long mei_opt(std::size_t n, std::size_t capacity) {
  if (capacity < 2) throw std::invalid_argument("mei_opt: capacity must be at least 2");
  const long parts = static_cast<long>(capacity) - 1;
  return (static_cast<long>(n) + parts - 1) / parts;
}

namespace detail {

inline void require_extremes(const FrontSubset& s, const char* who) {
  if (!s.has_extremes()) {
    throw std::invalid_argument(std::string(who) + ": subset must contain f1 values 0 and n");
  }
}

inline void require_valid_reference(double r1, double r2, const char* who) {
  if (!(r1 <= 0.0) || !(r2 <= 0.0)) {
    throw std::invalid_argument(std::string(who) + ": reference point must satisfy r1,r2 <= 0");
  }
}

}  // namespace detail

// Upper bound on the epsilon-dominance of an extreme-containing subset:
// mei / (n - mei).
inline double eps_upper(const FrontSubset& s) {
  detail::require_extremes(s, "eps_upper");
  const int g = mei(s);
  if (g == static_cast<int>(s.n())) {
    throw std::domain_error("eps_upper: degenerate subset {0, n} (division by n - mei = 0)");
  }
  return static_cast<double>(g) / (static_cast<double>(s.n()) - g);
}

// Matching lower bound: (mei - 1) / (n - mei).
inline double eps_lower(const FrontSubset& s) {
  detail::require_extremes(s, "eps_lower");
  const int g = mei(s);
  if (g == static_cast<int>(s.n())) {
    throw std::domain_error("eps_lower: degenerate subset {0, n} (division by n - mei = 0)");
  }
  return (static_cast<double>(g) - 1.0) / (static_cast<double>(s.n()) - g);
}

// Exact epsilon-dominance by brute force over the integer front: the
// smallest eps such that every front point (k, n-k) is covered by some
// subset point u, i.e. (1+eps) * u >= (k, n-k) componentwise.  May be
// +infinity for subsets missing both a positive-f1 and a positive-f2 point.
inline double eps_exact(const FrontSubset& s) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(s.n());
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) {
    double best = kInf;
    for (int j : s.values()) {
      const int u1 = j;
      const int u2 = n - j;
      const int v1 = k;
      const int v2 = n - k;
      double need = 0.0;
      if (v1 > 0) {
        if (u1 == 0) continue;  // this u can never cover v
        need = std::max(need, static_cast<double>(v1) / u1 - 1.0);
      }
      if (v2 > 0) {
        if (u2 == 0) continue;
        need = std::max(need, static_cast<double>(v2) / u2 - 1.0);
      }
      best = std::min(best, need);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

struct ReferencePoint {
  double r1 = 0.0;
  double r2 = 0.0;
};

// A := hypervolume of the continuous front {(x, n-x) | x in [0..n]}.
inline double hv_continuous_front(std::size_t n, ReferencePoint r) {
  const double nn = static_cast<double>(n);
  return -r.r1 * nn - r.r2 * nn + r.r1 * r.r2 + 0.5 * nn * nn;
}

// Closed form for the hypervolume of an extreme-containing subset:
// A - sum over consecutive value gaps g of g^2 / 2.
inline double hv_exact(const FrontSubset& s, ReferencePoint r) {
  detail::require_valid_reference(r.r1, r.r2, "hv_exact");
  detail::require_extremes(s, "hv_exact");
  double penalty = 0.0;
  const std::vector<int>& v = s.values();
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double g = v[i] - v[i - 1];
    penalty += 0.5 * g * g;
  }
  return hv_continuous_front(s.n(), r) - penalty;
}

// Reference computation: area of the union of the dominated axis-aligned
// rectangles [r1, j] x [r2, n-j], swept strip by strip.  Valid for any
// subset, extremes or not.
inline double hv_union_oracle(const FrontSubset& s, ReferencePoint r) {
  detail::require_valid_reference(r.r1, r.r2, "hv_union_oracle");
  const double n = static_cast<double>(s.n());
  double area = 0.0;
  double left = r.r1;
  for (int j : s.values()) {  // ascending f1, so descending heights
    area += (j - left) * (n - j - r.r2);
    left = j;
  }
  return area;
}

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double x) const { return lower <= x && x <= upper; }
};

// Hypervolume sandwich for an extreme-containing subset S with m distinct
// values: hv in [A - (m-1) mei^2 / 2, A - n / (2 (m-1))].
inline Interval hv_bounds(const FrontSubset& s, ReferencePoint r) {
  detail::require_valid_reference(r.r1, r.r2, "hv_bounds");
  detail::require_extremes(s, "hv_bounds");
  const double a = hv_continuous_front(s.n(), r);
  const double m = static_cast<double>(s.values().size());
  const double g = mei(s);
  return {a - (m - 1.0) * g * g / 2.0, a - static_cast<double>(s.n()) / (2.0 * (m - 1.0))};
}

// The same sandwich for the best subset of at most `capacity` values:
// hv_opt in [A - (N-1) mei_opt^2 / 2, A - n / (2 (N-1))].
inline Interval hv_opt_bounds(std::size_t n, std::size_t capacity, ReferencePoint r) {
  detail::require_valid_reference(r.r1, r.r2, "hv_opt_bounds");
  const double a = hv_continuous_front(n, r);
  const double g = static_cast<double>(mei_opt(n, capacity));
  const double parts = static_cast<double>(capacity) - 1.0;
  return {a - parts * g * g / 2.0, a - static_cast<double>(n) / (2.0 * parts)};
}

// Everything the metrics subcommand reports about one front snapshot.
// eps and hv fields are absent when the snapshot lacks the extremes (or,
// for eps, equals the degenerate {0, n}).
struct MetricReport {
  std::size_t n = 0;
  std::size_t distinct_values = 0;
  int mei = 0;
  bool extremes_present = false;
  bool degenerate = false;  // single value, or {0, n} for the eps ratios
  ReferencePoint reference;
  std::optional<double> eps_lower;
  std::optional<double> eps_upper;
  std::optional<double> hv;
  std::optional<Interval> hv_interval;
};

inline MetricReport compute_metric_report(const FrontSubset& s, ReferencePoint r) {
  detail::require_valid_reference(r.r1, r.r2, "compute_metric_report");
  MetricReport report;
  report.n = s.n();
  report.distinct_values = s.values().size();
  report.mei = mei(s);
  report.extremes_present = s.has_extremes();
  report.degenerate = s.values().size() == 1;
  report.reference = r;
  if (report.extremes_present) {
    report.hv = hv_exact(s, r);
    report.hv_interval = hv_bounds(s, r);
    if (report.mei == static_cast<int>(s.n())) {
      report.degenerate = true;  // {0, n}: the eps ratios divide by zero
    } else {
      report.eps_lower = eps_lower(s);
      report.eps_upper = eps_upper(s);
    }
  }
  return report;
}

}  // namespace frontgap

#endif  // FRONTGAP_METRICS_HPP
