// Experiment orchestration: configuration (file + programmatic), a bounded
// worker pool over independent seeded runs, window sampling relative to the
// generation t0 at which both extreme points first appear, nearest-rank
// quartile aggregation, and CSV/JSON persistence.
//
// The benchmark grid follows the OneMinMax study the library reproduces:
// n = 601, population sizes 301/151/76, 20 runs per setting, MEI sampled in
// the post-t0 windows [1..100] and [3001..3100] (for the steady-state
// variant scaled by N: [1..100N] and [3000N+1..3100N], one generation being
// identified with N single-offspring iterations).

#ifndef FRONTGAP_HARNESS_HPP
#define FRONTGAP_HARNESS_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "frontgap/algorithms.hpp"
#include "frontgap/stats.hpp"

namespace frontgap {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inclusive post-t0 generation window, in generational units; the
// steady-state variant multiplies both ends by N.
struct WindowSpec {
  std::uint64_t lo = 1;
  std::uint64_t hi = 100;
};

struct ExperimentConfig {
  std::size_t n = 601;
  std::vector<std::size_t> pop_sizes = {301, 151, 76};
  std::vector<Variant> variants = {Variant::classic_cd, Variant::current_cd,
                                   Variant::steady_state};
  // Unset: the study's defaults, fair mating for the generational variants
  // and uniform-random mating for the steady-state one.
  std::optional<MatingScheme> mating;
  MutationOp mutation = MutationOp::one_bit;
  std::size_t runs = 20;
  std::uint64_t seed = 1;
  WindowSpec early{1, 100};
  WindowSpec late{3001, 3100};
  // Runs that have not found both extremes after this many (scaled)
  // generations are flagged failed and excluded from the quartiles.
  std::uint64_t safety_cap = 1'000'000;
  std::string out_dir = "out";
  std::size_t workers = 1;

  MatingScheme mating_for(Variant v) const {
    if (mating) return *mating;
    return v == Variant::steady_state ? MatingScheme::random_uniform : MatingScheme::fair;
  }

  void validate() const {
    if (n == 0) throw ConfigError("config: n must be positive");
    if (runs == 0) throw ConfigError("config: runs must be at least 1");
    if (workers == 0) throw ConfigError("config: workers must be at least 1");
    if (pop_sizes.empty()) throw ConfigError("config: pop_sizes must not be empty");
    for (std::size_t N : pop_sizes) {
      if (N == 0) throw ConfigError("config: population sizes must be positive");
    }
    if (variants.empty()) throw ConfigError("config: variants must not be empty");
    for (const WindowSpec& w : {early, late}) {
      if (w.lo < 1 || w.hi < w.lo) {
        throw ConfigError("config: windows must satisfy 1 <= lo <= hi");
      }
    }
    if (mating && *mating == MatingScheme::fair) {
      for (Variant v : variants) {
        if (v == Variant::steady_state) {
          throw ConfigError(
              "config: fair mating is not well-defined for the steady-state variant");
        }
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Name <-> enum plumbing shared by the config parser and the CLI.

inline Variant variant_from_string(const std::string& s) {
  if (s == "classic") return Variant::classic_cd;
  if (s == "current-cd") return Variant::current_cd;
  if (s == "steady-state") return Variant::steady_state;
  throw ConfigError("unknown variant '" + s + "' (expected classic|current-cd|steady-state)");
}

inline MatingScheme mating_from_string(const std::string& s) {
  if (s == "fair") return MatingScheme::fair;
  if (s == "random") return MatingScheme::random_uniform;
  if (s == "tournament") return MatingScheme::binary_tournament;
  throw ConfigError("unknown mating scheme '" + s + "' (expected fair|random|tournament)");
}

inline const char* mating_name(MatingScheme m) {
  switch (m) {
    case MatingScheme::fair: return "fair";
    case MatingScheme::random_uniform: return "random";
    case MatingScheme::binary_tournament: return "tournament";
  }
  return "?";
}

inline MutationOp mutation_from_string(const std::string& s) {
  if (s == "one-bit") return MutationOp::one_bit;
  if (s == "bitwise") return MutationOp::bit_wise;
  throw ConfigError("unknown mutation operator '" + s + "' (expected one-bit|bitwise)");
}

inline const char* mutation_name(MutationOp m) {
  return m == MutationOp::one_bit ? "one-bit" : "bitwise";
}

namespace detail {

inline std::string trim(const std::string& s) {
  const std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::uint64_t parse_u64(const std::string& s) {
  if (s.empty()) throw ConfigError("empty number");
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("'" + s + "' is not a non-negative integer");
  }
  if (used != s.size()) throw ConfigError("'" + s + "' is not a non-negative integer");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

inline WindowSpec parse_window(const std::string& s) {
  const std::size_t dots = s.find("..");
  if (dots == std::string::npos) {
    throw ConfigError("window '" + s + "' must have the form lo..hi");
  }
  WindowSpec w;
  w.lo = parse_u64(trim(s.substr(0, dots)));
  w.hi = parse_u64(trim(s.substr(dots + 2)));
  return w;
}

inline void apply_config_key(ExperimentConfig& cfg, const std::string& key,
                             const std::string& value) {
  if (key == "n") {
    cfg.n = parse_u64(value);
  } else if (key == "pop_sizes") {
    cfg.pop_sizes.clear();
    for (const std::string& item : split(value, ',')) cfg.pop_sizes.push_back(parse_u64(item));
  } else if (key == "variants") {
    cfg.variants.clear();
    for (const std::string& item : split(value, ',')) {
      cfg.variants.push_back(variant_from_string(item));
    }
  } else if (key == "mating") {
    cfg.mating = mating_from_string(value);
  } else if (key == "mutation") {
    cfg.mutation = mutation_from_string(value);
  } else if (key == "runs") {
    cfg.runs = parse_u64(value);
  } else if (key == "seed") {
    cfg.seed = parse_u64(value);
  } else if (key == "early_window") {
    cfg.early = parse_window(value);
  } else if (key == "late_window") {
    cfg.late = parse_window(value);
  } else if (key == "safety_cap") {
    cfg.safety_cap = parse_u64(value);
  } else if (key == "out") {
    cfg.out_dir = value;
  } else if (key == "workers") {
    cfg.workers = parse_u64(value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

}  // namespace detail

// Parse `key=value` lines ('#' starts a comment; blank lines ignored) on top
// of the defaults.  Errors carry the 1-based line number.  The result is not
// yet validated: callers apply command-line overrides first, then validate.
inline ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value, got '" +
                        line + "'");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    try {
      detail::apply_config_key(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

inline ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

// ---------------------------------------------------------------------------
// Execution.

struct RunTask {
  Variant variant = Variant::classic_cd;
  std::size_t capacity = 0;
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
};

// A window row kept for the per-run trace CSV.
struct HarnessRow {
  std::uint64_t gen_raw = 0;
  std::uint64_t evaluations = 0;
  int mei = 0;
  bool extremes = false;
};

struct RunOutcome {
  RunTask task;
  bool failed = false;  // extremes not found within the safety cap
  bool violation = false;
  std::string violation_message;
  std::optional<std::uint64_t> t0;
  std::uint64_t final_generation = 0;
  std::uint64_t evaluations = 0;
  std::vector<HarnessRow> window_rows;
  std::vector<int> early_samples;
  std::vector<int> late_samples;
};

struct Table1Cell {
  Variant variant = Variant::classic_cd;
  std::size_t capacity = 0;
  std::string window;  // "early" or "late"
  QuartileSummary quartiles;
};

struct ExperimentResult {
  std::vector<RunTask> tasks;
  std::vector<RunOutcome> runs;  // in task order
  std::vector<Table1Cell> cells;

  bool any_failed() const {
    for (const RunOutcome& r : runs) {
      if (r.failed) return true;
    }
    return false;
  }

  bool any_violation() const {
    for (const RunOutcome& r : runs) {
      if (r.violation) return true;
    }
    return false;
  }
};

// Task list in (variant, population size, run) order.  Task k is seeded with
// substream k of the master seed, so any single run can be reproduced from
// the config alone.
inline std::vector<RunTask> make_tasks(const ExperimentConfig& cfg) {
  std::vector<RunTask> tasks;
  tasks.reserve(cfg.variants.size() * cfg.pop_sizes.size() * cfg.runs);
  const RngHandle master(cfg.seed);
  std::uint64_t ordinal = 0;
  for (Variant v : cfg.variants) {
    for (std::size_t capacity : cfg.pop_sizes) {
      for (std::size_t r = 0; r < cfg.runs; ++r) {
        tasks.push_back({v, capacity, r, master.substream(ordinal++).seed()});
      }
    }
  }
  return tasks;
}

// Execute one seeded run: advance until both extremes are present (failing
// at the safety cap), then through the end of the late window, collecting
// the MEI samples of both windows.
inline RunOutcome execute_task(const ExperimentConfig& cfg, const RunTask& task) {
  RunOutcome out;
  out.task = task;
  const std::uint64_t scale = task.variant == Variant::steady_state ? task.capacity : 1;

  AlgorithmConfig ac;
  ac.variant = task.variant;
  ac.problem = Problem{ProblemKind::one_min_max, cfg.n};
  ac.capacity = task.capacity;
  ac.mating = cfg.mating_for(task.variant);
  ac.mutation = cfg.mutation;
  ac.seed = task.seed;

  try {
    OptimizerRun run(ac);
    const std::uint64_t cap = cfg.safety_cap * scale;
    while (!run.t0()) {
      if (run.generation() >= cap) {
        out.failed = true;
        out.final_generation = run.generation();
        out.evaluations = run.evaluations();
        return out;
      }
      run.step();
    }
    const std::uint64_t t0 = *run.t0();
    out.t0 = t0;

    const std::uint64_t early_lo = t0 + (cfg.early.lo - 1) * scale + 1;
    const std::uint64_t early_hi = t0 + cfg.early.hi * scale;
    const std::uint64_t late_lo = t0 + (cfg.late.lo - 1) * scale + 1;
    const std::uint64_t late_hi = t0 + cfg.late.hi * scale;
    const std::uint64_t end = std::max(early_hi, late_hi);

    while (run.generation() < end) {
      const TraceRow& row = run.step();
      const std::uint64_t g = row.generation;
      const bool in_early = g >= early_lo && g <= early_hi;
      const bool in_late = g >= late_lo && g <= late_hi;
      if (in_early) out.early_samples.push_back(row.mei);
      if (in_late) out.late_samples.push_back(row.mei);
      if (in_early || in_late) {
        out.window_rows.push_back({g, row.evaluations, row.mei, row.extremes});
      }
    }
    out.final_generation = run.generation();
    out.evaluations = run.evaluations();
  } catch (const TheoremViolation& e) {
    out.violation = true;
    out.violation_message = e.what();
  }
  return out;
}

// Run every task on a bounded worker pool.  Tasks are independent seeded
// runs, so the outcome vector (and everything derived from it) is identical
// for any worker count.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.tasks = make_tasks(cfg);
  result.runs.resize(result.tasks.size());

  const std::size_t workers = std::min(cfg.workers, result.tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker_main = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= result.tasks.size()) return;
      try {
        result.runs[i] = execute_task(cfg, result.tasks[i]);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    worker_main();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker_main);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Pool window samples across the usable runs of each setting.
  for (Variant v : cfg.variants) {
    for (std::size_t capacity : cfg.pop_sizes) {
      std::vector<int> early;
      std::vector<int> late;
      for (std::size_t i = 0; i < result.tasks.size(); ++i) {
        const RunTask& task = result.tasks[i];
        if (task.variant != v || task.capacity != capacity) continue;
        const RunOutcome& out = result.runs[i];
        if (out.failed || out.violation) continue;
        early.insert(early.end(), out.early_samples.begin(), out.early_samples.end());
        late.insert(late.end(), out.late_samples.begin(), out.late_samples.end());
      }
      if (!early.empty()) result.cells.push_back({v, capacity, "early", quartiles(early)});
      if (!late.empty()) result.cells.push_back({v, capacity, "late", quartiles(late)});
    }
  }
  return result;
}

// Per-block (min, median, max) MEI of the post-t0 part of a steady-state
// trace, iterations grouped into blocks of N.
inline std::vector<BlockStats> steady_state_block_stats(const RunTrace& trace,
                                                        std::size_t block_size) {
  if (!trace.t0) {
    throw std::invalid_argument(
        "steady_state_block_stats: the trace never reached both extremes (no t0)");
  }
  std::vector<int> series;
  for (const TraceRow& row : trace.rows) {
    if (row.generation > *trace.t0) series.push_back(row.mei);
  }
  return block_stats(series, block_size);
}

// ---------------------------------------------------------------------------
// Persistence.  All CSV files: UTF-8, comma separators, one header row, LF
// line endings, integer fields unquoted.

inline void write_table1_csv(std::ostream& os, const std::vector<Table1Cell>& cells) {
  os << "variant,N,window,q1,q2,q3,samples\n";
  for (const Table1Cell& c : cells) {
    os << variant_name(c.variant) << ',' << c.capacity << ',' << c.window << ','
       << c.quartiles.q1 << ',' << c.quartiles.q2 << ',' << c.quartiles.q3 << ','
       << c.quartiles.count << '\n';
  }
}

inline void write_trace_csv(std::ostream& os, const RunOutcome& out) {
  os << "run,seed,variant,N,gen_post_t0,gen_raw,mei,extremes,evals\n";
  for (const HarnessRow& row : out.window_rows) {
    os << out.task.run_index << ',' << out.task.seed << ',' << variant_name(out.task.variant)
       << ',' << out.task.capacity << ',' << (row.gen_raw - *out.t0) << ',' << row.gen_raw
       << ',' << row.mei << ',' << (row.extremes ? 1 : 0) << ',' << row.evaluations << '\n';
  }
}

inline void write_blocks_csv(std::ostream& os, const std::vector<BlockStats>& blocks) {
  os << "block,length,min,median,max,partial\n";
  for (const BlockStats& b : blocks) {
    os << b.block << ',' << b.length << ',' << b.min << ',' << b.median << ',' << b.max << ','
       << (b.partial ? 1 : 0) << '\n';
  }
}

inline nlohmann::json experiment_json(const ExperimentConfig& cfg,
                                      const ExperimentResult& result) {
  nlohmann::json j;
  j["config"]["n"] = cfg.n;
  j["config"]["pop_sizes"] = cfg.pop_sizes;
  {
    std::vector<std::string> names;
    for (Variant v : cfg.variants) names.emplace_back(variant_name(v));
    j["config"]["variants"] = names;
  }
  j["config"]["mating"] = cfg.mating ? mating_name(*cfg.mating) : "auto";
  j["config"]["mutation"] = mutation_name(cfg.mutation);
  j["config"]["runs"] = cfg.runs;
  j["config"]["seed"] = cfg.seed;
  j["config"]["early_window"] = std::to_string(cfg.early.lo) + ".." + std::to_string(cfg.early.hi);
  j["config"]["late_window"] = std::to_string(cfg.late.lo) + ".." + std::to_string(cfg.late.hi);
  j["config"]["safety_cap"] = cfg.safety_cap;
  j["config"]["workers"] = cfg.workers;

  j["cells"] = nlohmann::json::array();
  for (const Table1Cell& c : result.cells) {
    j["cells"].push_back({{"variant", variant_name(c.variant)},
                          {"N", c.capacity},
                          {"window", c.window},
                          {"q1", c.quartiles.q1},
                          {"q2", c.quartiles.q2},
                          {"q3", c.quartiles.q3},
                          {"samples", c.quartiles.count}});
  }

  j["runs"] = nlohmann::json::array();
  for (std::size_t i = 0; i < result.tasks.size(); ++i) {
    const RunOutcome& out = result.runs[i];
    nlohmann::json r{{"run", out.task.run_index},
                     {"variant", variant_name(out.task.variant)},
                     {"N", out.task.capacity},
                     {"seed", out.task.seed},
                     {"failed", out.failed},
                     {"violation", out.violation},
                     {"final_generation", out.final_generation},
                     {"evaluations", out.evaluations}};
    if (out.t0) {
      r["t0"] = *out.t0;
    } else {
      r["t0"] = nullptr;
    }
    if (out.violation) r["violation_message"] = out.violation_message;
    j["runs"].push_back(r);
  }
  return j;
}

inline std::string trace_file_name(const RunTask& task) {
  return "trace_" + std::string(variant_name(task.variant)) + "_" +
         std::to_string(task.capacity) + "_" + std::to_string(task.run_index) + ".csv";
}

// Write table1.csv, table1.json, and one trace_<variant>_<N>_<run>.csv per
// run (window rows only; failed runs produce a header-only file) into `dir`.
inline void write_experiment_outputs(const ExperimentConfig& cfg, const ExperimentResult& result,
                                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / "table1.csv", std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir / "table1.csv").string());
    write_table1_csv(os, result.cells);
  }
  {
    std::ofstream os(dir / "table1.json", std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir / "table1.json").string());
    os << experiment_json(cfg, result).dump(2) << '\n';
  }
  for (std::size_t i = 0; i < result.tasks.size(); ++i) {
    const std::filesystem::path path = dir / trace_file_name(result.tasks[i]);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write_trace_csv(os, result.runs[i]);
  }
}

}  // namespace frontgap

#endif  // FRONTGAP_HARNESS_HPP
