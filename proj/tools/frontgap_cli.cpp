// frontgap benchmark driver.
//
// Subcommands:
//   run       one configuration, full per-generation trace CSV
//   table1    the full benchmark grid with pooled window quartiles
//   scenario  Monte-Carlo survival-selection trials on synthetic pools
//   metrics   approximation metrics of a front subset read from a file
//
// Exit status: 0 success, 1 configuration/usage error, 2 a proved guarantee
// was violated at runtime (always a bug), 3 some run hit the safety cap
// before finding both extreme points.  2 takes precedence over 3.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "frontgap/algorithms.hpp"
#include "frontgap/harness.hpp"
#include "frontgap/metrics.hpp"
#include "frontgap/scenarios.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitViolation = 2;
constexpr int kExitTimeout = 3;

std::ofstream open_output(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw frontgap::ConfigError("cannot write '" + path.string() + "'");
  return os;
}

// ---------------------------------------------------------------------------
// `run`: a single configuration, streaming the full trace to CSV.

struct RunArgs {
  std::size_t n = 601;
  std::size_t pop_size = 301;
  std::string variant = "classic";
  std::string mating = "auto";
  std::string mutation = "one-bit";
  std::uint64_t generations = 1000;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  bool blocks = false;  // also write per-block (min, median, max) MEI series
};

int cmd_run(const RunArgs& args) {
  frontgap::AlgorithmConfig cfg;
  cfg.variant = frontgap::variant_from_string(args.variant);
  cfg.problem = frontgap::Problem{frontgap::ProblemKind::one_min_max, args.n};
  cfg.capacity = args.pop_size;
  cfg.mating = args.mating == "auto"
                   ? (cfg.variant == frontgap::Variant::steady_state
                          ? frontgap::MatingScheme::random_uniform
                          : frontgap::MatingScheme::fair)
                   : frontgap::mating_from_string(args.mating);
  cfg.mutation = frontgap::mutation_from_string(args.mutation);
  cfg.max_generations = args.generations;
  cfg.seed = args.seed;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw frontgap::ConfigError(e.what());
  }

  const std::filesystem::path dir(args.out_dir);
  std::ofstream trace = open_output(dir / "trace.csv");
  trace << "run,seed,variant,N,gen_post_t0,gen_raw,mei,extremes,evals\n";

  std::optional<std::uint64_t> t0;
  std::vector<int> mei_series;  // indexed by generation
  const auto on_row = [&](const frontgap::TraceRow& row) {
    if (!t0 && row.extremes) t0 = row.generation;
    mei_series.push_back(row.mei);
    trace << 0 << ',' << cfg.seed << ',' << frontgap::variant_name(cfg.variant) << ','
          << cfg.capacity << ',';
    if (t0) {
      trace << (row.generation - *t0);
    }  // blank before the extremes appear: no post-t0 index exists yet
    trace << ',' << row.generation << ',' << row.mei << ',' << (row.extremes ? 1 : 0) << ','
          << row.evaluations << '\n';
  };

  frontgap::run(cfg, on_row);

  if (args.blocks) {
    std::vector<int> post_t0;
    if (t0) {
      post_t0.assign(mei_series.begin() + static_cast<std::ptrdiff_t>(*t0) + 1,
                     mei_series.end());
    }
    std::ofstream blocks = open_output(dir / "blocks.csv");
    frontgap::write_blocks_csv(
        blocks, post_t0.empty() ? std::vector<frontgap::BlockStats>{}
                                : frontgap::block_stats(post_t0, cfg.capacity));
  }

  std::cout << "run finished: " << args.generations << " generations, t0="
            << (t0 ? std::to_string(*t0) : std::string("not reached")) << ", final MEI "
            << mei_series.back() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// `table1`: the full benchmark grid.

int cmd_table1(const frontgap::ExperimentConfig& cfg) {
  const frontgap::ExperimentResult result = frontgap::run_experiment(cfg);
  frontgap::write_experiment_outputs(cfg, result, cfg.out_dir);

  std::cout << "variant,N,window,q1,q2,q3,samples\n";
  for (const frontgap::Table1Cell& c : result.cells) {
    std::cout << frontgap::variant_name(c.variant) << ',' << c.capacity << ',' << c.window
              << ',' << c.quartiles.q1 << ',' << c.quartiles.q2 << ',' << c.quartiles.q3 << ','
              << c.quartiles.count << '\n';
  }
  for (const frontgap::RunOutcome& out : result.runs) {
    if (out.violation) {
      std::cerr << "guarantee violated: " << out.violation_message << '\n';
    } else if (out.failed) {
      std::cerr << "run " << out.task.run_index << " (" << frontgap::variant_name(out.task.variant)
                << ", N=" << out.task.capacity
                << ") hit the safety cap before finding both extremes\n";
    }
  }
  if (result.any_violation()) return kExitViolation;
  if (result.any_failed()) return kExitTimeout;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// `scenario`: survival-selection trials on the synthetic pools.

struct ScenarioArgs {
  std::string kind = "full-coverage";
  std::string engine = "classic";
  std::size_t n = 601;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
};

int cmd_scenario(const ScenarioArgs& args) {
  frontgap::Scenario scenario;
  try {
    if (args.kind == "full-coverage") {
      scenario = frontgap::Scenario::full_coverage(args.n);
    } else if (args.kind == "adversarial") {
      scenario = frontgap::Scenario::adversarial(args.n);
    } else {
      throw frontgap::ConfigError("unknown scenario kind '" + args.kind +
                                  "' (expected full-coverage|adversarial)");
    }
  } catch (const std::invalid_argument& e) {
    throw frontgap::ConfigError(e.what());
  }
  frontgap::SelectionEngine engine;
  if (args.engine == "classic") {
    engine = frontgap::SelectionEngine::classic;
  } else if (args.engine == "current-cd") {
    engine = frontgap::SelectionEngine::current_cd;
  } else {
    throw frontgap::ConfigError("unknown engine '" + args.engine +
                                "' (expected classic|current-cd)");
  }
  if (args.trials == 0) throw frontgap::ConfigError("trials must be at least 1");

  const frontgap::RngHandle rng(args.seed);
  const frontgap::TrialStats stats =
      frontgap::run_selection_trials(scenario, engine, args.trials, rng);

  const std::filesystem::path dir(args.out_dir);
  std::ofstream os = open_output(dir / ("scenario_" + args.kind + "_" + args.engine + ".csv"));
  os << "trial,mei\n";
  for (std::size_t t = 0; t < stats.samples.size(); ++t) {
    os << t << ',' << stats.samples[t] << '\n';
  }

  std::cout << args.kind << " n=" << args.n << " N=" << scenario.capacity() << ", "
            << args.engine << ", " << args.trials << " trials: MEI quartiles ("
            << stats.summary.q1 << ',' << stats.summary.q2 << ',' << stats.summary.q3
            << "), max " << stats.max() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// `metrics`: report on a front subset read from a file.

struct MetricsArgs {
  std::string input;
  double r1 = 0.0;
  double r2 = 0.0;
};

int cmd_metrics(const MetricsArgs& args) {
  std::ifstream in(args.input, std::ios::binary);
  if (!in) throw frontgap::ConfigError("cannot open front-subset file '" + args.input + "'");

  std::optional<std::size_t> n;
  std::vector<int> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    if (!n) {
      if (line.rfind("n=", 0) != 0) {
        throw frontgap::ConfigError("line " + std::to_string(line_no) +
                                    ": expected the header line n=<value> first");
      }
      n = frontgap::detail::parse_u64(line.substr(2));
      continue;
    }
    try {
      values.push_back(static_cast<int>(frontgap::detail::parse_u64(line)));
    } catch (const frontgap::ConfigError&) {
      throw frontgap::ConfigError("line " + std::to_string(line_no) + ": '" + line +
                                  "' is not a non-negative integer");
    }
  }
  if (!n) throw frontgap::ConfigError("front-subset file is missing the n=<value> header");
  if (values.empty()) throw frontgap::ConfigError("front-subset file lists no f1 values");

  frontgap::MetricReport report;
  try {
    const frontgap::FrontSubset subset = frontgap::FrontSubset::from_values(*n, values);
    report = frontgap::compute_metric_report(subset, {args.r1, args.r2});
  } catch (const std::invalid_argument& e) {
    throw frontgap::ConfigError(e.what());
  }

  nlohmann::json j;
  j["n"] = report.n;
  j["distinct_values"] = report.distinct_values;
  j["mei"] = report.mei;
  j["extremes_present"] = report.extremes_present;
  j["degenerate"] = report.degenerate;
  j["reference"] = {{"r1", report.reference.r1}, {"r2", report.reference.r2}};
  j["eps_lower"] = report.eps_lower ? nlohmann::json(*report.eps_lower) : nlohmann::json();
  j["eps_upper"] = report.eps_upper ? nlohmann::json(*report.eps_upper) : nlohmann::json();
  j["hv"] = report.hv ? nlohmann::json(*report.hv) : nlohmann::json();
  if (report.hv_interval) {
    j["hv_lower"] = report.hv_interval->lower;
    j["hv_upper"] = report.hv_interval->upper;
  } else {
    j["hv_lower"] = nullptr;
    j["hv_upper"] = nullptr;
  }
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bi-objective evolutionary optimization benchmark (OneMinMax / LOTZ)"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run_cmd = app.add_subcommand("run", "Run one configuration, write the full trace");
  run_cmd->add_option("--n", run_args.n, "Problem size");
  run_cmd->add_option("--pop-size", run_args.pop_size, "Population size N");
  run_cmd->add_option("--variant", run_args.variant, "classic|current-cd|steady-state");
  run_cmd->add_option("--mating", run_args.mating, "fair|random|tournament (default: auto)");
  run_cmd->add_option("--mutation", run_args.mutation, "one-bit|bitwise");
  run_cmd->add_option("--generations", run_args.generations, "Generations to run");
  run_cmd->add_option("--seed", run_args.seed, "RNG seed");
  run_cmd->add_option("--out", run_args.out_dir, "Output directory");
  run_cmd->add_flag("--blocks", run_args.blocks, "Also write per-block MEI stats (blocks.csv)");

  frontgap::ExperimentConfig table1_cfg;
  std::string table1_config_path;
  std::vector<std::size_t> table1_pop_sizes;
  std::vector<std::string> table1_variants;
  std::string table1_mating;
  std::string table1_mutation;
  std::string table1_early, table1_late;
  CLI::App* table1_cmd =
      app.add_subcommand("table1", "Run the full benchmark grid and aggregate quartiles");
  table1_cmd->add_option("--config", table1_config_path, "key=value config file");
  CLI::Option* o_n = table1_cmd->add_option("--n", table1_cfg.n, "Problem size");
  CLI::Option* o_pop = table1_cmd->add_option("--pop-size", table1_pop_sizes,
                                              "Population size (repeatable)");
  CLI::Option* o_var = table1_cmd->add_option(
      "--variant", table1_variants, "classic|current-cd|steady-state (repeatable)");
  CLI::Option* o_mat = table1_cmd->add_option("--mating", table1_mating, "fair|random|tournament");
  CLI::Option* o_mut = table1_cmd->add_option("--mutation", table1_mutation, "one-bit|bitwise");
  CLI::Option* o_runs = table1_cmd->add_option("--runs", table1_cfg.runs, "Runs per setting");
  CLI::Option* o_seed = table1_cmd->add_option("--seed", table1_cfg.seed, "Master seed");
  CLI::Option* o_out = table1_cmd->add_option("--out", table1_cfg.out_dir, "Output directory");
  CLI::Option* o_workers = table1_cmd->add_option("--workers", table1_cfg.workers,
                                                  "Concurrent runs");
  CLI::Option* o_early = table1_cmd->add_option("--early-window", table1_early,
                                                "Early window lo..hi (post-t0 generations)");
  CLI::Option* o_late = table1_cmd->add_option("--late-window", table1_late,
                                               "Late window lo..hi (post-t0 generations)");
  CLI::Option* o_cap = table1_cmd->add_option("--safety-cap", table1_cfg.safety_cap,
                                              "Generations allowed before both extremes appear");

  ScenarioArgs scenario_args;
  CLI::App* scenario_cmd =
      app.add_subcommand("scenario", "Monte-Carlo survival-selection trials");
  scenario_cmd->add_option("--kind", scenario_args.kind, "full-coverage|adversarial");
  scenario_cmd->add_option("--engine", scenario_args.engine, "classic|current-cd");
  scenario_cmd->add_option("--n", scenario_args.n, "Problem size");
  scenario_cmd->add_option("--trials", scenario_args.trials, "Number of trials");
  scenario_cmd->add_option("--seed", scenario_args.seed, "RNG seed");
  scenario_cmd->add_option("--out", scenario_args.out_dir, "Output directory");

  MetricsArgs metrics_args;
  CLI::App* metrics_cmd =
      app.add_subcommand("metrics", "Approximation metrics of a front-subset file");
  metrics_cmd->add_option("input", metrics_args.input, "File: header n=<value>, one f1 per line")
      ->required();
  metrics_cmd->add_option("--r1", metrics_args.r1, "Reference point, first coordinate (<= 0)");
  metrics_cmd->add_option("--r2", metrics_args.r2, "Reference point, second coordinate (<= 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (app.got_subcommand(run_cmd)) return cmd_run(run_args);
    if (app.got_subcommand(scenario_cmd)) return cmd_scenario(scenario_args);
    if (app.got_subcommand(metrics_cmd)) return cmd_metrics(metrics_args);

    // table1: file first, explicit flags override it.
    if (!table1_config_path.empty()) {
      table1_cfg = frontgap::parse_config_file(table1_config_path);
    }
    if (*o_n) table1_cfg.n = static_cast<std::size_t>(std::stoull(o_n->results().front()));
    if (*o_runs) table1_cfg.runs = std::stoull(o_runs->results().front());
    if (*o_seed) table1_cfg.seed = std::stoull(o_seed->results().front());
    if (*o_out) table1_cfg.out_dir = o_out->results().front();
    if (*o_workers) table1_cfg.workers = std::stoull(o_workers->results().front());
    if (*o_cap) table1_cfg.safety_cap = std::stoull(o_cap->results().front());
    if (*o_pop) {
      table1_cfg.pop_sizes.clear();
      for (const std::string& s : o_pop->results()) {
        table1_cfg.pop_sizes.push_back(static_cast<std::size_t>(std::stoull(s)));
      }
    }
    if (*o_var) {
      table1_cfg.variants.clear();
      for (const std::string& s : o_var->results()) {
        table1_cfg.variants.push_back(frontgap::variant_from_string(s));
      }
    }
    if (*o_mat) table1_cfg.mating = frontgap::mating_from_string(table1_mating);
    if (*o_mut) table1_cfg.mutation = frontgap::mutation_from_string(table1_mutation);
    if (*o_early) table1_cfg.early = frontgap::detail::parse_window(table1_early);
    if (*o_late) table1_cfg.late = frontgap::detail::parse_window(table1_late);
    return cmd_table1(table1_cfg);
  } catch (const frontgap::TheoremViolation& e) {
    std::cerr << "guarantee violated: " << e.what() << '\n';
    return kExitViolation;
  } catch (const frontgap::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
