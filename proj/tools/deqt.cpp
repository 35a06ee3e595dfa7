// Command-line front end: named setups, run farming across seeds, CSV and
// summary emission, and significance comparison of stats tables.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "deqt/config.hpp"
#include "deqt/error.hpp"
#include "deqt/experiment.hpp"
#include "deqt/io.hpp"
#include "deqt/report.hpp"

namespace fs = std::filesystem;
using namespace deqt;

namespace {

struct CommonOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<int> episodes;
  std::optional<int> bins;
  std::optional<int> tests;
  std::optional<int> snapshot_stride;
  std::string config_file;
  std::vector<std::string> sets;
  std::string out = "deqt_out";
  unsigned threads = 0;
  std::string qtable_format = "binary";
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--seed", o.seed, "Master seed; run i uses seed XOR i");
  cmd->add_option("--runs", o.runs, "Number of independent runs");
  cmd->add_option("--episodes", o.episodes, "Training episodes per run");
  cmd->add_option("--bins", o.bins, "Histogram bins for the entropy estimator");
  cmd->add_option("--tests", o.tests, "Test episodes per extracted Q-table");
  cmd->add_option("--snapshot-stride", o.snapshot_stride, "Keep in-memory table snapshots every N episodes");
  cmd->add_option("--config", o.config_file, "File of key = value lines applied after the preset")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", o.sets, "Override a configuration key (key=value), repeatable");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--qtable-format", o.qtable_format, "Snapshot format for extracted tables")
      ->check(CLI::IsMember({"binary", "csv", "none"}));
  cmd->add_flag("--quiet", o.quiet, "No progress output");
}

ExperimentConfig resolve(const std::string& setup, const CommonOptions& o) {
  ExperimentConfig config = preset(setup);
  if (!o.config_file.empty()) {
    std::ifstream in(o.config_file);
    if (!in) throw IoError("cannot read '" + o.config_file + "'");
    apply_config_stream(config, in);
  }
  for (const std::string& s : o.sets) {
    const auto [key, value] = split_assignment(s);
    apply_override(config, key, value);
  }
  if (o.seed) config.master_seed = *o.seed;
  if (o.runs) config.n_runs = *o.runs;
  if (o.episodes) config.episodes = *o.episodes;
  if (o.bins) config.histogram.n_bins = *o.bins;
  if (o.tests) config.n_tests = *o.tests;
  if (o.snapshot_stride) config.snapshot_stride = *o.snapshot_stride;
  config.validate();
  return config;
}

template <typename Write>
void write_file(const fs::path& path, Write&& write) {
  std::ofstream out = open_output(path);
  write(out);
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string run_prefix(const std::string& setup, std::uint64_t seed) {
  return setup + "_seed" + std::to_string(seed);
}

void write_trace(std::ostream& out, const std::vector<EpisodeTrace>& trace) {
  out << "episode,steps,flags_collected,reached_goal,discounted_reward,temperature\n";
  for (std::size_t e = 0; e < trace.size(); ++e) {
    const EpisodeTrace& t = trace[e];
    out << e << ',' << t.steps << ',' << t.flags_collected << ',' << (t.reached_goal ? 1 : 0) << ','
        << format_double(t.discounted_reward) << ',' << format_double(t.temperature) << '\n';
  }
}

class Progress {
 public:
  Progress(bool quiet, std::string label, std::size_t total)
      : quiet_(quiet), label_(std::move(label)), total_(total) {}
  void tick() {
    if (quiet_) return;
    std::lock_guard lock(mutex_);
    ++done_;
    std::cerr << "[" << label_ << "] run " << done_ << "/" << total_ << " done\n";
  }

 private:
  bool quiet_;
  std::string label_;
  std::size_t total_;
  std::size_t done_ = 0;
  std::mutex mutex_;
};

/// Full workflow for one setup. Returns the aggregate stats rows.
std::vector<StatsRow> run_setup(const std::string& setup, const CommonOptions& o) {
  const ExperimentConfig config = resolve(setup, o);
  const fs::path dir = fs::path(o.out) / setup;
  write_file(dir / "config.txt", [&](std::ostream& out) {
    out << "# setup = " << setup << '\n' << format_config(config);
  });

  WorkflowReport report;
  report.runs.resize(static_cast<std::size_t>(config.n_runs));
  Progress progress(o.quiet, setup, report.runs.size());
  const bool keep_tables = o.qtable_format != "none";
  parallel_for(report.runs.size(), o.threads, [&](std::size_t i) {
    const std::uint64_t seed = run_seed(config.master_seed, i);
    RunOutcome run = workflow_run(config, seed, keep_tables);
    const fs::path run_dir = dir / ("seed_" + std::to_string(seed));
    const std::string prefix = run_prefix(setup, seed);
    write_file(run_dir / (prefix + "_entropy.csv"), [&](std::ostream& out) { write_entropy_csv(out, run.series); });
    write_file(run_dir / (prefix + "_trace.csv"), [&](std::ostream& out) { write_trace(out, run.trace); });
    if (keep_tables) {
      for (TestingTime time : kTestingTimes) {
        const auto k = static_cast<std::size_t>(time);
        const std::string stem = prefix + "_" + to_string(time) + "_ep" + std::to_string(episode_at(run.points, time));
        if (o.qtable_format == "csv") {
          write_file(run_dir / (stem + "_qtable.csv"), [&](std::ostream& out) { write_qtable_csv(out, run.tables[k]); });
        } else {
          write_file(run_dir / (stem + "_qtable.qtb"), [&](std::ostream& out) { write_qtable_binary(out, run.tables[k]); });
        }
      }
      run.tables = {};
    }
    run.series = EntropySeries();
    run.trace.clear();
    report.runs[i] = std::move(run);
    progress.tick();
  });
  for (TestingTime time : kTestingTimes) report.aggregate[static_cast<std::size_t>(time)] = aggregate(report.runs, time);

  std::vector<StoppingPointsRow> points;
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    points.push_back({static_cast<int>(i), report.runs[i].seed, report.runs[i].points});
  }
  write_file(dir / (setup + "_stopping_points.csv"), [&](std::ostream& out) { write_stopping_points_csv(out, points); });
  const std::vector<StatsRow> rows = stats_rows(setup, report);
  write_file(dir / (setup + "_test_stats.csv"), [&](std::ostream& out) { write_stats_csv(out, rows); });
  write_file(dir / (setup + "_summary.txt"), [&](std::ostream& out) { out << summary_table(rows); });
  return rows;
}

void entropy_only(const std::string& setup, const CommonOptions& o) {
  const ExperimentConfig config = resolve(setup, o);
  const fs::path dir = fs::path(o.out) / setup;
  write_file(dir / "config.txt", [&](std::ostream& out) {
    out << "# setup = " << setup << '\n' << format_config(config);
  });
  std::vector<StoppingPointsRow> points(static_cast<std::size_t>(config.n_runs));
  Progress progress(o.quiet, setup, points.size());
  parallel_for(points.size(), o.threads, [&](std::size_t i) {
    const std::uint64_t seed = run_seed(config.master_seed, i);
    const RunRecord record = train_run(config, seed);
    const fs::path run_dir = dir / ("seed_" + std::to_string(seed));
    const std::string prefix = run_prefix(setup, seed);
    write_file(run_dir / (prefix + "_entropy.csv"), [&](std::ostream& out) { write_entropy_csv(out, record.series); });
    write_file(run_dir / (prefix + "_trace.csv"), [&](std::ostream& out) { write_trace(out, record.trace); });
    points[i] = {static_cast<int>(i), seed, record.points};
    progress.tick();
  });
  write_file(dir / (setup + "_stopping_points.csv"), [&](std::ostream& out) { write_stopping_points_csv(out, points); });
}

std::vector<StatsRow> load_stats(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  return read_stats_csv(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabular Q-learning with differential entropy of Q-tables on the flag-collection gridworld"};
  app.require_subcommand(1);

  std::string names;
  for (const auto& n : setup_names()) names += (names.empty() ? "" : ", ") + n;

  CommonOptions run_opts;
  std::string run_name;
  auto* run = app.add_subcommand("run", "Train, select stopping points and test one setup");
  run->add_option("setup", run_name, "One of: " + names)->required();
  add_common(run, run_opts);

  CommonOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Run every setup and write a combined summary");
  add_common(sweep, sweep_opts);

  CommonOptions entropy_opts;
  std::string entropy_name;
  auto* entropy = app.add_subcommand("entropy-only", "Train and emit entropy series without testing");
  entropy->add_option("setup", entropy_name, "One of: " + names)->required();
  add_common(entropy, entropy_opts);

  std::string file_a;
  std::string file_b;
  RowSelector sel_a;
  RowSelector sel_b;
  double alpha = 0.05;
  auto* compare = app.add_subcommand("compare", "Welch t-tests between two test-stats CSV files");
  compare->add_option("stats_a", file_a)->required()->check(CLI::ExistingFile);
  compare->add_option("stats_b", file_b)->required()->check(CLI::ExistingFile);
  compare->add_option("--alpha", alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
  compare->add_option("--setup-a", sel_a.setup);
  compare->add_option("--setup-b", sel_b.setup);
  compare->add_option("--time-a", sel_a.testing_time, "Testing time selected from the first file (e.g. t_max)");
  compare->add_option("--time-b", sel_b.testing_time, "Testing time selected from the second file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto rows = run_setup(run_name, run_opts);
      std::cout << summary_table(rows);
    } else if (*sweep) {
      std::vector<StatsRow> all;
      for (const std::string& name : setup_names()) {
        auto rows = run_setup(name, sweep_opts);
        all.insert(all.end(), rows.begin(), rows.end());
      }
      const fs::path dir(sweep_opts.out);
      write_file(dir / "sweep_test_stats.csv", [&](std::ostream& out) { write_stats_csv(out, all); });
      const std::string table = summary_table(all);
      write_file(dir / "sweep_summary.txt", [&](std::ostream& out) { out << table; });
      std::cout << table;
    } else if (*entropy) {
      entropy_only(entropy_name, entropy_opts);
    } else if (*compare) {
      const auto comparisons = compare_stats(load_stats(file_a), load_stats(file_b), sel_a, sel_b, alpha);
      std::cout << format_comparisons(comparisons);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
