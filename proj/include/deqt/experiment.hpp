#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "deqt/entropy.hpp"
#include "deqt/gridworld.hpp"
#include "deqt/qlearn.hpp"
#include "deqt/representation.hpp"
#include "deqt/stats.hpp"

namespace deqt {

enum class TemperatureUnit { Actions, Episodes };

struct ScheduleParams {
  double t0 = 1000.0;
  double decay = 0.99;
  std::uint64_t update_every = 1000;
  double t_min = 0.1;
  TemperatureUnit unit = TemperatureUnit::Actions;
};

struct ExperimentConfig {
  WorldConfig world;
  Representation representation = Representation::global(8);
  int n_train_flags = 8;
  LearningParams params;
  ScheduleParams schedule;
  int episodes = 10000;
  HistogramSpec histogram;
  EntropyValues entropy_values = EntropyValues::StateAction;
  bool include_channel0 = true;
  /// Bootstrap with 0 on the final update of a timed-out episode.
  bool timeout_terminal_bootstrap = false;
  int n_tests = 1000;
  double test_temperature = 0.1;
  int n_runs = 30;
  std::uint64_t master_seed = 20190101;
  /// Keep an in-memory copy of the table every `snapshot_stride` episodes (0 = off).
  int snapshot_stride = 0;

  QTableDims qtable_dims() const;
  void validate() const;
};

struct EpisodeTrace {
  int steps = 0;
  int flags_collected = 0;
  bool reached_goal = false;
  double discounted_reward = 0.0;
  double temperature = 0.0;  ///< temperature at the end of the episode

  friend bool operator==(const EpisodeTrace&, const EpisodeTrace&) = default;
};

/// Sequential Q-learning over training episodes for one seed.
class Trainer {
 public:
  Trainer(const ExperimentConfig& config, std::uint64_t seed);

  EpisodeTrace run_episode();

  const QTable& table() const { return table_; }
  int episodes_done() const { return episodes_done_; }
  double temperature() const { return schedule_.current(); }

 private:
  ExperimentConfig config_;
  RandomStream rng_;
  QTable table_;
  TemperatureSchedule schedule_;
  int episodes_done_ = 0;
};

struct RunRecord {
  std::uint64_t seed = 0;
  EntropySeries series;
  StoppingPoints points;
  std::vector<EpisodeTrace> trace;
  QTable final_table;
  /// Episode index -> table right after that episode (only with snapshot_stride > 0).
  std::map<int, QTable> snapshots;
};

RunRecord train_run(const ExperimentConfig& config, std::uint64_t seed);

/// Re-runs the seeded training and returns the table as it stood right after `episode`.
QTable replay_to(const ExperimentConfig& config, std::uint64_t seed, int episode);

/// Single replay pass collecting the tables after each requested episode.
std::map<int, QTable> replay_tables(const ExperimentConfig& config, std::uint64_t seed,
                                    const std::vector<int>& episodes);

struct TestStats {
  SampleSummary discounted_reward;
  SampleSummary flags_collected;
  double success_rate = 0.0;
  std::size_t successes = 0;
  std::size_t tests = 0;
  /// Over successful tests only; n == 0 when nothing succeeded.
  SampleSummary steps_successful;
};

struct TestOutcome {
  int steps = 0;
  int flags_collected = 0;
  bool reached_goal = false;
  bool success = false;
  double discounted_reward = 0.0;
};

/// One greedy-ish evaluation episode with every flag-zone cell flagged and no learning.
TestOutcome run_test_episode(const QTable& table, const ExperimentConfig& config,
                             RandomStream& rng);

TestStats run_tests(const QTable& table, const ExperimentConfig& config, RandomStream& rng);

enum class TestingTime { Earliest = 0, Latest = 1, Max = 2, Final = 3 };
inline constexpr std::array<TestingTime, 4> kTestingTimes = {
    TestingTime::Earliest, TestingTime::Latest, TestingTime::Max, TestingTime::Final};

std::string to_string(TestingTime time);
TestingTime parse_testing_time(const std::string& name);
int episode_at(const StoppingPoints& points, TestingTime time);

struct RunOutcome {
  std::uint64_t seed = 0;
  EntropySeries series;
  StoppingPoints points;
  std::vector<EpisodeTrace> trace;
  std::array<TestStats, 4> tests;
  std::array<QTable, 4> tables;
};

/// Statistics for one testing time across runs. Reward, flags and steps pool
/// every test of every run; success rate is summarized over per-run rates.
struct AggregateStats {
  SampleSummary discounted_reward;
  SampleSummary flags_collected;
  SampleSummary success_rate;
  SampleSummary steps_successful;
};

struct WorkflowReport {
  std::vector<RunOutcome> runs;
  std::array<AggregateStats, 4> aggregate;

  const AggregateStats& at(TestingTime time) const { return aggregate[static_cast<int>(time)]; }
};

/// Train, pick stopping points, extract and test tables at the four testing
/// times. Tables are only kept in the report when keep_tables is set.
RunOutcome workflow_run(const ExperimentConfig& config, std::uint64_t seed, bool keep_tables = false);

AggregateStats aggregate(const std::vector<RunOutcome>& runs, TestingTime time);

/// All n_runs seeds, farmed over `threads` workers (0 = hardware concurrency).
WorkflowReport full_workflow(const ExperimentConfig& config, unsigned threads = 0,
                             bool keep_tables = false);

/// Entropy series and stopping points only, over n_runs seeds.
std::vector<RunRecord> entropy_runs(const ExperimentConfig& config, unsigned threads = 0);

/// Calls job(i) for i in [0, count) on up to `threads` workers.
template <typename Job>
void parallel_for(std::size_t count, unsigned threads, Job&& job);

}  // namespace deqt

#include "deqt/detail/parallel.hpp"
