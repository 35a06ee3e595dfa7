#include "deqt/experiment.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "deqt/error.hpp"

namespace deqt {

QTableDims ExperimentConfig::qtable_dims() const {
  return QTableDims{world.width, world.height, channel_count(representation),
                    static_cast<int>(kActionCount)};
}

void ExperimentConfig::validate() const {
  world.validate();
  params.validate();
  const auto zone = flag_zone(world).size();
  if (n_train_flags < 1 || static_cast<std::size_t>(n_train_flags) > zone) {
    throw ConfigError("n_train_flags must lie in [1, " + std::to_string(zone) + "]");
  }
  if (representation.type == RepresentationType::Global &&
      representation.n_train_flags != n_train_flags) {
    throw ConfigError("global representation must be sized for n_train_flags");
  }
  if (episodes < 1) throw ConfigError("episodes must be >= 1");
  if (n_tests < 1) throw ConfigError("n_tests must be >= 1");
  if (n_runs < 1) throw ConfigError("n_runs must be >= 1");
  if (histogram.n_bins < 1) throw ConfigError("bins must be >= 1");
  if (!(test_temperature > 0.0)) throw ConfigError("test temperature must be positive");
  if (snapshot_stride < 0) throw ConfigError("snapshot_stride must be >= 0");
  // Throws on a bad schedule.
  TemperatureSchedule(schedule.t0, schedule.decay, schedule.update_every, schedule.t_min);
}

Trainer::Trainer(const ExperimentConfig& config, std::uint64_t seed)
    : config_((config.validate(), config)),
      rng_(seed, streams::kTraining),
      table_(init_qtable(config.qtable_dims(), config.params.q_init)),
      schedule_(config.schedule.t0, config.schedule.decay, config.schedule.update_every,
                config.schedule.t_min) {}

EpisodeTrace Trainer::run_episode() {
  const WorldConfig& world = config_.world;
  const Representation& rep = config_.representation;
  const bool per_action = config_.schedule.unit == TemperatureUnit::Actions;

  WorldState state = initial_state(world, sample_flag_layout(world, config_.n_train_flags, rng_));
  StateIndex s = encode(rep, state.agent, static_cast<int>(state.remaining.size()), false,
                        Phase::Training);
  Transition last;
  while (!state.done) {
    const Action a = boltzmann_select(table_.row(s), schedule_.current(), rng_);
    StepResult result = step(std::move(state), a, world);
    state = std::move(result.state);
    last = result.transition;
    const StateIndex s_next = encode(rep, state.agent, static_cast<int>(state.remaining.size()),
                                     last.picked_flag, Phase::Training);
    const bool terminal = last.reached_goal || (last.timed_out && config_.timeout_terminal_bootstrap);
    q_update(table_, s, a, last.reward, s_next, terminal, config_.params);
    s = s_next;
    if (per_action) schedule_.advance(1);
  }
  if (!per_action) schedule_.advance(1);
  ++episodes_done_;

  EpisodeTrace trace;
  trace.steps = state.steps;
  trace.flags_collected = state.flags_collected;
  trace.reached_goal = last.reached_goal;
  trace.discounted_reward =
      episode_return(state.steps, state.flags_collected, last.reached_goal, config_.params.gamma);
  trace.temperature = schedule_.current();
  return trace;
}

RunRecord train_run(const ExperimentConfig& config, std::uint64_t seed) {
  Trainer trainer(config, seed);
  RunRecord record;
  record.seed = seed;
  record.series = EntropySeries(config.qtable_dims().channels);
  record.trace.reserve(static_cast<std::size_t>(config.episodes));
  for (int e = 0; e < config.episodes; ++e) {
    record.trace.push_back(trainer.run_episode());
    record.series.append(channel_entropies(trainer.table(), config.histogram, config.entropy_values));
    if (config.snapshot_stride > 0 && e % config.snapshot_stride == 0) {
      record.snapshots.emplace(e, trainer.table());
    }
  }
  record.points = stopping_points(record.series, config.include_channel0);
  record.final_table = trainer.table();
  return record;
}

std::map<int, QTable> replay_tables(const ExperimentConfig& config, std::uint64_t seed,
                                    const std::vector<int>& episodes) {
  std::set<int> wanted(episodes.begin(), episodes.end());
  std::map<int, QTable> out;
  if (wanted.empty()) return out;
  if (*wanted.begin() < 0 || *wanted.rbegin() >= config.episodes) {
    throw UsageError("replay episode outside [0, " + std::to_string(config.episodes) + ")");
  }
  Trainer trainer(config, seed);
  for (int e = 0; e <= *wanted.rbegin(); ++e) {
    trainer.run_episode();
    if (wanted.contains(e)) out.emplace(e, trainer.table());
  }
  return out;
}

QTable replay_to(const ExperimentConfig& config, std::uint64_t seed, int episode) {
  return std::move(replay_tables(config, seed, {episode}).at(episode));
}

TestOutcome run_test_episode(const QTable& table, const ExperimentConfig& config,
                             RandomStream& rng) {
  const WorldConfig& world = config.world;
  const Representation& rep = config.representation;
  const FlagLayout layout{flag_zone(world)};
  const int all_flags = static_cast<int>(layout.flags.size());

  WorldState state = initial_state(world, layout);
  StateIndex s = encode(rep, state.agent, all_flags, false, Phase::Testing);
  bool reached_goal = false;
  while (!state.done) {
    const Action a = boltzmann_select(table.row(s), config.test_temperature, rng);
    StepResult result = step(std::move(state), a, world);
    state = std::move(result.state);
    reached_goal = result.transition.reached_goal;
    s = encode(rep, state.agent, static_cast<int>(state.remaining.size()),
               result.transition.picked_flag, Phase::Testing);
  }
  TestOutcome out;
  out.steps = state.steps;
  out.flags_collected = state.flags_collected;
  out.reached_goal = reached_goal;
  out.success = reached_goal && state.flags_collected == all_flags;
  out.discounted_reward =
      episode_return(state.steps, state.flags_collected, reached_goal, config.params.gamma);
  return out;
}

TestStats run_tests(const QTable& table, const ExperimentConfig& config, RandomStream& rng) {
  if (table.dims() != config.qtable_dims()) throw UsageError("Q-table does not match the representation");
  RunningStats reward;
  RunningStats flags;
  RunningStats steps;
  TestStats stats;
  for (int i = 0; i < config.n_tests; ++i) {
    const TestOutcome t = run_test_episode(table, config, rng);
    reward.add(t.discounted_reward);
    flags.add(t.flags_collected);
    if (t.success) {
      ++stats.successes;
      steps.add(t.steps);
    }
  }
  stats.tests = static_cast<std::size_t>(config.n_tests);
  stats.discounted_reward = reward.summary();
  stats.flags_collected = flags.summary();
  stats.steps_successful = steps.summary();
  stats.success_rate = static_cast<double>(stats.successes) / static_cast<double>(stats.tests);
  return stats;
}

std::string to_string(TestingTime time) {
  switch (time) {
    case TestingTime::Earliest: return "t_earliest";
    case TestingTime::Latest: return "t_latest";
    case TestingTime::Max: return "t_max";
    case TestingTime::Final: return "t_final";
  }
  return "?";
}

TestingTime parse_testing_time(const std::string& name) {
  for (TestingTime t : kTestingTimes) {
    if (to_string(t) == name || to_string(t).substr(2) == name) return t;
  }
  throw UsageError("unknown testing time '" + name + "'");
}

int episode_at(const StoppingPoints& points, TestingTime time) {
  switch (time) {
    case TestingTime::Earliest: return points.t_earliest;
    case TestingTime::Latest: return points.t_latest;
    case TestingTime::Max: return points.t_max;
    case TestingTime::Final: return points.t_final;
  }
  return points.t_final;
}

RunOutcome workflow_run(const ExperimentConfig& config, std::uint64_t seed, bool keep_tables) {
  RunRecord record = train_run(config, seed);
  RunOutcome out;
  out.seed = seed;
  out.points = record.points;

  std::vector<int> early;
  for (TestingTime time : kTestingTimes) {
    const int e = episode_at(record.points, time);
    if (e != record.points.t_final) early.push_back(e);
  }
  std::map<int, QTable> tables = replay_tables(config, seed, early);
  tables.emplace(record.points.t_final, std::move(record.final_table));

  for (TestingTime time : kTestingTimes) {
    const auto i = static_cast<std::size_t>(time);
    const QTable& table = tables.at(episode_at(record.points, time));
    // Every testing time sees the same test stream.
    RandomStream test_rng(seed, streams::kTesting);
    out.tests[i] = run_tests(table, config, test_rng);
    if (keep_tables) out.tables[i] = table;
  }
  out.series = std::move(record.series);
  out.trace = std::move(record.trace);
  return out;
}

AggregateStats aggregate(const std::vector<RunOutcome>& runs, TestingTime time) {
  AggregateStats agg;
  std::vector<double> rates;
  for (const RunOutcome& run : runs) {
    const TestStats& t = run.tests[static_cast<std::size_t>(time)];
    agg.discounted_reward = combine(agg.discounted_reward, t.discounted_reward);
    agg.flags_collected = combine(agg.flags_collected, t.flags_collected);
    agg.steps_successful = combine(agg.steps_successful, t.steps_successful);
    rates.push_back(t.success_rate);
  }
  if (!rates.empty()) agg.success_rate = summarize(rates);
  return agg;
}

WorkflowReport full_workflow(const ExperimentConfig& config, unsigned threads, bool keep_tables) {
  config.validate();
  WorkflowReport report;
  report.runs.resize(static_cast<std::size_t>(config.n_runs));
  parallel_for(report.runs.size(), threads, [&](std::size_t i) {
    report.runs[i] = workflow_run(config, run_seed(config.master_seed, i), keep_tables);
  });
  for (TestingTime time : kTestingTimes) {
    report.aggregate[static_cast<std::size_t>(time)] = aggregate(report.runs, time);
  }
  return report;
}

std::vector<RunRecord> entropy_runs(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  std::vector<RunRecord> records(static_cast<std::size_t>(config.n_runs));
  parallel_for(records.size(), threads, [&](std::size_t i) {
    records[i] = train_run(config, run_seed(config.master_seed, i));
  });
  return records;
}

}  // namespace deqt
