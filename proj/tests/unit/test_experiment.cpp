#include <gtest/gtest.h>

#include <cmath>

#include "deqt/config.hpp"
#include "deqt/error.hpp"
#include "deqt/experiment.hpp"

using namespace deqt;

namespace {

ExperimentConfig short_config(const std::string& setup, int episodes) {
  ExperimentConfig c = preset(setup);
  c.episodes = episodes;
  c.n_tests = 50;
  c.n_runs = 2;
  return c;
}

// 3x3 world, goal at (2,2), flags at (1,1), (2,1), (1,2).
ExperimentConfig mini_world() {
  ExperimentConfig c;
  c.world.width = 3;
  c.world.height = 3;
  c.world.start = {0, 0};
  c.world.goal = {2, 2};
  c.world.flag_zone_radius = 1;
  c.n_train_flags = 3;
  c.representation = Representation::global(3);
  c.n_tests = 100;
  return c;
}

}  // namespace

TEST(ExperimentConfig, Validation) {
  ExperimentConfig c = preset("Global-3-8");
  EXPECT_NO_THROW(c.validate());
  c.representation.n_train_flags = 4;
  EXPECT_THROW(c.validate(), ConfigError);
  c = preset("Compact");
  c.n_train_flags = 9;
  EXPECT_THROW(c.validate(), ConfigError);
  c = preset("Compact");
  c.episodes = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_EQ(preset("Global-8-8").qtable_dims(), (QTableDims{10, 10, 9, 4}));
}

TEST(TrainRun, SameSeedIsBitIdentical) {
  const auto c = short_config("Global-3-8", 300);
  const RunRecord a = train_run(c, 42);
  const RunRecord b = train_run(c, 42);
  EXPECT_EQ(a.series, b.series);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.final_table, b.final_table);
  EXPECT_EQ(a.points, b.points);
  const RunRecord other = train_run(c, 43);
  EXPECT_NE(a.final_table, other.final_table);
}

TEST(TrainRun, SingleEpisode) {
  const auto r = train_run(short_config("Global-8-8", 1), 1);
  EXPECT_EQ(r.series.episodes(), 1);
  EXPECT_EQ(r.series.channel_count(), 9);
  EXPECT_EQ(r.points, (StoppingPoints{0, 0, 0, 0}));
}

TEST(TrainRun, TemperatureCarriesAcrossEpisodes) {
  const auto r = train_run(short_config("Global-8-8", 50), 3);
  long actions = 0;
  for (const auto& t : r.trace) actions += t.steps;
  const double expected = std::max(0.1, 1000.0 * std::pow(0.99, static_cast<double>(actions / 1000)));
  EXPECT_NEAR(r.trace.back().temperature, expected, 1e-9 * expected);
  EXPECT_LT(r.trace.back().temperature, r.trace.front().temperature);
}

TEST(TrainRun, EpisodeTemperatureUnit) {
  auto c = short_config("Global-2-8", 20);
  c.schedule.unit = TemperatureUnit::Episodes;
  c.schedule.update_every = 10;
  const auto r = train_run(c, 3);
  EXPECT_DOUBLE_EQ(r.trace[8].temperature, 1000.0);
  EXPECT_DOUBLE_EQ(r.trace[9].temperature, 990.0);
  EXPECT_DOUBLE_EQ(r.trace[19].temperature, 1000.0 * 0.99 * 0.99);
}

TEST(TrainRun, TraceRewardsFollowReturnModel) {
  const auto r = train_run(short_config("Global-4-8", 200), 11);
  for (const auto& t : r.trace) {
    EXPECT_EQ(t.discounted_reward, episode_return(t.steps, t.flags_collected, t.reached_goal, 0.999));
    EXPECT_LE(t.steps, 1000);
    EXPECT_LE(t.flags_collected, 4);
  }
}

TEST(Replay, FinalAndFirstEpisode) {
  const auto c = short_config("Global-2-8", 120);
  const RunRecord r = train_run(c, 9);
  EXPECT_EQ(replay_to(c, 9, c.episodes - 1), r.final_table);

  Trainer trainer(c, 9);
  trainer.run_episode();
  EXPECT_EQ(replay_to(c, 9, 0), trainer.table());
}

TEST(Replay, MatchesSnapshotCache) {
  auto c = short_config("Local-8-8", 150);
  c.snapshot_stride = 25;
  const RunRecord r = train_run(c, 21);
  ASSERT_EQ(r.snapshots.size(), 6u);
  std::vector<int> episodes;
  for (const auto& [e, table] : r.snapshots) episodes.push_back(e);
  const auto replayed = replay_tables(c, 21, episodes);
  for (const auto& [e, table] : r.snapshots) EXPECT_EQ(replayed.at(e), table) << e;
}

TEST(Replay, OutOfRangeRejected) {
  const auto c = short_config("Global-1-8", 10);
  EXPECT_THROW(replay_to(c, 1, 10), UsageError);
  EXPECT_THROW(replay_to(c, 1, -1), UsageError);
}

TEST(RunTests, HandBuiltSweepAlwaysSucceeds) {
  const ExperimentConfig c = mini_world();
  ASSERT_NO_THROW(c.validate());
  QTable t = init_qtable(c.qtable_dims(), 0.0);
  // Right, Right, Down, Left, Down, Right through every flag to the goal.
  t.at(0, 0, 3, static_cast<int>(Action::Right)) = 10.0;
  t.at(1, 0, 3, static_cast<int>(Action::Right)) = 10.0;
  t.at(2, 0, 3, static_cast<int>(Action::Down)) = 10.0;
  t.at(2, 1, 2, static_cast<int>(Action::Left)) = 10.0;
  t.at(1, 1, 1, static_cast<int>(Action::Down)) = 10.0;
  t.at(1, 2, 0, static_cast<int>(Action::Right)) = 10.0;
  RandomStream rng(5);
  const TestStats s = run_tests(t, c, rng);
  EXPECT_EQ(s.success_rate, 1.0);
  EXPECT_EQ(s.steps_successful.mean, 6.0);
  EXPECT_EQ(s.steps_successful.std, 0.0);
  EXPECT_EQ(s.flags_collected.mean, 3.0);
  EXPECT_EQ(s.discounted_reward.mean, 3.0 * std::pow(0.999, 6));
}

TEST(RunTests, UntrainedTableMatchesRandomWalkBaseline) {
  ExperimentConfig c = preset("Global-8-8");
  c.n_tests = 1000;
  const QTable t = init_qtable(c.qtable_dims(), c.params.q_init);
  RandomStream rng(77);
  const TestStats s = run_tests(t, c, rng);
  // A uniform table is a pure random walk. An independent 20,000-walk Monte
  // Carlo simulation of the same task gives a success rate of 0.191.
  EXPECT_NEAR(s.success_rate, 0.191, 0.03);
  EXPECT_LT(s.success_rate, 0.5);
}

TEST(RunTests, NoLearningAndConsistentCounts) {
  auto c = short_config("Global-8-8", 400);
  c.n_tests = 200;
  const RunRecord r = train_run(c, 5);
  const QTable before = r.final_table;
  RandomStream rng(1, streams::kTesting);
  const TestStats s = run_tests(r.final_table, c, rng);
  EXPECT_EQ(r.final_table, before);
  const double successes = s.success_rate * c.n_tests;
  EXPECT_EQ(successes, std::round(successes));
  EXPECT_EQ(s.steps_successful.n, s.successes);
  EXPECT_GE(s.flags_collected.mean + 1e-12, 8.0 * s.success_rate);
  EXPECT_LE(s.success_rate, 1.0);

  RandomStream episode_rng(2, streams::kTesting);
  for (int i = 0; i < 200; ++i) {
    const TestOutcome t = run_test_episode(r.final_table, c, episode_rng);
    if (t.success) {
      EXPECT_EQ(t.discounted_reward, std::pow(0.999, t.steps) * 8.0);
      EXPECT_EQ(t.flags_collected, 8);
    }
  }
}

TEST(RunTests, WrongShapeRejected) {
  const auto c = preset("Global-8-8");
  const QTable t = init_qtable({10, 10, 3, 4}, 0.1);
  RandomStream rng(1);
  EXPECT_THROW(run_tests(t, c, rng), UsageError);
}

TEST(Workflow, SingleEpisodeTimesCoincide) {
  auto c = short_config("Global-8-8", 1);
  c.n_runs = 1;
  const WorkflowReport report = full_workflow(c, 1);
  ASSERT_EQ(report.runs.size(), 1u);
  const auto& tests = report.runs[0].tests;
  for (std::size_t i = 1; i < tests.size(); ++i) {
    EXPECT_EQ(tests[i].success_rate, tests[0].success_rate);
    EXPECT_EQ(tests[i].discounted_reward.mean, tests[0].discounted_reward.mean);
    EXPECT_EQ(tests[i].flags_collected.mean, tests[0].flags_collected.mean);
    EXPECT_EQ(tests[i].steps_successful.n, tests[0].steps_successful.n);
  }
}

TEST(Workflow, ThreadCountDoesNotChangeResults) {
  auto c = short_config("Compact", 150);
  c.n_runs = 3;
  const WorkflowReport serial = full_workflow(c, 1, true);
  const WorkflowReport threaded = full_workflow(c, 3, true);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(serial.runs[i].seed, run_seed(c.master_seed, i));
    EXPECT_EQ(serial.runs[i].series, threaded.runs[i].series);
    EXPECT_EQ(serial.runs[i].points, threaded.runs[i].points);
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_EQ(serial.runs[i].tables[k], threaded.runs[i].tables[k]);
      EXPECT_EQ(serial.runs[i].tests[k].discounted_reward.mean, threaded.runs[i].tests[k].discounted_reward.mean);
    }
  }
  // Extracted tables are the replayed tables at the stopping points.
  const auto& run = serial.runs[1];
  EXPECT_EQ(run.tables[static_cast<std::size_t>(TestingTime::Max)],
            replay_to(c, run.seed, run.points.t_max));
}

TEST(Workflow, AggregatePoolsTests) {
  auto c = short_config("Global-8-8", 100);
  c.n_runs = 2;
  const WorkflowReport r = full_workflow(c, 1);
  const auto& agg = r.at(TestingTime::Final);
  EXPECT_EQ(agg.discounted_reward.n, 100u);
  EXPECT_EQ(agg.success_rate.n, 2u);
  EXPECT_EQ(agg.steps_successful.n, r.runs[0].tests[3].successes + r.runs[1].tests[3].successes);
}

TEST(TestingTime, Names) {
  for (TestingTime t : kTestingTimes) EXPECT_EQ(parse_testing_time(to_string(t)), t);
  EXPECT_EQ(parse_testing_time("max"), TestingTime::Max);
  EXPECT_THROW(parse_testing_time("t_10000"), UsageError);
}

TEST(TrainRun, GlobalOneEightEntropyDropsEarly) {
  auto c = preset("Global-1-8");
  c.episodes = 1000;
  const RunRecord r = train_run(c, c.master_seed);
  const auto& sum = r.series.sum();
  const int peak = first_argmax(sum);
  EXPECT_LT(peak, 1000);
  EXPECT_LT(sum.back(), sum[static_cast<std::size_t>(peak)] - 2.0);
}
