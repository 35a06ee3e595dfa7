#include <gtest/gtest.h>

#include <sstream>

#include "deqt/config.hpp"
#include "deqt/error.hpp"
#include "deqt/report.hpp"

using namespace deqt;

TEST(Presets, TableDefaults) {
  const ExperimentConfig c = preset("Global-8-8");
  EXPECT_EQ(c.params.alpha, 0.1);
  EXPECT_EQ(c.params.gamma, 0.999);
  EXPECT_EQ(c.params.q_init, 0.1);
  EXPECT_EQ(c.schedule.t0, 1000.0);
  EXPECT_EQ(c.schedule.decay, 0.99);
  EXPECT_EQ(c.schedule.update_every, 1000u);
  EXPECT_EQ(c.schedule.t_min, 0.1);
  EXPECT_EQ(c.episodes, 10000);
  EXPECT_EQ(c.n_tests, 1000);
  EXPECT_EQ(c.test_temperature, 0.1);
  EXPECT_EQ(c.n_runs, 30);
  EXPECT_EQ(c.world.max_steps, 1000);
  EXPECT_EQ(c.world.goal, (Position{9, 9}));
}

TEST(Presets, Representations) {
  EXPECT_EQ(setup_names().size(), 11u);
  for (int n = 1; n <= 8; ++n) {
    const auto c = preset("Global-" + std::to_string(n) + "-8");
    EXPECT_EQ(c.n_train_flags, n);
    EXPECT_EQ(channel_count(c.representation), n + 1);
  }
  const auto compact = preset("Compact");
  EXPECT_EQ(channel_count(compact.representation), 3);
  EXPECT_EQ(compact.n_train_flags, 8);
  const auto local1 = preset("Local-1-8");
  EXPECT_EQ(channel_count(local1.representation), 2);
  EXPECT_EQ(local1.n_train_flags, 1);
  EXPECT_EQ(preset("Local-8-8").n_train_flags, 8);
  EXPECT_THROW(preset("Global-9-8"), UsageError);
  EXPECT_THROW(preset("Maze"), UsageError);
}

TEST(Overrides, ApplyAndReject) {
  ExperimentConfig c = preset("Global-2-8");
  apply_override(c, "episodes", "500");
  apply_override(c, "n_train_flags", "5");
  apply_override(c, "temperature_unit", "episodes");
  apply_override(c, "include_channel0", "false");
  EXPECT_EQ(c.episodes, 500);
  EXPECT_EQ(c.representation.n_train_flags, 5);
  EXPECT_EQ(c.schedule.unit, TemperatureUnit::Episodes);
  EXPECT_FALSE(c.include_channel0);
  EXPECT_THROW(apply_override(c, "epsilon", "0.1"), UsageError);
  EXPECT_THROW(apply_override(c, "episodes", "many"), UsageError);
  EXPECT_THROW(apply_override(c, "include_channel0", "maybe"), UsageError);
  EXPECT_THROW(split_assignment("episodes"), UsageError);
  EXPECT_EQ(split_assignment(" bins = 50 ").second, "50");
}

TEST(Overrides, ConfigEchoReproducesConfig) {
  ExperimentConfig c = preset("Local-8-8");
  apply_override(c, "seed", "123456789");
  apply_override(c, "alpha", "0.37");
  apply_override(c, "entropy_values", "state_max");
  apply_override(c, "width", "12");

  std::istringstream echo("# resolved\n" + format_config(c));
  ExperimentConfig back = preset("Global-1-8");
  apply_config_stream(back, echo);
  EXPECT_EQ(to_key_values(back), to_key_values(c));
  EXPECT_EQ(back.world.goal, (Position{11, 9}));
  EXPECT_EQ(back.representation.type, RepresentationType::Local);
}

namespace {

std::vector<StatsRow> table_rows() {
  return {
      {"Global-1-8", "t_max", "discounted_reward", 6.60, 0.77, 30},
      {"Global-1-8", "t_max", "steps_successful", 177.25, 93.21, 30},
      {"Global-1-8", "t_final", "discounted_reward", 3.25, 2.45, 30},
      {"Global-1-8", "t_final", "steps_successful", 537.43, 245.32, 30},
  };
}

}  // namespace

TEST(Compare, SelfComparisonIsNeverSignificant) {
  const auto rows = table_rows();
  const auto result = compare_stats(rows, rows, {}, {}, 0.05);
  ASSERT_EQ(result.size(), 4u);
  for (const auto& c : result) {
    EXPECT_NEAR(c.test.p_value, 1.0, 1e-12);
    EXPECT_EQ(c.better, "");
  }
}

TEST(Compare, EarlyStoppingRewardIsSignificant) {
  const auto rows = table_rows();
  const auto result = compare_stats(rows, rows, {"", "t_max"}, {"", "t_final"}, 0.05);
  ASSERT_EQ(result.size(), 2u);
  for (const auto& c : result) {
    EXPECT_TRUE(c.test.significant);
    EXPECT_EQ(c.better, "a");  // higher reward, fewer steps
  }
  EXPECT_NE(format_comparisons(result).find("*6.60+-0.77*"), std::string::npos);
}

TEST(Compare, NoOverlapRejected) {
  const std::vector<StatsRow> a = {{"X", "t_max", "discounted_reward", 1, 1, 5}};
  const std::vector<StatsRow> b = {{"X", "t_max", "success_rate", 1, 1, 5}};
  EXPECT_THROW(compare_stats(a, b, {}, {}, 0.05), UsageError);
}

TEST(SummaryTable, MarksSignificantEntries) {
  const std::string text = summary_table(table_rows());
  EXPECT_NE(text.find("== t_max =="), std::string::npos);
  EXPECT_NE(text.find("*6.60+-0.77*"), std::string::npos);
  EXPECT_NE(text.find("*177.25+-93.21*"), std::string::npos);
  EXPECT_NE(text.find(" 3.25+-2.45"), std::string::npos);
  EXPECT_EQ(text.find("*3.25"), std::string::npos);
}
