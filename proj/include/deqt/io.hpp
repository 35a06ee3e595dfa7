#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "deqt/entropy.hpp"
#include "deqt/experiment.hpp"
#include "deqt/qlearn.hpp"

namespace deqt {

// All CSV files: UTF-8, comma separated, header row, LF line endings.
// Floating-point fields use the shortest form that round-trips, capped at
// 17 significant digits.

std::string format_double(double value);
double parse_double(const std::string& text);

/// episode,channel_0,...,channel_{F-1},sum
void write_entropy_csv(std::ostream& out, const EntropySeries& series);
EntropySeries read_entropy_csv(std::istream& in);

struct StoppingPointsRow {
  int run = 0;
  std::uint64_t seed = 0;
  StoppingPoints points;
};

/// run,seed,t_earliest,t_latest,t_max,t_final
void write_stopping_points_csv(std::ostream& out, const std::vector<StoppingPointsRow>& rows);

struct StatsRow {
  std::string setup;
  std::string testing_time;
  std::string metric;
  double mean = 0.0;
  double std = 0.0;
  std::size_t n = 0;
};

inline const std::vector<std::string> kMetrics = {"discounted_reward", "flags_collected",
                                                  "success_rate", "steps_successful"};

/// setup,testing_time,metric,mean,std,n
void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows);
std::vector<StatsRow> read_stats_csv(std::istream& in);

std::vector<StatsRow> stats_rows(const std::string& setup, const WorkflowReport& report);

/// x,y,channel,action,value
void write_qtable_csv(std::ostream& out, const QTable& table);
QTable read_qtable_csv(std::istream& in);

/// Binary snapshot: 8-byte magic "DEQTQT01", four little-endian uint32 dims
/// (width, height, channels, actions), then the values as little-endian
/// IEEE-754 doubles in (x, y, channel, action) order, action fastest.
void write_qtable_binary(std::ostream& out, const QTable& table);
QTable read_qtable_binary(std::istream& in);

/// Opens a file for writing, creating parent directories. Throws IoError.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace deqt
