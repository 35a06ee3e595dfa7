#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "deqt/gridworld.hpp"
#include "deqt/representation.hpp"
#include "deqt/rng.hpp"

namespace deqt {

struct QTableDims {
  int width = 0;
  int height = 0;
  int channels = 0;
  int actions = static_cast<int>(kActionCount);

  std::size_t size() const {
    return static_cast<std::size_t>(width) * height * channels * actions;
  }
  friend bool operator==(const QTableDims&, const QTableDims&) = default;
};

/// Tabular action values over (x, y, channel, action).
///
/// Storage is channel-major so each flag channel is one contiguous slice;
/// within a slice the order is x, y, action.
class QTable {
 public:
  QTable() = default;
  QTable(QTableDims dims, double fill);

  const QTableDims& dims() const { return dims_; }

  double& at(int x, int y, int channel, int action);
  double at(int x, int y, int channel, int action) const;

  std::span<double> row(const StateIndex& s);
  std::span<const double> row(const StateIndex& s) const;

  /// All W*H*A values of one flag channel.
  std::span<const double> channel_slice(int channel) const;

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::size_t offset(int x, int y, int channel) const;
  void check(const StateIndex& s) const;

  QTableDims dims_;
  std::vector<double> values_;
};

struct LearningParams {
  double alpha = 0.1;
  double gamma = 0.999;
  double q_init = 0.1;

  void validate() const;
};

/// Table with every entry equal to q_init. Throws ConfigError on a zero dimension.
QTable init_qtable(QTableDims dims, double q_init);

/// Softmax of q / temperature, computed after subtracting the row maximum.
std::vector<double> boltzmann_probabilities(std::span<const double> qrow, double temperature);

/// Index sampled from boltzmann_probabilities with one uniform draw.
std::size_t boltzmann_select_index(std::span<const double> qrow, double temperature,
                                   RandomStream& rng);

Action boltzmann_select(std::span<const double> qrow, double temperature, RandomStream& rng);

/// One-step Watkins update of Q(s, a). Returns the new value.
double q_update(QTable& table, const StateIndex& s, Action a, double reward,
                const StateIndex& s_next, bool terminal, const LearningParams& params);

/// Multiplicative temperature decay applied once per `update_every` ticks,
/// floored at t_min. What a tick counts (actions or episodes) is up to the caller.
class TemperatureSchedule {
 public:
  TemperatureSchedule() = default;
  TemperatureSchedule(double t0, double decay, std::uint64_t update_every, double t_min);

  double current() const { return current_; }
  std::uint64_t updates() const { return updates_; }
  std::uint64_t ticks_since_update() const { return since_update_; }

  void advance(std::uint64_t ticks);

 private:
  double decay_ = 0.99;
  std::uint64_t update_every_ = 1000;
  double t_min_ = 0.1;
  double current_ = 1000.0;
  std::uint64_t since_update_ = 0;
  std::uint64_t updates_ = 0;
};

TemperatureSchedule temperature_step(TemperatureSchedule schedule, std::uint64_t ticks);

}  // namespace deqt
