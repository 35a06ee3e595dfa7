#include "deqt/qlearn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "deqt/error.hpp"

namespace deqt {

QTable::QTable(QTableDims dims, double fill) : dims_(dims), values_(dims.size(), fill) {}

std::size_t QTable::offset(int x, int y, int channel) const {
  return ((static_cast<std::size_t>(channel) * dims_.width + x) * dims_.height + y) * dims_.actions;
}

void QTable::check(const StateIndex& s) const {
  if (s.x < 0 || s.x >= dims_.width || s.y < 0 || s.y >= dims_.height || s.channel < 0 ||
      s.channel >= dims_.channels) {
    throw UsageError("state index (" + std::to_string(s.x) + ", " + std::to_string(s.y) + ", " +
                     std::to_string(s.channel) + ") outside the Q-table");
  }
}

double& QTable::at(int x, int y, int channel, int action) {
  check({x, y, channel});
  if (action < 0 || action >= dims_.actions) throw UsageError("action index outside the Q-table");
  return values_[offset(x, y, channel) + static_cast<std::size_t>(action)];
}

double QTable::at(int x, int y, int channel, int action) const {
  return const_cast<QTable&>(*this).at(x, y, channel, action);
}

std::span<double> QTable::row(const StateIndex& s) {
  check(s);
  return {values_.data() + offset(s.x, s.y, s.channel), static_cast<std::size_t>(dims_.actions)};
}

std::span<const double> QTable::row(const StateIndex& s) const {
  check(s);
  return {values_.data() + offset(s.x, s.y, s.channel), static_cast<std::size_t>(dims_.actions)};
}

std::span<const double> QTable::channel_slice(int channel) const {
  if (channel < 0 || channel >= dims_.channels) throw UsageError("channel outside the Q-table");
  const std::size_t len = static_cast<std::size_t>(dims_.width) * dims_.height * dims_.actions;
  return {values_.data() + static_cast<std::size_t>(channel) * len, len};
}

void LearningParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in [0, 1)");
  if (!std::isfinite(q_init)) throw ConfigError("q_init must be finite");
}

QTable init_qtable(QTableDims dims, double q_init) {
  if (dims.width < 1 || dims.height < 1 || dims.channels < 1 || dims.actions < 1) {
    throw ConfigError("Q-table dimensions must all be >= 1");
  }
  return QTable(dims, q_init);
}

namespace {

void check_temperature(double temperature) {
  if (!(temperature > 0.0)) throw UsageError("temperature must be positive");
}

// Writes unnormalized weights exp((q - max) / T) into out and returns their sum.
double softmax_weights(std::span<const double> qrow, double temperature, std::span<double> out) {
  const double top = *std::max_element(qrow.begin(), qrow.end());
  double total = 0.0;
  for (std::size_t i = 0; i < qrow.size(); ++i) {
    out[i] = std::exp((qrow[i] - top) / temperature);
    total += out[i];
  }
  return total;
}

}  // namespace

std::vector<double> boltzmann_probabilities(std::span<const double> qrow, double temperature) {
  check_temperature(temperature);
  if (qrow.empty()) throw UsageError("empty action-value row");
  std::vector<double> p(qrow.size());
  const double total = softmax_weights(qrow, temperature, p);
  for (double& v : p) v /= total;
  return p;
}

std::size_t boltzmann_select_index(std::span<const double> qrow, double temperature,
                                   RandomStream& rng) {
  check_temperature(temperature);
  if (qrow.empty()) throw UsageError("empty action-value row");
  std::array<double, 8> small{};
  std::vector<double> large;
  std::span<double> weights;
  if (qrow.size() <= small.size()) {
    weights = std::span<double>(small.data(), qrow.size());
  } else {
    large.resize(qrow.size());
    weights = large;
  }
  const double total = softmax_weights(qrow, temperature, weights);
  const double target = rng.uniform() * total;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (target < cumulative) return i;
  }
  return weights.size() - 1;
}

Action boltzmann_select(std::span<const double> qrow, double temperature, RandomStream& rng) {
  if (qrow.size() != kActionCount) throw UsageError("expected one value per action");
  return kActions[boltzmann_select_index(qrow, temperature, rng)];
}

double q_update(QTable& table, const StateIndex& s, Action a, double reward,
                const StateIndex& s_next, bool terminal, const LearningParams& params) {
  double bootstrap = 0.0;
  if (!terminal) {
    const auto next = table.row(s_next);
    bootstrap = params.gamma * *std::max_element(next.begin(), next.end());
  }
  double& q = table.row(s)[static_cast<std::size_t>(a)];
  q += params.alpha * (reward + bootstrap - q);
  return q;
}

TemperatureSchedule::TemperatureSchedule(double t0, double decay, std::uint64_t update_every,
                                         double t_min)
    : decay_(decay), update_every_(update_every), t_min_(t_min), current_(std::max(t0, t_min)) {
  if (!(t_min > 0.0)) throw ConfigError("minimum temperature must be positive");
  if (!(t0 > 0.0)) throw ConfigError("initial temperature must be positive");
  if (!(decay > 0.0 && decay <= 1.0)) throw ConfigError("temperature decay must lie in (0, 1]");
  if (update_every == 0) throw ConfigError("temperature update interval must be >= 1");
}

void TemperatureSchedule::advance(std::uint64_t ticks) {
  since_update_ += ticks;
  while (since_update_ >= update_every_) {
    since_update_ -= update_every_;
    current_ = std::max(t_min_, current_ * decay_);
    ++updates_;
  }
}

TemperatureSchedule temperature_step(TemperatureSchedule schedule, std::uint64_t ticks) {
  schedule.advance(ticks);
  return schedule;
}

}  // namespace deqt
