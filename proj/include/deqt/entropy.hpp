#pragma once

#include <span>
#include <vector>

#include "deqt/qlearn.hpp"

namespace deqt {

struct HistogramSpec {
  int n_bins = 100;
  /// Returned for a zero-range sample, where the estimator is undefined.
  double degenerate_floor = -20.0;
};

/// Which values of a channel slice enter its histogram.
enum class EntropyValues {
  StateAction,  ///< all W*H*A action values
  StateMax,     ///< one max over actions per (x, y)
};

/// Histogram estimate of differential entropy in nats.
///
/// The range [min, max] of the sample is split into n_bins equal bins of
/// width w, and with p_i the fraction of samples in bin i the result is
/// -sum p_i ln(p_i / w) over occupied bins.
double histogram_entropy(std::span<const double> values, const HistogramSpec& spec);

/// One entropy per flag channel of the table.
std::vector<double> channel_entropies(const QTable& table, const HistogramSpec& spec,
                                      EntropyValues mode = EntropyValues::StateAction);

/// Per-channel entropy over episodes, plus the per-episode channel sum.
class EntropySeries {
 public:
  EntropySeries() = default;
  explicit EntropySeries(int channels) : channels_(static_cast<std::size_t>(channels)) {}

  void append(std::span<const double> values);

  int channel_count() const { return static_cast<int>(channels_.size()); }
  int episodes() const { return static_cast<int>(sum_.size()); }
  const std::vector<double>& channel(int k) const { return channels_.at(static_cast<std::size_t>(k)); }
  const std::vector<double>& sum() const { return sum_; }

  friend bool operator==(const EntropySeries&, const EntropySeries&) = default;

 private:
  std::vector<std::vector<double>> channels_;
  std::vector<double> sum_;
};

struct StoppingPoints {
  int t_earliest = 0;
  int t_latest = 0;
  int t_max = 0;
  int t_final = 0;

  friend bool operator==(const StoppingPoints&, const StoppingPoints&) = default;
};

/// Index of the first maximum.
int first_argmax(std::span<const double> values);

/// Earliest and latest per-channel peak episodes, the peak of the sum series
/// and the last episode. With include_channel0 false the all-collected channel
/// does not take part in the earliest/latest choice.
StoppingPoints stopping_points(const EntropySeries& series, bool include_channel0 = true);

}  // namespace deqt
