#include "deqt/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "deqt/error.hpp"

namespace deqt {

double histogram_entropy(std::span<const double> values, const HistogramSpec& spec) {
  if (values.empty()) throw UsageError("histogram_entropy: empty sample");
  if (spec.n_bins < 1) throw ConfigError("histogram needs at least one bin");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw UsageError("histogram_entropy: non-finite sample");
  if (hi == lo) return spec.degenerate_floor;

  const auto bins = static_cast<std::size_t>(spec.n_bins);
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::size_t> counts(bins, 0);
  for (double v : values) {
    auto i = static_cast<std::size_t>((v - lo) / width);
    ++counts[std::min(i, bins - 1)];
  }

  const double total = static_cast<double>(values.size());
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log(p / width);
  }
  return h;
}

std::vector<double> channel_entropies(const QTable& table, const HistogramSpec& spec,
                                      EntropyValues mode) {
  const QTableDims& d = table.dims();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(d.channels));
  std::vector<double> maxima;
  for (int c = 0; c < d.channels; ++c) {
    const auto slice = table.channel_slice(c);
    if (mode == EntropyValues::StateAction) {
      out.push_back(histogram_entropy(slice, spec));
      continue;
    }
    maxima.clear();
    const auto actions = static_cast<std::size_t>(d.actions);
    for (std::size_t i = 0; i < slice.size(); i += actions) {
      maxima.push_back(*std::max_element(slice.begin() + static_cast<std::ptrdiff_t>(i),
                                         slice.begin() + static_cast<std::ptrdiff_t>(i + actions)));
    }
    out.push_back(histogram_entropy(maxima, spec));
  }
  return out;
}

void EntropySeries::append(std::span<const double> values) {
  if (values.size() != channels_.size()) throw UsageError("entropy row has the wrong channel count");
  double total = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    channels_[k].push_back(values[k]);
    total += values[k];
  }
  sum_.push_back(total);
}

int first_argmax(std::span<const double> values) {
  if (values.empty()) throw UsageError("argmax of an empty series");
  return static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
}

StoppingPoints stopping_points(const EntropySeries& series, bool include_channel0) {
  if (series.episodes() < 1) throw UsageError("stopping_points: empty series");
  const int first = (include_channel0 || series.channel_count() == 1) ? 0 : 1;
  StoppingPoints points;
  points.t_earliest = series.episodes();
  points.t_latest = -1;
  for (int k = first; k < series.channel_count(); ++k) {
    const int peak = first_argmax(series.channel(k));
    points.t_earliest = std::min(points.t_earliest, peak);
    points.t_latest = std::max(points.t_latest, peak);
  }
  points.t_max = first_argmax(series.sum());
  points.t_final = series.episodes() - 1;
  return points;
}

}  // namespace deqt
