#pragma once

#include <string>
#include <vector>

#include "deqt/io.hpp"
#include "deqt/stats.hpp"

namespace deqt {

/// Larger is better for every metric except steps_successful.
bool higher_is_better(const std::string& metric);

/// Plain-text setup-by-metric table, one block per testing time. An entry is
/// wrapped in `*...*` when a Welch test finds it significantly better than the
/// same setup/metric at `reference_time`; entries at the reference time are
/// tested against `contrast_time` instead.
std::string summary_table(const std::vector<StatsRow>& rows, const std::string& reference_time = "t_final",
                          const std::string& contrast_time = "t_max", double alpha = 0.05);

/// Restricts which rows of a stats table take part in a comparison. Empty
/// fields match everything.
struct RowSelector {
  std::string setup;
  std::string testing_time;
};

struct Comparison {
  StatsRow a;
  StatsRow b;
  /// False when either side has fewer than two samples.
  bool testable = false;
  TTestResult test;
  /// "a", "b" or "" when not significant.
  std::string better;
};

/// Welch tests between matching rows of two stats tables. Rows are paired by
/// metric, plus by setup and testing time for whichever of those the selectors
/// leave open. Throws UsageError when nothing pairs up or a pairing is ambiguous.
std::vector<Comparison> compare_stats(const std::vector<StatsRow>& a, const std::vector<StatsRow>& b,
                                      const RowSelector& select_a, const RowSelector& select_b,
                                      double alpha = 0.05);

std::string format_comparisons(const std::vector<Comparison>& comparisons);

}  // namespace deqt
