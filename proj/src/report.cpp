#include "deqt/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "deqt/error.hpp"

namespace deqt {

bool higher_is_better(const std::string& metric) { return metric != "steps_successful"; }

namespace {

SampleSummary as_summary(const StatsRow& r) { return SampleSummary{r.n, r.mean, r.std}; }

bool testable(const StatsRow& a, const StatsRow& b) { return a.n >= 2 && b.n >= 2; }

// Significantly better than the counterpart, in the metric's preferred direction.
bool significantly_better(const StatsRow& row, const StatsRow& other, double alpha) {
  if (!testable(row, other)) return false;
  const TTestResult t = welch_t_test(as_summary(row), as_summary(other), alpha);
  if (!t.significant) return false;
  return higher_is_better(row.metric) ? row.mean > other.mean : row.mean < other.mean;
}

std::string cell(const StatsRow& r, bool mark) {
  if (r.n == 0) return "-";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f+-%.2f", r.mean, r.std);
  return mark ? "*" + std::string(buf) + "*" : std::string(buf);
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string summary_table(const std::vector<StatsRow>& rows, const std::string& reference_time,
                          const std::string& contrast_time, double alpha) {
  using Key = std::tuple<std::string, std::string, std::string>;  // setup, time, metric
  std::map<Key, const StatsRow*> index;
  std::vector<std::string> setups;
  std::vector<std::string> times;
  for (const StatsRow& r : rows) {
    index[{r.setup, r.testing_time, r.metric}] = &r;
    if (std::find(setups.begin(), setups.end(), r.setup) == setups.end()) setups.push_back(r.setup);
    if (std::find(times.begin(), times.end(), r.testing_time) == times.end()) times.push_back(r.testing_time);
  }

  constexpr std::size_t kSetupWidth = 14;
  constexpr std::size_t kCellWidth = 20;
  std::ostringstream out;
  for (const std::string& time : times) {
    out << "== " << time << " ==\n" << pad("setup", kSetupWidth);
    for (const std::string& metric : kMetrics) out << pad(metric, kCellWidth);
    out << '\n';
    const std::string& counterpart_time = time == reference_time ? contrast_time : reference_time;
    for (const std::string& setup : setups) {
      out << pad(setup, kSetupWidth);
      for (const std::string& metric : kMetrics) {
        const auto it = index.find({setup, time, metric});
        if (it == index.end()) {
          out << pad("-", kCellWidth);
          continue;
        }
        const auto other = index.find({setup, counterpart_time, metric});
        const bool mark = other != index.end() && other->second != it->second &&
                          significantly_better(*it->second, *other->second, alpha);
        out << pad(cell(*it->second, mark), kCellWidth);
      }
      out << '\n';
    }
    out << '\n';
  }
  out << "* significantly better than the counterpart at " << reference_time << " (rows at "
      << reference_time << " are tested against " << contrast_time << "), Welch t-test, alpha = "
      << alpha << '\n';
  return out.str();
}

std::vector<Comparison> compare_stats(const std::vector<StatsRow>& a, const std::vector<StatsRow>& b,
                                      const RowSelector& select_a, const RowSelector& select_b,
                                      double alpha) {
  auto selected = [](const std::vector<StatsRow>& rows, const RowSelector& sel) {
    std::vector<const StatsRow*> out;
    for (const StatsRow& r : rows) {
      if (!sel.setup.empty() && r.setup != sel.setup) continue;
      if (!sel.testing_time.empty() && r.testing_time != sel.testing_time) continue;
      out.push_back(&r);
    }
    return out;
  };
  const bool match_setup = select_a.setup.empty() && select_b.setup.empty();
  const bool match_time = select_a.testing_time.empty() && select_b.testing_time.empty();
  auto key = [&](const StatsRow& r) {
    return std::make_tuple(match_setup ? r.setup : std::string(), match_time ? r.testing_time : std::string(),
                           r.metric);
  };

  std::map<std::tuple<std::string, std::string, std::string>, const StatsRow*> right;
  for (const StatsRow* r : selected(b, select_b)) {
    if (!right.emplace(key(*r), r).second) {
      throw UsageError("ambiguous rows for metric '" + r->metric + "' in the second table; select a setup or testing time");
    }
  }
  std::vector<Comparison> out;
  std::map<std::tuple<std::string, std::string, std::string>, bool> seen;
  for (const StatsRow* l : selected(a, select_a)) {
    if (!seen.emplace(key(*l), true).second) {
      throw UsageError("ambiguous rows for metric '" + l->metric + "' in the first table; select a setup or testing time");
    }
    const auto it = right.find(key(*l));
    if (it == right.end()) continue;
    Comparison c;
    c.a = *l;
    c.b = *it->second;
    c.testable = testable(c.a, c.b);
    if (c.testable) {
      c.test = welch_t_test(as_summary(c.a), as_summary(c.b), alpha);
      if (c.test.significant && c.a.mean != c.b.mean) {
        const bool a_higher = c.a.mean > c.b.mean;
        c.better = (a_higher == higher_is_better(c.a.metric)) ? "a" : "b";
      }
    }
    out.push_back(std::move(c));
  }
  if (out.empty()) throw UsageError("no matching metric rows between the two stats tables");
  return out;
}

std::string format_comparisons(const std::vector<Comparison>& comparisons) {
  std::ostringstream out;
  out << pad("metric", 20) << pad("a", 34) << pad("b", 34) << pad("t", 10) << pad("df", 10) << "p\n";
  for (const Comparison& c : comparisons) {
    const std::string la = c.a.setup + "@" + c.a.testing_time + " " + cell(c.a, c.better == "a");
    const std::string lb = c.b.setup + "@" + c.b.testing_time + " " + cell(c.b, c.better == "b");
    out << pad(c.a.metric, 20) << pad(la, 34) << pad(lb, 34);
    if (!c.testable) {
      out << "n/a (fewer than two samples)\n";
      continue;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%-10.4f%-10.2f%.4g", c.test.t_statistic, c.test.degrees_of_freedom,
                  c.test.p_value);
    out << buf << '\n';
  }
  return out.str();
}

}  // namespace deqt
