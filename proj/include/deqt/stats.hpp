#pragma once

#include <cstddef>
#include <span>

namespace deqt {

/// Count, mean and sample standard deviation (n - 1 denominator; 0 when n = 1).
struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;

  bool has_spread() const { return n >= 2; }
};

SampleSummary summarize(std::span<const double> samples);

/// Summary of the union of two samples.
SampleSummary combine(const SampleSummary& a, const SampleSummary& b);

/// Streaming mean/variance (Welford).
class RunningStats {
 public:
  void add(double x);
  std::size_t count() const { return n_; }
  SampleSummary summary() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct TTestResult {
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
  bool significant = false;
};

/// Regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double df);

/// Two-sided Welch unequal-variance t-test.
TTestResult welch_t_test(const SampleSummary& a, const SampleSummary& b, double alpha = 0.05);

}  // namespace deqt
