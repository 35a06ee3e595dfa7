#include "deqt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "deqt/error.hpp"

namespace deqt {

SampleSummary summarize(std::span<const double> samples) {
  if (samples.empty()) throw UsageError("summarize: empty sample");
  RunningStats acc;
  for (double x : samples) acc.add(x);
  return acc.summary();
}

SampleSummary combine(const SampleSummary& a, const SampleSummary& b) {
  if (a.n == 0) return b;
  if (b.n == 0) return a;
  const double na = static_cast<double>(a.n);
  const double nb = static_cast<double>(b.n);
  const double n = na + nb;
  const double delta = b.mean - a.mean;
  const double m2 = a.std * a.std * (na - 1.0) + b.std * b.std * (nb - 1.0) + delta * delta * na * nb / n;
  SampleSummary out;
  out.n = a.n + b.n;
  out.mean = a.mean + delta * nb / n;
  out.std = std::sqrt(m2 / (n - 1.0));
  return out;
}

void RunningStats::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

SampleSummary RunningStats::summary() const {
  SampleSummary s;
  s.n = n_;
  s.mean = mean_;
  s.std = n_ >= 2 ? std::sqrt(m2_ / static_cast<double>(n_ - 1)) : 0.0;
  return s;
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEpsilon = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEpsilon) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw UsageError("incomplete beta needs positive shape parameters");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The continued fraction converges fastest for x < (a + 1) / (a + b + 2).
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw UsageError("student_t_cdf needs positive degrees of freedom");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
  return t >= 0.0 ? 1.0 - tail : tail;
}

TTestResult welch_t_test(const SampleSummary& a, const SampleSummary& b, double alpha) {
  if (a.n < 2 || b.n < 2) throw UsageError("welch_t_test needs at least two samples per group");
  const double va = a.std * a.std / static_cast<double>(a.n);
  const double vb = b.std * b.std / static_cast<double>(b.n);
  const double se2 = va + vb;
  TTestResult r;
  const double diff = a.mean - b.mean;
  if (se2 == 0.0) {
    r.degrees_of_freedom = static_cast<double>(a.n + b.n - 2);
    if (diff == 0.0) {
      r.t_statistic = 0.0;
      r.p_value = 1.0;
    } else {
      r.t_statistic = diff > 0 ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
    }
  } else {
    r.t_statistic = diff / std::sqrt(se2);
    r.degrees_of_freedom = se2 * se2 /
                           (va * va / static_cast<double>(a.n - 1) + vb * vb / static_cast<double>(b.n - 1));
    const double tail = 0.5 * regularized_incomplete_beta(
                                  r.degrees_of_freedom / 2.0, 0.5,
                                  r.degrees_of_freedom / (r.degrees_of_freedom + r.t_statistic * r.t_statistic));
    r.p_value = std::min(1.0, 2.0 * tail);
  }
  r.significant = r.p_value < alpha;
  return r;
}

}  // namespace deqt
