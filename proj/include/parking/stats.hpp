#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace parking {

class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// One-sample Kolmogorov-Smirnov statistic sup |F_hat - F| of a sorted
// sample against a continuous reference CDF.
template <class Cdf>
double ks_statistic(std::span<const double> sorted_sample, Cdf&& cdf) {
  if (sorted_sample.empty())
    throw std::invalid_argument("ks_statistic: sample must be non-empty");
  const double n = static_cast<double>(sorted_sample.size());
  double d = 0;
  for (std::size_t i = 0; i < sorted_sample.size(); ++i) {
    const double f = cdf(sorted_sample[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

// Tail of the asymptotic Kolmogorov distribution,
// P(K > t) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 t^2), truncated at 100
// terms and clamped to [0, 1].
inline double kolmogorov_sf(double t) {
  if (t <= 0) return 1.0;
  double p = 0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    p += (k % 2 == 1) ? term : -term;
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * p, 0.0, 1.0);
}

struct SampleMoments {
  double mean = 0;
  double stddev = 0;  // sample standard deviation (n-1 denominator)
};

inline SampleMoments sample_moments(std::span<const double> sample) {
  if (sample.size() < 2)
    throw std::invalid_argument("sample_moments: need at least 2 values");
  double sum = 0;
  for (const double x : sample) sum += x;
  const double mean = sum / static_cast<double>(sample.size());
  double ss = 0;
  for (const double x : sample) ss += (x - mean) * (x - mean);
  SampleMoments m;
  m.mean = mean;
  m.stddev = std::sqrt(ss / (static_cast<double>(sample.size()) - 1.0));
  return m;
}

// Standardizes by sample moments; throws DegenerateDataError when the
// sample has zero variance.
inline std::vector<double> standardize(std::span<const double> sample) {
  const SampleMoments m = sample_moments(sample);
  if (m.stddev == 0)
    throw DegenerateDataError("standardize: sample has zero variance");
  std::vector<double> out(sample.begin(), sample.end());
  for (double& x : out) x = (x - m.mean) / m.stddev;
  return out;
}

struct KsResult {
  double statistic = 0;
  double p_value = 0;
};

// Standardizes, sorts, and tests the sample shape against the standard
// normal with the asymptotic p-value.
inline KsResult ks_normal_test(std::span<const double> sample) {
  std::vector<double> z = standardize(sample);
  std::sort(z.begin(), z.end());
  KsResult r;
  r.statistic = ks_statistic(z, [](double x) { return normal_cdf(x); });
  r.p_value = kolmogorov_sf(std::sqrt(static_cast<double>(z.size())) * r.statistic);
  return r;
}

}  // namespace parking
