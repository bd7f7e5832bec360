#include "parking/bounds.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace parking {

namespace {

constexpr double kRelTruncation = 1e-15;
constexpr int kMaxFactorial = 170;

std::array<double, kMaxFactorial + 1> build_factorials() {
  std::array<double, kMaxFactorial + 1> table{};
  table[0] = 1.0;
  for (int k = 1; k <= kMaxFactorial; ++k) table[k] = table[k - 1] * k;
  return table;
}

// (2k+1)^d - (2k-1)^d, the size of the boundary shell at distance k.
double shell_count(int d, std::int64_t k) {
  double outer = 1, inner = 1;
  for (int j = 0; j < d; ++j) {
    outer *= static_cast<double>(2 * k + 1);
    inner *= static_cast<double>(2 * k - 1);
  }
  return outer - inner;
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

double factorial(int k) {
  require(k >= 0, "factorial: k must be >= 0");
  static const auto table = build_factorials();
  if (k > kMaxFactorial) return std::numeric_limits<double>::infinity();
  return table[static_cast<std::size_t>(k)];
}

double concentration_constant(int d) {
  require(d >= 1, "concentration_constant: d must be >= 1");
  double sum = 0;
  double power_over_fact = 1;  // (2d-1)^k / k!
  for (int k = 1;; ++k) {
    power_over_fact *= static_cast<double>(2 * d - 1) / k;
    const double term = power_over_fact * shell_count(d, k);
    sum += term;
    if (term < kRelTruncation * sum) break;
  }
  return 1.0 + (2.0 * d / (2.0 * d - 1.0)) * sum;
}

double concentration_bound(int d, int n, double eps) {
  require(d >= 1, "concentration_bound: d must be >= 1");
  require(n >= 0, "concentration_bound: n must be >= 0");
  require(eps >= 0, "concentration_bound: eps must be >= 0");
  double box = 1;
  for (int j = 0; j < d; ++j) box *= 2.0 * n + 1.0;
  const double e = std::exp(1.0);
  return std::exp(1.0 / e - eps * eps / (4.0 * e * concentration_constant(d) * box));
}

double concentration_bound_free(int n, double eps) {
  require(n >= 0, "concentration_bound_free: n must be >= 0");
  require(eps >= 0, "concentration_bound_free: eps must be >= 0");
  const double e = std::exp(1.0);
  const double box = 2.0 * n + 1.0;
  const double gaussian =
      std::exp(1.0 / e - eps * eps / (16.0 * e * (4.0 * e - 3.0) * box));
  const int boundary_index = static_cast<int>(std::ceil(eps / 4.0 + 2.0));
  const double boundary = 2.0 / factorial(boundary_index);
  return gaussian + boundary;
}

double mean_deviation_bound(int d, int n) {
  require(d >= 1 && n >= 1, "mean_deviation_bound: d, n must be >= 1");
  if (d == 1) return 2.0 * (std::exp(1.0) - 1.0);
  return mean_deviation_bound_general(d, n);
}

double mean_deviation_bound_general(int d, int n) {
  require(d >= 1 && n >= 1, "mean_deviation_bound_general: d, n must be >= 1");
  double head = 2.0 * d / factorial(n + 1);
  for (int j = 0; j < n; ++j) head *= 2 * d - 1;

  double sum = 0;
  double power = 1;  // (2d-1)^k
  for (int k = 0; k <= n - 1; ++k) {
    double cross_section = 1;  // (2(n-k)+1)^(d-1)
    for (int j = 0; j < d - 1; ++j) cross_section *= 2.0 * (n - k) + 1.0;
    sum += power * cross_section / factorial(k + 1);
    power *= 2 * d - 1;
  }
  return head + 4.0 * d * d * sum;
}

double mixing_alpha_bound(int k, int l, int n) {
  require(k >= 1 && l >= 1 && n >= 1, "mixing_alpha_bound: k, l, n must be >= 1");
  const double numerator = std::pow(3.0, std::ceil(n / 4.0));
  return (k + l) * numerator / factorial(n / 4);
}

double mixing_alpha_one_inf_bound(int n) {
  require(n >= 1, "mixing_alpha_one_inf_bound: n must be >= 1");
  return (16.0 * n + 1.0) * std::pow(3.0, n) / factorial(n);
}

double armour_escape_bound(int d, int k) {
  require(d >= 1 && k >= 1, "armour_escape_bound: d, k must be >= 1");
  double power = 1;
  for (int j = 0; j < k - 1; ++j) power *= 2 * d - 1;
  return 2.0 * d * power / factorial(k);
}

double armour_escape_bound_d2_simplified(int k) {
  require(k >= 1, "armour_escape_bound_d2_simplified: k must be >= 1");
  return std::pow(3.0, k) / factorial(k);
}

double phi_mixing_bound(int d, int k) {
  require(d >= 1 && k >= 1, "phi_mixing_bound: d, k must be >= 1");
  double power = 1;
  for (int j = 0; j < k; ++j) power *= 2 * d - 1;
  return 2.0 * d * power / ((2.0 * d - 1.0) * factorial(k));
}

BoundsReport evaluate_bounds(int d, int n, double eps, int k, int l) {
  BoundsReport report;
  report.d = d;
  report.n = n;
  report.eps = eps;
  report.k = k;
  report.l = l;
  auto& v = report.values;
  v["B"] = concentration_constant(d);
  v["concentration_bound"] = concentration_bound(d, n, eps);
  if (d == 1) v["concentration_bound_free"] = concentration_bound_free(n, eps);
  v["mean_deviation_bound"] = mean_deviation_bound(d, n);
  v["mean_deviation_bound_general"] = mean_deviation_bound_general(d, n);
  if (d == 2) {
    v["mixing_alpha_kl"] = mixing_alpha_bound(k, l, n);
    v["mixing_alpha_1inf"] = mixing_alpha_one_inf_bound(n);
    v["armour_escape_d2_simplified"] = armour_escape_bound_d2_simplified(k);
  }
  v["armour_escape"] = armour_escape_bound(d, k);
  v["phi_mixing"] = phi_mixing_bound(d, k);
  return report;
}

}  // namespace parking
