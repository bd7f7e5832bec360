#include "parking/exact1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "parking/bounds.hpp"

namespace parking {

namespace {

Rational make_reduced(__int128 num, __int128 den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  auto big_gcd = [](__int128 x, __int128 y) {
    while (y != 0) {
      const __int128 t = x % y;
      x = y;
      y = t;
    }
    return x;
  };
  const __int128 a = num < 0 ? -num : num;
  const __int128 g = big_gcd(a == 0 ? den : a, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr __int128 kMax = INT64_MAX;
  if (num > kMax || num < -kMax || den > kMax)
    throw std::overflow_error("Rational: value does not fit in 64 bits");
  Rational r;
  r.num = static_cast<std::int64_t>(num);
  r.den = static_cast<std::int64_t>(den);
  return r;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  *this = make_reduced(n, d);
}

Rational Rational::operator+(const Rational& o) const {
  return make_reduced(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                      static_cast<__int128>(den) * o.den);
}

Rational Rational::operator-(const Rational& o) const {
  return make_reduced(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den,
                      static_cast<__int128>(den) * o.den);
}

Rational Rational::operator*(const Rational& o) const {
  return make_reduced(static_cast<__int128>(num) * o.num,
                      static_cast<__int128>(den) * o.den);
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

double case_coefficient(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("case_coefficient: m, n must be >= 0");
  return 1.0 / ((m + n + 1) * factorial(m) * factorial(n));
}

double case_probability(const ArmourCase& c) {
  if (c.left < 0 || c.right < 0)
    throw std::invalid_argument("case_probability: extents must be >= 0");
  const int m = c.left, n = c.right;
  if (m == 0 && n == 0) return 1.0 / 3.0;
  if (m == 0) return (n + 2) / factorial(n + 3);
  if (n == 0) return (m + 2) / factorial(m + 3);
  return (case_coefficient(m, n) - case_coefficient(m, n + 1)) -
         (case_coefficient(m + 1, n) - case_coefficient(m + 1, n + 1));
}

namespace {

constexpr double kRelTruncation = 1e-15;

double one_sided_sum(int start, int stride) {
  double total = 0;
  for (int n = start;; n += stride) {
    const double term = (n + 2) / factorial(n + 3);
    total += term;
    if (term < kRelTruncation * total) break;
  }
  return total;
}

double two_sided_sum(int start, int stride) {
  double total = 0;
  for (int m = start;; m += stride) {
    double row = 0;
    for (int n = start;; n += stride) {
      const double term = case_probability({m, n});
      row += term;
      if (std::abs(term) < kRelTruncation * std::max(row, 1e-300)) break;
    }
    total += row;
    if (std::abs(row) < kRelTruncation * std::max(total, 1e-300)) break;
  }
  return total;
}

}  // namespace

CaseFamilySums case_family_sums() {
  CaseFamilySums s;
  s.singleton = 1.0 / 3.0;
  s.one_sided_each = one_sided_sum(1, 1);
  s.two_sided = two_sided_sum(1, 1);
  s.even_one_sided_each = one_sided_sum(2, 2);
  s.even_two_sided = two_sided_sum(2, 2);
  return s;
}

double exact_density() {
  const CaseFamilySums s = case_family_sums();
  const double assembled = s.singleton + 2 * s.even_one_sided_each + s.even_two_sided;
  const double closed_form = 0.5 * (1.0 - std::exp(-2.0));
  if (std::abs(assembled - closed_form) > 1e-12)
    throw std::logic_error("exact_density: series assembly deviates from (1-e^-2)/2");
  return assembled;
}

Rational ExactDistribution::mean() const {
  Rational total(0, 1);
  for (const auto& [count, prob] : support)
    total = total + prob * Rational(count, 1);
  return total;
}

ExactDistribution enumerate_jam(int size, const BoundaryCondition& boundary) {
  if (size < 1 || size > 10)
    throw std::invalid_argument("enumerate_jam: size must be in [1, 10]");
  for (const auto& [key, value] : boundary.values()) {
    if (key.dimension() != 1)
      throw std::invalid_argument("enumerate_jam: boundary keys must be d=1 sites");
    if (key[0] >= 0 && key[0] < size)
      throw std::invalid_argument("enumerate_jam: boundary key inside the path");
  }
  const bool left_frozen = boundary.value(Site{-1});
  const bool right_frozen = boundary.value(Site{size});

  std::vector<int> visit(static_cast<std::size_t>(size));
  std::iota(visit.begin(), visit.end(), 0);

  std::vector<std::int64_t> counts(static_cast<std::size_t>(size) + 1, 0);
  std::int64_t orderings = 0;
  std::array<bool, 12> occupied{};
  do {
    occupied.fill(false);
    int total = 0;
    for (const int i : visit) {
      const bool left = (i == 0) ? left_frozen : occupied[static_cast<std::size_t>(i - 1)];
      const bool right =
          (i == size - 1) ? right_frozen : occupied[static_cast<std::size_t>(i + 1)];
      if (!left && !right) {
        occupied[static_cast<std::size_t>(i)] = true;
        ++total;
      }
    }
    ++counts[static_cast<std::size_t>(total)];
    ++orderings;
  } while (std::next_permutation(visit.begin(), visit.end()));

  ExactDistribution dist;
  dist.size = size;
  Rational check(0, 1);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const Rational p(counts[k], orderings);
    dist.support[static_cast<std::int64_t>(k)] = p;
    check = check + p;
  }
  if (!(check == Rational(1, 1)))
    throw std::logic_error("enumerate_jam: probabilities do not sum to 1");
  return dist;
}

std::vector<std::pair<int, Rational>> exact_mean_counts(int s_max) {
  if (s_max < 1 || s_max > 10)
    throw std::invalid_argument("exact_mean_counts: s_max must be in [1, 10]");
  std::vector<std::pair<int, Rational>> out;
  out.reserve(static_cast<std::size_t>(s_max));
  for (int s = 1; s <= s_max; ++s)
    out.emplace_back(s, enumerate_jam(s).mean());
  return out;
}

}  // namespace parking
