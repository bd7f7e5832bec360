#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "parking/jamming.hpp"

namespace parking {

// Reduced fraction on 64-bit integers. Enumeration over paths of size
// s <= 10 keeps every numerator and denominator below 10! * 10, far inside
// the 64-bit range; intermediates go through 128-bit to be safe.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
};

// A realized d=1 armour of the origin: the interval {-m, ..., n}. m = n = 0
// is the singleton case.
struct ArmourCase {
  std::int32_t left = 0;   // m
  std::int32_t right = 0;  // n
};

// Coefficient 1/((m+n+1) m! n!) of the two-sided case probability.
double case_coefficient(int m, int n);

// Exact probability that the armour of the origin equals {-m, ..., n}:
// 1/3 for the singleton, (n+2)/(n+3)! one-sided, and the telescoped
// coefficient difference for the two-sided case.
double case_probability(const ArmourCase& c);

// Aggregate probabilities of the four case families (and their even-extent
// sub-families, which are the ones that leave the origin occupied), each by
// direct series summation truncated at 1e-15 relative.
struct CaseFamilySums {
  double singleton = 0;            // 1/3
  double one_sided_each = 0;       // 1/6 per side
  double two_sided = 0;            // 1/3
  double even_one_sided_each = 0;  // 1/e - 1/3 per side
  double even_two_sided = 0;       // 5/6 - 2/e - 1/(2e^2)
};
CaseFamilySums case_family_sums();

// Occupation density of the d=1 thermodynamic jamming limit, assembled from
// the armour-case series: singleton + 2 * even one-sided + even two-sided.
// Throws std::logic_error if the assembly drifts from (1 - e^-2)/2 by more
// than 1e-12.
double exact_density();

// Exact distribution of the occupied count produced by brute-force
// enumeration (all s! mark orderings, equal weight) on a d=1 path.
struct ExactDistribution {
  std::map<std::int64_t, Rational> support;  // count -> probability
  int size = 0;

  Rational mean() const;
};

// Enumerates the parking sweep over every ordering of marks on the path
// {0, ..., size-1} with the given frozen boundary (only the values at -1 and
// size matter). The sweep here is written independently of the simulator so
// the two routes can check each other. size must lie in [1, 10].
ExactDistribution enumerate_jam(int size, const BoundaryCondition& boundary = {});

// Exact free-boundary mean occupied counts for path sizes 1..s_max (<= 10).
std::vector<std::pair<int, Rational>> exact_mean_counts(int s_max);

}  // namespace parking
