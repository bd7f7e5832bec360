#pragma once

#include <map>
#include <string>

namespace parking {

// k! as a double via a running product; returns +inf above 170 where the
// value exceeds the double range (callers divide by it, so +inf degrades to
// a harmless 0).
double factorial(int k);

// Constant of the sub-gaussian concentration inequality for the
// thermodynamic occupied count:
//   1 + (2d/(2d-1)) * sum_{k>=1} (2d-1)^k [(2k+1)^d - (2k-1)^d] / k!
// The series truncates when a term drops below 1e-15 of the partial sum.
// For d=1 this collapses to 4e-3.
double concentration_constant(int d);

// Right-hand side exp(1/e - eps^2 / (4 e B(d) (2n+1)^d)) of the
// concentration inequality for the thermodynamic count on the box of
// radius n.
double concentration_bound(int d, int n, double eps);

// d=1 free-boundary variant: the gaussian term with |box| = 2n+1 plus the
// factorial boundary term 2/ceil(eps/4 + 2)!.
double concentration_bound_free(int n, double eps);

// Bound on |E[free-boundary count] - rho * |box||. Sharp value 2(e-1) in
// d=1; the general-d shell series otherwise.
double mean_deviation_bound(int d, int n);

// The general-d shell series evaluated at any d >= 1 (at d=1 it tends to
// 4(e-1), twice the sharp value).
double mean_deviation_bound_general(int d, int n);

// Mixing coefficient bounds, stated for d=2.
double mixing_alpha_bound(int k, int l, int n);   // (k+l) 3^ceil(n/4) / floor(n/4)!
double mixing_alpha_one_inf_bound(int n);         // (16n+1) 3^n / n!

// Probability bound for the armour of a site escaping the box of radius k:
// 2d(2d-1)^(k-1)/k!. The weaker d=2 simplification 3^k/k! (valid for
// k >= 3) is exposed separately.
double armour_escape_bound(int d, int k);
double armour_escape_bound_d2_simplified(int k);

// Bound 2d(2d-1)^k / ((2d-1) k!) on the phi-mixing coefficient at distance
// k; summed over boundary shells it reproduces concentration_constant - 1.
double phi_mixing_bound(int d, int k);

// Evaluation of every closed-form bound at one set of parameters, keyed by
// a stable identifier, for the `bounds` report.
struct BoundsReport {
  std::map<std::string, double> values;
  int d = 1;
  int n = 1;
  double eps = 1.0;
  int k = 1;
  int l = 1;
};

BoundsReport evaluate_bounds(int d, int n, double eps, int k, int l);

}  // namespace parking
