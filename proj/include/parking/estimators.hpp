#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parking/armour.hpp"
#include "parking/field.hpp"
#include "parking/lattice.hpp"

namespace parking {

enum class DensityMode {
  kThermodynamic,  // exact samples of the infinite-volume limit via armours
  kFreeBoundary,   // jam of the bare box with all-zero boundary
};

std::string to_string(DensityMode mode);
DensityMode density_mode_from_string(const std::string& name);

// Monte Carlo estimate of the occupation density on the box of radius n.
// Replicate r runs on the field seeded seed + r; the counter-based field
// makes the streams independent and the runs reproducible.
struct DensityEstimate {
  double mean = 0;     // in [0, 1]
  double std_err = 0;  // sample std-dev of per-replicate densities / sqrt(R)
  std::int64_t replicates = 0;
  int n = 0;
  int d = 1;
  DensityMode mode = DensityMode::kThermodynamic;

  // Occupied-count statistics (exact integer tallies underneath).
  double count_mean = 0;
  double count_variance = 0;  // sample variance of the counts
  std::int64_t box_size = 0;
};

DensityEstimate estimate_density(int d, int n, std::int64_t replicates,
                                 std::uint64_t seed, DensityMode mode,
                                 int threads = 0,
                                 std::int32_t cap = kDefaultArmourCap);

// Stationary covariance of the thermodynamic field between the origin and
// every displacement with max-norm at most r_max, estimated jointly from
// one window sample per replicate.
struct CovarianceEntry {
  Site displacement;
  double covariance = 0;
  double std_err = 0;
};

struct CovarianceTable {
  std::vector<CovarianceEntry> entries;  // row-major displacement order
  double sigma2_truncated = 0;           // sum of the entries
  std::int64_t samples = 0;
  int r_max = 1;
  int d = 1;

  const CovarianceEntry& at_displacement(const Site& i) const;
};

CovarianceTable estimate_covariance(int d, int r_max, std::int64_t samples,
                                    std::uint64_t seed, int threads = 0,
                                    std::int32_t cap = kDefaultArmourCap);

// Shape diagnostic for the central limit theorem: thermodynamic counts over
// independent seeds, standardized by their own sample moments so the test
// isolates the shape, then Kolmogorov-Smirnov against the standard normal.
struct CltReport {
  std::vector<double> standardized;  // by replicate index
  double ks_statistic = 0;
  double p_value = 0;
  double count_mean = 0;
  double count_stddev = 0;
  std::int64_t replicates = 0;
  int n = 0;
  int d = 1;
};

CltReport clt_diagnostic(int d, int n, std::int64_t replicates, std::uint64_t seed,
                         int threads = 0, std::int32_t cap = kDefaultArmourCap);

// Iterated-logarithm diagnostic: per replicate, the path of
//   R_n = (N_n - rho |box_n|) / sqrt(2 sigma2 |box_n| log log |box_n|)
// along nested windows of one field. Diagnostic only; the limsup statement
// lives far beyond desk scale.
struct LilReport {
  std::vector<int> n_list;
  std::vector<std::vector<std::int64_t>> counts;  // [replicate][n index]
  std::vector<std::vector<double>> ratios;        // [replicate][n index]
  std::vector<double> max_abs_ratio;              // per n index, across replicates
  double sigma2 = 0;
  double rho = 0;
  std::int64_t replicates = 0;
  int d = 1;
};

LilReport lil_diagnostic(int d, std::span<const int> n_list, std::int64_t replicates,
                         std::uint64_t seed, double sigma2,
                         std::optional<double> rho = std::nullopt, int threads = 0,
                         std::int32_t cap = kDefaultArmourCap);

// Empirical tail probabilities against an analytic right-hand side, one row
// per threshold.
struct TailEntry {
  double threshold = 0;
  double empirical = 0;
  double bound = 0;
  std::int64_t exceed_count = 0;
};

struct TailReport {
  std::vector<TailEntry> entries;
  std::int64_t replicates = 0;
  int n = 0;
  int d = 1;
  double rho_used = 0;
  std::string kind;  // "concentration" or "coupling"
};

// Tail of |N - rho |box|| against the gaussian concentration bound
// (thermodynamic) or its free-boundary variant (d=1 only). If rho is not
// supplied it defaults to the exact d=1 density, or to the replicate sample
// mean for d >= 2 where no closed form exists.
TailReport concentration_empirics(int d, int n, std::int64_t replicates,
                                  std::span<const double> eps_grid,
                                  std::uint64_t seed, DensityMode mode,
                                  int threads = 0,
                                  std::int32_t cap = kDefaultArmourCap,
                                  std::optional<double> rho = std::nullopt);

// d=1 coupling: thermodynamic and free-boundary counts from the same field,
// tail of |N_n - N_n_free| > M against the factorial boundary bound.
TailReport coupling_discrepancy(int n, std::int64_t replicates, std::uint64_t seed,
                                std::span<const double> m_grid, int threads = 0,
                                std::int32_t cap = kDefaultArmourCap);

}  // namespace parking
