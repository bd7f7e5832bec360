#include "parking/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parking/bounds.hpp"
#include "parking/exact1d.hpp"
#include "parking/parallel.hpp"
#include "parking/stats.hpp"

namespace parking {

namespace {

UniformField replicate_field(std::uint64_t seed, std::int64_t index, int d) {
  return UniformField(Seed{seed + static_cast<std::uint64_t>(index)}, d);
}

[[noreturn]] void rethrow_with_replicate(const ArmourOverflowError& e, std::int64_t index) {
  throw ArmourOverflowError("replicate " + std::to_string(index) + ": " + e.what(),
                            e.partial_members());
}

std::int64_t thermodynamic_count(const UniformField& field, const BoxRegion& box,
                                 std::int32_t cap) {
  return count_occupied(sample_window(field, box, cap));
}

std::int64_t free_boundary_count(const UniformField& field,
                                 std::span<const Site> box_site_list) {
  return count_occupied(jam(field, box_site_list));
}

struct CountTally {
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;

  void add(std::int64_t c) {
    sum += c;
    sum_sq += c * c;
  }
  void merge(const CountTally& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
};

struct HistogramTally {
  std::vector<std::int64_t> bins;

  void add(std::int64_t value) {
    if (value >= static_cast<std::int64_t>(bins.size()))
      bins.resize(static_cast<std::size_t>(value) + 1, 0);
    ++bins[static_cast<std::size_t>(value)];
  }
  void merge(const HistogramTally& o) {
    if (o.bins.size() > bins.size()) bins.resize(o.bins.size(), 0);
    for (std::size_t k = 0; k < o.bins.size(); ++k) bins[k] += o.bins[k];
  }
};

}  // namespace

std::string to_string(DensityMode mode) {
  return mode == DensityMode::kThermodynamic ? "thermo" : "free";
}

DensityMode density_mode_from_string(const std::string& name) {
  if (name == "thermo" || name == "thermodynamic") return DensityMode::kThermodynamic;
  if (name == "free" || name == "free-boundary") return DensityMode::kFreeBoundary;
  throw std::invalid_argument("unknown density mode '" + name +
                              "' (expected 'thermo' or 'free')");
}

DensityEstimate estimate_density(int d, int n, std::int64_t replicates,
                                 std::uint64_t seed, DensityMode mode, int threads,
                                 std::int32_t cap) {
  if (replicates < 2)
    throw std::invalid_argument("estimate_density: need at least 2 replicates");
  const BoxRegion box = BoxRegion::centered(d, n);
  const auto sites = box_sites(box);
  const double box_size = static_cast<double>(box.site_count());

  const CountTally tally = parallel_tally<CountTally>(
      replicates, threads, [&](std::int64_t r, CountTally& acc) {
        const UniformField field = replicate_field(seed, r, d);
        try {
          const std::int64_t c = mode == DensityMode::kThermodynamic
                                     ? thermodynamic_count(field, box, cap)
                                     : free_boundary_count(field, sites);
          acc.add(c);
        } catch (const ArmourOverflowError& e) {
          rethrow_with_replicate(e, r);
        }
      });

  const double reps = static_cast<double>(replicates);
  DensityEstimate out;
  out.replicates = replicates;
  out.n = n;
  out.d = d;
  out.mode = mode;
  out.box_size = box.site_count();
  out.count_mean = static_cast<double>(tally.sum) / reps;
  out.count_variance = (static_cast<double>(tally.sum_sq) -
                        static_cast<double>(tally.sum) * out.count_mean) /
                       (reps - 1.0);
  out.mean = out.count_mean / box_size;
  out.std_err = std::sqrt(std::max(out.count_variance, 0.0) / reps) / box_size;
  return out;
}

const CovarianceEntry& CovarianceTable::at_displacement(const Site& i) const {
  for (const auto& entry : entries)
    if (entry.displacement == i) return entry;
  throw std::invalid_argument("CovarianceTable: displacement not tabulated");
}

CovarianceTable estimate_covariance(int d, int r_max, std::int64_t samples,
                                    std::uint64_t seed, int threads,
                                    std::int32_t cap) {
  if (r_max < 1) throw std::invalid_argument("estimate_covariance: r_max must be >= 1");
  if (samples < 2) throw std::invalid_argument("estimate_covariance: need >= 2 samples");

  const BoxRegion window = BoxRegion::centered(d, r_max);
  const auto displacements = box_sites(window);  // row-major, includes origin
  const Site origin = Site::origin(d);
  const std::size_t m = displacements.size();

  // origin_index inside the lex-sorted configuration equals its rank among
  // the displacements; resolve once.
  struct JointTally {
    std::int64_t s0 = 0;
    std::vector<std::int64_t> si;
    std::vector<std::int64_t> s0i;

    void merge(const JointTally& o) {
      if (si.empty()) {
        si = o.si;
        s0i = o.s0i;
        s0 = o.s0;
        return;
      }
      s0 += o.s0;
      for (std::size_t k = 0; k < si.size(); ++k) {
        si[k] += o.si[k];
        s0i[k] += o.s0i[k];
      }
    }
  };

  const JointTally tally = parallel_tally<JointTally>(
      samples, threads, [&](std::int64_t r, JointTally& acc) {
        if (acc.si.empty()) {
          acc.si.assign(m, 0);
          acc.s0i.assign(m, 0);
        }
        const UniformField field = replicate_field(seed, r, d);
        try {
          const Configuration cfg = sample_window(field, window, cap);
          const bool x0 = cfg.occupied(origin);
          acc.s0 += x0;
          for (std::size_t k = 0; k < m; ++k) {
            const bool xi = cfg.occupied(displacements[k]);
            acc.si[k] += xi;
            acc.s0i[k] += (x0 && xi);
          }
        } catch (const ArmourOverflowError& e) {
          rethrow_with_replicate(e, r);
        }
      });

  const double s = static_cast<double>(samples);
  const double a = static_cast<double>(tally.s0) / s;

  CovarianceTable out;
  out.samples = samples;
  out.r_max = r_max;
  out.d = d;
  out.entries.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double b = static_cast<double>(tally.si[k]) / s;
    const double m0i = static_cast<double>(tally.s0i[k]) / s;
    CovarianceEntry entry;
    entry.displacement = displacements[k];
    entry.covariance = (static_cast<double>(tally.s0i[k]) -
                        static_cast<double>(tally.s0) * b) /
                       (s - 1.0);
    // plug-in variance of Z = (X0 - a)(Xi - b); binary variables collapse
    // the fourth moments onto the joint frequency.
    const double ez = m0i - a * b;
    const double ez2 = m0i * (1 - 2 * a) * (1 - 2 * b) + a * (1 - 2 * a) * b * b +
                       b * (1 - 2 * b) * a * a + a * a * b * b;
    entry.std_err = std::sqrt(std::max(ez2 - ez * ez, 0.0) / s);
    out.sigma2_truncated += entry.covariance;
    out.entries.push_back(entry);
  }
  return out;
}

CltReport clt_diagnostic(int d, int n, std::int64_t replicates, std::uint64_t seed,
                         int threads, std::int32_t cap) {
  if (replicates < 1000)
    throw std::invalid_argument("clt_diagnostic: need at least 1000 replicates");
  const BoxRegion box = BoxRegion::centered(d, n);

  struct SlotTally {
    std::vector<double>* counts = nullptr;
    void merge(const SlotTally&) {}
  };

  std::vector<double> counts(static_cast<std::size_t>(replicates));
  parallel_tally<SlotTally>(replicates, threads, [&](std::int64_t r, SlotTally&) {
    const UniformField field = replicate_field(seed, r, d);
    try {
      counts[static_cast<std::size_t>(r)] =
          static_cast<double>(thermodynamic_count(field, box, cap));
    } catch (const ArmourOverflowError& e) {
      rethrow_with_replicate(e, r);
    }
  });

  const SampleMoments moments = sample_moments(counts);
  CltReport out;
  out.replicates = replicates;
  out.n = n;
  out.d = d;
  out.count_mean = moments.mean;
  out.count_stddev = moments.stddev;
  out.standardized = standardize(counts);  // throws DegenerateDataError if flat

  std::vector<double> sorted = out.standardized;
  std::sort(sorted.begin(), sorted.end());
  out.ks_statistic = ks_statistic(sorted, [](double x) { return normal_cdf(x); });
  out.p_value =
      kolmogorov_sf(std::sqrt(static_cast<double>(replicates)) * out.ks_statistic);
  return out;
}

LilReport lil_diagnostic(int d, std::span<const int> n_list, std::int64_t replicates,
                         std::uint64_t seed, double sigma2, std::optional<double> rho,
                         int threads, std::int32_t cap) {
  if (n_list.empty()) throw std::invalid_argument("lil_diagnostic: empty n list");
  if (replicates < 1) throw std::invalid_argument("lil_diagnostic: need replicates >= 1");
  if (sigma2 <= 0) throw std::invalid_argument("lil_diagnostic: sigma2 must be > 0");
  if (!rho && d != 1)
    throw std::invalid_argument("lil_diagnostic: rho required for d != 1");
  const double rho_value = rho ? *rho : exact_density();

  std::vector<int> ns(n_list.begin(), n_list.end());
  if (!std::is_sorted(ns.begin(), ns.end()) ||
      std::adjacent_find(ns.begin(), ns.end()) != ns.end())
    throw std::invalid_argument("lil_diagnostic: n list must be strictly increasing");
  std::vector<double> box_sizes;
  for (const int n : ns) {
    if (n < 0) throw std::invalid_argument("lil_diagnostic: n must be >= 0");
    const double size = static_cast<double>(BoxRegion::centered(d, n).site_count());
    if (size < 3)
      throw std::invalid_argument("lil_diagnostic: box must hold >= 3 sites so "
                                  "log log |box| > 0");
    box_sizes.push_back(size);
  }

  const int n_max = ns.back();
  const BoxRegion outer = BoxRegion::centered(d, n_max);

  LilReport out;
  out.n_list = ns;
  out.sigma2 = sigma2;
  out.rho = rho_value;
  out.replicates = replicates;
  out.d = d;
  out.counts.assign(static_cast<std::size_t>(replicates), {});
  out.ratios.assign(static_cast<std::size_t>(replicates), {});

  struct SlotTally {
    void merge(const SlotTally&) {}
  };
  parallel_tally<SlotTally>(replicates, threads, [&](std::int64_t r, SlotTally&) {
    const UniformField field = replicate_field(seed, r, d);
    try {
      const Configuration cfg = sample_window(field, outer, cap);
      std::vector<std::int64_t> counts(ns.size(), 0);
      for (std::size_t site_idx = 0; site_idx < cfg.sites.size(); ++site_idx) {
        if (!cfg.occupancy[site_idx]) continue;
        std::int32_t norm = 0;
        for (int k = 0; k < d; ++k)
          norm = std::max(norm, std::abs(cfg.sites[site_idx][k]));
        for (std::size_t j = 0; j < ns.size(); ++j)
          if (norm <= ns[j]) ++counts[j];
      }
      auto& ratios = out.ratios[static_cast<std::size_t>(r)];
      ratios.resize(ns.size());
      for (std::size_t j = 0; j < ns.size(); ++j) {
        const double size = box_sizes[j];
        const double denom = std::sqrt(2.0 * sigma2 * size * std::log(std::log(size)));
        ratios[j] = (static_cast<double>(counts[j]) - rho_value * size) / denom;
      }
      out.counts[static_cast<std::size_t>(r)] = std::move(counts);
    } catch (const ArmourOverflowError& e) {
      rethrow_with_replicate(e, r);
    }
  });

  out.max_abs_ratio.assign(ns.size(), 0.0);
  for (const auto& path : out.ratios)
    for (std::size_t j = 0; j < path.size(); ++j)
      out.max_abs_ratio[j] = std::max(out.max_abs_ratio[j], std::abs(path[j]));
  return out;
}

TailReport concentration_empirics(int d, int n, std::int64_t replicates,
                                  std::span<const double> eps_grid,
                                  std::uint64_t seed, DensityMode mode, int threads,
                                  std::int32_t cap, std::optional<double> rho) {
  if (replicates < 1000)
    throw std::invalid_argument("concentration_empirics: need at least 1000 replicates");
  if (eps_grid.empty())
    throw std::invalid_argument("concentration_empirics: empty epsilon grid");
  for (const double eps : eps_grid)
    if (eps < 0) throw std::invalid_argument("concentration_empirics: eps must be >= 0");
  if (mode == DensityMode::kFreeBoundary && d != 1)
    throw std::invalid_argument(
        "concentration_empirics: the free-boundary bound is stated only for d=1");

  const BoxRegion box = BoxRegion::centered(d, n);
  const auto sites = box_sites(box);

  const HistogramTally hist = parallel_tally<HistogramTally>(
      replicates, threads, [&](std::int64_t r, HistogramTally& acc) {
        const UniformField field = replicate_field(seed, r, d);
        try {
          const std::int64_t c = mode == DensityMode::kThermodynamic
                                     ? thermodynamic_count(field, box, cap)
                                     : free_boundary_count(field, sites);
          acc.add(c);
        } catch (const ArmourOverflowError& e) {
          rethrow_with_replicate(e, r);
        }
      });

  double rho_value;
  if (rho) {
    rho_value = *rho;
  } else if (d == 1) {
    rho_value = exact_density();
  } else {
    // no closed form beyond d=1; fall back to the replicate sample mean
    std::int64_t sum = 0;
    for (std::size_t c = 0; c < hist.bins.size(); ++c)
      sum += hist.bins[c] * static_cast<std::int64_t>(c);
    rho_value = static_cast<double>(sum) /
                (static_cast<double>(replicates) * static_cast<double>(box.site_count()));
  }

  const double center = rho_value * static_cast<double>(box.site_count());
  TailReport out;
  out.replicates = replicates;
  out.n = n;
  out.d = d;
  out.rho_used = rho_value;
  out.kind = "concentration";
  for (const double eps : eps_grid) {
    TailEntry entry;
    entry.threshold = eps;
    for (std::size_t c = 0; c < hist.bins.size(); ++c) {
      if (std::abs(static_cast<double>(c) - center) > eps)
        entry.exceed_count += hist.bins[c];
    }
    entry.empirical = static_cast<double>(entry.exceed_count) /
                      static_cast<double>(replicates);
    entry.bound = mode == DensityMode::kThermodynamic
                      ? concentration_bound(d, n, eps)
                      : concentration_bound_free(n, eps);
    out.entries.push_back(entry);
  }
  return out;
}

TailReport coupling_discrepancy(int n, std::int64_t replicates, std::uint64_t seed,
                                std::span<const double> m_grid, int threads,
                                std::int32_t cap) {
  if (replicates < 1)
    throw std::invalid_argument("coupling_discrepancy: need replicates >= 1");
  if (m_grid.empty()) throw std::invalid_argument("coupling_discrepancy: empty M grid");
  constexpr int d = 1;
  const BoxRegion box = BoxRegion::centered(d, n);
  const auto sites = box_sites(box);

  const HistogramTally hist = parallel_tally<HistogramTally>(
      replicates, threads, [&](std::int64_t r, HistogramTally& acc) {
        const UniformField field = replicate_field(seed, r, d);
        try {
          const std::int64_t thermo = thermodynamic_count(field, box, cap);
          const std::int64_t free = free_boundary_count(field, sites);
          acc.add(std::abs(thermo - free));
        } catch (const ArmourOverflowError& e) {
          rethrow_with_replicate(e, r);
        }
      });

  TailReport out;
  out.replicates = replicates;
  out.n = n;
  out.d = d;
  out.rho_used = exact_density();
  out.kind = "coupling";
  for (const double m : m_grid) {
    if (m < 0) throw std::invalid_argument("coupling_discrepancy: M must be >= 0");
    TailEntry entry;
    entry.threshold = m;
    for (std::size_t c = 0; c < hist.bins.size(); ++c)
      if (static_cast<double>(c) > m) entry.exceed_count += hist.bins[c];
    entry.empirical = static_cast<double>(entry.exceed_count) /
                      static_cast<double>(replicates);
    entry.bound = 2.0 / factorial(static_cast<int>(std::ceil(m / 2.0 + 2.0)));
    out.entries.push_back(entry);
  }
  return out;
}

}  // namespace parking
