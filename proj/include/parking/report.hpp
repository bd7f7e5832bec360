#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parking/armour.hpp"
#include "parking/bounds.hpp"
#include "parking/estimators.hpp"
#include "parking/exact1d.hpp"
#include "parking/jamming.hpp"

namespace parking {

// Shortest round-trip decimal representation; locale-independent, so report
// bytes are reproducible.
std::string format_double(double x);

// RunConfig captures one CLI invocation; it is embedded verbatim in every
// report for provenance, and can be loaded back from JSON via --config.
struct RunConfig {
  std::string command;
  int d = 1;
  int n = 0;
  std::int64_t replicates = 10000;
  std::uint64_t seed = 0;
  std::int32_t cap = 64;
  std::string mode = "thermo";
  std::vector<double> eps_grid;
  std::vector<double> m_grid;
  std::vector<int> n_list;
  double sigma2 = 0;
  std::optional<double> rho;
  int r_max = 8;
  int size = 3;
  bool boundary_left = false;
  bool boundary_right = false;
  double eps = 1.0;
  int k = 1;
  int l = 1;
  int threads = 0;
  std::string output_path;
  std::string format;  // empty = command default (csv for tables, json otherwise)
};

// csv for the tabular commands, json for bounds/exact/oracle/simulate.
std::string default_format(const std::string& command);

std::string run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json_text(const std::string& text);

// CSV renderers. Every document starts with `# version=` and `# config=`
// comment lines followed by a fixed header.
std::string density_csv(const DensityEstimate& e, const RunConfig& config);
std::string covariance_csv(const CovarianceTable& t, const RunConfig& config);
std::string tail_csv(const TailReport& t, const RunConfig& config);
std::string clt_csv(const CltReport& r, const RunConfig& config);
std::string lil_csv(const LilReport& r, const RunConfig& config);
std::string bounds_csv(const BoundsReport& r, const RunConfig& config);
std::string exact_csv(const RunConfig& config);
std::string oracle_csv(const ExactDistribution& dist, const RunConfig& config);

// JSON renderers; same content as the CSV plus the raw tallies.
std::string density_json(const DensityEstimate& e, const RunConfig& config);
std::string covariance_json(const CovarianceTable& t, const RunConfig& config);
std::string tail_json(const TailReport& t, const RunConfig& config);
std::string clt_json(const CltReport& r, const RunConfig& config);
std::string lil_json(const LilReport& r, const RunConfig& config);
std::string bounds_json(const BoundsReport& r, const RunConfig& config);
std::string exact_json(const RunConfig& config);
std::string oracle_json(const ExactDistribution& dist, const RunConfig& config);

// Configuration output: the {dimension, sites, occupancy, seed} document,
// or a dense 0/1 text grid for box-shaped regions.
std::string configuration_json(const Configuration& c, std::uint64_t seed,
                               const RunConfig& config);
std::string configuration_grid(const Configuration& c, const BoxRegion& box,
                               const RunConfig& config);

// Armour debug dump: {seedset, members, marks}, marks aligned with members.
std::string armour_json(const Armour& armour, const UniformField& field,
                        const RunConfig& config);

}  // namespace parking
