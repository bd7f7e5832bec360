#include "parking/run.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>

#include "parking/armour.hpp"
#include "parking/bounds.hpp"
#include "parking/estimators.hpp"
#include "parking/exact1d.hpp"
#include "parking/field.hpp"

namespace parking {

namespace {

void require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
  for (const char* name : allowed)
    if (c.format == name) return;
  std::string expected;
  for (const char* name : allowed) {
    if (!expected.empty()) expected += "' or '";
    expected += name;
  }
  throw std::invalid_argument("--format: unsupported value '" + c.format +
                              "' (expected '" + expected + "')");
}

std::vector<double> default_grid(double start, double step, double stop) {
  std::vector<double> grid;
  for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
  return grid;
}

std::string render_simulate(const RunConfig& c) {
  require_format(c, {"json", "grid", "armour"});
  const UniformField field(Seed{c.seed}, c.d);
  const BoxRegion box = BoxRegion::centered(c.d, c.n);
  if (c.format == "armour") {
    const auto sites = box_sites(box);
    return armour_json(compute_armour(field, sites, c.cap), field, c);
  }
  const DensityMode mode = density_mode_from_string(c.mode);
  const Configuration cfg = mode == DensityMode::kThermodynamic
                                ? sample_window(field, box, c.cap)
                                : jam(field, box);
  if (c.format == "grid") return configuration_grid(cfg, box, c);
  return configuration_json(cfg, c.seed, c);
}

std::string render_oracle(const RunConfig& c) {
  require_format(c, {"csv", "json"});
  BoundaryCondition boundary;
  if (c.boundary_left) boundary.set(Site{-1}, true);
  if (c.boundary_right) boundary.set(Site{c.size}, true);
  const ExactDistribution dist = enumerate_jam(c.size, boundary);
  return c.format == "json" ? oracle_json(dist, c) : oracle_csv(dist, c);
}

}  // namespace

std::string render_report(const RunConfig& config) {
  RunConfig c = config;
  if (c.format.empty()) c.format = default_format(c.command);

  if (c.command == "simulate") return render_simulate(c);

  if (c.command == "density") {
    require_format(c, {"csv", "json"});
    const DensityEstimate e =
        estimate_density(c.d, c.n, c.replicates, c.seed,
                         density_mode_from_string(c.mode), c.threads, c.cap);
    return c.format == "json" ? density_json(e, c) : density_csv(e, c);
  }
  if (c.command == "covariance") {
    require_format(c, {"csv", "json"});
    const CovarianceTable t =
        estimate_covariance(c.d, c.r_max, c.replicates, c.seed, c.threads, c.cap);
    return c.format == "json" ? covariance_json(t, c) : covariance_csv(t, c);
  }
  if (c.command == "clt") {
    require_format(c, {"csv", "json"});
    const CltReport r = clt_diagnostic(c.d, c.n, c.replicates, c.seed, c.threads, c.cap);
    return c.format == "json" ? clt_json(r, c) : clt_csv(r, c);
  }
  if (c.command == "lil") {
    require_format(c, {"csv", "json"});
    const LilReport r = lil_diagnostic(c.d, c.n_list, c.replicates, c.seed, c.sigma2,
                                       c.rho, c.threads, c.cap);
    return c.format == "json" ? lil_json(r, c) : lil_csv(r, c);
  }
  if (c.command == "concentration") {
    require_format(c, {"csv", "json"});
    const std::vector<double> grid =
        c.eps_grid.empty() ? default_grid(5, 5, 50) : c.eps_grid;
    const TailReport t =
        concentration_empirics(c.d, c.n, c.replicates, grid, c.seed,
                               density_mode_from_string(c.mode), c.threads, c.cap, c.rho);
    return c.format == "json" ? tail_json(t, c) : tail_csv(t, c);
  }
  if (c.command == "coupling") {
    require_format(c, {"csv", "json"});
    const std::vector<double> grid =
        c.m_grid.empty() ? default_grid(0, 2, 12) : c.m_grid;
    const TailReport t =
        coupling_discrepancy(c.n, c.replicates, c.seed, grid, c.threads, c.cap);
    return c.format == "json" ? tail_json(t, c) : tail_csv(t, c);
  }
  if (c.command == "bounds") {
    require_format(c, {"csv", "json"});
    const BoundsReport r = evaluate_bounds(c.d, c.n, c.eps, c.k, c.l);
    return c.format == "json" ? bounds_json(r, c) : bounds_csv(r, c);
  }
  if (c.command == "exact") {
    require_format(c, {"csv", "json"});
    return c.format == "json" ? exact_json(c) : exact_csv(c);
  }
  if (c.command == "oracle") return render_oracle(c);

  throw std::invalid_argument("unknown command '" + c.command + "'");
}

int run(const RunConfig& config) {
  const std::string report = render_report(config);
  if (config.output_path.empty()) {
    std::cout << report;
    std::cout.flush();
  } else {
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot open output file '" + config.output_path + "'");
    out << report;
  }
  return 0;
}

namespace {

struct SelftestContext {
  std::ostream& out;
  int failures = 0;

  void check(const std::string& name, bool pass, const std::string& detail) {
    out << (pass ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) out << " " << detail;
    out << "\n";
    if (!pass) ++failures;
  }
};

}  // namespace

int selftest(std::uint64_t seed, int threads, bool corrupt_field, std::ostream& out) {
  const bool previous = field_detail::g_selftest_corruption;
  field_detail::g_selftest_corruption = corrupt_field;

  SelftestContext ctx{out};
  const double rho = 0.5 * (1.0 - std::exp(-2.0));

  {
    double assembled = 0;
    bool ok = true;
    std::string detail;
    try {
      assembled = exact_density();
      ok = std::abs(assembled - rho) < 1e-12;
      detail = "value=" + format_double(assembled);
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    ctx.check("exact-density-assembly", ok, detail);
  }

  {
    const double e = std::exp(1.0);
    const bool ok = std::abs(concentration_constant(1) - (4 * e - 3)) < 1e-12 &&
                    std::abs(mean_deviation_bound(1, 5) - 2 * (e - 1)) < 1e-12 &&
                    std::abs(mixing_alpha_bound(1, 1, 8) - 9.0) < 1e-12 &&
                    std::abs(mixing_alpha_one_inf_bound(1) - 51.0) < 1e-12 &&
                    std::abs(armour_escape_bound(1, 3) - 1.0 / 3.0) < 1e-12;
    ctx.check("bounds-identities", ok,
              "B(1)=" + format_double(concentration_constant(1)));
  }

  {
    const ExactDistribution dist = enumerate_jam(3);
    const bool ok = dist.support.size() == 2 &&
                    dist.support.at(1) == Rational(1, 3) &&
                    dist.support.at(2) == Rational(2, 3) &&
                    dist.mean() == Rational(5, 3);
    ctx.check("oracle-size-3", ok, "mean=" + dist.mean().to_string());
  }

  {
    const std::int64_t replicates = 200000;
    const DensityEstimate e = estimate_density(1, 0, replicates, seed,
                                               DensityMode::kThermodynamic, threads);
    const double sigma = std::sqrt(rho * (1 - rho) / static_cast<double>(replicates));
    const bool ok = std::abs(e.mean - rho) <= 3 * sigma;
    ctx.check("density-thermo-origin", ok,
              "mean=" + format_double(e.mean) + " target=" + format_double(rho));
  }

  {
    const int size = 3;
    const std::int64_t replicates = 100000;
    const ExactDistribution dist = enumerate_jam(size);
    std::vector<std::int64_t> histogram(static_cast<std::size_t>(size) + 1, 0);
    const BoxRegion box = BoxRegion::centered(1, 1);
    const auto sites = box_sites(box);
    for (std::int64_t r = 0; r < replicates; ++r) {
      const UniformField field(Seed{seed + static_cast<std::uint64_t>(r)}, 1);
      ++histogram[static_cast<std::size_t>(count_occupied(jam(field, sites)))];
    }
    bool ok = true;
    for (std::size_t count = 0; count < histogram.size(); ++count) {
      const auto it = dist.support.find(static_cast<std::int64_t>(count));
      const double p = it == dist.support.end() ? 0.0 : it->second.to_double();
      const double phat =
          static_cast<double>(histogram[count]) / static_cast<double>(replicates);
      const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(replicates));
      if (p == 0.0 ? histogram[count] != 0 : std::abs(phat - p) > 4 * sigma) ok = false;
    }
    ctx.check("oracle-vs-simulator-size-3", ok,
              "p1=" + format_double(static_cast<double>(histogram[1]) /
                                    static_cast<double>(replicates)));
  }

  {
    const std::int64_t replicates = 100000;
    std::int64_t singletons = 0;
    const Site origin = Site::origin(1);
    for (std::int64_t r = 0; r < replicates; ++r) {
      const UniformField field(Seed{seed + static_cast<std::uint64_t>(r)}, 1);
      singletons += compute_armour(field, origin).members.size() == 1;
    }
    const double p = 1.0 / 3.0;
    const double phat = static_cast<double>(singletons) / static_cast<double>(replicates);
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(replicates));
    ctx.check("armour-singleton-frequency", std::abs(phat - p) <= 4 * sigma,
              "p=" + format_double(phat));
  }

  {
    std::int64_t mismatches = 0, compared = 0;
    for (const int d : {1, 2}) {
      const BoxRegion box = BoxRegion::centered(d, 12);
      const auto sites = box_sites(box);
      const Site origin = Site::origin(d);
      for (std::int64_t r = 0; r < 500; ++r) {
        const UniformField field(Seed{seed + static_cast<std::uint64_t>(r)}, d);
        const Armour armour = compute_armour(field, origin);
        bool contained = true;
        for (const Site& member : armour.members)
          if (!box.contains(member)) contained = false;
        if (!contained) continue;
        ++compared;
        const bool direct = sample_occupancy(field, origin);
        const bool via_box = jam(field, sites).occupied(origin);
        mismatches += direct != via_box;
      }
    }
    ctx.check("armour-box-consistency", mismatches == 0 && compared > 0,
              "compared=" + std::to_string(compared) +
                  " mismatches=" + std::to_string(mismatches));
  }

  {
    const DensityEstimate a =
        estimate_density(1, 5, 2000, seed, DensityMode::kFreeBoundary, 1);
    const DensityEstimate b =
        estimate_density(1, 5, 2000, seed, DensityMode::kFreeBoundary, 2);
    const DensityEstimate c =
        estimate_density(1, 5, 2000, seed, DensityMode::kFreeBoundary, 1);
    const bool ok = a.mean == b.mean && a.std_err == b.std_err && a.mean == c.mean;
    ctx.check("determinism-across-threads", ok, "mean=" + format_double(a.mean));
  }

  field_detail::g_selftest_corruption = previous;
  out << (ctx.failures == 0 ? "selftest: all checks passed\n"
                            : "selftest: " + std::to_string(ctx.failures) +
                                  " check(s) failed\n");
  return ctx.failures == 0 ? 0 : 1;
}

}  // namespace parking
