#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "parking/armour.hpp"
#include "parking/run.hpp"
#include "parking/stats.hpp"
#include "parking/version.hpp"

namespace {

std::uint64_t parse_seed_text(const std::string& text) {
  try {
    std::size_t consumed = 0;
    const std::uint64_t value = std::stoull(text, &consumed, 0);
    if (consumed != text.size()) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("--seed: expected a decimal or 0x-hex integer, got '" +
                                text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parking: lattice parking-process simulation and exact computation"};
  app.set_version_flag("--version", parking::kVersion);
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON RunConfig file; replaces all subcommand flags");

  parking::RunConfig cfg;
  std::string seed_text = "0";
  bool corrupt_field = false;

  auto add_output_flags = [&](CLI::App* sub, const std::string& format_hint) {
    sub->add_option("--out", cfg.output_path, "output path (stdout if omitted)");
    sub->add_option("--format", cfg.format, "output format (default " + format_hint + ")");
  };
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_text, "field seed, decimal or 0x-hex")
        ->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads, 0 = all cores")
        ->capture_default_str();
    sub->add_option("--cap", cfg.cap, "armour search cap")->capture_default_str();
  };

  auto* simulate = app.add_subcommand("simulate", "jam one region and dump it");
  simulate->add_option("--d", cfg.d, "dimension")->capture_default_str();
  simulate->add_option("--n", cfg.n, "box radius")->capture_default_str();
  simulate->add_option("--mode", cfg.mode, "thermo|free")->capture_default_str();
  add_run_flags(simulate);
  add_output_flags(simulate, "json");

  auto* density = app.add_subcommand("density", "Monte Carlo occupation density");
  density->add_option("--d", cfg.d)->capture_default_str();
  density->add_option("--n", cfg.n)->capture_default_str();
  density->add_option("--replicates", cfg.replicates)->capture_default_str();
  density->add_option("--mode", cfg.mode, "thermo|free")->capture_default_str();
  add_run_flags(density);
  add_output_flags(density, "csv");

  auto* covariance = app.add_subcommand("covariance", "stationary covariance table");
  covariance->add_option("--d", cfg.d)->capture_default_str();
  covariance->add_option("--r-max", cfg.r_max, "max displacement norm")
      ->capture_default_str();
  covariance->add_option("--samples", cfg.replicates, "window samples")
      ->capture_default_str();
  add_run_flags(covariance);
  add_output_flags(covariance, "csv");

  auto* clt = app.add_subcommand("clt", "normality diagnostic for the count");
  clt->add_option("--d", cfg.d)->capture_default_str();
  clt->add_option("--n", cfg.n)->capture_default_str();
  clt->add_option("--replicates", cfg.replicates)->capture_default_str();
  add_run_flags(clt);
  add_output_flags(clt, "csv");

  auto* lil = app.add_subcommand("lil", "iterated-logarithm ratio paths");
  lil->add_option("--d", cfg.d)->capture_default_str();
  lil->add_option("--n-list", cfg.n_list, "strictly increasing box radii")
      ->expected(-1);
  lil->add_option("--replicates", cfg.replicates)->capture_default_str();
  lil->add_option("--sigma2", cfg.sigma2, "asymptotic variance per site");
  lil->add_option("--rho", cfg.rho, "density (defaults to the exact d=1 value)");
  add_run_flags(lil);
  add_output_flags(lil, "csv");

  auto* concentration =
      app.add_subcommand("concentration", "empirical tails vs analytic bound");
  concentration->add_option("--d", cfg.d)->capture_default_str();
  concentration->add_option("--n", cfg.n)->capture_default_str();
  concentration->add_option("--replicates", cfg.replicates)->capture_default_str();
  concentration->add_option("--mode", cfg.mode, "thermo|free")->capture_default_str();
  concentration->add_option("--eps-grid", cfg.eps_grid, "thresholds")->expected(-1);
  concentration->add_option("--rho", cfg.rho, "density override");
  add_run_flags(concentration);
  add_output_flags(concentration, "csv");

  auto* coupling =
      app.add_subcommand("coupling", "d=1 thermodynamic vs free-boundary coupling");
  coupling->add_option("--n", cfg.n)->capture_default_str();
  coupling->add_option("--replicates", cfg.replicates)->capture_default_str();
  coupling->add_option("--m-grid", cfg.m_grid, "thresholds")->expected(-1);
  add_run_flags(coupling);
  add_output_flags(coupling, "csv");

  auto* bounds = app.add_subcommand("bounds", "closed-form constants and bounds");
  bounds->add_option("--d", cfg.d)->capture_default_str();
  bounds->add_option("--n", cfg.n)->capture_default_str();
  bounds->add_option("--eps", cfg.eps)->capture_default_str();
  bounds->add_option("--k", cfg.k)->capture_default_str();
  bounds->add_option("--l", cfg.l)->capture_default_str();
  add_output_flags(bounds, "json");

  auto* exact = app.add_subcommand("exact", "d=1 armour-case calculus");
  add_output_flags(exact, "json");

  auto* oracle = app.add_subcommand("oracle", "exact count distribution by enumeration");
  oracle->add_option("--size", cfg.size, "path size, 1..10")->capture_default_str();
  oracle->add_flag("--left-frozen", cfg.boundary_left, "freeze a 1 left of the path");
  oracle->add_flag("--right-frozen", cfg.boundary_right, "freeze a 1 right of the path");
  add_output_flags(oracle, "json");

  auto* selftest_cmd = app.add_subcommand("selftest", "fast release-gate checks");
  selftest_cmd->add_option("--seed", seed_text)->capture_default_str();
  selftest_cmd->add_option("--threads", cfg.threads)->capture_default_str();
  selftest_cmd->add_flag("--corrupt-field", corrupt_field)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("--config: cannot open '" + config_path + "'");
      std::ostringstream text;
      text << in.rdbuf();
      return parking::run(parking::run_config_from_json_text(text.str()));
    }

    cfg.seed = parse_seed_text(seed_text);
    if (selftest_cmd->parsed())
      return parking::selftest(cfg.seed, cfg.threads, corrupt_field, std::cout);

    const auto chosen = app.get_subcommands();
    if (chosen.empty()) {
      std::cerr << app.help();
      return 1;
    }
    cfg.command = chosen.front()->get_name();
    return parking::run(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
