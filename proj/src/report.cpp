#include "parking/report.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "parking/version.hpp"

namespace parking {

using nlohmann::json;

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), ptr);
}

namespace {

// include_execution: threads and output path determine how a run executes,
// not what it computes; the provenance block embedded in reports leaves them
// out so byte-identity holds across worker counts.
json config_to_json(const RunConfig& c, bool include_execution) {
  json j;
  j["command"] = c.command;
  j["d"] = c.d;
  j["n"] = c.n;
  j["replicates"] = c.replicates;
  j["seed"] = c.seed;
  j["cap"] = c.cap;
  j["mode"] = c.mode;
  j["eps_grid"] = c.eps_grid;
  j["m_grid"] = c.m_grid;
  j["n_list"] = c.n_list;
  j["sigma2"] = c.sigma2;
  if (c.rho) j["rho"] = *c.rho;
  j["r_max"] = c.r_max;
  j["size"] = c.size;
  j["boundary_left"] = c.boundary_left;
  j["boundary_right"] = c.boundary_right;
  j["eps"] = c.eps;
  j["k"] = c.k;
  j["l"] = c.l;
  j["format"] = c.format;
  if (include_execution) {
    j["threads"] = c.threads;
    j["output_path"] = c.output_path;
  }
  return j;
}

std::uint64_t parse_seed_value(const json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw std::invalid_argument("seed must be non-negative");
    return static_cast<std::uint64_t>(v);
  }
  if (j.is_string()) return std::stoull(j.get<std::string>(), nullptr, 0);
  throw std::invalid_argument("seed must be a number or a string");
}

std::string csv_preamble(const RunConfig& config) {
  std::string out = "# version=";
  out += kVersion;
  out += "\n# config=";
  out += config_to_json(config, false).dump();
  out += "\n";
  return out;
}

std::string envelope(const RunConfig& config, json payload) {
  json doc;
  doc["version"] = kVersion;
  doc["config"] = config_to_json(config, false);
  doc["report"] = std::move(payload);
  return doc.dump(2) + "\n";
}

json exact_payload() {
  const CaseFamilySums sums = case_family_sums();
  json j;
  j["singleton"] = sums.singleton;
  j["one_sided_each"] = sums.one_sided_each;
  j["two_sided"] = sums.two_sided;
  j["even_one_sided_each"] = sums.even_one_sided_each;
  j["even_two_sided"] = sums.even_two_sided;
  j["rho"] = exact_density();
  json cases = json::array();
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      json row;
      row["left"] = m;
      row["right"] = n;
      row["probability"] = case_probability({m, n});
      cases.push_back(row);
    }
  j["case_probabilities"] = cases;
  return j;
}

}  // namespace

std::string default_format(const std::string& command) {
  if (command == "bounds" || command == "exact" || command == "oracle" ||
      command == "simulate")
    return "json";
  return "csv";
}

std::string run_config_to_json(const RunConfig& config) {
  return config_to_json(config, true).dump(2) + "\n";
}

RunConfig run_config_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  if (j.contains("d")) c.d = j.at("d").get<int>();
  if (j.contains("n")) c.n = j.at("n").get<int>();
  if (j.contains("replicates")) c.replicates = j.at("replicates").get<std::int64_t>();
  if (j.contains("seed")) c.seed = parse_seed_value(j.at("seed"));
  if (j.contains("cap")) c.cap = j.at("cap").get<std::int32_t>();
  if (j.contains("mode")) c.mode = j.at("mode").get<std::string>();
  if (j.contains("eps_grid")) c.eps_grid = j.at("eps_grid").get<std::vector<double>>();
  if (j.contains("m_grid")) c.m_grid = j.at("m_grid").get<std::vector<double>>();
  if (j.contains("n_list")) c.n_list = j.at("n_list").get<std::vector<int>>();
  if (j.contains("sigma2")) c.sigma2 = j.at("sigma2").get<double>();
  if (j.contains("rho") && !j.at("rho").is_null()) c.rho = j.at("rho").get<double>();
  if (j.contains("r_max")) c.r_max = j.at("r_max").get<int>();
  if (j.contains("size")) c.size = j.at("size").get<int>();
  if (j.contains("boundary_left")) c.boundary_left = j.at("boundary_left").get<bool>();
  if (j.contains("boundary_right")) c.boundary_right = j.at("boundary_right").get<bool>();
  if (j.contains("eps")) c.eps = j.at("eps").get<double>();
  if (j.contains("k")) c.k = j.at("k").get<int>();
  if (j.contains("l")) c.l = j.at("l").get<int>();
  if (j.contains("threads")) c.threads = j.at("threads").get<int>();
  if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
  if (j.contains("format")) c.format = j.at("format").get<std::string>();
  return c;
}

std::string density_csv(const DensityEstimate& e, const RunConfig& config) {
  std::string out = csv_preamble(config);
  out += "mean,stderr,replicates,n,d,mode\n";
  out += format_double(e.mean) + "," + format_double(e.std_err) + "," +
         std::to_string(e.replicates) + "," + std::to_string(e.n) + "," +
         std::to_string(e.d) + "," + to_string(e.mode) + "\n";
  return out;
}

std::string density_json(const DensityEstimate& e, const RunConfig& config) {
  json j;
  j["mean"] = e.mean;
  j["stderr"] = e.std_err;
  j["replicates"] = e.replicates;
  j["n"] = e.n;
  j["d"] = e.d;
  j["mode"] = to_string(e.mode);
  j["count_mean"] = e.count_mean;
  j["count_variance"] = e.count_variance;
  j["box_size"] = e.box_size;
  return envelope(config, j);
}

namespace {

std::string displacement_key(const Site& s) {
  std::string out;
  for (int k = 0; k < s.dimension(); ++k) {
    if (k) out += ":";
    out += std::to_string(s[k]);
  }
  return out;
}

}  // namespace

std::string covariance_csv(const CovarianceTable& t, const RunConfig& config) {
  std::string out = csv_preamble(config);
  out += "record,displacement,covariance,stderr\n";
  for (const auto& e : t.entries)
    out += "entry," + displacement_key(e.displacement) + "," +
           format_double(e.covariance) + "," + format_double(e.std_err) + "\n";
  out += "sigma2_truncated,," + format_double(t.sigma2_truncated) + ",\n";
  return out;
}

std::string covariance_json(const CovarianceTable& t, const RunConfig& config) {
  json entries = json::array();
  for (const auto& e : t.entries) {
    json row;
    row["displacement"] = displacement_key(e.displacement);
    row["covariance"] = e.covariance;
    row["stderr"] = e.std_err;
    entries.push_back(row);
  }
  json j;
  j["entries"] = entries;
  j["sigma2_truncated"] = t.sigma2_truncated;
  j["samples"] = t.samples;
  j["r_max"] = t.r_max;
  j["d"] = t.d;
  return envelope(config, j);
}

std::string tail_csv(const TailReport& t, const RunConfig& config) {
  std::string out = csv_preamble(config);
  out += "# kind=" + t.kind + " rho_used=" + format_double(t.rho_used) + "\n";
  out += "threshold,empirical,bound,exceed_count\n";
  for (const auto& e : t.entries)
    out += format_double(e.threshold) + "," + format_double(e.empirical) + "," +
           format_double(e.bound) + "," + std::to_string(e.exceed_count) + "\n";
  return out;
}

std::string tail_json(const TailReport& t, const RunConfig& config) {
  json entries = json::array();
  for (const auto& e : t.entries) {
    json row;
    row["threshold"] = e.threshold;
    row["empirical"] = e.empirical;
    row["bound"] = e.bound;
    row["exceed_count"] = e.exceed_count;
    entries.push_back(row);
  }
  json j;
  j["kind"] = t.kind;
  j["entries"] = entries;
  j["replicates"] = t.replicates;
  j["n"] = t.n;
  j["d"] = t.d;
  j["rho_used"] = t.rho_used;
  return envelope(config, j);
}

std::string clt_csv(const CltReport& r, const RunConfig& config) {
  std::string out = csv_preamble(config);
  out += "record,index,value\n";
  out += "ks_statistic,," + format_double(r.ks_statistic) + "\n";
  out += "p_value,," + format_double(r.p_value) + "\n";
  out += "count_mean,," + format_double(r.count_mean) + "\n";
  out += "count_stddev,," + format_double(r.count_stddev) + "\n";
  for (std::size_t i = 0; i < r.standardized.size(); ++i)
    out += "z," + std::to_string(i) + "," + format_double(r.standardized[i]) + "\n";
  return out;
}

std::string clt_json(const CltReport& r, const RunConfig& config) {
  json j;
  j["ks_statistic"] = r.ks_statistic;
  j["p_value"] = r.p_value;
  j["count_mean"] = r.count_mean;
  j["count_stddev"] = r.count_stddev;
  j["standardized"] = r.standardized;
  j["replicates"] = r.replicates;
  j["n"] = r.n;
  j["d"] = r.d;
  return envelope(config, j);
}

std::string lil_csv(const LilReport& r, const RunConfig& config) {
  std::string out = csv_preamble(config);
  out += "record,replicate,n,count,ratio\n";
  for (std::size_t rep = 0; rep < r.ratios.size(); ++rep)
    for (std::size_t j = 0; j < r.n_list.size(); ++j)
      out += "path," + std::to_string(rep) + "," + std::to_string(r.n_list[j]) + "," +
             std::to_string(r.counts[rep][j]) + "," + format_double(r.ratios[rep][j]) +
             "\n";
  for (std::size_t j = 0; j < r.n_list.size(); ++j)
    out += "max_abs,," + std::to_string(r.n_list[j]) + ",," +
           format_double(r.max_abs_ratio[j]) + "\n";
  return out;
}

std::string lil_json(const LilReport& r, const RunConfig& config) {
  json j;
  j["n_list"] = r.n_list;
  j["counts"] = r.counts;
  j["ratios"] = r.ratios;
  j["max_abs_ratio"] = r.max_abs_ratio;
  j["sigma2"] = r.sigma2;
  j["rho"] = r.rho;
  j["replicates"] = r.replicates;
  j["d"] = r.d;
  return envelope(config, j);
}

std::string bounds_csv(const BoundsReport& r, const RunConfig& config) {
  std::string out = csv_preamble(config);
  out += "name,value\n";
  for (const auto& [name, value] : r.values)
    out += name + "," + format_double(value) + "\n";
  return out;
}

std::string bounds_json(const BoundsReport& r, const RunConfig& config) {
  json values;
  for (const auto& [name, value] : r.values) values[name] = value;
  json j;
  j["values"] = values;
  j["d"] = r.d;
  j["n"] = r.n;
  j["eps"] = r.eps;
  j["k"] = r.k;
  j["l"] = r.l;
  return envelope(config, j);
}

std::string exact_csv(const RunConfig& config) {
  const json payload = exact_payload();
  std::string out = csv_preamble(config);
  out += "name,value\n";
  for (const auto& key : {"singleton", "one_sided_each", "two_sided",
                          "even_one_sided_each", "even_two_sided", "rho"})
    out += std::string(key) + "," + format_double(payload.at(key).get<double>()) + "\n";
  for (const auto& row : payload.at("case_probabilities"))
    out += "case_" + std::to_string(row.at("left").get<int>()) + "_" +
           std::to_string(row.at("right").get<int>()) + "," +
           format_double(row.at("probability").get<double>()) + "\n";
  return out;
}

std::string exact_json(const RunConfig& config) {
  return envelope(config, exact_payload());
}

std::string oracle_csv(const ExactDistribution& dist, const RunConfig& config) {
  std::string out = csv_preamble(config);
  out += "record,count,probability\n";
  for (const auto& [count, prob] : dist.support)
    out += "atom," + std::to_string(count) + "," + prob.to_string() + "\n";
  out += "mean,," + dist.mean().to_string() + "\n";
  return out;
}

std::string oracle_json(const ExactDistribution& dist, const RunConfig& config) {
  json atoms;
  for (const auto& [count, prob] : dist.support)
    atoms[std::to_string(count)] = prob.to_string();
  json j;
  j["size"] = dist.size;
  j["distribution"] = atoms;
  j["mean"] = dist.mean().to_string();
  return envelope(config, j);
}

std::string configuration_json(const Configuration& c, std::uint64_t seed,
                               const RunConfig& config) {
  json sites = json::array();
  json occupancy = json::array();
  for (std::size_t k = 0; k < c.sites.size(); ++k) {
    json coords = json::array();
    for (int a = 0; a < c.sites[k].dimension(); ++a) coords.push_back(c.sites[k][a]);
    sites.push_back(coords);
    occupancy.push_back(static_cast<int>(c.occupancy[k]));
  }
  json j;
  j["dimension"] = c.sites.empty() ? 0 : c.sites.front().dimension();
  j["sites"] = sites;
  j["occupancy"] = occupancy;
  j["seed"] = seed;
  return envelope(config, j);
}

std::string armour_json(const Armour& armour, const UniformField& field,
                        const RunConfig& config) {
  const auto site_list = [](const std::vector<Site>& sites) {
    json list = json::array();
    for (const Site& s : sites) {
      json coords = json::array();
      for (int a = 0; a < s.dimension(); ++a) coords.push_back(s[a]);
      list.push_back(coords);
    }
    return list;
  };
  json marks = json::array();
  for (const Site& member : armour.members) marks.push_back(field.uniform_at(member));
  json j;
  j["seedset"] = site_list(armour.seedset);
  j["members"] = site_list(armour.members);
  j["marks"] = marks;
  j["seed"] = armour.seed.value;
  return envelope(config, j);
}

std::string configuration_grid(const Configuration& c, const BoxRegion& box,
                               const RunConfig& config) {
  std::string out = csv_preamble(config);
  const int d = box.dimension();
  const std::int64_t width = 2 * static_cast<std::int64_t>(box.radius()) + 1;
  const std::int64_t total = static_cast<std::int64_t>(c.sites.size());
  // sites are lex-sorted, which for a box is row-major: the last coordinate
  // spans each line, the second-to-last spans lines, and for d >= 3 a blank
  // line separates consecutive hyperplane blocks.
  std::string line;
  std::int64_t emitted_lines = 0;
  for (std::int64_t k = 0; k < total; ++k) {
    line += c.occupancy[static_cast<std::size_t>(k)] ? '1' : '0';
    if ((k + 1) % width == 0) {
      out += line + "\n";
      line.clear();
      ++emitted_lines;
      if (d >= 3 && emitted_lines % width == 0 && k + 1 < total) out += "\n";
    }
  }
  return out;
}

}  // namespace parking
