#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "parking/run.hpp"

using namespace parking;

namespace {

RunConfig density_config() {
  RunConfig c;
  c.command = "density";
  c.d = 1;
  c.n = 2;
  c.replicates = 500;
  c.seed = 7;
  c.mode = "thermo";
  return c;
}

}  // namespace

TEST_CASE("density CSV carries the fixed header and provenance lines") {
  const std::string csv = render_report(density_config());
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("# version=", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("# config=", 0) == 0);
  CHECK(line.find("\"command\":\"density\"") != std::string::npos);
  std::getline(lines, line);
  CHECK(line == "mean,stderr,replicates,n,d,mode");
  std::getline(lines, line);
  CHECK(line.find(",500,2,1,thermo") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  RunConfig c = density_config();
  c.threads = 1;
  const std::string first = render_report(c);
  const std::string second = render_report(c);
  CHECK(first == second);
  c.threads = 3;
  CHECK(render_report(c) == first);

  RunConfig clt;
  clt.command = "clt";
  clt.d = 1;
  clt.n = 5;
  clt.replicates = 1000;
  clt.seed = 3;
  clt.threads = 1;
  const std::string a = render_report(clt);
  clt.threads = 2;
  CHECK(render_report(clt) == a);

  RunConfig lil;
  lil.command = "lil";
  lil.d = 1;
  lil.n_list = {5, 20};
  lil.replicates = 40;
  lil.seed = 4;
  lil.sigma2 = 0.018;
  lil.threads = 1;
  const std::string p = render_report(lil);
  lil.threads = 3;
  CHECK(render_report(lil) == p);
}

TEST_CASE("json envelope embeds version and config") {
  RunConfig c = density_config();
  c.format = "json";
  const std::string doc = render_report(c);
  CHECK(doc.find("\"version\": \"") != std::string::npos);
  CHECK(doc.find("\"config\": {") != std::string::npos);
  CHECK(doc.find("\"report\": {") != std::string::npos);
  CHECK(doc.find("\"count_variance\"") != std::string::npos);
}

TEST_CASE("run config JSON round-trips") {
  RunConfig c;
  c.command = "concentration";
  c.d = 2;
  c.n = 12;
  c.replicates = 12345;
  c.seed = 0xdeadbeefULL;
  c.eps_grid = {5, 10, 15};
  c.mode = "thermo";
  c.rho = 0.25;
  c.format = "json";
  const RunConfig back = run_config_from_json_text(run_config_to_json(c));
  CHECK(back.command == c.command);
  CHECK(back.d == c.d);
  CHECK(back.n == c.n);
  CHECK(back.replicates == c.replicates);
  CHECK(back.seed == c.seed);
  CHECK(back.eps_grid == c.eps_grid);
  REQUIRE(back.rho.has_value());
  CHECK(*back.rho == *c.rho);
  CHECK(back.format == c.format);
}

TEST_CASE("seed strings parse as decimal or hex") {
  const RunConfig a = run_config_from_json_text(
      R"({"command":"exact","seed":"0x10"})");
  CHECK(a.seed == 16);
  const RunConfig b = run_config_from_json_text(
      R"({"command":"exact","seed":12345678901234567890})");
  CHECK(b.seed == 12345678901234567890ull);
}

TEST_CASE("oracle report shows exact rationals") {
  RunConfig c;
  c.command = "oracle";
  c.size = 3;
  c.format = "json";
  const std::string doc = render_report(c);
  CHECK(doc.find("\"1\": \"1/3\"") != std::string::npos);
  CHECK(doc.find("\"2\": \"2/3\"") != std::string::npos);
  CHECK(doc.find("\"mean\": \"5/3\"") != std::string::npos);
}

TEST_CASE("bounds report carries the d=1 constant") {
  RunConfig c;
  c.command = "bounds";
  c.d = 1;
  c.n = 50;
  c.eps = 30;
  const std::string doc = render_report(c);  // default format json
  CHECK(doc.find("\"B\": 7.873127313836182") != std::string::npos);
}

TEST_CASE("simulate emits the configuration document and the grid") {
  RunConfig c;
  c.command = "simulate";
  c.d = 2;
  c.n = 3;
  c.seed = 5;
  c.mode = "free";
  c.format = "json";
  const std::string doc = render_report(c);
  CHECK(doc.find("\"dimension\": 2") != std::string::npos);
  CHECK(doc.find("\"sites\": [") != std::string::npos);
  CHECK(doc.find("\"occupancy\": [") != std::string::npos);
  CHECK(doc.find("\"seed\": 5") != std::string::npos);

  c.format = "grid";
  const std::string grid = render_report(c);
  std::istringstream lines(grid);
  std::string line;
  std::getline(lines, line);  // version
  std::getline(lines, line);  // config
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    CHECK(line.size() == 7);
    for (const char ch : line) CHECK((ch == '0' || ch == '1'));
    ++rows;
  }
  CHECK(rows == 7);
}

TEST_CASE("unknown command and bad format are usage errors") {
  RunConfig c;
  c.command = "frobnicate";
  CHECK_THROWS_AS(render_report(c), std::invalid_argument);
  RunConfig d = density_config();
  d.format = "xml";
  CHECK_THROWS_WITH_AS(render_report(d),
                       doctest::Contains("--format"), std::invalid_argument);
}

TEST_CASE("run writes the report to a file") {
  RunConfig c;
  c.command = "exact";
  c.format = "json";
  c.output_path = "/tmp/parking_test_exact.json";
  CHECK(run(c) == 0);
  std::ifstream in(c.output_path);
  REQUIRE(in.good());
  std::ostringstream text;
  text << in.rdbuf();
  CHECK(text.str() == render_report(c));
  std::remove(c.output_path.c_str());
}

TEST_CASE("selftest output is deterministic and passes on a fresh build") {
  std::ostringstream first, second;
  const int code1 = selftest(0, 1, false, first);
  const int code2 = selftest(0, 2, false, second);
  CHECK(code1 == 0);
  CHECK(code2 == 0);
  CHECK(first.str() == second.str());
  CHECK(first.str().find("selftest: all checks passed") != std::string::npos);
}

TEST_CASE("selftest fails loudly when the field is corrupted") {
  std::ostringstream out;
  const int code = selftest(0, 1, true, out);
  CHECK(code != 0);
  CHECK(out.str().find("[FAIL]") != std::string::npos);
}
