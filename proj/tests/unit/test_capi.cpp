#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <regex>
#include <sstream>
#include <string>

#include "rdlab/rdlab.h"

namespace fs = std::filesystem;

TEST_CASE("version and command list") {
  CHECK(std::string(rdlab_version()).size() > 0);
  int n = 0;
  for (const char* const* c = rdlab_commands(); *c; ++c) ++n;
  CHECK(n == 6);
}

TEST_CASE("config errors map to status codes") {
  rdlab_config* cfg = nullptr;
  CHECK(rdlab_config_parse("unknown = 1\n", &cfg) == RDLAB_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(rdlab_last_error()).find("unknown") != std::string::npos);
  CHECK(rdlab_config_parse(nullptr, &cfg) == RDLAB_INVALID_ARGUMENT);
  CHECK(rdlab_config_load("/nonexistent/x.conf", &cfg) == RDLAB_IO);

  REQUIRE(rdlab_config_parse("mass = 1\n", &cfg) == RDLAB_OK);
  CHECK(std::string(rdlab_last_error()).empty());
  CHECK(rdlab_config_set(cfg, "grid.n", "32") == RDLAB_OK);
  const char* v = nullptr;
  CHECK(rdlab_config_value(cfg, "grid.n", &v) == RDLAB_OK);
  CHECK(std::string(v) == "32");
  CHECK(rdlab_config_value(cfg, "output.dir", &v) == RDLAB_OK);
  CHECK(std::string(v) == "out");
  rdlab_report* rep = nullptr;
  CHECK(rdlab_run(cfg, "no-such-command", nullptr, 0, &rep) == RDLAB_INVALID_ARGUMENT);
  CHECK(rep == nullptr);
  CHECK(rdlab_config_set(cfg, "grid.n", "100") == RDLAB_OK);
  CHECK(rdlab_run(cfg, "algebra-check", nullptr, 0, &rep) == RDLAB_CONFIG);
  rdlab_config_free(cfg);
}

TEST_CASE("run writes report and tables atomically") {
  const fs::path dir = fs::path("capi_test_out");
  fs::remove_all(dir);
  rdlab_config* cfg = nullptr;
  const std::string text = "algebra.random_momenta = 200\nregulators.epsilon = 0.1, 0.03\n";
  REQUIRE(rdlab_config_parse(text.c_str(), &cfg) == RDLAB_OK);
  for (const char* cmd : {"algebra-check", "locality"}) {
    rdlab_report* rep = nullptr;
    REQUIRE(rdlab_run(cfg, cmd, dir.c_str(), 42, &rep) == RDLAB_OK);
    CHECK(rdlab_report_passed(rep) == 1);
    const auto j = nlohmann::json::parse(rdlab_report_json(rep));
    CHECK(j["command"] == cmd);
    CHECK(j["seed"] == 42);
    CHECK(j["config_text"] == text);
    CHECK(j["config"]["regulators.epsilon"] == "0.1, 0.03");
    CHECK(j["effective_config"]["grid.n"] == "64");
    CHECK(j["checks"].size() > 0);
    rdlab_report_free(rep);
    CHECK(fs::exists(dir / (std::string(cmd) + ".report.json")));
  }
  rdlab_config_free(cfg);
  CHECK(fs::exists(dir / "algebra-check.identities.csv"));
  std::ifstream in(dir / "locality.table.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string csv = ss.str();
  CHECK(csv.rfind("representation,branch,displacement", 0) == 0);
  CHECK(std::regex_search(csv, std::regex(R"(\d\.\d{16}e[-+]\d+)")));
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().string().find(".tmp") == std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("same seed gives the same report body") {
  rdlab_config* cfg = nullptr;
  REQUIRE(rdlab_config_parse("algebra.random_momenta = 100\n", &cfg) == RDLAB_OK);
  auto body = [&](uint64_t seed) {
    rdlab_report* rep = nullptr;
    REQUIRE(rdlab_run(cfg, "algebra-check", nullptr, seed, &rep) == RDLAB_OK);
    auto j = nlohmann::json::parse(rdlab_report_json(rep));
    rdlab_report_free(rep);
    return j["checks"].dump();
  };
  CHECK(body(5) == body(5));
  CHECK(body(5) != body(6));
  rdlab_config_free(cfg);
}

TEST_CASE("primitive entry points") {
  const double p[3] = {0.3, -0.4, 1.2};
  double s[8];
  REQUIRE(rdlab_particle_spinor(p, 0, 1.0, s) == RDLAB_OK);
  double n2 = 0;
  for (double v : s) n2 += v * v;
  CHECK(n2 == doctest::Approx(std::sqrt(1 + 0.09 + 0.16 + 1.44)).epsilon(1e-14));
  CHECK(rdlab_particle_spinor(p, 3, 1.0, s) == RDLAB_INVALID_ARGUMENT);

  double u[32];
  REQUIRE(rdlab_fw_matrix(p, 1.0, u) == RDLAB_OK);
  double col = 0;
  for (int r = 0; r < 4; ++r) col += u[2 * (4 * r)] * u[2 * (4 * r)] + u[2 * (4 * r) + 1] * u[2 * (4 * r) + 1];
  CHECK(col == doctest::Approx(1.0).epsilon(1e-14));

  const double a0[3] = {0, 0, 0}, a1[3] = {0, 0, 1};
  double r = 0;
  REQUIRE(rdlab_locality_ratio(0, a0, 0.1, 1.0, &r) == RDLAB_OK);
  CHECK(r == doctest::Approx(1.0));
  REQUIRE(rdlab_locality_ratio(1, a1, 0.1, 1.0, &r) == RDLAB_OK);
  CHECK(r == doctest::Approx(std::exp(-1.0 / 0.4)).epsilon(1e-9));
  CHECK(rdlab_locality_ratio(2, a1, 0.1, 1.0, &r) == RDLAB_INVALID_ARGUMENT);
}
