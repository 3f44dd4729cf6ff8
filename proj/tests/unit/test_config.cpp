#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <functional>

#include "rdlab/config.hpp"

using namespace rdlab;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("parse keeps entries verbatim and in order") {
  const std::string text = "# desk run\nmass = 1\n\ngrid.pmax=4.0000000000000001  # trailing\nregulators.epsilon = 0.1, 0.03\n";
  const Config c = Config::parse(text);
  REQUIRE(c.entries().size() == 3);
  CHECK(c.entries()[0].first == "mass");
  CHECK(c.entries()[1].second == "4.0000000000000001");
  CHECK(c.entries()[2].first == "regulators.epsilon");
  CHECK(c.source_text() == text);
  CHECK(c.number("grid.pmax") == 4.0);
  CHECK(c.list("regulators.epsilon") == std::vector<double>{0.1, 0.03});
  CHECK(c.integer("grid.n") == 64);
  CHECK(c.has("mass"));
  CHECK_FALSE(c.has("grid.n"));
  CHECK(c.effective().at("grid.n") == "64");
  c.validate();
}

TEST_CASE("defaults cover every key and validate") {
  Config c;
  for (const auto& [k, v] : default_entries()) CHECK(c.raw(k) == v);
  c.validate();
  CHECK(c.vec3("packet.p0") == Vec3{0, 0, 0.5});
}

TEST_CASE("malformed input is a config error") {
  CHECK(code_of([] { Config::parse("nonsense.key = 1\n"); }) == ErrorCode::Config);
  CHECK(code_of([] { Config::parse("mass = 1\nmass = 2\n"); }) == ErrorCode::Config);
  CHECK(code_of([] { Config::parse("mass 1\n"); }) == ErrorCode::Config);
  CHECK(code_of([] { Config::parse("mass = abc\n").number("mass"); }) == ErrorCode::Config);
  CHECK(code_of([] { Config::parse("packet.p0 = 1, 2\n").vec3("packet.p0"); }) == ErrorCode::Config);
  CHECK(code_of([] { Config::load("/nonexistent/rdlab.conf"); }) != ErrorCode::Internal);
}

TEST_CASE("validation rejects inconsistent values") {
  const char* bad[] = {"grid.n = 100\n",          "grid.n = 8\n",
                       "packet.sigma = 1\n",      "packet.spin = sideways\n",
                       "boost.axis = w\n",        "packet.mix = 1\n",
                       "regulators.epsilon = 0\n", "times.dt = -0.01\n",
                       "times.samples = 4\n",     "boost.box_fraction = 1.5\n",
                       "tolerances.eigen = 0\n",  "tolerances.continuity_ratio_low = 5\n"};
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK(code_of([&] { Config::parse(text).validate(); }) == ErrorCode::Config);
  }
}

TEST_CASE("set replaces or appends and load reads a file") {
  Config c = Config::parse("mass = 1\n");
  c.set("mass", "2");
  c.set("grid.n", "32");
  CHECK(c.number("mass") == 2.0);
  CHECK(c.entries().size() == 2);
  CHECK_THROWS_AS(c.set("bogus", "1"), Error);

  const std::string path = "rdlab_config_test.conf";
  std::ofstream(path) << "grid.n = 32\n";
  CHECK(Config::load(path).integer("grid.n") == 32);
  std::remove(path.c_str());
}
