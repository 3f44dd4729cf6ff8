#include "rdlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace rdlab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  require(ec == std::errc() && ptr == t.data() + t.size() && std::isfinite(v), ErrorCode::Config,
          "config key '" + key + "': '" + text + "' is not a finite number");
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  require(!out.empty(), ErrorCode::Config, "config key '" + key + "' needs at least one number");
  return out;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& default_entries() {
  static const std::vector<std::pair<std::string, std::string>> d = {
      {"mass", "1"},
      {"grid.n", "64"},
      {"grid.pmax", "4"},
      {"packet.x0", "0,0,0"},
      {"packet.p0", "0,0,0.5"},
      {"packet.sigma", "3"},
      {"packet.mix", "1,0"},
      {"packet.spin", "up"},
      {"algebra.random_momenta", "1000"},
      {"algebra.max_momentum", "10"},
      {"algebra.max_rapidity", "3"},
      {"algebra.corrupt_gamma", "-1"},
      {"regulators.epsilon", "0.1,0.03,0.01"},
      {"locality.displacements", "0.5,1,2,3,5"},
      {"locality.target", "5"},
      {"position.lattice", "-1,0,1"},
      {"position.window_center", "2.4"},
      {"position.window_width", "0.38"},
      {"position.window_core", "0.8"},
      {"times.T", "10"},
      {"times.samples", "32"},
      {"times.dt", "0.04,0.02,0.01"},
      {"times.dt_bound", "0.001"},
      {"times.drift_T", "100"},
      {"times.t0", "1"},
      {"zitterbewegung.mixed_mix", "1,1"},
      {"zitterbewegung.mixed_p0", "0,0,0"},
      {"zitterbewegung.mixed_T", "20"},
      {"zitterbewegung.mixed_samples", "64"},
      {"boost.axis", "z"},
      {"boost.rapidity", "0.5"},
      {"boost.sweep", "0,0.1,0.25,0.5"},
      {"boost.rotation_angle", "0.7"},
      {"boost.t_slice", "0"},
      {"boost.packet_p0", "0.5,0,0"},
      {"boost.refine", "1"},
      {"boost.box_fraction", "0.99"},
      {"tolerances.spinor", "1e-12"},
      {"tolerances.representation", "1e-12"},
      {"tolerances.locality_ratio", "1e-3"},
      {"tolerances.locality_agreement", "1e-12"},
      {"tolerances.locality_floor", "1e-12"},
      {"tolerances.locality_peak", "0.02"},
      {"tolerances.eigen", "1e-6"},
      {"tolerances.hermiticity", "1e-10"},
      {"tolerances.equivalence", "1e-6"},
      {"tolerances.tail_consistency", "1e-8"},
      {"tolerances.velocity", "1e-8"},
      {"tolerances.zb_frequency", "0.05"},
      {"tolerances.zb_slope", "1e-3"},
      {"tolerances.continuity_ratio_low", "3.5"},
      {"tolerances.continuity_ratio_high", "4.5"},
      {"tolerances.continuity_bound", "1e-5"},
      {"tolerances.norm_drift", "1e-12"},
      {"tolerances.fw_defining", "1e-10"},
      {"tolerances.dirac_covariance", "1e-4"},
      {"tolerances.fw_gap", "10"},
      {"tolerances.rotation", "1e-6"},
      {"tolerances.box", "1e-3"},
      {"tolerances.fw_paths", "1e-10"},
      {"tolerances.fw_purity", "1e-10"},
      {"tolerances.identity", "1e-12"},
      {"output.dir", "out"},
  };
  return d;
}

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    require(eq != std::string::npos, ErrorCode::Config,
            "config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    require(!c.has(key), ErrorCode::Config, "config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    c.set(key, trim(body.substr(eq + 1)));
  }
  c.text_ = text;
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), ErrorCode::Io, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

void Config::set(const std::string& key, const std::string& value) {
  const auto& d = default_entries();
  const bool known = std::any_of(d.begin(), d.end(), [&](const auto& e) { return e.first == key; });
  require(known, ErrorCode::Config, "unknown config key '" + key + "'");
  require(!value.empty(), ErrorCode::Config, "config key '" + key + "' has an empty value");
  for (auto& e : entries_) {
    if (e.first == key) {
      e.second = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

bool Config::has(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

std::string Config::raw(const std::string& key) const {
  for (const auto& e : entries_)
    if (e.first == key) return e.second;
  for (const auto& e : default_entries())
    if (e.first == key) return e.second;
  fail(ErrorCode::Config, "unknown config key '" + key + "'");
}

double Config::number(const std::string& key) const { return parse_double(key, raw(key)); }

int Config::integer(const std::string& key) const {
  const double v = number(key);
  require(v == std::floor(v) && std::abs(v) < 1e9, ErrorCode::Config, "config key '" + key + "' must be an integer");
  return static_cast<int>(v);
}

Vec3 Config::vec3(const std::string& key) const {
  auto v = list(key);
  require(v.size() == 3, ErrorCode::Config, "config key '" + key + "' needs three comma-separated numbers");
  return {v[0], v[1], v[2]};
}

std::vector<double> Config::list(const std::string& key) const { return parse_list(key, raw(key)); }

std::map<std::string, std::string> Config::effective() const {
  std::map<std::string, std::string> out;
  for (const auto& e : default_entries()) out[e.first] = raw(e.first);
  return out;
}

void Config::validate() const {
  auto check = [](bool ok, const std::string& msg) { require(ok, ErrorCode::Config, msg); };
  const int n = integer("grid.n");
  check(n >= 16 && n <= 128 && (n & (n - 1)) == 0, "grid.n must be a power of two in [16, 128]");
  const double pmax = number("grid.pmax"), sigma = number("packet.sigma"), m = number("mass");
  check(m > 0, "mass must be positive");
  check(pmax > 0, "grid.pmax must be positive");
  check(sigma > 0, "packet.sigma must be positive");
  check(pmax * sigma >= 12, "grid.pmax * packet.sigma must be at least 12 (band-limit hygiene)");
  check(list("packet.mix").size() == 2, "packet.mix needs two weights (particle, antiparticle)");
  check(list("zitterbewegung.mixed_mix").size() == 2, "zitterbewegung.mixed_mix needs two weights");
  const std::string spin = raw("packet.spin");
  check(spin == "up" || spin == "down", "packet.spin must be 'up' or 'down'");
  const std::string axis = raw("boost.axis");
  check(axis == "x" || axis == "y" || axis == "z", "boost.axis must be x, y or z");
  for (double e : list("regulators.epsilon")) check(e > 0, "regulators.epsilon entries must be positive");
  for (double d : list("times.dt")) check(d > 0, "times.dt entries must be positive");
  check(number("times.T") > 0 && number("zitterbewegung.mixed_T") > 0, "durations must be positive");
  check(integer("times.samples") >= 16 && integer("zitterbewegung.mixed_samples") >= 16,
        "trajectory sample counts must be at least 16");
  check(integer("algebra.random_momenta") >= 1, "algebra.random_momenta must be positive");
  const double frac = number("boost.box_fraction");
  check(frac > 0 && frac < 1, "boost.box_fraction must lie in (0, 1)");
  for (const auto& e : default_entries())
    if (e.first.rfind("tolerances.", 0) == 0) check(number(e.first) > 0, e.first + " must be positive");
  check(number("tolerances.continuity_ratio_low") < number("tolerances.continuity_ratio_high"),
        "continuity ratio bounds are inverted");
}

}  // namespace rdlab
