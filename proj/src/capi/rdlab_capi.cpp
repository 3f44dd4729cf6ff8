#include "rdlab/rdlab.h"

#include <memory>
#include <string>
#include <vector>

#include "rdlab/config.hpp"
#include "rdlab/experiments.hpp"
#include "rdlab/positionops.hpp"
#include "rdlab/spinors.hpp"

struct rdlab_config {
  rdlab::Config config;
};

struct rdlab_report {
  rdlab::ExperimentResult result;
};

namespace {

thread_local std::string last_error;
thread_local std::string value_buffer;

template <class F>
rdlab_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return RDLAB_OK;
  } catch (const rdlab::Error& e) {
    last_error = e.what();
    return static_cast<rdlab_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    last_error = e.what();
    return RDLAB_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return RDLAB_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw rdlab::Error(rdlab::ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

}  // namespace

extern "C" {

const char* rdlab_version(void) { return RDLAB_VERSION_STRING; }

const char* rdlab_last_error(void) { return last_error.c_str(); }

const char* const* rdlab_commands(void) {
  static const std::vector<const char*> names = [] {
    std::vector<const char*> v;
    for (const auto& n : rdlab::command_names()) v.push_back(n.c_str());
    v.push_back(nullptr);
    return v;
  }();
  return names.data();
}

rdlab_status rdlab_config_parse(const char* text, rdlab_config** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new rdlab_config{rdlab::Config::parse(text)};
  });
}

rdlab_status rdlab_config_load(const char* path, rdlab_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new rdlab_config{rdlab::Config::load(path)};
  });
}

rdlab_status rdlab_config_set(rdlab_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(value, "value");
    cfg->config.set(key, value);
  });
}

rdlab_status rdlab_config_value(const rdlab_config* cfg, const char* key, const char** out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(out, "out");
    value_buffer = cfg->config.raw(key);
    *out = value_buffer.c_str();
  });
}

void rdlab_config_free(rdlab_config* cfg) { delete cfg; }

rdlab_status rdlab_run(const rdlab_config* cfg, const char* command, const char* out_dir, uint64_t seed,
                       rdlab_report** out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(command, "command");
    need(out, "out");
    *out = nullptr;
    auto report = std::make_unique<rdlab_report>();
    report->result = rdlab::run_experiment(command, cfg->config, seed);
    if (out_dir) rdlab::write_outputs(report->result, out_dir);
    *out = report.release();
  });
}

int rdlab_report_passed(const rdlab_report* report) { return report && report->result.passed ? 1 : 0; }

const char* rdlab_report_json(const rdlab_report* report) { return report ? report->result.report_json.c_str() : ""; }

void rdlab_report_free(rdlab_report* report) { delete report; }

rdlab_status rdlab_particle_spinor(const double p[3], int spin, double mass, double out[8]) {
  return guarded([&] {
    need(p, "p");
    need(out, "out");
    rdlab::require(spin == 0 || spin == 1, rdlab::ErrorCode::InvalidArgument, "spin must be 0 or 1");
    rdlab::require(mass > 0, rdlab::ErrorCode::InvalidArgument, "mass must be positive");
    const auto s = rdlab::particle_spinor({p[0], p[1], p[2]}, spin ? rdlab::Spin::Down : rdlab::Spin::Up, mass);
    for (int i = 0; i < 4; ++i) {
      out[2 * i] = s.v[i].real();
      out[2 * i + 1] = s.v[i].imag();
    }
  });
}

rdlab_status rdlab_fw_matrix(const double p[3], double mass, double out[32]) {
  return guarded([&] {
    need(p, "p");
    need(out, "out");
    rdlab::require(mass > 0, rdlab::ErrorCode::InvalidArgument, "mass must be positive");
    const auto u = rdlab::fw_matrix({p[0], p[1], p[2]}, mass);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        out[2 * (4 * r + c)] = u(r, c).real();
        out[2 * (4 * r + c) + 1] = u(r, c).imag();
      }
  });
}

rdlab_status rdlab_locality_ratio(int representation, const double a[3], double epsilon, double mass,
                                  double* ratio) {
  return guarded([&] {
    need(a, "a");
    need(ratio, "ratio");
    rdlab::require(representation == 0 || representation == 1, rdlab::ErrorCode::InvalidArgument,
                   "representation must be 0 (Dirac) or 1 (FW)");
    const auto r = rdlab::locality_integral(
        representation ? rdlab::Representation::FW : rdlab::Representation::Dirac, rdlab::Branch::Particle,
        rdlab::Spin::Up, {a[0], a[1], a[2]}, epsilon, mass);
    *ratio = r.ratio;
  });
}

}
