#ifndef RDLAB_RDLAB_H
#define RDLAB_RDLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(RDLAB_BUILDING_LIBRARY)
#define RDLAB_API __attribute__((visibility("default")))
#else
#define RDLAB_API
#endif

typedef enum rdlab_status {
  RDLAB_OK = 0,
  RDLAB_INVALID_ARGUMENT = 1,
  RDLAB_PRECONDITION = 2,
  RDLAB_SUPPORT_OVERFLOW = 3,
  RDLAB_CONFIG = 4,
  RDLAB_IO = 5,
  RDLAB_INTERNAL = 6
} rdlab_status;

typedef struct rdlab_config rdlab_config;
typedef struct rdlab_report rdlab_report;

/** Library version, e.g. "0.1.0". */
RDLAB_API const char* rdlab_version(void);

/** Message of the last failing call on this thread ("" if none). */
RDLAB_API const char* rdlab_last_error(void);

/** Null-terminated list of command names. */
RDLAB_API const char* const* rdlab_commands(void);

RDLAB_API rdlab_status rdlab_config_parse(const char* text, rdlab_config** out);
RDLAB_API rdlab_status rdlab_config_load(const char* path, rdlab_config** out);
RDLAB_API rdlab_status rdlab_config_set(rdlab_config* cfg, const char* key, const char* value);
/** Effective value of key (given or default); *out stays valid until the next call on this thread. */
RDLAB_API rdlab_status rdlab_config_value(const rdlab_config* cfg, const char* key, const char** out);
RDLAB_API void rdlab_config_free(rdlab_config* cfg);

/** Runs one command. If out_dir is non-null, report and tables are written there. */
RDLAB_API rdlab_status rdlab_run(const rdlab_config* cfg, const char* command, const char* out_dir, uint64_t seed,
                                 rdlab_report** out);
RDLAB_API int rdlab_report_passed(const rdlab_report* report);
RDLAB_API const char* rdlab_report_json(const rdlab_report* report);
RDLAB_API void rdlab_report_free(rdlab_report* report);

/** Particle-branch Dirac spinor psi_+(p, spin) for spin 0 (up) / 1 (down); out holds 8 doubles (re, im). */
RDLAB_API rdlab_status rdlab_particle_spinor(const double p[3], int spin, double mass, double out[8]);

/** Foldy-Wouthuysen matrix U(p), row-major, out holds 32 doubles (re, im). */
RDLAB_API rdlab_status rdlab_fw_matrix(const double p[3], double mass, double out[32]);

/** |K(a)| / |K(0)| of the regulated position kernel; representation 0 = Dirac, 1 = FW. */
RDLAB_API rdlab_status rdlab_locality_ratio(int representation, const double a[3], double epsilon, double mass,
                                            double* ratio);

#ifdef __cplusplus
}
#endif

#endif
