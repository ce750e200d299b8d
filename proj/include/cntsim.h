#ifndef CNTSIM_H
#define CNTSIM_H

/* C interface to the nanotube conductivity simulator. All entry points are
 * thread-safe; cntsim_last_error returns a thread-local message describing
 * the most recent failure on the calling thread. */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    CNTSIM_OK = 0,
    CNTSIM_ERR_VALIDATION = 1, /* bad config or parameter domain */
    CNTSIM_ERR_NUMERICAL = 2,  /* convergence / tolerance failure */
    CNTSIM_ERR_IO = 3          /* file system or parse failure */
} cntsim_status;

typedef struct cntsim_config cntsim_config;
typedef struct cntsim_result cntsim_result;

/* Load and validate a config file; *out owns the handle on success. */
cntsim_status cntsim_config_load(const char* path, cntsim_config** out);

/* Parse config text directly (same format as the file). */
cntsim_status cntsim_config_parse(const char* text, cntsim_config** out);

/* Apply a dotted-key override, e.g. "model.lambda=0.5". */
cntsim_status cntsim_config_override(cntsim_config* cfg, const char* key_value);

void cntsim_config_free(cntsim_config* cfg);

/* Run all configured jobs; artifacts land in the config's output directory. */
cntsim_status cntsim_run(const cntsim_config* cfg, cntsim_result** out);

/* JSON manifest of the finished run; owned by the result handle. */
const char* cntsim_result_manifest_json(const cntsim_result* res);

/* 0 success, 1 validation failure, 2 numerical failure (per-job). */
int cntsim_result_exit_code(const cntsim_result* res);

void cntsim_result_free(cntsim_result* res);

/* Message for the last failed call on this thread ("" if none). */
const char* cntsim_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* CNTSIM_H */
