#ifndef CILAB_CILAB_H_
#define CILAB_CILAB_H_

#ifdef __cplusplus
extern "C" {
#endif

#if defined(CILAB_BUILDING_LIBRARY)
#define CILAB_API __attribute__((visibility("default")))
#else
#define CILAB_API
#endif

/* Status of a C API call. Command outcomes (success, budget refusal, gate
   failure) are not call failures: they live in the report's exit code. */
typedef enum cilab_status {
  CILAB_OK = 0,
  CILAB_ERR_NULL_ARGUMENT = 1,
  CILAB_ERR_INVALID_JSON = 2,
  CILAB_ERR_INVALID_CONFIG = 3,
  CILAB_ERR_IO = 4,
  CILAB_ERR_INTERNAL = 5
} cilab_status;

/* Report exit codes. */
#define CILAB_EXIT_OK 0
#define CILAB_EXIT_FAULT 1
#define CILAB_EXIT_BUDGET 2

typedef struct cilab_config cilab_config;
typedef struct cilab_report cilab_report;

CILAB_API const char* cilab_version(void);
/* Monomial-order and chart conventions tag carried by reports and fixtures. */
CILAB_API const char* cilab_conventions(void);
CILAB_API const char* cilab_status_string(cilab_status status);
/* Message of the last failed call on this thread, "" if none. */
CILAB_API const char* cilab_last_error(void);

/* A config has two layers: values from a config file and values set
   explicitly (flags). Explicit values win. */
CILAB_API cilab_status cilab_config_new(const char* command, cilab_config** out);
CILAB_API void cilab_config_free(cilab_config* config);
/* Replaces the file layer with the JSON object stored at path. */
CILAB_API cilab_status cilab_config_load_file(cilab_config* config, const char* path);
/* Replaces the file layer with a JSON object given as text. */
CILAB_API cilab_status cilab_config_load_json(cilab_config* config, const char* json);
/* Sets one explicit value; json_value is JSON text ("4", "[2,2]", "\"line\"", "true"). */
CILAB_API cilab_status cilab_config_set(cilab_config* config, const char* key, const char* json_value);
/* The merged config as JSON text, owned by the config until the next call. */
CILAB_API const char* cilab_config_json(cilab_config* config);

/* Runs the command. Fails only when the call itself cannot proceed; a
   malformed config still produces a report with exit code 1. */
CILAB_API cilab_status cilab_run(const cilab_config* config, cilab_report** out);
CILAB_API int cilab_report_exit_code(const cilab_report* report);
/* Canonical report text (sorted keys, trailing newline), owned by the report. */
CILAB_API const char* cilab_report_json(const cilab_report* report);
CILAB_API void cilab_report_free(cilab_report* report);

#ifdef __cplusplus
}
#endif

#endif /* CILAB_CILAB_H_ */
