#ifndef S2T_S2T_H
#define S2T_S2T_H

#include <stdint.h>

#if defined(__GNUC__)
#define S2T_API __attribute__((visibility("default")))
#else
#define S2T_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum s2t_status
{
  S2T_OK = 0,
  S2T_CHECK_FAILED = 1, /* the call ran, but a certification check failed */
  S2T_USAGE = 2,
  S2T_CONFIG = 3,
  S2T_PARSE = 4,
  S2T_PRECONDITION = 5,
  S2T_HYPOTHESIS = 6,
  S2T_IO = 7,
  S2T_INTERNAL = 8
} s2t_status;

/* Message for the most recent failing call on this thread ("" if none). */
S2T_API const char* s2t_last_error(void);
S2T_API const char* s2t_status_name(s2t_status status);

/* Strings returned through char** out-parameters are owned by the caller. */
S2T_API void s2t_string_free(char* s);

typedef struct s2t_tower s2t_tower;

/* Base group checks; report_text and report_json may be NULL. */
S2T_API s2t_status s2t_base_verify(const char* config_json, int max_len, char** report_text, char** report_json);

S2T_API s2t_status s2t_tower_new(const char* config_json, s2t_tower** out);
/* Replays a session document and re-checks every logged answer. */
S2T_API s2t_status s2t_tower_load(const char* session_json, s2t_tower** out);
S2T_API s2t_status s2t_tower_save(const s2t_tower* tower, char** session_json);
S2T_API void s2t_tower_free(s2t_tower* tower);

S2T_API int s2t_tower_height(const s2t_tower* tower);
S2T_API s2t_status s2t_tower_show(const s2t_tower* tower, char** text);

/* f with A f = A u and A t f = A v.  *extended is set when a level was added. */
S2T_API s2t_status s2t_tower_resolve(s2t_tower* tower, const char* u, const char* v, char** f, int* extended);
/* Representative of the coset (A coset) g. */
S2T_API s2t_status s2t_tower_act(const s2t_tower* tower, const char* coset, const char* g, char** result);

typedef struct s2t_certify_options
{
  int base_len;
  int level_len;
  int dc_len;
  int action_len;
  int samples;
  uint64_t seed;
} s2t_certify_options;

S2T_API void s2t_certify_defaults(s2t_certify_options* options);

/* Returns S2T_CHECK_FAILED when any check fails; reports are still filled.
   The JSON report carries timings under a separate "timings" key. */
S2T_API s2t_status s2t_certify(const s2t_tower* tower, const s2t_certify_options* options, char** report_text,
                               char** report_json);

#ifdef __cplusplus
}
#endif

#endif
