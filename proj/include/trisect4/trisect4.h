#ifndef TRISECT4_H
#define TRISECT4_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define T4_API __declspec(dllexport)
#else
#define T4_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* A triangulation together with an optional tricoloring and quadra data. */
typedef struct t4_triangulation t4_triangulation;

typedef enum t4_status {
    T4_OK = 0,
    T4_ERR_INPUT = 1,
    T4_ERR_PARSE = 2,
    T4_ERR_DIMENSION = 3,
    T4_ERR_STRUCTURE = 4,
    T4_ERR_SITE = 5,
    T4_ERR_COLLAPSE = 6,
    T4_ERR_TRACING = 7,
    T4_ERR_BOUND = 8,
    T4_ERR_DOMAIN = 9, /* ran fine, answer is negative; the report is still filled */
    T4_ERR_INTERNAL = 10
} t4_status;

typedef struct t4_options {
    uint64_t seed;
    int retries;
    int conservative;
    int precolored;
    size_t coloring_limit;
    size_t target_vertices;
    size_t max_steps;
} t4_options;

T4_API void t4_options_init(t4_options* opt);
T4_API const char* t4_version(void);

/* Message of the last failure on this thread. */
T4_API const char* t4_last_error(void);
T4_API int t4_is_input_error(t4_status s);
T4_API void t4_string_free(char* s);

T4_API t4_status t4_from_isosig(const char* sig, t4_triangulation** out);
/* Gluing table, text or JSON. */
T4_API t4_status t4_from_gluings(const char* text, t4_triangulation** out);
/* A gluing table file, or a file holding a single signature. */
T4_API t4_status t4_from_file(const char* path, t4_triangulation** out);
T4_API t4_triangulation* t4_clone(const t4_triangulation* t);
T4_API void t4_free(t4_triangulation* t);
T4_API size_t t4_size(const t4_triangulation* t);

T4_API t4_status t4_isosig(const t4_triangulation* t, char** out);
T4_API t4_status t4_gluings(const t4_triangulation* t, int as_json, char** out);

/* Accepts "vertex color" lines or a JSON object with "coloring" and an
   optional "quadra" member. */
T4_API t4_status t4_set_coloring(t4_triangulation* t, const char* text);
T4_API int t4_has_coloring(const t4_triangulation* t);
T4_API t4_status t4_coloring_text(const t4_triangulation* t, char** out);

/* Every function below writes a JSON report. */
T4_API t4_status t4_validate(const t4_triangulation* t, char** report);
T4_API t4_status t4_info(const t4_triangulation* t, char** report);
/* Checks the attached coloring, or searches and attaches the first found. */
T4_API t4_status t4_color(t4_triangulation* t, const t4_options* opt, char** report);
T4_API t4_status t4_subdivide(const t4_triangulation* t, t4_triangulation** out, char** report);
T4_API t4_status t4_make_ts(const t4_triangulation* t, const t4_options* opt, t4_triangulation** out,
                            char** report);
T4_API t4_status t4_trisect(const t4_triangulation* t, const t4_options* opt, char** report);
T4_API t4_status t4_diagram(const t4_triangulation* t, const t4_options* opt, char** report, char** svg);
/* log receives one JSON object per line. */
T4_API t4_status t4_simplify(const t4_triangulation* t, const t4_options* opt, t4_triangulation** out,
                             char** report, char** log);

#ifdef __cplusplus
}
#endif

#endif
