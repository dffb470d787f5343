/* C interface to the topsel library.
 *
 * Every function returns a tsel_status. On failure the message is available
 * from tsel_last_error() on the calling thread until the next failing call.
 * Objects are opaque handles released with the matching *_free function;
 * freeing NULL is a no-op. Matrices are row-major. */
#ifndef TOPSEL_TOPSEL_H
#define TOPSEL_TOPSEL_H

#include <stddef.h>
#include <stdint.h>

#if defined(TOPSEL_BUILDING_LIBRARY)
#define TSEL_API __attribute__((visibility("default")))
#else
#define TSEL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsel_status {
  TSEL_OK = 0,
  TSEL_ERR_INVALID_ARGUMENT = 1,
  TSEL_ERR_INVALID_SPEC = 2,
  TSEL_ERR_INVALID_MATRIX = 3,
  TSEL_ERR_INVALID_WEIGHT = 4,
  TSEL_ERR_INCOMPLETE_SKELETON = 5,
  TSEL_ERR_INVALID_DEGREE = 6,
  TSEL_ERR_INVALID_INTERVAL = 7,
  TSEL_ERR_INVALID_COMPLEX = 8,
  TSEL_ERR_INVALID_ORDER = 9,
  TSEL_ERR_INVALID_WINDOW = 10,
  TSEL_ERR_INVALID_VECTOR = 11,
  TSEL_ERR_INVALID_RESOLUTION = 12,
  TSEL_ERR_PARSE = 13,
  TSEL_ERR_IO = 14,
  TSEL_ERR_NUMERIC = 15,
  TSEL_ERR_TRIAL_FAILURES = 16,
  TSEL_ERR_INTERNAL = 99
} tsel_status;

typedef struct tsel_series tsel_series;
typedef struct tsel_distances tsel_distances;
typedef struct tsel_diagram tsel_diagram;
typedef struct tsel_path tsel_path;
typedef struct tsel_summary tsel_summary;
typedef struct tsel_vineyard tsel_vineyard;

TSEL_API const char* tsel_last_error(void);
TSEL_API const char* tsel_version(void);
/* Short name of a status, e.g. "invalid-window". */
TSEL_API const char* tsel_status_name(tsel_status status);

/* ---- time series ---- */
TSEL_API tsel_status tsel_series_from_data(const double* data, size_t n, size_t p, tsel_series** out);
TSEL_API tsel_status tsel_series_read_csv(const char* path, tsel_series** out);
TSEL_API tsel_status tsel_series_write_csv(const tsel_series* s, const char* path);
TSEL_API tsel_status tsel_series_shape(const tsel_series* s, size_t* n, size_t* p);
/* Copies n*p values into out. */
TSEL_API tsel_status tsel_series_data(const tsel_series* s, double* out);
/* Median over variables of the SD of first differences. */
TSEL_API tsel_status tsel_series_noise_sd(const tsel_series* s, double* out);
TSEL_API void tsel_series_free(tsel_series* s);

typedef struct tsel_sines_params {
  int signals;
  int length;
  double period;
  const double* noise_sd; /* 1 or `signals` values */
  size_t noise_count;
  const int* permuted;    /* 0-based signal indices */
  size_t permuted_count;
  uint64_t seed;
} tsel_sines_params;

/* Writes the manifest when manifest_path is not NULL. */
TSEL_API tsel_status tsel_generate_sines(const tsel_sines_params* params, const char* manifest_path, tsel_series** out);
TSEL_API tsel_status tsel_replay_manifest(const char* manifest_path, tsel_series** out);

/* ---- sliding-window distances ---- */
TSEL_API tsel_status tsel_distances_new(const tsel_series* s, int window, tsel_distances** out);
TSEL_API tsel_status tsel_distances_shape(const tsel_distances* d, size_t* points, size_t* components);
/* sum_j |v_j| D_j into out (points*points values). */
TSEL_API tsel_status tsel_distances_combo(const tsel_distances* d, const double* v, size_t p, double* out);
TSEL_API tsel_status tsel_distances_write_csv(const tsel_distances* d, const double* v, size_t p, const char* path);
TSEL_API void tsel_distances_free(tsel_distances* d);

/* ---- diagrams ---- */
TSEL_API tsel_status tsel_diagram_from_matrix(const double* matrix, size_t m, const int* degrees, size_t degree_count,
                                              tsel_diagram** out);
TSEL_API tsel_status tsel_diagram_at(const tsel_distances* d, const double* v, size_t p, const int* degrees,
                                     size_t degree_count, tsel_diagram** out);
TSEL_API tsel_status tsel_diagram_size(const tsel_diagram* d, size_t* count);
TSEL_API tsel_status tsel_diagram_point(const tsel_diagram* d, size_t i, int* degree, double* birth, double* death);
TSEL_API tsel_status tsel_diagram_write_csv(const tsel_diagram* d, const char* path);
TSEL_API tsel_status tsel_diagram_write_svg(const tsel_diagram* d, const char* path, const char* title);
/* Functional spec: "total", "max" or "top:<l>", optionally ";degrees=<k>,...". */
TSEL_API tsel_status tsel_functional_value(const char* functional, const tsel_diagram* d, double* out);
TSEL_API tsel_status tsel_wasserstein(const tsel_diagram* a, const tsel_diagram* b, double q, double* out);
TSEL_API void tsel_diagram_free(tsel_diagram* d);

/* ---- gradient ascent ---- */
typedef enum tsel_mode { TSEL_MODE_FIXED = 0, TSEL_MODE_EXACT = 1 } tsel_mode;

typedef struct tsel_ascent_params {
  int steps;
  const double* step_sizes; /* 1 or `steps` values */
  size_t step_size_count;
  const char* functional;   /* NULL means "max;degrees=1" */
  tsel_mode mode;
  double grad_tol;          /* fixed mode early stop; 0 disables */
  int prune;                /* exact mode candidate pruning */
} tsel_ascent_params;

TSEL_API tsel_status tsel_ascend(const tsel_distances* d, const tsel_ascent_params* params, tsel_path** out);
TSEL_API tsel_status tsel_path_shape(const tsel_path* path, size_t* points, size_t* p);
TSEL_API tsel_status tsel_path_point(const tsel_path* path, size_t i, double* v, double* value);
TSEL_API tsel_status tsel_path_event_count(const tsel_path* path, size_t* count);
TSEL_API tsel_status tsel_path_event(const tsel_path* path, size_t i, int* projected, int* region_crossed, int* stalled);
TSEL_API tsel_status tsel_path_write_csv(const tsel_path* path, const char* file);
TSEL_API tsel_status tsel_path_write_events_json(const tsel_path* path, const char* file);
TSEL_API tsel_status tsel_path_write_svg(const tsel_path* path, const char* file, const char* title);
TSEL_API void tsel_path_free(tsel_path* path);

/* ---- perturbation trials ---- */
typedef struct tsel_trial_params {
  int trials;
  double sigma;
  uint64_t seed;
  int window;
  int threads; /* 0: hardware concurrency */
  tsel_ascent_params ascent;
} tsel_trial_params;

TSEL_API tsel_status tsel_run_trials(const tsel_series* s, const tsel_trial_params* params, tsel_summary** out);
TSEL_API tsel_status tsel_summary_variables(const tsel_summary* s, size_t* p);
TSEL_API tsel_status tsel_summary_mean_score(const tsel_summary* s, double* out);
TSEL_API tsel_status tsel_summary_score_sd(const tsel_summary* s, double* out);
/* p*p values; *defined is 0 when fewer than two trials succeeded. */
TSEL_API tsel_status tsel_summary_covariance(const tsel_summary* s, double* out, int* defined);
TSEL_API tsel_status tsel_summary_covariance_means(const tsel_summary* s, double* all_entries, double* diagonal);
TSEL_API tsel_status tsel_summary_failures(const tsel_summary* s, size_t* count);
/* Writes scores.csv, covariance.csv, mean_path.csv, per_trial_scores.csv,
 * scores.svg and mean_path.svg into dir. */
TSEL_API tsel_status tsel_summary_write(const tsel_summary* s, const char* dir);
/* 0-based indices with mean score > threshold; *count gets the full size. */
TSEL_API tsel_status tsel_summary_support(const tsel_summary* s, double threshold, int* indices, size_t capacity,
                                          size_t* count);
TSEL_API void tsel_summary_free(tsel_summary* s);

/* Bar chart of p scores; sd may be NULL. */
TSEL_API tsel_status tsel_write_scores_svg(const double* scores, const double* sd, size_t p, const char* path,
                                           const char* title);

TSEL_API tsel_status tsel_jaccard(const int* a, size_t na, const int* b, size_t nb, double* out);

/* ---- window scan ---- */
/* values receives max_window - min_window + 1 functional values at the
 * barycenter; *best is the smallest maximizing window. */
TSEL_API tsel_status tsel_scan_window(const tsel_series* s, int min_window, int max_window, const char* functional,
                                      double* values, int* best);

/* ---- vineyards ---- */
/* Straight segment between two filtration matrices (each m*m). */
TSEL_API tsel_status tsel_vineyard_matrix_segment(const double* from, const double* to, size_t m, int degree,
                                                  int resolution, tsel_vineyard** out);
/* Segment v0 -> v1 of combinations of the component distances. */
TSEL_API tsel_status tsel_vineyard_combo_segment(const tsel_distances* d, const double* v0, const double* v1, size_t p,
                                                 int degree, int resolution, tsel_vineyard** out);
TSEL_API tsel_status tsel_vineyard_info(const tsel_vineyard* v, size_t* vines, size_t* crossings, double* chord_deviation,
                                        double* stitch_error);
TSEL_API tsel_status tsel_vineyard_write_json(const tsel_vineyard* v, const char* path);
TSEL_API tsel_status tsel_vineyard_write_csv(const tsel_vineyard* v, const char* path);
TSEL_API void tsel_vineyard_free(tsel_vineyard* v);

#ifdef __cplusplus
}
#endif

#endif /* TOPSEL_TOPSEL_H */
