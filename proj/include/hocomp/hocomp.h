#ifndef HOCOMP_H
#define HOCOMP_H

/* C interface to the hocomp library. Every call returns a status code; on
 * failure hoc_last_error() holds a message for the calling thread. Objects
 * are opaque handles released with the matching *_free function. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HOC_API __declspec(dllexport)
#else
#define HOC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hoc_status {
  HOC_OK = 0,
  HOC_INVALID_ARGUMENT = 1,
  HOC_NOT_ON_BOUNDARY = 2,
  HOC_ENDPOINT_IN_OBSTACLE = 3,
  HOC_DISCONNECTED = 4,
  HOC_RESOURCE_LIMIT = 5,
  HOC_INTERNAL = 6
} hoc_status;

typedef struct hoc_shape hoc_shape;
typedef struct hoc_path hoc_path;
typedef struct hoc_table hoc_table;

typedef struct hoc_solver_options {
  int nodes_per_cell;   /* >= 16 */
  int stencil;          /* 8 or 16 */
  double padding_cells; /* window margin around the endpoints */
  int shorten_rounds;
} hoc_solver_options;

/* p = INFINITY selects hard obstacles. */
typedef struct hoc_metric {
  double beta;
  double p;
  double epsilon;
} hoc_metric;

typedef struct hoc_critical_config {
  double beta;
  const double* p_list; /* INFINITY allowed */
  size_t n_p;
  int k_min;
  int k_max;
  double xi1[2];
  double xi2[2];
  const double* R_list; /* window sizes for the psi reference */
  size_t n_R;
} hoc_critical_config;

HOC_API const char* hoc_version(void);
HOC_API const char* hoc_last_error(void);
HOC_API const char* hoc_status_string(hoc_status status);

HOC_API void hoc_solver_options_default(hoc_solver_options* options);

/* Shapes live in the unit cell and must keep a positive margin to its edges. */
HOC_API hoc_status hoc_shape_disk(double cx, double cy, double radius, hoc_shape** out);
HOC_API hoc_status hoc_shape_square(double cx, double cy, double half_side, hoc_shape** out);
/* xy holds n_vertices counter-clockwise (x, y) pairs of a convex polygon. */
HOC_API hoc_status hoc_shape_polygon(const double* xy, size_t n_vertices, hoc_shape** out);
HOC_API void hoc_shape_free(hoc_shape* shape);
/* 1 when (x, y) lies in the periodic inclusion phase. */
HOC_API int hoc_shape_contains(const hoc_shape* shape, double x, double y);
HOC_API double hoc_shape_signed_distance(const hoc_shape* shape, double x, double y);

HOC_API hoc_status hoc_check_admissible(const hoc_metric* metric, double lambda, int* admissible);
HOC_API hoc_status hoc_estimate_lambda(const hoc_shape* shape, size_t n_samples, double* out_lambda);

/* d_{p,eps}((x1,y1), (x2,y2)). options may be NULL for defaults; out_path may be NULL. */
HOC_API hoc_status hoc_distance(const hoc_shape* shape, const hoc_metric* metric,
                                const hoc_solver_options* options, double x1, double y1, double x2,
                                double y2, double* out_value, hoc_path** out_path);

HOC_API size_t hoc_path_size(const hoc_path* path);
HOC_API hoc_status hoc_path_vertex(const hoc_path* path, size_t index, double* x, double* y);
HOC_API hoc_status hoc_path_table(const hoc_path* path, hoc_table** out);
HOC_API void hoc_path_free(hoc_path* path);

/* Sweeps and suites. Each fills a row table and, where given, a key/value
 * summary table (columns "key,value"). Output pointers may be NULL. */
HOC_API hoc_status hoc_avoidance(const hoc_shape* shape, double beta, size_t n_trials, uint64_t seed,
                                 const hoc_solver_options* options, hoc_table** rows,
                                 hoc_table** summary);
HOC_API hoc_status hoc_psi_table(const hoc_shape* shape, double beta, size_t n_directions,
                                 const double* R_list, size_t n_R, const hoc_solver_options* options,
                                 hoc_table** rows, hoc_table** summary);
HOC_API hoc_status hoc_psi(const hoc_shape* shape, double beta, double vx, double vy, const double* R_list,
                           size_t n_R, const hoc_solver_options* options, double* out_value);
/* runtime_ms is written as NA unless timings is nonzero. */
HOC_API hoc_status hoc_critical(const hoc_shape* shape, const hoc_critical_config* config,
                                const hoc_solver_options* options, int timings, hoc_table** rows,
                                hoc_table** verdicts, hoc_table** summary);
HOC_API hoc_status hoc_rate(const hoc_shape* shape, double beta, double p, double x1, double y1, double x2,
                            double y2, const double* eps_list, size_t n_eps, const double* R_list,
                            size_t n_R, const hoc_solver_options* options, hoc_table** rows,
                            hoc_table** summary);
HOC_API hoc_status hoc_bounds(const hoc_shape* shape, const hoc_metric* metric, size_t n_pairs,
                              uint64_t seed, const hoc_solver_options* options, hoc_table** rows,
                              hoc_table** summary);

HOC_API size_t hoc_table_rows(const hoc_table* table);
HOC_API size_t hoc_table_columns(const hoc_table* table);
HOC_API const char* hoc_table_column_name(const hoc_table* table, size_t column);
HOC_API hoc_status hoc_table_find_column(const hoc_table* table, const char* name, size_t* column);
/* Text cells read as NaN. */
HOC_API hoc_status hoc_table_number(const hoc_table* table, size_t row, size_t column, double* out);
/* Copies the CSV text of a cell into buf (always terminated when cap > 0);
 * *needed receives the full length excluding the terminator. */
HOC_API hoc_status hoc_table_text(const hoc_table* table, size_t row, size_t column, char* buf, size_t cap,
                                  size_t* needed);
/* path "-" writes to standard output. Each comment becomes a "# " line. */
HOC_API hoc_status hoc_table_write_csv(const hoc_table* table, const char* path, const char* const* comments,
                                       size_t n_comments);
HOC_API void hoc_table_free(hoc_table* table);

#ifdef __cplusplus
}
#endif

#endif
