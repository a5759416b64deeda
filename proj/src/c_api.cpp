#include "hocomp/hocomp.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>
#include <vector>

#include "hocomp/error.hpp"
#include "hocomp/experiments.hpp"
#include "hocomp/grid_solver.hpp"
#include "hocomp/homogenization.hpp"
#include "hocomp/opacity.hpp"
#include "hocomp/table.hpp"

struct hoc_shape {
  hocomp::InclusionShape shape;
};

struct hoc_path {
  hocomp::Path path;
};

struct hoc_table {
  hocomp::Table table;
};

namespace {

using namespace hocomp;

thread_local std::string g_last_error;

hoc_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
      return HOC_INVALID_ARGUMENT;
    case ErrorCode::not_on_boundary:
      return HOC_NOT_ON_BOUNDARY;
    case ErrorCode::endpoint_in_obstacle:
      return HOC_ENDPOINT_IN_OBSTACLE;
    case ErrorCode::disconnected:
      return HOC_DISCONNECTED;
    case ErrorCode::resource_limit:
      return HOC_RESOURCE_LIMIT;
    case ErrorCode::internal:
      return HOC_INTERNAL;
  }
  return HOC_INTERNAL;
}

template <class F>
hoc_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return HOC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return HOC_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HOC_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return HOC_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::invalid_argument, std::string(what) + " must not be null");
}

Exponent exponent_of(double p) {
  if (std::isinf(p) && p > 0) return Exponent::infinite();
  return Exponent::finite(p);
}

SolverOptions options_of(const hoc_solver_options* o) {
  SolverOptions s;
  if (!o) return s;
  s.nodes_per_cell = o->nodes_per_cell;
  require(o->stencil == 8 || o->stencil == 16, "stencil must be 8 or 16");
  s.stencil = o->stencil == 8 ? Stencil::n8 : Stencil::n16;
  s.padding_cells = o->padding_cells;
  s.shorten_rounds = o->shorten_rounds;
  require(s.nodes_per_cell >= 16, "nodes_per_cell must be at least 16");
  require(s.padding_cells >= 0.0, "padding_cells must be non-negative");
  require(s.shorten_rounds >= 0, "shorten_rounds must be non-negative");
  return s;
}

MetricParams metric_of(const hoc_metric* m) {
  need(m, "metric");
  MetricParams params{m->beta, exponent_of(m->p), m->epsilon};
  params.validate();
  return params;
}

std::vector<double> list_of(const double* values, size_t n, const char* what) {
  if (n) need(values, what);
  return std::vector<double>(values, values + n);
}

void emit(hoc_table** out, Table t) {
  if (out) *out = new hoc_table{std::move(t)};
}

Table summary_table() { return Table({"key", "value"}); }

std::int64_t flag(bool b) { return b ? 1 : 0; }

}  // namespace

extern "C" {

const char* hoc_version(void) { return "0.1.0"; }

const char* hoc_last_error(void) { return g_last_error.c_str(); }

const char* hoc_status_string(hoc_status status) {
  switch (status) {
    case HOC_OK:
      return "ok";
    case HOC_INVALID_ARGUMENT:
      return "invalid_argument";
    case HOC_NOT_ON_BOUNDARY:
      return "not_on_boundary";
    case HOC_ENDPOINT_IN_OBSTACLE:
      return "endpoint_in_obstacle";
    case HOC_DISCONNECTED:
      return "disconnected";
    case HOC_RESOURCE_LIMIT:
      return "resource_limit";
    case HOC_INTERNAL:
      return "internal";
  }
  return "unknown";
}

void hoc_solver_options_default(hoc_solver_options* options) {
  if (!options) return;
  const SolverOptions s;
  options->nodes_per_cell = s.nodes_per_cell;
  options->stencil = s.stencil == Stencil::n8 ? 8 : 16;
  options->padding_cells = s.padding_cells;
  options->shorten_rounds = s.shorten_rounds;
}

hoc_status hoc_shape_disk(double cx, double cy, double radius, hoc_shape** out) {
  return guarded([&] {
    need(out, "out");
    *out = new hoc_shape{InclusionShape::disk({cx, cy}, radius)};
  });
}

hoc_status hoc_shape_square(double cx, double cy, double half_side, hoc_shape** out) {
  return guarded([&] {
    need(out, "out");
    *out = new hoc_shape{InclusionShape::square({cx, cy}, half_side)};
  });
}

hoc_status hoc_shape_polygon(const double* xy, size_t n_vertices, hoc_shape** out) {
  return guarded([&] {
    need(out, "out");
    need(xy, "xy");
    std::vector<Point2> v(n_vertices);
    for (size_t i = 0; i < n_vertices; ++i) v[i] = {xy[2 * i], xy[2 * i + 1]};
    *out = new hoc_shape{InclusionShape::polygon(std::move(v))};
  });
}

void hoc_shape_free(hoc_shape* shape) { delete shape; }

int hoc_shape_contains(const hoc_shape* shape, double x, double y) {
  return shape && shape->shape.periodic_contains({x, y}) ? 1 : 0;
}

double hoc_shape_signed_distance(const hoc_shape* shape, double x, double y) {
  if (!shape) return std::nan("");
  return periodic_signed_distance(shape->shape, {x, y});
}

hoc_status hoc_check_admissible(const hoc_metric* metric, double lambda, int* admissible) {
  return guarded([&] {
    need(admissible, "admissible");
    const MetricParams params = metric_of(metric);
    *admissible = params.p.is_infinite() || check_admissible(params, lambda).admissible ? 1 : 0;
  });
}

hoc_status hoc_estimate_lambda(const hoc_shape* shape, size_t n_samples, double* out_lambda) {
  return guarded([&] {
    need(shape, "shape");
    need(out_lambda, "out_lambda");
    *out_lambda = estimate_lambda(shape->shape, n_samples).lambda_hat;
  });
}

hoc_status hoc_distance(const hoc_shape* shape, const hoc_metric* metric, const hoc_solver_options* options,
                        double x1, double y1, double x2, double y2, double* out_value, hoc_path** out_path) {
  return guarded([&] {
    need(shape, "shape");
    need(out_value, "out_value");
    DistanceResult r = distance_folded(shape->shape, metric_of(metric), {x1, y1}, {x2, y2}, options_of(options));
    *out_value = r.value;
    if (out_path) *out_path = new hoc_path{std::move(r.path)};
  });
}

size_t hoc_path_size(const hoc_path* path) { return path ? path->path.size() : 0; }

hoc_status hoc_path_vertex(const hoc_path* path, size_t index, double* x, double* y) {
  return guarded([&] {
    need(path, "path");
    need(x, "x");
    need(y, "y");
    require(index < path->path.size(), "vertex index out of range");
    const Point2 v = path->path.vertices()[index];
    *x = v.x;
    *y = v.y;
  });
}

hoc_status hoc_path_table(const hoc_path* path, hoc_table** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    emit(out, path_table(path->path));
  });
}

void hoc_path_free(hoc_path* path) { delete path; }

hoc_status hoc_avoidance(const hoc_shape* shape, double beta, size_t n_trials, uint64_t seed,
                         const hoc_solver_options* options, hoc_table** rows, hoc_table** summary) {
  return guarded([&] {
    need(shape, "shape");
    const AvoidanceReport rep = verify_avoidance(shape->shape, beta, n_trials, seed, options_of(options));
    emit(rows, avoidance_table(rep));
    Table s = summary_table();
    s.add_row({std::string("beta"), rep.beta});
    s.add_row({std::string("lambda_hat"), rep.lambda_hat});
    s.add_row({std::string("precondition_met"), flag(rep.precondition_met)});
    s.add_row({std::string("grid_spacing"), rep.grid_spacing});
    s.add_row({std::string("trials"), std::int64_t(rep.trials.size())});
    s.add_row({std::string("violations"), std::int64_t(rep.violations)});
    emit(summary, std::move(s));
  });
}

hoc_status hoc_psi_table(const hoc_shape* shape, double beta, size_t n_directions, const double* R_list,
                         size_t n_R, const hoc_solver_options* options, hoc_table** rows, hoc_table** summary) {
  return guarded([&] {
    need(shape, "shape");
    const std::vector<double> R = list_of(R_list, n_R, "R_list");
    const NormTable table = psi_table(shape->shape, beta, n_directions, R, options_of(options));
    const NormReport rep = check_norm_properties(table);
    emit(rows, norm_table(table));
    Table s = summary_table();
    s.add_row({std::string("homogeneity_residual"), rep.homogeneity_residual});
    s.add_row({std::string("triangle_excess"), rep.triangle_excess});
    s.add_row({std::string("triangle_checks"), std::int64_t(rep.triangle_checks)});
    s.add_row({std::string("min_psi"), rep.min_value});
    s.add_row({std::string("max_psi"), rep.max_value});
    s.add_row({std::string("homogeneity_ok"), flag(rep.homogeneity_ok)});
    s.add_row({std::string("triangle_ok"), flag(rep.triangle_ok)});
    s.add_row({std::string("bounds_ok"), flag(rep.bounds_ok)});
    s.add_row({std::string("passed"), flag(rep.passed)});
    emit(summary, std::move(s));
  });
}

hoc_status hoc_psi(const hoc_shape* shape, double beta, double vx, double vy, const double* R_list, size_t n_R,
                   const hoc_solver_options* options, double* out_value) {
  return guarded([&] {
    need(shape, "shape");
    need(out_value, "out_value");
    const std::vector<double> R = list_of(R_list, n_R, "R_list");
    *out_value = psi_of(shape->shape, beta, {vx, vy}, R, options_of(options));
  });
}

hoc_status hoc_critical(const hoc_shape* shape, const hoc_critical_config* config,
                        const hoc_solver_options* options, int timings, hoc_table** rows, hoc_table** verdicts,
                        hoc_table** summary) {
  return guarded([&] {
    need(shape, "shape");
    need(config, "config");
    CriticalRunConfig c;
    c.shape = shape->shape;
    c.beta = config->beta;
    c.p_list.clear();
    for (double p : list_of(config->p_list, config->n_p, "p_list")) c.p_list.push_back(exponent_of(p));
    c.k_min = config->k_min;
    c.k_max = config->k_max;
    c.xi1 = {config->xi1[0], config->xi1[1]};
    c.xi2 = {config->xi2[0], config->xi2[1]};
    if (config->n_R) c.window_sizes = list_of(config->R_list, config->n_R, "R_list");
    c.solver = options_of(options);
    const CriticalResult r = run_critical(c);
    emit(rows, critical_table(r, timings != 0));
    emit(verdicts, verdict_table(r));
    Table s = summary_table();
    s.add_row({std::string("psi_ref"), r.psi_ref});
    s.add_row({std::string("rho"), r.rho});
    s.add_row({std::string("lambda_hat"), r.lambda_hat});
    s.add_row({std::string("beta"), r.beta});
    emit(summary, std::move(s));
  });
}

hoc_status hoc_rate(const hoc_shape* shape, double beta, double p, double x1, double y1, double x2, double y2,
                    const double* eps_list, size_t n_eps, const double* R_list, size_t n_R,
                    const hoc_solver_options* options, hoc_table** rows, hoc_table** summary) {
  return guarded([&] {
    need(shape, "shape");
    std::vector<double> R = {4.0, 8.0, 16.0, 32.0};
    if (n_R) R = list_of(R_list, n_R, "R_list");
    const RateReport rep = run_rate(shape->shape, beta, exponent_of(p), {x1, y1}, {x2, y2},
                                    list_of(eps_list, n_eps, "eps_list"), options_of(options), R);
    emit(rows, rate_table(rep));
    Table s = summary_table();
    s.add_row({std::string("psi_ref"), rep.psi_ref});
    s.add_row({std::string("exponent"), rep.exponent});
    s.add_row({std::string("envelope_exponent"), 1.0 - p});
    s.add_row({std::string("degenerate"), flag(rep.degenerate)});
    s.add_row({std::string("envelope_violations"), std::int64_t(rep.envelope_violations)});
    s.add_row({std::string("diagnostic"), rep.diagnostic.empty() ? std::string("none") : rep.diagnostic});
    emit(summary, std::move(s));
  });
}

hoc_status hoc_bounds(const hoc_shape* shape, const hoc_metric* metric, size_t n_pairs, uint64_t seed,
                      const hoc_solver_options* options, hoc_table** rows, hoc_table** summary) {
  return guarded([&] {
    need(shape, "shape");
    const BoundsReport rep = run_bounds_suite(shape->shape, metric_of(metric), n_pairs, seed, options_of(options));
    emit(rows, bounds_table(rep));
    Table s = summary_table();
    s.add_row({std::string("lambda_hat"), rep.lambda_hat});
    s.add_row({std::string("admissible"), flag(rep.admissible)});
    s.add_row({std::string("pairs"), std::int64_t(rep.pairs.size())});
    s.add_row({std::string("violations"), std::int64_t(rep.violations)});
    s.add_row({std::string("skipped"), std::int64_t(rep.skipped)});
    s.add_row({std::string("diagnostic"), rep.diagnostic.empty() ? std::string("none") : rep.diagnostic});
    emit(summary, std::move(s));
  });
}

size_t hoc_table_rows(const hoc_table* table) { return table ? table->table.row_count() : 0; }

size_t hoc_table_columns(const hoc_table* table) { return table ? table->table.column_count() : 0; }

const char* hoc_table_column_name(const hoc_table* table, size_t column) {
  if (!table || column >= table->table.column_count()) return nullptr;
  return table->table.columns()[column].c_str();
}

hoc_status hoc_table_find_column(const hoc_table* table, const char* name, size_t* column) {
  return guarded([&] {
    need(table, "table");
    need(name, "name");
    need(column, "column");
    *column = table->table.column(name);
  });
}

hoc_status hoc_table_number(const hoc_table* table, size_t row, size_t column, double* out) {
  return guarded([&] {
    need(table, "table");
    need(out, "out");
    *out = table->table.number(row, column);
  });
}

hoc_status hoc_table_text(const hoc_table* table, size_t row, size_t column, char* buf, size_t cap,
                          size_t* needed) {
  return guarded([&] {
    need(table, "table");
    const std::string s = table->table.text(row, column);
    if (needed) *needed = s.size();
    if (buf && cap > 0) {
      const size_t n = std::min(cap - 1, s.size());
      std::memcpy(buf, s.data(), n);
      buf[n] = '\0';
    }
  });
}

hoc_status hoc_table_write_csv(const hoc_table* table, const char* path, const char* const* comments,
                               size_t n_comments) {
  return guarded([&] {
    need(table, "table");
    need(path, "path");
    std::vector<std::string> lines;
    for (size_t i = 0; i < n_comments; ++i) lines.emplace_back(comments[i]);
    if (std::strcmp(path, "-") == 0) {
      table->table.write_csv(std::cout, lines);
      std::cout.flush();
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::invalid_argument, std::string("cannot open ") + path + " for writing");
    table->table.write_csv(out, lines);
    if (!out) fail(ErrorCode::internal, std::string("write to ") + path + " failed");
  });
}

void hoc_table_free(hoc_table* table) { delete table; }

}  // extern "C"
