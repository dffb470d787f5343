#include "topsel/topsel.h"

#include <cstring>
#include <fstream>
#include <string>

#include "topsel/error.hpp"
#include "topsel/generate.hpp"
#include "topsel/io.hpp"
#include "topsel/objective.hpp"
#include "topsel/optimize.hpp"
#include "topsel/perturb.hpp"
#include "topsel/rips.hpp"
#include "topsel/svg.hpp"
#include "topsel/vineyard.hpp"

using namespace topsel;

struct tsel_series {
  TimeSeries value;
};
struct tsel_distances {
  ComponentDistances value;
};
struct tsel_diagram {
  GradedDiagram value;
};
struct tsel_path {
  GradientPath value;
};
struct tsel_summary {
  TrialSummary value;
};
struct tsel_vineyard {
  Vineyard value;
};

namespace {

thread_local std::string g_last_error;

template <class F>
tsel_status guard(F&& f) noexcept {
  try {
    f();
    return TSEL_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<tsel_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TSEL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TSEL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TSEL_ERR_INTERNAL;
  }
}

template <class T>
void need(const T* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string("null ") + what);
}

std::span<const double> vec(const double* v, std::size_t p) {
  if (!v && p) fail(ErrorCode::InvalidArgument, "null vector");
  return {v, p};
}

std::vector<int> degree_list(const int* degrees, std::size_t count) {
  if (count == 0) return {1};
  need(degrees, "degree list");
  return {degrees, degrees + count};
}

Eigen::MatrixXd row_major(const double* data, std::size_t rows, std::size_t cols) {
  need(data, "matrix");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = data[r * cols + c];
  return m;
}

void copy_row_major(const Eigen::MatrixXd& m, double* out) {
  need(out, "output buffer");
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) *out++ = m(r, c);
}

AscentConfig ascent_config(const tsel_ascent_params* p) {
  need(p, "ascent parameters");
  AscentConfig cfg;
  cfg.steps = p->steps;
  if (p->step_size_count == 0) fail(ErrorCode::InvalidArgument, "no step size given");
  need(p->step_sizes, "step sizes");
  cfg.step_sizes.assign(p->step_sizes, p->step_sizes + p->step_size_count);
  cfg.functional = Functional::parse(p->functional ? p->functional : "max;degrees=1");
  if (p->mode != TSEL_MODE_FIXED && p->mode != TSEL_MODE_EXACT) fail(ErrorCode::InvalidArgument, "unknown ascent mode");
  cfg.mode = p->mode == TSEL_MODE_EXACT ? AscentMode::ExactPath : AscentMode::FixedSteps;
  cfg.grad_tol = p->grad_tol;
  cfg.prune = p->prune != 0;
  cfg.validate();
  return cfg;
}

template <class Write>
void write_file(const char* path, Write&& w) {
  need(path, "path");
  auto out = open_output(path);
  w(out);
  out.flush();
  if (!out) fail(ErrorCode::Io, std::string("failed writing '") + path + "'");
}

}  // namespace

extern "C" {

const char* tsel_last_error(void) { return g_last_error.c_str(); }

const char* tsel_version(void) { return "0.1.0"; }

const char* tsel_status_name(tsel_status status) {
  switch (status) {
    case TSEL_OK: return "ok";
    case TSEL_ERR_INTERNAL: return "internal";
    default:
      if (status >= TSEL_ERR_INVALID_ARGUMENT && status <= TSEL_ERR_TRIAL_FAILURES)
        return to_string(static_cast<ErrorCode>(static_cast<int>(status)));
      return "unknown";
  }
}

tsel_status tsel_series_from_data(const double* data, size_t n, size_t p, tsel_series** out) {
  return guard([&] {
    need(out, "output handle");
    *out = new tsel_series{TimeSeries(row_major(data, n, p))};
  });
}

tsel_status tsel_series_read_csv(const char* path, tsel_series** out) {
  return guard([&] {
    need(path, "path");
    need(out, "output handle");
    *out = new tsel_series{TimeSeries(read_csv_file(path).values)};
  });
}

tsel_status tsel_series_write_csv(const tsel_series* s, const char* path) {
  return guard([&] {
    need(s, "series");
    std::vector<std::string> header;
    for (Eigen::Index j = 0; j < s->value.variables(); ++j) header.push_back("x" + std::to_string(j + 1));
    write_file(path, [&](std::ostream& os) { write_matrix_csv(os, s->value.data(), header); });
  });
}

tsel_status tsel_series_shape(const tsel_series* s, size_t* n, size_t* p) {
  return guard([&] {
    need(s, "series");
    if (n) *n = static_cast<size_t>(s->value.length());
    if (p) *p = static_cast<size_t>(s->value.variables());
  });
}

tsel_status tsel_series_data(const tsel_series* s, double* out) {
  return guard([&] {
    need(s, "series");
    copy_row_major(s->value.data(), out);
  });
}

tsel_status tsel_series_noise_sd(const tsel_series* s, double* out) {
  return guard([&] {
    need(s, "series");
    need(out, "output");
    *out = estimate_noise_sd(s->value);
  });
}

void tsel_series_free(tsel_series* s) { delete s; }

tsel_status tsel_generate_sines(const tsel_sines_params* params, const char* manifest_path, tsel_series** out) {
  return guard([&] {
    need(params, "generator parameters");
    need(out, "output handle");
    SinesSpec spec;
    spec.signals = params->signals;
    spec.length = params->length;
    spec.period = params->period;
    if (params->noise_count == 0) fail(ErrorCode::InvalidArgument, "no noise SD given");
    need(params->noise_sd, "noise SDs");
    spec.noise_sd.assign(params->noise_sd, params->noise_sd + params->noise_count);
    if (params->permuted_count) {
      need(params->permuted, "permuted indices");
      spec.permuted.assign(params->permuted, params->permuted + params->permuted_count);
    }
    spec.seed = params->seed;
    GeneratedSeries g = generate_sines(spec);
    if (manifest_path) write_file(manifest_path, [&](std::ostream& os) { write_manifest(os, g); });
    *out = new tsel_series{std::move(g.data)};
  });
}

tsel_status tsel_replay_manifest(const char* manifest_path, tsel_series** out) {
  return guard([&] {
    need(manifest_path, "path");
    need(out, "output handle");
    std::ifstream in(manifest_path);
    if (!in) fail(ErrorCode::Io, std::string("cannot open '") + manifest_path + "'");
    *out = new tsel_series{replay_manifest(in).data};
  });
}

tsel_status tsel_distances_new(const tsel_series* s, int window, tsel_distances** out) {
  return guard([&] {
    need(s, "series");
    need(out, "output handle");
    *out = new tsel_distances{sliding_window_distances(s->value, window)};
  });
}

tsel_status tsel_distances_shape(const tsel_distances* d, size_t* points, size_t* components) {
  return guard([&] {
    need(d, "distances");
    if (points) *points = static_cast<size_t>(d->value.points());
    if (components) *components = static_cast<size_t>(d->value.components());
  });
}

tsel_status tsel_distances_combo(const tsel_distances* d, const double* v, size_t p, double* out) {
  return guard([&] {
    need(d, "distances");
    copy_row_major(combo_distance(d->value, vec(v, p)), out);
  });
}

tsel_status tsel_distances_write_csv(const tsel_distances* d, const double* v, size_t p, const char* path) {
  return guard([&] {
    need(d, "distances");
    const Eigen::MatrixXd m = combo_distance(d->value, vec(v, p));
    write_file(path, [&](std::ostream& os) { write_matrix_csv(os, m); });
  });
}

void tsel_distances_free(tsel_distances* d) { delete d; }

tsel_status tsel_diagram_from_matrix(const double* matrix, size_t m, const int* degrees, size_t degree_count,
                                     tsel_diagram** out) {
  return guard([&] {
    need(out, "output handle");
    const auto ks = degree_list(degrees, degree_count);
    *out = new tsel_diagram{rips_diagram(row_major(matrix, m, m), ks)};
  });
}

tsel_status tsel_diagram_at(const tsel_distances* d, const double* v, size_t p, const int* degrees, size_t degree_count,
                            tsel_diagram** out) {
  return guard([&] {
    need(d, "distances");
    need(out, "output handle");
    const auto ks = degree_list(degrees, degree_count);
    *out = new tsel_diagram{rips_diagram(combo_distance(d->value, vec(v, p)), ks, /*validate=*/false)};
  });
}

tsel_status tsel_diagram_size(const tsel_diagram* d, size_t* count) {
  return guard([&] {
    need(d, "diagram");
    need(count, "output");
    *count = d->value.points.size();
  });
}

tsel_status tsel_diagram_point(const tsel_diagram* d, size_t i, int* degree, double* birth, double* death) {
  return guard([&] {
    need(d, "diagram");
    if (i >= d->value.points.size()) fail(ErrorCode::InvalidArgument, "diagram point index out of range");
    const DiagramPoint& p = d->value.points[i];
    if (degree) *degree = p.degree;
    if (birth) *birth = p.birth;
    if (death) *death = p.death;
  });
}

tsel_status tsel_diagram_write_csv(const tsel_diagram* d, const char* path) {
  return guard([&] {
    need(d, "diagram");
    write_file(path, [&](std::ostream& os) { write_diagram_csv(os, d->value); });
  });
}

tsel_status tsel_diagram_write_svg(const tsel_diagram* d, const char* path, const char* title) {
  return guard([&] {
    need(d, "diagram");
    write_file(path, [&](std::ostream& os) { write_diagram_svg(os, d->value, title ? title : ""); });
  });
}

tsel_status tsel_functional_value(const char* functional, const tsel_diagram* d, double* out) {
  return guard([&] {
    need(functional, "functional");
    need(d, "diagram");
    need(out, "output");
    *out = evaluate(Functional::parse(functional), d->value);
  });
}

tsel_status tsel_wasserstein(const tsel_diagram* a, const tsel_diagram* b, double q, double* out) {
  return guard([&] {
    need(a, "diagram");
    need(b, "diagram");
    need(out, "output");
    *out = wasserstein(a->value, b->value, q);
  });
}

void tsel_diagram_free(tsel_diagram* d) { delete d; }

tsel_status tsel_ascend(const tsel_distances* d, const tsel_ascent_params* params, tsel_path** out) {
  return guard([&] {
    need(d, "distances");
    need(out, "output handle");
    *out = new tsel_path{ascend(d->value, ascent_config(params))};
  });
}

tsel_status tsel_path_shape(const tsel_path* path, size_t* points, size_t* p) {
  return guard([&] {
    need(path, "path");
    if (points) *points = path->value.points.size();
    if (p) *p = static_cast<size_t>(path->value.points.front().size());
  });
}

tsel_status tsel_path_point(const tsel_path* path, size_t i, double* v, double* value) {
  return guard([&] {
    need(path, "path");
    if (i >= path->value.points.size()) fail(ErrorCode::InvalidArgument, "path index out of range");
    const auto& pt = path->value.points[i];
    if (v) std::memcpy(v, pt.data(), sizeof(double) * static_cast<size_t>(pt.size()));
    if (value) *value = path->value.values[i];
  });
}

tsel_status tsel_path_event_count(const tsel_path* path, size_t* count) {
  return guard([&] {
    need(path, "path");
    need(count, "output");
    *count = path->value.events.size();
  });
}

tsel_status tsel_path_event(const tsel_path* path, size_t i, int* projected, int* region_crossed, int* stalled) {
  return guard([&] {
    need(path, "path");
    if (i >= path->value.events.size()) fail(ErrorCode::InvalidArgument, "event index out of range");
    const StepEvent& e = path->value.events[i];
    if (projected) *projected = e.projected;
    if (region_crossed) *region_crossed = e.region_crossed;
    if (stalled) *stalled = e.stalled;
  });
}

tsel_status tsel_path_write_csv(const tsel_path* path, const char* file) {
  return guard([&] {
    need(path, "path");
    write_file(file, [&](std::ostream& os) { write_path_csv(os, path->value); });
  });
}

tsel_status tsel_path_write_events_json(const tsel_path* path, const char* file) {
  return guard([&] {
    need(path, "path");
    write_file(file, [&](std::ostream& os) { write_events_json(os, path->value); });
  });
}

tsel_status tsel_path_write_svg(const tsel_path* path, const char* file, const char* title) {
  return guard([&] {
    need(path, "path");
    write_file(file, [&](std::ostream& os) { write_path_svg(os, path->value.points, title ? title : ""); });
  });
}

void tsel_path_free(tsel_path* path) { delete path; }

tsel_status tsel_run_trials(const tsel_series* s, const tsel_trial_params* params, tsel_summary** out) {
  return guard([&] {
    need(s, "series");
    need(params, "trial parameters");
    need(out, "output handle");
    PerturbConfig cfg;
    cfg.trials = params->trials;
    cfg.sigma = params->sigma;
    cfg.master_seed = params->seed;
    cfg.window = params->window;
    cfg.threads = params->threads;
    cfg.ascent = ascent_config(&params->ascent);
    *out = new tsel_summary{run_trials(s->value, cfg)};
  });
}

tsel_status tsel_summary_variables(const tsel_summary* s, size_t* p) {
  return guard([&] {
    need(s, "summary");
    need(p, "output");
    *p = static_cast<size_t>(s->value.mean_score.size());
  });
}

tsel_status tsel_summary_mean_score(const tsel_summary* s, double* out) {
  return guard([&] {
    need(s, "summary");
    need(out, "output");
    std::memcpy(out, s->value.mean_score.data(), sizeof(double) * static_cast<size_t>(s->value.mean_score.size()));
  });
}

tsel_status tsel_summary_score_sd(const tsel_summary* s, double* out) {
  return guard([&] {
    need(s, "summary");
    need(out, "output");
    const Eigen::VectorXd sd = s->value.score_sd();
    std::memcpy(out, sd.data(), sizeof(double) * static_cast<size_t>(sd.size()));
  });
}

tsel_status tsel_summary_covariance(const tsel_summary* s, double* out, int* defined) {
  return guard([&] {
    need(s, "summary");
    copy_row_major(s->value.score_covariance, out);
    if (defined) *defined = s->value.covariance_defined;
  });
}

tsel_status tsel_summary_covariance_means(const tsel_summary* s, double* all_entries, double* diagonal) {
  return guard([&] {
    need(s, "summary");
    if (all_entries) *all_entries = s->value.covariance_mean_all();
    if (diagonal) *diagonal = s->value.covariance_mean_diagonal();
  });
}

tsel_status tsel_summary_failures(const tsel_summary* s, size_t* count) {
  return guard([&] {
    need(s, "summary");
    need(count, "output");
    *count = s->value.failures.size();
  });
}

tsel_status tsel_summary_write(const tsel_summary* s, const char* dir) {
  return guard([&] {
    need(s, "summary");
    need(dir, "directory");
    const std::filesystem::path d(dir);
    write_summary(d, s->value);
    const Eigen::VectorXd sd = s->value.score_sd();
    write_file((d / "scores.svg").c_str(),
               [&](std::ostream& os) { write_scores_svg(os, s->value.mean_score, &sd, "mean scores"); });
    write_file((d / "mean_path.svg").c_str(),
               [&](std::ostream& os) { write_path_svg(os, s->value.mean_path, "mean gradient path"); });
  });
}

tsel_status tsel_summary_support(const tsel_summary* s, double threshold, int* indices, size_t capacity, size_t* count) {
  return guard([&] {
    need(s, "summary");
    const auto support = score_support(s->value, threshold);
    if (count) *count = support.size();
    if (capacity) need(indices, "index buffer");
    size_t i = 0;
    for (int j : support) {
      if (i == capacity) break;
      indices[i++] = j;
    }
  });
}

void tsel_summary_free(tsel_summary* s) { delete s; }

tsel_status tsel_write_scores_svg(const double* scores, const double* sd, size_t p, const char* path,
                                  const char* title) {
  return guard([&] {
    need(scores, "scores");
    const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(scores, static_cast<Eigen::Index>(p));
    Eigen::VectorXd spread;
    if (sd) spread = Eigen::Map<const Eigen::VectorXd>(sd, static_cast<Eigen::Index>(p));
    write_file(path, [&](std::ostream& os) { write_scores_svg(os, v, sd ? &spread : nullptr, title ? title : ""); });
  });
}

tsel_status tsel_jaccard(const int* a, size_t na, const int* b, size_t nb, double* out) {
  return guard([&] {
    if (na) need(a, "set");
    if (nb) need(b, "set");
    need(out, "output");
    *out = jaccard(std::set<int>(a, a + na), std::set<int>(b, b + nb));
  });
}

tsel_status tsel_scan_window(const tsel_series* s, int min_window, int max_window, const char* functional,
                             double* values, int* best) {
  return guard([&] {
    need(s, "series");
    const WindowScan scan = scan_window(s->value, min_window, max_window,
                                        Functional::parse(functional ? functional : "max;degrees=1"));
    if (values) std::memcpy(values, scan.values.data(), sizeof(double) * scan.values.size());
    if (best) *best = scan.best;
  });
}

tsel_status tsel_vineyard_matrix_segment(const double* from, const double* to, size_t m, int degree, int resolution,
                                         tsel_vineyard** out) {
  return guard([&] {
    need(out, "output handle");
    const PLCurve curve = PLCurve::of_matrices({0.0, 1.0}, {row_major(from, m, m), row_major(to, m, m)});
    *out = new tsel_vineyard{trace_vineyard(curve, degree, resolution)};
  });
}

tsel_status tsel_vineyard_combo_segment(const tsel_distances* d, const double* v0, const double* v1, size_t p, int degree,
                                        int resolution, tsel_vineyard** out) {
  return guard([&] {
    need(d, "distances");
    need(out, "output handle");
    const PLCurve curve =
        PLCurve::of_matrices({0.0, 1.0}, {combo_distance(d->value, vec(v0, p)), combo_distance(d->value, vec(v1, p))});
    *out = new tsel_vineyard{trace_vineyard(curve, degree, resolution)};
  });
}

tsel_status tsel_vineyard_info(const tsel_vineyard* v, size_t* vines, size_t* crossings, double* chord_deviation,
                               double* stitch_error) {
  return guard([&] {
    need(v, "vineyard");
    if (vines) *vines = v->value.vines.size();
    if (crossings) *crossings = v->value.crossings.size();
    if (chord_deviation) *chord_deviation = v->value.max_chord_deviation();
    if (stitch_error) *stitch_error = v->value.stitch_error;
  });
}

tsel_status tsel_vineyard_write_json(const tsel_vineyard* v, const char* path) {
  return guard([&] {
    need(v, "vineyard");
    write_file(path, [&](std::ostream& os) { write_vineyard_json(os, v->value); });
  });
}

tsel_status tsel_vineyard_write_csv(const tsel_vineyard* v, const char* path) {
  return guard([&] {
    need(v, "vineyard");
    write_file(path, [&](std::ostream& os) { write_vineyard_csv(os, v->value); });
  });
}

void tsel_vineyard_free(tsel_vineyard* v) { delete v; }

}  // extern "C"
