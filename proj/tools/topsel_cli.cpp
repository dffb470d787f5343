// Command-line front end. Talks to the library only through the C API.
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "topsel/topsel.h"

namespace fs = std::filesystem;

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(tsel_status s, const char* what) {
  if (s != TSEL_OK)
    throw CliError(std::string(what) + ": " + tsel_status_name(s) + ": " + tsel_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Series = std::unique_ptr<tsel_series, Deleter<tsel_series, tsel_series_free>>;
using Distances = std::unique_ptr<tsel_distances, Deleter<tsel_distances, tsel_distances_free>>;
using Diagram = std::unique_ptr<tsel_diagram, Deleter<tsel_diagram, tsel_diagram_free>>;
using Path = std::unique_ptr<tsel_path, Deleter<tsel_path, tsel_path_free>>;
using Summary = std::unique_ptr<tsel_summary, Deleter<tsel_summary, tsel_summary_free>>;
using Vines = std::unique_ptr<tsel_vineyard, Deleter<tsel_vineyard, tsel_vineyard_free>>;

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

// Accepts plain numbers and fractions such as 1/48.
double parse_real(const std::string& s) {
  const auto slash = s.find('/');
  auto one = [](std::string_view t) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) throw CliError("not a number: '" + std::string(t) + "'");
    return v;
  };
  if (slash == std::string::npos) return one(s);
  return one(std::string_view(s).substr(0, slash)) / one(std::string_view(s).substr(slash + 1));
}

std::vector<double> parse_reals(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_real(item));
  return out;
}

std::ofstream open(const fs::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError("cannot write '" + p.string() + "'");
  return out;
}

struct DataSource {
  std::string input;
  std::string manifest;

  void add(CLI::App* app) {
    auto* in = app->add_option("--input", input, "CSV file, rows are time points");
    auto* mf = app->add_option("--manifest", manifest, "regenerate the input from a generator manifest");
    in->excludes(mf);
  }

  Series load() const {
    tsel_series* s = nullptr;
    if (!input.empty())
      check(tsel_series_read_csv(input.c_str(), &s), "reading input");
    else if (!manifest.empty())
      check(tsel_replay_manifest(manifest.c_str(), &s), "replaying manifest");
    else
      throw CliError("one of --input or --manifest is required");
    return Series(s);
  }
};

struct AscentFlags {
  std::string functional = "max";
  std::vector<int> degrees;
  int steps = 100;
  std::string step_size = "1/48";
  std::string mode = "fixed";
  double grad_tol = 0.0;
  bool prune = false;

  std::vector<double> sizes;
  std::string spec;

  void add(CLI::App* app) {
    app->add_option("--functional", functional, "total | max | top:<l>")->capture_default_str();
    app->add_option("--degrees", degrees, "homology degrees (default 1)")->delimiter(',');
    app->add_option("--steps", steps, "number of ascent steps")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--step-size", step_size, "step size, or a comma list with one per step")->capture_default_str();
    app->add_option("--mode", mode, "fixed or exact")->capture_default_str()->check(CLI::IsMember({"fixed", "exact"}));
    app->add_option("--grad-tol", grad_tol, "stop once the projected gradient max-norm falls below this")
        ->capture_default_str();
    app->add_flag("--prune", prune, "exact mode: ignore crossings above the largest active death");
  }

  tsel_ascent_params params() {
    sizes = parse_reals(step_size);
    spec = functional;
    if (!degrees.empty()) {
      spec += ";degrees=";
      for (std::size_t i = 0; i < degrees.size(); ++i) spec += (i ? "," : "") + std::to_string(degrees[i]);
    }
    tsel_ascent_params p{};
    p.steps = steps;
    p.step_sizes = sizes.data();
    p.step_size_count = sizes.size();
    p.functional = spec.c_str();
    p.mode = mode == "exact" ? TSEL_MODE_EXACT : TSEL_MODE_FIXED;
    p.grad_tol = grad_tol;
    p.prune = prune;
    return p;
  }

  std::vector<int> degree_list() const { return degrees.empty() ? std::vector<int>{1} : degrees; }
};

std::vector<double> barycenter(std::size_t p) { return std::vector<double>(p, 1.0 / static_cast<double>(p)); }

Diagram diagram_at(const tsel_distances* d, const std::vector<double>& v, const std::vector<int>& degrees) {
  tsel_diagram* out = nullptr;
  check(tsel_diagram_at(d, v.data(), v.size(), degrees.data(), degrees.size(), &out), "computing diagram");
  return Diagram(out);
}

void write_scores(const fs::path& file, const std::vector<double>& v) {
  auto out = open(file);
  out << "variable,score\n";
  for (std::size_t j = 0; j < v.size(); ++j) out << j + 1 << ',' << fmt(v[j]) << '\n';
}

// ---- generate ----

struct GenerateCmd {
  std::string kind = "sines";
  int signals = 3;
  int length = 300;
  double period = 50.0;
  std::string noise = "0";
  std::vector<int> permuted;  // 1-based
  int permuted_count = 7;
  std::uint64_t seed = 0;
  std::string out = "out";

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("generate", "write a synthetic sine data set and its manifest");
    app->add_option("--kind", kind, "sines or sines_permuted")->capture_default_str()->check(CLI::IsMember({"sines", "sines_permuted"}));
    app->add_option("--signals", signals, "number of signals")->capture_default_str();
    app->add_option("--length", length, "number of time points")->capture_default_str();
    app->add_option("--period", period, "sine period")->capture_default_str();
    app->add_option("--noise", noise, "noise SD, or a comma list with one per signal")->capture_default_str();
    app->add_option("--permuted", permuted, "1-based signals to shuffle (sines_permuted)")->delimiter(',');
    app->add_option("--permuted-count", permuted_count, "shuffle the last N signals when --permuted is absent")
        ->capture_default_str();
    app->add_option("--seed", seed, "random seed")->capture_default_str();
    app->add_option("--out", out, "output directory")->capture_default_str();
    app->callback([this] { run(); });
  }

  void run() {
    const auto sds = parse_reals(noise);
    std::vector<int> perm;
    if (kind == "sines_permuted") {
      if (!permuted.empty())
        for (int i : permuted) perm.push_back(i - 1);
      else
        for (int i = signals - permuted_count; i < signals; ++i) perm.push_back(i);
    }
    fs::create_directories(out);
    const std::string manifest = (fs::path(out) / "manifest.json").string();
    tsel_sines_params p{};
    p.signals = signals;
    p.length = length;
    p.period = period;
    p.noise_sd = sds.data();
    p.noise_count = sds.size();
    p.permuted = perm.data();
    p.permuted_count = perm.size();
    p.seed = seed;
    tsel_series* s = nullptr;
    check(tsel_generate_sines(&p, manifest.c_str(), &s), "generating");
    Series series(s);
    check(tsel_series_write_csv(series.get(), (fs::path(out) / "data.csv").c_str()), "writing data");
    std::cout << "wrote " << (fs::path(out) / "data.csv").string() << " and " << manifest << '\n';
  }
};

// ---- scan-window ----

struct ScanCmd {
  DataSource src;
  int min_window = 1;
  int max_window = 0;
  std::string functional = "max";
  std::vector<int> degrees;
  std::string out = "out";

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("scan-window", "functional value at the barycenter across window lengths");
    src.add(app);
    app->add_option("--min-window", min_window, "smallest window length")->capture_default_str();
    app->add_option("--max-window", max_window, "largest window length (default: series length)");
    app->add_option("--functional", functional, "total | max | top:<l>")->capture_default_str();
    app->add_option("--degrees", degrees, "homology degrees (default 1)")->delimiter(',');
    app->add_option("--out", out, "output directory")->capture_default_str();
    app->callback([this] { run(); });
  }

  void run() {
    Series s = src.load();
    std::size_t n = 0;
    check(tsel_series_shape(s.get(), &n, nullptr), "reading shape");
    const int hi = max_window > 0 ? max_window : static_cast<int>(n);
    if (hi < min_window) throw CliError("--max-window is below --min-window");
    std::string spec = functional;
    if (!degrees.empty()) {
      spec += ";degrees=";
      for (std::size_t i = 0; i < degrees.size(); ++i) spec += (i ? "," : "") + std::to_string(degrees[i]);
    }
    std::vector<double> values(static_cast<std::size_t>(hi - min_window + 1));
    int best = 0;
    check(tsel_scan_window(s.get(), min_window, hi, spec.c_str(), values.data(), &best), "scanning windows");
    fs::create_directories(out);
    auto f = open(fs::path(out) / "scan.csv");
    f << "window,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) f << min_window + static_cast<int>(i) << ',' << fmt(values[i]) << '\n';
    std::cout << "recommended window: " << best << '\n';
  }
};

// ---- select ----

struct SelectCmd {
  DataSource src;
  AscentFlags ascent;
  int window = 0;
  int trials = 1;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  int threads = 0;
  int vineyard_resolution = 0;
  std::string out = "out";

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("select", "score variables by projected gradient ascent");
    src.add(app);
    ascent.add(app);
    app->add_option("--window", window, "sliding window length")->required();
    app->add_option("--trials", trials, "perturbation trials")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--perturb-sigma", sigma, "SD of the noise added in each trial")->capture_default_str();
    app->add_option("--seed", seed, "master seed for the trials")->capture_default_str();
    app->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
    app->add_option("--vineyard-resolution", vineyard_resolution,
                    "also trace the vineyard from the barycenter to the score (0: skip)")
        ->capture_default_str();
    app->add_option("--out", out, "output directory")->capture_default_str();
    app->callback([this] { run(); });
  }

  void run() {
    Series s = src.load();
    tsel_distances* dp = nullptr;
    check(tsel_distances_new(s.get(), window, &dp), "sliding windows");
    Distances d(dp);
    std::size_t m = 0, p = 0;
    check(tsel_distances_shape(d.get(), &m, &p), "reading shape");
    const fs::path dir(out);
    fs::create_directories(dir);
    tsel_ascent_params ap = ascent.params();
    const auto degrees = ascent.degree_list();

    std::vector<double> score(p);
    if (trials > 1 || sigma > 0.0) {
      tsel_trial_params tp{};
      tp.trials = trials;
      tp.sigma = sigma;
      tp.seed = seed;
      tp.window = window;
      tp.threads = threads;
      tp.ascent = ap;
      tsel_summary* sp = nullptr;
      check(tsel_run_trials(s.get(), &tp, &sp), "running trials");
      Summary sum(sp);
      check(tsel_summary_write(sum.get(), dir.c_str()), "writing summary");
      check(tsel_summary_mean_score(sum.get(), score.data()), "reading scores");
      std::size_t failures = 0;
      check(tsel_summary_failures(sum.get(), &failures), "reading failures");
      if (failures) std::cerr << "warning: " << failures << " trial(s) failed and were excluded\n";
    } else {
      tsel_path* pp = nullptr;
      check(tsel_ascend(d.get(), &ap, &pp), "ascent");
      Path path(pp);
      check(tsel_path_write_csv(path.get(), (dir / "path.csv").c_str()), "writing path");
      check(tsel_path_write_events_json(path.get(), (dir / "events.json").c_str()), "writing events");
      check(tsel_path_write_svg(path.get(), (dir / "path.svg").c_str(), "gradient path"), "writing path plot");
      std::size_t len = 0;
      check(tsel_path_shape(path.get(), &len, nullptr), "reading path");
      check(tsel_path_point(path.get(), len - 1, score.data(), nullptr), "reading score");
      write_scores(dir / "scores.csv", score);
    }

    const Diagram before = diagram_at(d.get(), barycenter(p), degrees);
    const Diagram after = diagram_at(d.get(), score, degrees);
    check(tsel_diagram_write_csv(before.get(), (dir / "diagram_before.csv").c_str()), "writing diagram");
    check(tsel_diagram_write_csv(after.get(), (dir / "diagram_after.csv").c_str()), "writing diagram");
    check(tsel_diagram_write_svg(before.get(), (dir / "diagram_before.svg").c_str(), "diagram at the barycenter"),
          "writing diagram plot");
    check(tsel_diagram_write_svg(after.get(), (dir / "diagram_after.svg").c_str(), "diagram at the score"),
          "writing diagram plot");
    if (trials <= 1 && sigma == 0.0)
      check(tsel_write_scores_svg(score.data(), nullptr, p, (dir / "scores.svg").c_str(), "scores"), "writing score plot");

    if (vineyard_resolution > 0) {
      const auto v0 = barycenter(p);
      tsel_vineyard* vp = nullptr;
      check(tsel_vineyard_combo_segment(d.get(), v0.data(), score.data(), p, degrees.front(), vineyard_resolution, &vp),
            "tracing vineyard");
      Vines vy(vp);
      check(tsel_vineyard_write_json(vy.get(), (dir / "vineyard.json").c_str()), "writing vineyard");
      check(tsel_vineyard_write_csv(vy.get(), (dir / "vineyard.csv").c_str()), "writing vineyard");
    }

    double before_v = 0, after_v = 0;
    check(tsel_functional_value(ap.functional, before.get(), &before_v), "evaluating");
    check(tsel_functional_value(ap.functional, after.get(), &after_v), "evaluating");
    nlohmann::ordered_json run;
    run["source"] = src.input.empty() ? nlohmann::json{{"manifest", src.manifest}} : nlohmann::json{{"input", src.input}};
    run["window"] = window;
    run["functional"] = ap.functional;
    run["mode"] = ascent.mode;
    run["steps"] = ascent.steps;
    run["step_size"] = ascent.step_size;
    run["trials"] = trials;
    run["perturb_sigma"] = sigma;
    run["seed"] = seed;
    run["value_at_barycenter"] = fmt(before_v);
    run["value_at_score"] = fmt(after_v);
    auto& sc = run["score"] = nlohmann::ordered_json::array();
    for (double x : score) sc.push_back(fmt(x));
    auto f = open(dir / "run.json");
    f << run.dump(1) << '\n';

    std::cout << "score:";
    for (double x : score) std::printf(" %.4f", x);
    std::cout << "\nwrote results to " << dir.string() << '\n';
  }

};

// ---- vineyard ----

struct VineyardCmd {
  DataSource src;
  int window = 0;
  int degree = 1;
  std::string from;
  std::string to;
  int resolution = 50;
  std::string out = "out";

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("vineyard", "trace diagrams along a straight segment of weightings");
    src.add(app);
    app->add_option("--window", window, "sliding window length")->required();
    app->add_option("--degrees", degree, "homology degree")->capture_default_str();
    app->add_option("--from", from, "start weighting, comma list (default: barycenter)");
    app->add_option("--to", to, "end weighting, comma list")->required();
    app->add_option("--resolution", resolution, "samples per segment")->capture_default_str();
    app->add_option("--out", out, "output directory")->capture_default_str();
    app->callback([this] { run(); });
  }

  void run() {
    Series s = src.load();
    tsel_distances* dp = nullptr;
    check(tsel_distances_new(s.get(), window, &dp), "sliding windows");
    Distances d(dp);
    std::size_t p = 0;
    check(tsel_distances_shape(d.get(), nullptr, &p), "reading shape");
    const auto v0 = from.empty() ? barycenter(p) : parse_reals(from);
    const auto v1 = parse_reals(to);
    if (v0.size() != p || v1.size() != p) throw CliError("weightings need " + std::to_string(p) + " entries");
    tsel_vineyard* vp = nullptr;
    check(tsel_vineyard_combo_segment(d.get(), v0.data(), v1.data(), p, degree, resolution, &vp), "tracing vineyard");
    Vines vy(vp);
    fs::create_directories(out);
    check(tsel_vineyard_write_json(vy.get(), (fs::path(out) / "vineyard.json").c_str()), "writing vineyard");
    check(tsel_vineyard_write_csv(vy.get(), (fs::path(out) / "vineyard.csv").c_str()), "writing vineyard");
    std::size_t vines = 0, crossings = 0;
    check(tsel_vineyard_info(vy.get(), &vines, &crossings, nullptr, nullptr), "reading vineyard");
    std::cout << vines << " vines, " << crossings << " crossings\n";
  }
};

// ---- distances ----

struct DistancesCmd {
  DataSource src;
  int window = 1;
  std::string weights;
  std::string out = "out";

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("distances", "write the weighted sliding-window distance matrix");
    src.add(app);
    app->add_option("--window", window, "sliding window length")->capture_default_str();
    app->add_option("--weights", weights, "weighting, comma list (default: barycenter)");
    app->add_option("--out", out, "output directory")->capture_default_str();
    app->callback([this] { run(); });
  }

  void run() {
    Series s = src.load();
    tsel_distances* dp = nullptr;
    check(tsel_distances_new(s.get(), window, &dp), "sliding windows");
    Distances d(dp);
    std::size_t p = 0;
    check(tsel_distances_shape(d.get(), nullptr, &p), "reading shape");
    const auto v = weights.empty() ? barycenter(p) : parse_reals(weights);
    fs::create_directories(out);
    check(tsel_distances_write_csv(d.get(), v.data(), v.size(), (fs::path(out) / "distances.csv").c_str()),
          "writing distances");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological variable selection for multivariate time series"};
  app.set_version_flag("--version", std::string(tsel_version()));
  // Subcommand options go in a section named after the command, e.g. [select].
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags take precedence");
  app.require_subcommand(1);

  GenerateCmd gen;
  ScanCmd scan;
  SelectCmd select;
  VineyardCmd vine;
  DistancesCmd dist;
  gen.add(app);
  scan.add(app);
  select.add(app);
  vine.add(app);
  dist.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const CliError& e) {
    std::cerr << "topsel: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "topsel: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
