#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "hocomp/hocomp.h"
#include "svg.hpp"

namespace fs = std::filesystem;
using hocomp::cli::ConfigError;
using hocomp::cli::RunConfig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDisconnected = 2;
constexpr int kExitResource = 3;

/// Carries a C API failure up to main.
struct ApiFailure {
  hoc_status status;
  std::string message;
};

void check(hoc_status s) {
  if (s != HOC_OK) throw ApiFailure{s, hoc_last_error()};
}

int exit_code(hoc_status s) {
  switch (s) {
    case HOC_OK:
      return kExitOk;
    case HOC_ENDPOINT_IN_OBSTACLE:
    case HOC_DISCONNECTED:
      return kExitDisconnected;
    case HOC_RESOURCE_LIMIT:
      return kExitResource;
    default:
      return kExitConfig;
  }
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};
using Shape = Handle<hoc_shape, hoc_shape_free>;
using Path = Handle<hoc_path, hoc_path_free>;
using Table = Handle<hoc_table, hoc_table_free>;

std::array<double, 2> parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("expected a point as x,y but got '" + text + "'");
  try {
    std::size_t a = 0, b = 0;
    const double x = std::stod(text.substr(0, comma), &a);
    const double y = std::stod(text.substr(comma + 1), &b);
    if (a != comma || b != text.size() - comma - 1) throw std::invalid_argument("trailing");
    return {x, y};
  } catch (const std::logic_error&) {
    throw ConfigError("expected a point as x,y but got '" + text + "'");
  }
}

double number(const hoc_table* t, std::size_t row, const char* column) {
  std::size_t c = 0;
  check(hoc_table_find_column(t, column, &c));
  double v = 0;
  check(hoc_table_number(t, row, c, &v));
  return v;
}

std::string text(const hoc_table* t, std::size_t row, std::size_t column) {
  std::size_t needed = 0;
  check(hoc_table_text(t, row, column, nullptr, 0, &needed));
  std::string s(needed + 1, '\0');
  check(hoc_table_text(t, row, column, s.data(), s.size(), &needed));
  s.resize(needed);
  return s;
}

std::string text(const hoc_table* t, std::size_t row, const char* column) {
  std::size_t c = 0;
  check(hoc_table_find_column(t, column, &c));
  return text(t, row, c);
}

/// Shared state of one invocation.
struct Session {
  RunConfig config;
  std::string command;
  fs::path out_dir;
  Shape shape;
  hoc_solver_options options{};

  std::string header() const {
    return std::string("hocomp ") + hoc_version() + " command=" + command + " config=fnv1a:" + config.hash() +
           " seed=" + std::to_string(config.seed);
  }

  void write(const hoc_table* t, const std::string& name) const {
    const std::string path = (out_dir / name).string();
    const std::string h = header();
    const char* comments[] = {h.c_str()};
    check(hoc_table_write_csv(t, path.c_str(), comments, 1));
    std::cout << "wrote " << path << '\n';
  }

  void write_svg(const std::string& svg, const std::string& name) const {
    const fs::path path = out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << "<!-- " << header() << " -->\n" << svg;
    std::cout << "wrote " << path.string() << '\n';
  }

  void print_summary(const hoc_table* t) const {
    for (std::size_t r = 0; r < hoc_table_rows(t); ++r) std::cout << text(t, r, std::size_t{0}) << ' ' << text(t, r, std::size_t{1}) << '\n';
  }
};

void make_shape(Session& s) {
  const RunConfig& c = s.config;
  if (c.shape == "disk") {
    check(hoc_shape_disk(c.center[0], c.center[1], c.radius, s.shape.out()));
  } else if (c.shape == "square") {
    check(hoc_shape_square(c.center[0], c.center[1], c.half_side, s.shape.out()));
  } else if (c.shape == "polygon") {
    std::vector<double> xy;
    for (const auto& v : c.vertices) xy.insert(xy.end(), {v[0], v[1]});
    check(hoc_shape_polygon(xy.data(), c.vertices.size(), s.shape.out()));
  } else {
    throw ConfigError("shape must be disk, square or polygon, not '" + c.shape + "'");
  }
}

hoc_metric metric(const RunConfig& c) { return {c.beta, c.p, c.epsilon}; }

int cmd_distance(Session& s, const std::string& from, const std::string& to) {
  const auto a = parse_point(from);
  const auto b = parse_point(to);
  const hoc_metric m = metric(s.config);
  double value = 0;
  Path path;
  check(hoc_distance(s.shape.get(), &m, &s.options, a[0], a[1], b[0], b[1], &value, path.out()));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::cout << "distance " << buf << '\n' << "vertices " << hoc_path_size(path.get()) << '\n';
  Table t;
  check(hoc_path_table(path.get(), t.out()));
  s.write(t.get(), "distance_path.csv");
  if (s.config.emit_svg) {
    std::vector<double> x(hoc_path_size(path.get())), y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) check(hoc_path_vertex(path.get(), i, &x[i], &y[i]));
    s.write_svg(hocomp::cli::path_chart("geodesic " + from + " to " + to, x, y), "distance_path.svg");
  }
  return kExitOk;
}

int cmd_homogenize(Session& s) {
  const RunConfig& c = s.config;
  if (c.directions < 0) throw ConfigError("directions must be non-negative");
  Table rows, summary;
  check(hoc_psi_table(s.shape.get(), c.beta, static_cast<std::size_t>(c.directions), c.R_list.data(),
                      c.R_list.size(), &s.options, rows.out(), summary.out()));
  s.write(rows.get(), "psi.csv");
  s.print_summary(summary.get());
  if (c.emit_svg) {
    std::vector<double> angles, psi;
    for (std::size_t r = 0; r < hoc_table_rows(rows.get()); ++r) {
      angles.push_back(number(rows.get(), r, "angle"));
      psi.push_back(number(rows.get(), r, "psi"));
    }
    s.write_svg(hocomp::cli::polar_chart("homogenized norm psi", angles, psi), "psi.svg");
  }
  return kExitOk;
}

int cmd_lambda(Session& s, std::size_t samples) {
  double lambda = 0;
  check(hoc_estimate_lambda(s.shape.get(), samples, &lambda));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", lambda);
  std::cout << "lambda " << buf << '\n';
  return kExitOk;
}

int cmd_avoidance(Session& s, std::size_t trials) {
  Table rows, summary;
  check(hoc_avoidance(s.shape.get(), s.config.beta, trials, s.config.seed, &s.options, rows.out(), summary.out()));
  s.write(rows.get(), "avoidance.csv");
  s.print_summary(summary.get());
  return kExitOk;
}

int cmd_critical(Session& s, bool timings) {
  const RunConfig& c = s.config;
  if (c.k_range.size() != 2) throw ConfigError("k_range must be [first, last]");
  if (c.k_range[1] < c.k_range[0]) throw ConfigError("k_range is empty");
  const hoc_critical_config cc{c.beta,         c.p_list.data(), c.p_list.size(), c.k_range[0], c.k_range[1],
                               {0.0, 0.0},     {0.5, 0.5},      c.R_list.data(), c.R_list.size()};
  Table rows, verdicts, summary;
  check(hoc_critical(s.shape.get(), &cc, &s.options, timings ? 1 : 0, rows.out(), verdicts.out(), summary.out()));
  s.write(rows.get(), "critical.csv");
  s.write(verdicts.get(), "critical_verdicts.csv");
  s.print_summary(summary.get());
  bool all = true;
  for (std::size_t r = 0; r < hoc_table_rows(verdicts.get()); ++r) {
    const bool passed = number(verdicts.get(), r, "passed") == 1.0;
    all = all && passed;
    std::cout << "p=" << text(verdicts.get(), r, "p") << ' ' << text(verdicts.get(), r, "verdict") << ' '
              << (passed ? "PASS" : "FAIL") << ": " << text(verdicts.get(), r, "detail") << '\n';
  }
  std::cout << (all ? "all verdicts passed" : "some verdicts failed") << '\n';

  if (c.emit_svg) {
    const hoc_table* t = rows.get();
    for (double p : c.p_list) {
      char tag[32];
      std::snprintf(tag, sizeof tag, "%g", p);
      hocomp::cli::Series even{"even eps = 1/(2k)", {}, {}}, odd{"odd eps = 1/(2k+1)", {}, {}};
      double psi = NAN;
      char key[40];
      std::snprintf(key, sizeof key, "%.17g", p);
      const std::string p_text = std::isinf(p) ? "inf" : key;
      for (std::size_t r = 0; r < hoc_table_rows(t); ++r) {
        if (text(t, r, "p") != p_text) continue;
        hocomp::cli::Series& dst = text(t, r, "parity") == "even" ? even : odd;
        dst.x.push_back(number(t, r, "k"));
        dst.y.push_back(number(t, r, "distance"));
        psi = number(t, r, "psi_ref");
      }
      hocomp::cli::Series ref{"psi reference", even.x, std::vector<double>(even.x.size(), psi)};
      s.write_svg(hocomp::cli::line_chart(std::string("critical sweep p = ") + tag, "k", "distance",
                                          {even, odd, ref}),
                  std::string("critical_p") + tag + ".svg");
    }
  }
  return kExitOk;
}

int cmd_rate(Session& s, const std::string& from, const std::string& to) {
  const RunConfig& c = s.config;
  const auto a = parse_point(from);
  const auto b = parse_point(to);
  Table rows, summary;
  check(hoc_rate(s.shape.get(), c.beta, c.p, a[0], a[1], b[0], b[1], c.epsilon_list.data(), c.epsilon_list.size(),
                 c.R_list.data(), c.R_list.size(), &s.options, rows.out(), summary.out()));
  s.write(rows.get(), "rate.csv");
  s.print_summary(summary.get());
  if (c.emit_svg) {
    hocomp::cli::Series dev{"|d - psi|", {}, {}};
    for (std::size_t r = 0; r < hoc_table_rows(rows.get()); ++r) {
      dev.x.push_back(std::log(number(rows.get(), r, "epsilon")));
      dev.y.push_back(std::log(std::abs(number(rows.get(), r, "deviation"))));
    }
    s.write_svg(hocomp::cli::line_chart("convergence rate", "log epsilon", "log |d - psi|", {dev}), "rate.svg");
  }
  return kExitOk;
}

int cmd_bounds(Session& s) {
  const RunConfig& c = s.config;
  if (c.n_pairs < 0) throw ConfigError("n_pairs must be non-negative");
  const hoc_metric m = metric(c);
  Table rows, summary;
  check(hoc_bounds(s.shape.get(), &m, static_cast<std::size_t>(c.n_pairs), c.seed, &s.options, rows.out(),
                   summary.out()));
  s.write(rows.get(), "bounds.csv");
  s.print_summary(summary.get());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesics, homogenized norms and critical-exponent sweeps for two-phase periodic metrics",
               "hocomp"};
  app.set_version_flag("--version", hoc_version());
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  bool svg = false;
  app.add_option("--config", config_path, "Config file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (overrides out_dir)");
  app.add_option("--seed", seed, "Random seed (overrides seed)");
  app.add_flag("--svg", svg, "Also write SVG charts");

  std::string from, to;
  auto* distance = app.add_subcommand("distance", "Distance and geodesic between two points");
  distance->add_option("--from", from, "Start point x,y")->required();
  distance->add_option("--to", to, "End point x,y")->required();

  std::optional<std::int64_t> directions;
  auto* homogenize = app.add_subcommand("homogenize", "Table of the homogenized norm over directions");
  homogenize->add_option("--directions", directions, "Number of directions (overrides the config)");

  std::size_t samples = 256;
  auto* lambda = app.add_subcommand("lambda", "Opacity threshold of the inclusion");
  lambda->add_option("--samples", samples, "Boundary samples")->capture_default_str();

  std::size_t trials = 50;
  auto* avoidance = app.add_subcommand("avoidance", "Check that geodesics avoid high-opacity inclusions");
  avoidance->add_option("--trials", trials, "Random endpoint pairs")->capture_default_str();

  bool timings = false;
  auto* critical = app.add_subcommand("critical", "Even/odd period sweeps for each exponent");
  critical->add_flag("--timings", timings, "Record per-row runtimes (output is then not reproducible)");

  std::string rate_from = "0,0", rate_to = "0.5,0.5";
  auto* rate = app.add_subcommand("rate", "Convergence rate as epsilon decreases (p < 1)");
  rate->add_option("--from", rate_from, "Start point x,y")->capture_default_str();
  rate->add_option("--to", rate_to, "End point x,y")->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "Growth and snapping bounds on random pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  Session s;
  try {
    s.config = config_path.empty() ? RunConfig{} : hocomp::cli::load_config(config_path);
    if (seed) s.config.seed = *seed;
    if (svg) s.config.emit_svg = true;
    if (directions) s.config.directions = *directions;
    s.out_dir = out_dir.empty() ? fs::path(s.config.out_dir) : fs::path(out_dir);
    s.command = app.get_subcommands().front()->get_name();
    fs::create_directories(s.out_dir);

    hoc_solver_options_default(&s.options);
    s.options.nodes_per_cell = s.config.nodes_per_cell;
    s.options.stencil = s.config.stencil;
    s.options.padding_cells = s.config.padding_cells;
    make_shape(s);

    if (distance->parsed()) return cmd_distance(s, from, to);
    if (homogenize->parsed()) return cmd_homogenize(s);
    if (lambda->parsed()) return cmd_lambda(s, samples);
    if (avoidance->parsed()) return cmd_avoidance(s, trials);
    if (critical->parsed()) return cmd_critical(s, timings);
    if (rate->parsed()) return cmd_rate(s, rate_from, rate_to);
    if (bounds->parsed()) return cmd_bounds(s);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ApiFailure& e) {
    std::cerr << hoc_status_string(e.status) << ": " << e.message << '\n';
    if (e.status == HOC_ENDPOINT_IN_OBSTACLE) std::cerr << "disconnected\n";
    return exit_code(e.status);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
