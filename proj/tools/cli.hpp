#pragma once

// Command-line front end: egg | ngon | bound | check | optimize | sweep | render.
//
// Exit codes: 0 success, 1 check failed / no optimizer run converged,
// 2 usage, band or parse error, 3 I/O failure.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "abconvex/abconvex.hpp"

namespace abconvex::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kIo = 3 };

// Shortest representation that round-trips, for human-facing tables.
inline std::string shortest(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : format_double(v);
}

inline std::size_t default_grid(std::size_t fallback) {
  if (const char* env = std::getenv("ABCONVEX_GRID")) {
    std::size_t m = 0;
    const std::string s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), m);
    if (ec == std::errc{} && ptr == s.data() + s.size() && m > 0) return m;
  }
  return fallback;
}

struct BandFlags {
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> perimeter;
  std::optional<double> perimeter_pi;

  void add_to(CLI::App* app, bool need_perimeter = true) {
    app->add_option("--alpha", alpha, "minimum radius of curvature")->required();
    app->add_option("--beta", beta, "maximum radius of curvature")->required();
    if (need_perimeter) {
      auto* p = app->add_option("--perimeter", perimeter, "target perimeter L");
      auto* pp = app->add_option("--perimeter-pi", perimeter_pi, "target perimeter as a multiple of pi");
      p->excludes(pp);
      pp->excludes(p);
    }
  }

  // Throws BandViolation when neither perimeter flag was given.
  double length() const {
    if (perimeter) return *perimeter;
    if (perimeter_pi) return *perimeter_pi * std::numbers::pi;
    throw BandViolation("one of --perimeter or --perimeter-pi is required");
  }

  BandParams band() const { return BandParams(alpha, beta, length()); }
};

struct Context {
  std::ostream& out;
  std::ostream& err;
};

// Writes to FILE atomically, or to out when no file was given.
inline int emit(const Context& ctx, const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    ctx.out << content;
    return kOk;
  }
  try {
    write_file_atomic(path, content);
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}

inline void print_row(std::ostream& os, const std::string& label, const std::string& value) {
  os << std::left << std::setw(28) << label << value << '\n';
}

struct ShapeFlags {
  BandFlags band;
  std::size_t samples = 0;
  std::string out;
  std::string format = "json";
  int n = 0;
};

inline int cmd_shape(const Context& ctx, const ShapeFlags& f, bool ngon) {
  const BandParams band = f.band.band();
  const ArcBody body = ngon ? make_regular_ngon(band, f.n) : make_egg(band);
  const std::string content = f.format == "csv" ? boundary_csv(body, f.samples) : to_json(body) + "\n";
  return emit(ctx, f.out, content);
}

inline int cmd_bound(const Context& ctx, const BandFlags& f) {
  const double l = f.length();
  const double rhs = rhs_new(f.alpha, f.beta, l);
  print_row(ctx.out, "alpha", shortest(f.alpha));
  print_row(ctx.out, "beta", shortest(f.beta));
  print_row(ctx.out, "perimeter", shortest(l));
  print_row(ctx.out, "rhs (alpha,beta)-bound", shortest(rhs));
  // Curvature >= 1/beta alone: the alpha = 0 member of the family.
  print_row(ctx.out, "rhs curvature >= 1/beta", shortest(rhs_min_curvature(1.0 / f.beta, l)));
  // Curvature <= 1/alpha alone: the beta -> infinity limit.
  if (f.alpha > 0.0) {
    print_row(ctx.out, "rhs curvature <= 1/alpha", shortest(rhs_max_curvature(1.0 / f.alpha, l)));
  }
  return kOk;
}

struct CheckFlags {
  std::string file;
  std::size_t samples = 0;
  std::optional<double> alpha;
  std::optional<double> beta;
  bool json = false;
};

inline int cmd_check(const Context& ctx, const CheckFlags& f) {
  const Body body = read_body(f.file);
  BoundReport report;
  double beta = 0.0;
  if (const auto* arcs = std::get_if<ArcBody>(&body)) {
    const CurvatureBand band(f.alpha.value_or(arcs->alpha()), f.beta.value_or(arcs->beta()));
    beta = band.beta();
    report = deficit(*arcs, band, f.samples);
  } else {
    if (!f.alpha || !f.beta) throw BandViolation("sampled bodies need --alpha and --beta");
    const CurvatureBand band(*f.alpha, *f.beta);
    beta = band.beta();
    auto p = std::get<SampledSupport>(body);
    if (p.grid_size() != f.samples) p = p.resampled(f.samples);
    report = deficit(p, band);
  }
  if (f.json) {
    ctx.out << to_json(report) << '\n';
  } else {
    print_row(ctx.out, "perimeter", shortest(report.perimeter));
    print_row(ctx.out, "area", shortest(report.area));
    print_row(ctx.out, "rhs", shortest(report.rhs));
    print_row(ctx.out, "deficit", shortest(report.deficit));
    print_row(ctx.out, "ab_convex", report.ab_convex ? "true" : "false");
    print_row(ctx.out, "rho range", shortest(report.band_check.rho_min) + " .. " + shortest(report.band_check.rho_max));
    print_row(ctx.out, "closure_residual", shortest(report.closure_residual));
    if (!report.band_check.violations.empty()) {
      std::ostringstream nodes;
      const auto& v = report.band_check.violations;
      for (std::size_t i = 0; i < v.size() && i < 32; ++i) nodes << (i ? " " : "") << v[i];
      if (v.size() > 32) nodes << " ... (" << v.size() << " total)";
      print_row(ctx.out, "violation nodes", nodes.str());
    }
  }
  const bool ok = report.passes(beta);
  print_row(ok ? ctx.out : ctx.err, "verdict", ok ? "PASS" : "FAIL");
  return ok ? kOk : kFailed;
}

struct OptimizeFlags {
  BandFlags band;
  std::size_t cells = 0;
  int seeds = 20;
  std::uint64_t seed = 0;
  bool sharpen = false;
  int max_iters = 4000;
  unsigned threads = 0;
  std::string out;
  std::string trace;
};

inline int cmd_optimize(const Context& ctx, const OptimizeFlags& f) {
  const BandParams band = f.band.band();
  OptimizerConfig cfg;
  cfg.grid_size = f.cells;
  cfg.seed = f.seed;
  cfg.sharpen = f.sharpen;
  cfg.max_iters = f.max_iters;
  cfg.record_trace = !f.trace.empty();
  require_grid_size(cfg.grid_size);
  const unsigned threads = f.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : f.threads;
  const MultiStartResult ms = multi_start(band, cfg, f.seeds, threads);
  const OptimizerResult& best = ms.runs[ms.best];
  const Alignment al = align_to_egg(best.support, band);
  const double rhs = rhs_new(band);

  double lo = best.area, hi = best.area;
  int converged = 0;
  for (const auto& r : ms.runs) {
    lo = std::min(lo, r.area);
    hi = std::max(hi, r.area);
    converged += r.converged ? 1 : 0;
  }
  print_row(ctx.out, "runs converged", std::to_string(converged) + " / " + std::to_string(ms.runs.size()));
  print_row(ctx.out, "best seed", std::to_string(best.seed));
  print_row(ctx.out, "best area", shortest(best.area));
  print_row(ctx.out, "rhs (egg area)", shortest(rhs));
  print_row(ctx.out, "gap to rhs", shortest(best.area - rhs));
  print_row(ctx.out, "area spread", shortest(hi - lo));
  print_row(ctx.out, "bang_fraction", shortest(best.bang_fraction));
  print_row(ctx.out, "switch_count", std::to_string(best.switch_count));
  print_row(ctx.out, "threshold gamma", shortest(best.threshold_gamma));
  print_row(ctx.out, "egg rotation", shortest(al.rotation));
  print_row(ctx.out, "egg distance", shortest(al.distance));

  if (!f.out.empty()) {
    if (int rc = emit(ctx, f.out, to_json(best, {rhs, al.rotation, al.distance}) + "\n"); rc != kOk) return rc;
  }
  if (!f.trace.empty()) {
    if (int rc = emit(ctx, f.trace, trace_csv(best)); rc != kOk) return rc;
  }
  if (!ms.any_converged) {
    ctx.err << "error: no seed converged\n";
    return kFailed;
  }
  return kOk;
}

inline int cmd_sweep(const Context& ctx, const BandFlags& f, int n_max) {
  const BandParams band = f.band();
  const SweepResult s = ngon_sweep(band, n_max);
  const double base = s.entries.front().area;
  ctx.out << std::left << std::setw(6) << "N" << std::setw(26) << "area" << "area - area(N=2)" << '\n';
  for (const auto& e : s.entries) {
    ctx.out << std::left << std::setw(6) << e.n << std::setw(26) << shortest(e.area) << shortest(e.area - base) << '\n';
  }
  print_row(ctx.out, "argmin N", std::to_string(s.argmin));
  return kOk;
}

struct RenderFlags {
  std::string file;
  std::string out;
  int width = 600;
};

inline int cmd_render(const Context& ctx, const RenderFlags& f) {
  if (f.width <= 0) throw InvalidInput("--width must be positive");
  const Body body = read_body(f.file);
  return emit(ctx, f.out, render_svg(body, f.width));
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  const Context ctx{out, err};
  CLI::App app{"Curvature-constrained planar convex bodies: constructions, area bounds, minimization"};
  app.require_subcommand(1);

  ShapeFlags egg;
  egg.samples = default_grid(kDefaultQuadratureGrid);
  auto* egg_cmd = app.add_subcommand("egg", "construct the (alpha,beta)-egg");
  egg.band.add_to(egg_cmd);
  egg_cmd->add_option("--samples", egg.samples, "boundary samples for CSV output");
  egg_cmd->add_option("--out", egg.out, "output file (default stdout)");
  egg_cmd->add_option("--format", egg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  ShapeFlags ngon;
  ngon.samples = default_grid(kDefaultQuadratureGrid);
  auto* ngon_cmd = app.add_subcommand("ngon", "construct the (alpha,beta)-regular N-gon");
  ngon.band.add_to(ngon_cmd);
  ngon_cmd->add_option("-n,--n", ngon.n, "number of beta-arcs (N >= 2)")->required();
  ngon_cmd->add_option("--samples", ngon.samples, "boundary samples for CSV output");
  ngon_cmd->add_option("--out", ngon.out, "output file (default stdout)");
  ngon_cmd->add_option("--format", ngon.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  BandFlags bound;
  auto* bound_cmd = app.add_subcommand("bound", "evaluate the area lower bounds");
  bound.add_to(bound_cmd);

  CheckFlags check;
  check.samples = default_grid(kDefaultQuadratureGrid);
  auto* check_cmd = app.add_subcommand("check", "check a body against the area bound");
  check_cmd->add_option("file", check.file, "body JSON")->required();
  check_cmd->add_option("--samples", check.samples, "quadrature grid size");
  check_cmd->add_option("--alpha", check.alpha, "band override (required for sampled bodies)");
  check_cmd->add_option("--beta", check.beta, "band override (required for sampled bodies)");
  check_cmd->add_flag("--json", check.json, "print the report as JSON");

  OptimizeFlags opt;
  opt.cells = default_grid(kDefaultOptimizerGrid);
  auto* opt_cmd = app.add_subcommand("optimize", "minimize area under perimeter and curvature constraints");
  opt.band.add_to(opt_cmd);
  opt_cmd->add_option("--cells", opt.cells, "control grid size");
  opt_cmd->add_option("--seeds", opt.seeds, "number of random starts")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--seed", opt.seed, "first seed");
  opt_cmd->add_flag("--sharpen", opt.sharpen, "round to the bang-bang threshold pattern at the end");
  opt_cmd->add_option("--max-iters", opt.max_iters, "iteration cap per run")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
  opt_cmd->add_option("--out", opt.out, "write the best result as JSON");
  opt_cmd->add_option("--trace", opt.trace, "write the best run's convergence trace as CSV");

  BandFlags sweep;
  int n_max = 16;
  auto* sweep_cmd = app.add_subcommand("sweep", "closed-form regular N-gon areas for N = 2..N_max");
  sweep.add_to(sweep_cmd);
  sweep_cmd->add_option("--nmax", n_max, "largest N")->check(CLI::Range(2, 100000));

  RenderFlags render;
  auto* render_cmd = app.add_subcommand("render", "render a body JSON as SVG");
  render_cmd->add_option("file", render.file, "body JSON")->required();
  render_cmd->add_option("--out", render.out, "SVG file (default stdout)");
  render_cmd->add_option("--width", render.width, "image width in pixels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (egg_cmd->parsed()) return cmd_shape(ctx, egg, false);
    if (ngon_cmd->parsed()) return cmd_shape(ctx, ngon, true);
    if (bound_cmd->parsed()) return cmd_bound(ctx, bound);
    if (check_cmd->parsed()) return cmd_check(ctx, check);
    if (opt_cmd->parsed()) return cmd_optimize(ctx, opt);
    if (sweep_cmd->parsed()) return cmd_sweep(ctx, sweep, n_max);
    if (render_cmd->parsed()) return cmd_render(ctx, render);
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace abconvex::cli
