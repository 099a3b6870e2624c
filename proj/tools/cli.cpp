#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "morera/morera.hpp"

namespace morera::cli {
namespace {

using nlohmann::json;

struct FunctionSource {
  std::string builtin;
  std::string expr;
  std::string grid;
};

struct Options {
  FunctionSource source;
  std::string out_path;
  double tau = 0.25;
  std::string p = "-1";
  std::optional<double> r_min;
  std::optional<double> rho;
  std::string two_point;
  std::optional<double> rho2;
  std::size_t circles = kDefaultGridSize;
  double margin = kDefaultMargin;
  double tol = kDefaultMoreraTol;
  double cross_tol = kDefaultCrossTol;
  double dbar_tol = kDefaultDbarTol;
  double grid_inflation = kGridTolInflation;
  std::size_t samples = kDefaultSamples;
  std::size_t max_samples = kMaxSamples;
  std::size_t t_count = 8;
  std::size_t probes = 8;
  // test-circle
  std::string center = "0";
  double radius = 1.0;
  // fiber / theta
  std::vector<std::string> z_points;
  int nodes = 64;
  std::string w_min = "-2-3i";
  std::string w_max = "1+1i";
  std::size_t w_n = 21;
  // demo-sharpness
  double sharp_floor = 0.6;
  // export-grid
  std::size_t n_r = 101;
  std::size_t n_theta = 256;
};

/// The oracle plus whatever the report should say about where it came from.
struct LoadedFunction {
  std::function<Complex(Complex)> oracle;
  json description;
  std::vector<std::string> warnings;
  std::function<bool(const Circle&)> flag_circle;
  bool interpolated = false;
};

LoadedFunction load_function(const FunctionSource& src) {
  const int given = !src.builtin.empty() + !src.expr.empty() + !src.grid.empty();
  if (given != 1) throw Error(ErrorKind::Config, "give exactly one of --builtin, --expr, --grid");
  LoadedFunction lf;
  if (!src.builtin.empty()) {
    const zoo::ZooEntry& e = zoo::builtin(src.builtin);
    lf.oracle = e.oracle;
    lf.description = {{"source", "builtin"}, {"name", e.name}, {"formula", e.formula},
                      {"classification", zoo::to_string(e.classification)}};
    if (e.classification == zoo::Classification::Counterexample)
      lf.flag_circle = [&e](const Circle& c) { return e.boundary_case(c); };
  } else if (!src.expr.empty()) {
    expr::Expr e = expr::parse(src.expr);
    lf.description = {{"source", "expr"}, {"text", src.expr}, {"canonical", expr::print(e)}};
    if (expr::has_branch_power(e))
      lf.warnings.push_back("non-integer power evaluated on the principal branch; continuity on the disc may fail");
    lf.oracle = expr::ExprFunction(std::move(e));
  } else {
    auto grid = std::make_shared<PolarGrid>(PolarGrid::load(src.grid));
    if (grid->r_max() < 1.0 - 1e-12) throw Error(ErrorKind::Config, "grid file must cover radii up to 1");
    lf.description = {{"source", "grid"}, {"path", src.grid}, {"n_r", grid->n_r()}, {"n_theta", grid->n_theta()}};
    lf.oracle = [grid](Complex z) { return (*grid)(z); };
    lf.interpolated = true;
  }
  return lf;
}

Complex parse_point(const std::string& text, const char* what) {
  try {
    return expr::parse_constant(text);
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, std::string("cannot read ") + what + " '" + text + "': " + e.what());
  }
}

double effective_tol(const Options& o, const LoadedFunction& lf) {
  if (!(o.tol > 0.0)) throw Error(ErrorKind::Config, "--tol must be positive");
  return lf.interpolated ? o.tol * o.grid_inflation : o.tol;
}

SweepOptions sweep_options(const Options& o, const LoadedFunction& lf) {
  SweepOptions s;
  s.morera_tol = effective_tol(o, lf);
  s.initial_samples = o.samples;
  s.max_samples = std::max(o.samples, o.max_samples);
  s.threads = default_thread_count();
  s.flag_circle = lf.flag_circle;
  return s;
}

VerdictConfig family_config(const Options& o) {
  const Complex p = parse_point(o.p, "--p");
  VerdictConfig vc;
  if (!o.two_point.empty()) {
    const Complex p2 = parse_point(o.two_point, "--two-point");
    const double rho = o.rho.value_or(o.tau);
    vc = VerdictConfig::two_pencils(p, rho, p2, o.rho2.value_or(rho), o.circles);
  } else if (o.r_min) {
    vc = VerdictConfig::centered_and_pencil(*o.r_min, o.rho.value_or(o.tau), p, o.circles);
  } else {
    vc = VerdictConfig::circles_through_point(o.rho.value_or(o.tau), p, o.circles);
  }
  for (auto& f : vc.families) {
    f.margin = o.margin;
    f.validate();
  }
  if (!(o.cross_tol > 0.0 && o.dbar_tol > 0.0)) throw Error(ErrorKind::Config, "tolerances must be positive");
  vc.cross_tol = o.cross_tol;
  vc.dbar_tol = o.dbar_tol;
  vc.t_count = o.t_count;
  vc.cross.probe_count = o.probes;
  return vc;
}

/// Writes to a temporary sibling and renames it into place.
void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    f << content;
    if (!f.flush()) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
}

void emit(const Options& o, std::ostream& out, const std::string& content) {
  if (o.out_path.empty()) out << content;
  else write_atomically(o.out_path, content);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int exit_for(Classification c) {
  switch (c) {
    case Classification::HolomorphicConsistent: return kOk;
    case Classification::MoreraFailure:
    case Classification::Inconsistent: return kNegativeVerdict;
    case Classification::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

// ---------------------------------------------------------------------------

int cmd_test_circle(const Options& o, std::ostream& out) {
  const LoadedFunction lf = load_function(o.source);
  const Circle c = Circle::make(parse_point(o.center, "--center"), o.radius);
  const CircleAnalysis an = analyze_adaptive(lf.oracle, c, effective_tol(o, lf), o.samples,
                                             std::max(o.samples, o.max_samples));
  json j = to_json(an.data, an.result, an.inconclusive);
  j["function"] = lf.description;
  j["warnings"] = lf.warnings;
  emit(o, out, dump(j));
  if (an.inconclusive) return kInconclusive;
  return an.result.passes ? kOk : kNegativeVerdict;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const LoadedFunction lf = load_function(o.source);
  const VerdictConfig vc = family_config(o);
  const SweepOptions so = sweep_options(o, lf);
  json fams = json::array();
  bool failure = false, inconclusive = false;
  for (const FamilyConfig& fc : vc.families) {
    const FamilyReport r = test_family(lf.oracle, fc, so);
    failure = failure || r.any_failure;
    inconclusive = inconclusive || r.any_inconclusive;
    fams.push_back(to_json(r));
  }
  json j{{"schema", kReportSchema},
         {"function", lf.description},
         {"families", std::move(fams)},
         {"passes", !failure && !inconclusive},
         {"hypotheses_satisfied", validate_families(vc.families[0], vc.families[1])},
         {"warnings", lf.warnings}};
  emit(o, out, dump(j));
  if (failure) return kNegativeVerdict;
  return inconclusive ? kInconclusive : kOk;
}

std::function<Complex(Complex)> normalized_oracle(const Options& o, const LoadedFunction& lf) {
  const PencilConfig pc(parse_point(o.p, "--p"), o.rho.value_or(o.tau));
  return [pc, f = lf.oracle](Complex zeta) { return f(pc.to_user(zeta)); };
}

int cmd_fiber(const Options& o, std::ostream& out) {
  if (o.z_points.empty()) throw Error(ErrorKind::Config, "fiber: give at least one --z");
  const double tau = o.rho.value_or(o.tau);
  std::string csv = "piece,index,param,re_w,im_w\n";
  const bool several = o.z_points.size() > 1;
  for (const std::string& zs : o.z_points) {
    const Complex z = parse_point(zs, "--z");
    const FiberCurve curve = fiber_curve(z, o.nodes, tau);
    if (several) csv += "# z = " + fmt(z.real()) + "," + fmt(z.imag()) + "\n";
    // Polyline: segment endpoints, then the arc sampled uniformly, in the
    // positive traversal order of the curve.
    struct Row {
      FiberPiece piece;
      double param;
      Complex w;
    };
    std::vector<Row> seg{{FiberPiece::Segment, std::abs(z), curve.seg_start}, {FiberPiece::Segment, 1.0, curve.seg_end}};
    if (curve.orientation < 0) std::reverse(seg.begin(), seg.end());
    std::vector<Row> arc;
    for (int k = 0; k <= o.nodes; ++k) {
      const double s = static_cast<double>(k) / o.nodes;
      arc.push_back({FiberPiece::Arc, canonical_angle(curve.arc.angle_start + s * curve.arc.sweep()), curve.arc.at(s)});
    }
    std::vector<Row> rows = curve.orientation > 0 ? seg : arc;
    const std::vector<Row>& second = curve.orientation > 0 ? arc : seg;
    rows.insert(rows.end(), second.begin(), second.end());
    std::size_t idx = 0;
    for (const Row& r : rows)
      csv += std::string(to_string(r.piece)) + "," + std::to_string(idx++) + "," + fmt(r.param) + "," +
             fmt(r.w.real()) + "," + fmt(r.w.imag()) + "\n";
    if (several) csv += "\n";
  }
  emit(o, out, csv);
  return kOk;
}

int cmd_theta(const Options& o, std::ostream& out) {
  if (o.z_points.size() != 1) throw Error(ErrorKind::Config, "theta: give exactly one --z");
  if (o.w_n < 1) throw Error(ErrorKind::Config, "theta: --w-n must be positive");
  const LoadedFunction lf = load_function(o.source);
  const Complex z = parse_point(o.z_points.front(), "--z");
  const Complex lo = parse_point(o.w_min, "--w-min");
  const Complex hi = parse_point(o.w_max, "--w-max");
  FiberOptions fo;
  fo.tau = o.rho.value_or(o.tau);
  fo.samples = o.samples;
  fo.morera_tol = effective_tol(o, lf);
  const FiberField field = sample_fiber(normalized_oracle(o, lf), fiber_curve(z, o.nodes, fo.tau), fo);

  std::string csv = "re_W,im_W,re_theta,im_theta,inside,status\n";
  for (std::size_t i = 0; i < o.w_n; ++i) {
    for (std::size_t j = 0; j < o.w_n; ++j) {
      const double sx = o.w_n == 1 ? 0.0 : static_cast<double>(j) / (o.w_n - 1);
      const double sy = o.w_n == 1 ? 0.0 : static_cast<double>(i) / (o.w_n - 1);
      const Complex W(lo.real() + sx * (hi.real() - lo.real()), lo.imag() + sy * (hi.imag() - lo.imag()));
      csv += fmt(W.real()) + "," + fmt(W.imag()) + ",";
      if (field.curve.distance_to(W) < field.curve.proximity_guard()) {
        csv += ",,,near-curve\n";
        continue;
      }
      const Complex th = cauchy_transform(field, W);
      csv += fmt(th.real()) + "," + fmt(th.imag()) + "," + (region_contains(field.curve, W) ? "1" : "0") + ",ok\n";
    }
  }
  emit(o, out, csv);
  return kOk;
}

json verdict_json(const Verdict& v, const LoadedFunction& lf) {
  json j = to_json(v);
  j["function"] = lf.description;
  for (const auto& w : lf.warnings) j["notes"].push_back(w);
  return j;
}

int cmd_verdict(const Options& o, std::ostream& out) {
  const LoadedFunction lf = load_function(o.source);
  VerdictConfig vc = family_config(o);
  vc.sweep = sweep_options(o, lf);
  const Verdict v = verdict(lf.oracle, vc);
  emit(o, out, dump(verdict_json(v, lf)));
  return exit_for(v.overall);
}

int cmd_demo_sharpness(const Options& o, std::ostream& out) {
  FunctionSource src = o.source;
  if (src.builtin.empty() && src.expr.empty() && src.grid.empty()) src.builtin = "counterexample";
  const LoadedFunction lf = load_function(src);

  VerdictConfig valid = VerdictConfig::circles_through_point(o.tau, parse_point(o.p, "--p"), o.circles);
  valid.sweep = sweep_options(o, lf);
  VerdictConfig violating = VerdictConfig::centered_and_pencil(o.sharp_floor, o.sharp_floor,
                                                               parse_point(o.p, "--p"), o.circles);
  violating.sweep = sweep_options(o, lf);

  const Verdict a = verdict(lf.oracle, valid);
  const Verdict b = verdict(lf.oracle, violating);

  std::ostringstream text;
  auto describe = [&](const char* label, const Verdict& v) {
    text << label << ": verdict " << to_string(v.overall) << ", hypotheses "
         << (v.hypotheses_satisfied ? "satisfied" : "violated") << ", dbar residual " << fmt(v.dbar.residual) << "\n";
    for (const FamilyReport& fr : v.families) {
      std::size_t passed = 0;
      for (const auto& c : fr.circles) passed += c.passes;
      text << "  " << to_string(fr.config.kind) << " family: " << passed << "/" << fr.circles.size()
           << " circles pass";
      if (const CircleReport* w = fr.worst_circle())
        text << ", worst failure at parameter " << fmt(w->parameter) << " (negative energy "
             << fmt(w->negative_energy) << ")";
      text << "\n";
    }
  };
  describe("valid configuration", a);
  describe("hypothesis-violating configuration", b);
  const bool contrast = a.overall != Classification::HolomorphicConsistent &&
                        b.overall == Classification::Inconsistent;
  text << (contrast ? "contrast reproduced: every circle of the violating configuration passes, yet the function "
                      "is not holomorphic\n"
                    : "contrast not reproduced\n");

  if (o.out_path.empty()) {
    out << text.str();
  } else {
    json j{{"schema", kReportSchema}, {"function", lf.description}, {"valid", verdict_json(a, lf)},
           {"violating", verdict_json(b, lf)}, {"contrast", contrast}};
    write_atomically(o.out_path, dump(j));
    out << text.str();
  }
  return contrast ? kOk : kNegativeVerdict;
}

int cmd_export_grid(const Options& o, std::ostream& out) {
  if (o.n_r < 4 || o.n_theta < 4) throw Error(ErrorKind::Config, "export-grid: need at least 4x4 nodes");
  const LoadedFunction lf = load_function(o.source);
  emit(o, out, PolarGrid::export_csv(lf.oracle, o.n_r, o.n_theta));
  return kOk;
}

int exit_for_error(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::MoreraFailure: return kNegativeVerdict;
    case ErrorKind::Sampling:
    case ErrorKind::Eval:
    case ErrorKind::InvalidState: return kInconclusive;
    default: return kConfigError;
  }
}

void add_function_source(CLI::App* cmd, Options& o) {
  cmd->add_option("--builtin", o.source.builtin, "built-in test function (poly3, expz, rational, counterexample, "
                                                 "conjugate, absq, radial-smooth)");
  cmd->add_option("--expr", o.source.expr, "expression in z and conj(z), e.g. \"z^2/conj(z)\"");
  cmd->add_option("--grid", o.source.grid, "CSV file of samples r,theta,re,im on a polar grid");
}

void add_families(CLI::App* cmd, Options& o) {
  cmd->add_option("--tau", o.tau, "radius floor of the pencil through p")->capture_default_str();
  cmd->add_option("--p", o.p, "boundary point of the pencil (complex constant)")->capture_default_str();
  cmd->add_option("--r-min", o.r_min, "radius floor of the centered family (otherwise the full family)");
  cmd->add_option("--rho", o.rho, "radius floor of the pencil (overrides --tau)");
  cmd->add_option("--two-point", o.two_point, "second boundary point: use two pencils instead of a centered family");
  cmd->add_option("--rho2", o.rho2, "radius floor of the second pencil (default: --rho)");
  cmd->add_option("--circles", o.circles, "circles per family")->capture_default_str();
  cmd->add_option("--margin", o.margin, "inset of the largest circle from the unit circle")->capture_default_str();
}

void add_numerics(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol", o.tol, "relative negative-energy threshold")->capture_default_str();
  cmd->add_option("--grid-inflation", o.grid_inflation, "tolerance factor for --grid sources")->capture_default_str();
  cmd->add_option("--samples", o.samples, "initial samples per circle (power of two)")->capture_default_str();
  cmd->add_option("--max-samples", o.max_samples, "sample cap for undersampled circles")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Numerical Morera tests on families of circles in the unit disc", "morera-cli"};
  app.require_subcommand(1);
  app.add_option("--out", o.out_path, "write the report to this file instead of stdout");

  auto* test_circle = app.add_subcommand("test-circle", "extension test on a single circle");
  add_function_source(test_circle, o);
  add_numerics(test_circle, o);
  test_circle->add_option("--center", o.center, "circle center")->capture_default_str();
  test_circle->add_option("--radius", o.radius, "circle radius")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "extension tests over both families, JSON report");
  add_function_source(sweep, o);
  add_families(sweep, o);
  add_numerics(sweep, o);

  auto* fiber = app.add_subcommand("fiber", "fiber curve polylines as CSV (normalized coordinates, p = -1)");
  add_function_source(fiber, o);
  add_families(fiber, o);
  fiber->add_option("--z", o.z_points, "base point(s)")->required();
  fiber->add_option("--nodes", o.nodes, "arc samples")->capture_default_str();

  auto* theta = app.add_subcommand("theta", "Cauchy transform over a rectangular W grid as CSV");
  add_function_source(theta, o);
  add_families(theta, o);
  add_numerics(theta, o);
  theta->add_option("--z", o.z_points, "base point")->required();
  theta->add_option("--nodes", o.nodes, "quadrature nodes per piece")->capture_default_str();
  theta->add_option("--w-min", o.w_min, "lower-left corner of the W grid")->capture_default_str();
  theta->add_option("--w-max", o.w_max, "upper-right corner of the W grid")->capture_default_str();
  theta->add_option("--w-n", o.w_n, "grid points per axis")->capture_default_str();

  auto* verdict_cmd = app.add_subcommand("verdict", "full pipeline: sweeps, cross-consistency, dbar");
  add_function_source(verdict_cmd, o);
  add_families(verdict_cmd, o);
  add_numerics(verdict_cmd, o);
  verdict_cmd->add_option("--cross-tol", o.cross_tol, "cross-consistency tolerance")->capture_default_str();
  verdict_cmd->add_option("--dbar-tol", o.dbar_tol, "dbar residual tolerance")->capture_default_str();
  verdict_cmd->add_option("--t-count", o.t_count, "real points for cross-consistency")->capture_default_str();
  verdict_cmd->add_option("--probes", o.probes, "probes per real point")->capture_default_str();

  auto* demo = app.add_subcommand("demo-sharpness", "counterexample under a valid and a hypothesis-violating "
                                                    "configuration");
  add_function_source(demo, o);
  add_numerics(demo, o);
  demo->add_option("--tau", o.tau, "pencil floor of the valid configuration")->capture_default_str();
  demo->add_option("--p", o.p, "boundary point")->capture_default_str();
  demo->add_option("--circles", o.circles, "circles per family")->capture_default_str();
  demo->add_option("--floor", o.sharp_floor, "common radius floor of the violating configuration")
      ->capture_default_str();

  auto* export_grid = app.add_subcommand("export-grid", "sample a function on a polar grid (CSV for --grid)");
  add_function_source(export_grid, o);
  export_grid->add_option("--n-r", o.n_r, "radii in [0, 1]")->capture_default_str();
  export_grid->add_option("--n-theta", o.n_theta, "angles in [0, 2pi)")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (*test_circle) return cmd_test_circle(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*fiber) return cmd_fiber(o, out);
    if (*theta) return cmd_theta(o, out);
    if (*verdict_cmd) return cmd_verdict(o, out);
    if (*demo) return cmd_demo_sharpness(o, out);
    if (*export_grid) return cmd_export_grid(o, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_for_error(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace morera::cli
