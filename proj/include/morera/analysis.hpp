#pragma once

// Family sweeps, cross-consistency of extensions, an independent dbar oracle,
// configuration checks and the overall verdict.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "morera/complex.hpp"
#include "morera/error.hpp"
#include "morera/extension.hpp"
#include "morera/geometry.hpp"
#include "morera/parallel.hpp"

namespace morera {

inline constexpr double kDefaultCrossTol = 1e-6;
inline constexpr double kDefaultDbarTol = 1e-4;
inline constexpr std::size_t kDefaultGridSize = 32;
inline constexpr double kDefaultMargin = 1e-3;
inline constexpr double kDefaultCenteredFloor = 0.05;

enum class FamilyKind { Centered, Pencil };

inline const char* to_string(FamilyKind k) { return k == FamilyKind::Centered ? "centered" : "pencil"; }

/// One family of circles sampled on a Chebyshev-Lobatto grid of its parameter.
/// Centered: circles |z| = R, R in [floor, 1 - margin].
/// Pencil: circles through p with radius in [floor, 1 - margin], parametrized
/// by t = radius - 1; the center is -p t.
struct FamilyConfig {
  FamilyKind kind = FamilyKind::Centered;
  double floor = kDefaultCenteredFloor;
  std::size_t grid_size = kDefaultGridSize;
  Complex p{-1.0, 0.0};
  double margin = kDefaultMargin;
  /// Centered family standing for every radius in (0, 1]; `floor` is then only
  /// where the finite grid starts.
  bool full = false;

  static FamilyConfig centered(double r_min, std::size_t n = kDefaultGridSize, bool full = false) {
    FamilyConfig c;
    c.kind = FamilyKind::Centered;
    c.floor = r_min;
    c.grid_size = n;
    c.full = full;
    c.validate();
    return c;
  }
  static FamilyConfig pencil(Complex p, double rho, std::size_t n = kDefaultGridSize) {
    FamilyConfig c;
    c.kind = FamilyKind::Pencil;
    c.floor = rho;
    c.grid_size = n;
    c.p = p;
    c.validate();
    return c;
  }

  void validate() const {
    if (grid_size < 2) throw Error(ErrorKind::Config, "family grid size must be at least 2");
    if (!(margin >= 0.0 && margin < 0.5)) throw Error(ErrorKind::Config, "grid margin must lie in [0, 0.5)");
    if (!(floor > 0.0 && floor <= 1.0 - margin))
      throw Error(ErrorKind::Config, "family radius floor must lie in (0, 1 - margin]");
    if (kind == FamilyKind::Pencil) PencilConfig(p, floor);
  }

  PencilConfig pencil_config() const { return PencilConfig(p, floor); }

  double param_min() const { return kind == FamilyKind::Centered ? floor : -1.0 + floor; }
  double param_max() const { return kind == FamilyKind::Centered ? 1.0 - margin : -margin; }

  /// Ascending Chebyshev-Lobatto points of [param_min, param_max].
  std::vector<double> parameters() const {
    const double a = param_min(), b = param_max();
    std::vector<double> out(grid_size);
    for (std::size_t k = 0; k < grid_size; ++k) {
      const double x = -std::cos(kPi * static_cast<double>(k) / static_cast<double>(grid_size - 1));
      out[k] = 0.5 * (a + b) + 0.5 * (b - a) * x;
    }
    out.front() = a;
    out.back() = b;
    return out;
  }

  Circle circle(double param) const {
    if (kind == FamilyKind::Centered) return Circle::make(Complex{}, param);
    return pencil_config().circle(param);
  }

  /// Smallest circle of the family.
  Circle smallest() const { return circle(param_min()); }
};

/// Strictly disjoint closed discs, tangency (within kTangencyTol) excluded.
inline bool discs_disjoint(const Circle& a, const Circle& b) {
  const double gap = std::abs(a.center - b.center) - (a.radius + b.radius);
  return gap > kTangencyTol * std::max(1.0, a.radius + b.radius);
}

/// Whether two families satisfy the "smallest circles are disjoint" hypothesis.
/// A full centered family with a pencil of floor below 1/2 passes by convention.
inline bool validate_families(const FamilyConfig& a, const FamilyConfig& b) {
  if (a.kind == FamilyKind::Centered && b.kind == FamilyKind::Centered) return false;
  const FamilyConfig& centered_or_a = a.kind == FamilyKind::Centered ? a : b;
  const FamilyConfig& other = a.kind == FamilyKind::Centered ? b : a;
  if (centered_or_a.kind == FamilyKind::Centered && centered_or_a.full) return other.floor < 0.5;
  return discs_disjoint(a.smallest(), b.smallest());
}

// ---------------------------------------------------------------------------
// Sweeps.

struct SweepOptions {
  double morera_tol = kDefaultMoreraTol;
  std::size_t initial_samples = kDefaultSamples;
  std::size_t max_samples = kMaxSamples;
  unsigned threads = 1;
  /// Marks circles that deserve a warning in the report (e.g. a closed form
  /// that degenerates on the circle).
  std::function<bool(const Circle&)> flag_circle;
};

struct CircleReport {
  FamilyKind family;
  double parameter;
  Circle circle;
  std::size_t samples;
  double negative_energy;
  double total_energy;
  double threshold;
  bool aliasing;
  bool passes;
  bool inconclusive;
  bool flagged;

  double relative_negative_energy() const { return negative_energy / (total_energy + 1e-300); }
};

struct FamilyReport {
  FamilyConfig config;
  std::vector<CircleReport> circles;  // ascending parameter
  bool passes = true;                 // every circle passed
  bool any_failure = false;
  bool any_inconclusive = false;
  std::optional<std::size_t> worst;   // index of the largest relative negative energy among failures

  const CircleReport* worst_circle() const { return worst ? &circles[*worst] : nullptr; }
};

template <ComplexOracle F>
FamilyReport test_family(const F& f, const FamilyConfig& config, const SweepOptions& opt = {}) {
  config.validate();
  const std::vector<double> params = config.parameters();
  FamilyReport rep;
  rep.config = config;
  rep.circles.resize(params.size());
  parallel_for(params.size(), opt.threads, [&](std::size_t i) {
    const Circle c = config.circle(params[i]);
    const CircleAnalysis an = analyze_adaptive(f, c, opt.morera_tol, opt.initial_samples, opt.max_samples);
    rep.circles[i] = CircleReport{config.kind,
                                  params[i],
                                  c,
                                  an.data.sample_count(),
                                  an.result.negative_energy,
                                  an.data.total_energy(),
                                  an.result.threshold_used,
                                  an.result.aliasing_flag,
                                  an.result.passes,
                                  an.inconclusive,
                                  opt.flag_circle ? opt.flag_circle(c) : false};
  });
  double worst_ratio = -1.0;
  for (std::size_t i = 0; i < rep.circles.size(); ++i) {
    const CircleReport& cr = rep.circles[i];
    if (cr.inconclusive) rep.any_inconclusive = true;
    else if (!cr.passes) rep.any_failure = true;
    if (!cr.passes) rep.passes = false;
    if (!cr.passes && !cr.inconclusive && cr.relative_negative_energy() > worst_ratio) {
      worst_ratio = cr.relative_negative_energy();
      rep.worst = i;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Cross-consistency: extensions from all surrounding circles agree near T.

struct CrossConsistency {
  double T;
  double residual;
  std::size_t circles_used;
};

struct CrossOptions {
  std::size_t probe_count = 8;
  double probe_radius = 0.02;
  SweepOptions sweep;
};

/// Max pairwise disagreement, at probes around the real point T (normalized
/// coordinates of the pencil), between the extensions of f from every grid
/// circle of both families that surrounds the probes.
template <ComplexOracle F>
CrossConsistency cross_consistency(const F& f, double T, const FamilyConfig& centered, const FamilyConfig& pencil,
                                   const CrossOptions& opt = {}) {
  if (centered.kind != FamilyKind::Centered || pencil.kind != FamilyKind::Pencil)
    throw Error(ErrorKind::Config, "cross_consistency: needs one centered and one pencil family");
  if (opt.probe_count < 1 || !(opt.probe_radius > 0.0))
    throw Error(ErrorKind::Config, "cross_consistency: need at least one probe and a positive probe radius");
  const PencilConfig pc = pencil.pencil_config();
  const auto fn = [&](Complex zeta) { return f(pc.to_user(zeta)); };

  std::vector<Complex> probes;
  for (std::size_t k = 0; k < opt.probe_count; ++k)
    probes.push_back(T + opt.probe_radius * std::polar(1.0, kTwoPi * static_cast<double>(k) / opt.probe_count));

  // Circles in normalized coordinates; the centered family is rotation invariant.
  std::vector<Circle> circles;
  std::size_t from_centered = 0, from_pencil = 0;
  const auto holds_probes = [&](const Circle& c) {
    return std::all_of(probes.begin(), probes.end(),
                       [&](Complex q) { return std::abs(q - c.center) < c.radius; });
  };
  for (double R : centered.parameters()) {
    const Circle c{Complex{}, R};
    if (holds_probes(c)) circles.push_back(c), ++from_centered;
  }
  for (double t : pencil.parameters()) {
    const Circle c = pencil_circle(t);
    if (holds_probes(c)) circles.push_back(c), ++from_pencil;
  }
  if (from_centered == 0 || from_pencil == 0)
    throw Error(ErrorKind::Config, "cross_consistency: no surrounding circles from one of the families at T = " +
                                       std::to_string(T));

  std::vector<std::vector<Complex>> values(circles.size());
  parallel_for(circles.size(), opt.sweep.threads, [&](std::size_t i) {
    const Circle& c = circles[i];
    const CircleAnalysis an =
        analyze_adaptive(fn, c, opt.sweep.morera_tol, opt.sweep.initial_samples, opt.sweep.max_samples);
    if (an.inconclusive || !an.result.passes)
      throw MoreraFailure(pc.to_user(c.center), c.radius,
                          "cross_consistency: circle center " + format_complex(pc.to_user(c.center)) + " radius " +
                              std::to_string(c.radius) + " surrounding T fails the extension test");
    values[i].reserve(probes.size());
    for (Complex q : probes) values[i].push_back(evaluate_extension(an.data, q, opt.sweep.morera_tol));
  });

  double residual = 0.0;
  for (std::size_t k = 0; k < probes.size(); ++k)
    for (std::size_t i = 0; i < circles.size(); ++i)
      for (std::size_t j = i + 1; j < circles.size(); ++j)
        residual = std::max(residual, std::abs(values[i][k] - values[j][k]));
  return CrossConsistency{T, residual, circles.size()};
}

// ---------------------------------------------------------------------------
// Finite-difference Wirtinger derivative d/dconj(z) = (d/dx + i d/dy)/2.

struct DbarGrid {
  double r_min = 0.2;
  double r_max = 0.8;
  std::size_t n_r = 7;
  std::size_t n_theta = 16;
  double h = 1e-3;

  void validate() const {
    if (n_r < 1 || n_theta < 1) throw Error(ErrorKind::Config, "dbar grid needs at least one point");
    if (!(h > 0.0)) throw Error(ErrorKind::Config, "dbar step must be positive");
    if (!(r_min >= 0.0 && r_max >= r_min)) throw Error(ErrorKind::Config, "dbar grid radii must satisfy 0 <= r_min <= r_max");
    if (r_max + 2.0 * h >= 1.0) throw Error(ErrorKind::Domain, "dbar grid touches the unit circle");
  }

  std::vector<Complex> points() const {
    std::vector<Complex> out;
    for (std::size_t i = 0; i < n_r; ++i) {
      const double r = n_r == 1 ? r_min : r_min + (r_max - r_min) * static_cast<double>(i) / (n_r - 1);
      for (std::size_t j = 0; j < n_theta; ++j) {
        // half-step offset keeps nodes off the real axis
        const double th = kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(n_theta);
        out.push_back(std::polar(r, th));
      }
    }
    return out;
  }
};

/// Central-difference dbar estimate at z with step h.
template <ComplexOracle F>
Complex dbar_central(const F& f, Complex z, double h) {
  const Complex dx = (Complex(f(z + h)) - Complex(f(z - h))) / (2.0 * h);
  const Complex dy = (Complex(f(z + kI * h)) - Complex(f(z - kI * h))) / (2.0 * h);
  return 0.5 * (dx + kI * dy);
}

/// Richardson-extrapolated dbar estimate: (4 D(h/2) - D(h)) / 3.
template <ComplexOracle F>
Complex dbar_richardson(const F& f, Complex z, double h, double* error_estimate = nullptr) {
  const Complex coarse = dbar_central(f, z, h);
  const Complex fine = dbar_central(f, z, 0.5 * h);
  if (error_estimate) *error_estimate = std::abs(fine - coarse);
  return (4.0 * fine - coarse) / 3.0;
}

struct DbarResult {
  double residual = 0.0;        // sup over the grid of |dbar f|
  double error_estimate = 0.0;  // sup of the step-halving differences
  Complex worst_point{};
};

template <ComplexOracle F>
DbarResult dbar_residual(const F& f, const DbarGrid& grid = {}) {
  grid.validate();
  DbarResult out;
  for (Complex z : grid.points()) {
    double err = 0.0;
    const double v = std::abs(dbar_richardson(f, z, grid.h, &err));
    if (v > out.residual) out.residual = v, out.worst_point = z;
    out.error_estimate = std::max(out.error_estimate, err);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verdict.

enum class Classification { HolomorphicConsistent, MoreraFailure, Inconsistent, Inconclusive };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::HolomorphicConsistent: return "holomorphic-consistent";
    case Classification::MoreraFailure: return "morera-failure";
    case Classification::Inconsistent: return "inconsistent";
    case Classification::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct VerdictConfig {
  std::vector<FamilyConfig> families;
  double cross_tol = kDefaultCrossTol;
  double dbar_tol = kDefaultDbarTol;
  std::size_t t_count = 8;
  CrossOptions cross;
  DbarGrid dbar;
  SweepOptions sweep;

  /// Full centered family plus the pencil through p with
  /// radius floor tau.
  static VerdictConfig circles_through_point(double tau, Complex p = Complex(-1.0, 0.0),
                                             std::size_t n = kDefaultGridSize) {
    VerdictConfig c;
    c.families = {FamilyConfig::centered(kDefaultCenteredFloor, n, true), FamilyConfig::pencil(p, tau, n)};
    return c;
  }
  /// Centered family with radius floor r_min plus a pencil with floor rho.
  static VerdictConfig centered_and_pencil(double r_min, double rho, Complex p = Complex(-1.0, 0.0),
                                           std::size_t n = kDefaultGridSize) {
    VerdictConfig c;
    c.families = {FamilyConfig::centered(r_min, n), FamilyConfig::pencil(p, rho, n)};
    return c;
  }
  /// Two pencils through distinct boundary points.
  static VerdictConfig two_pencils(Complex p1, double rho1, Complex p2, double rho2,
                                   std::size_t n = kDefaultGridSize) {
    VerdictConfig c;
    c.families = {FamilyConfig::pencil(p1, rho1, n), FamilyConfig::pencil(p2, rho2, n)};
    return c;
  }

  void validate() const {
    if (families.size() != 2) throw Error(ErrorKind::Config, "verdict needs exactly two families");
    for (const auto& f : families) f.validate();
    if (families[0].kind == FamilyKind::Pencil && families[1].kind == FamilyKind::Pencil &&
        std::abs(families[0].p - families[1].p) < 1e-12)
      throw Error(ErrorKind::Config, "two-pencil configuration needs distinct boundary points");
    if (families[0].kind == FamilyKind::Centered && families[1].kind == FamilyKind::Centered)
      throw Error(ErrorKind::Config, "two centered families are the same family");
    if (!(cross_tol > 0.0 && dbar_tol > 0.0 && sweep.morera_tol > 0.0))
      throw Error(ErrorKind::Config, "tolerances must be positive");
    if (t_count < 1) throw Error(ErrorKind::Config, "need at least one cross-consistency point");
  }

  const FamilyConfig* centered_family() const {
    for (const auto& f : families)
      if (f.kind == FamilyKind::Centered) return &f;
    return nullptr;
  }
  const FamilyConfig* pencil_family() const {
    for (const auto& f : families)
      if (f.kind == FamilyKind::Pencil) return &f;
    return nullptr;
  }

  /// Real points (normalized pencil coordinates) where cross-consistency is
  /// checked: midpoints of t_count equal cells of (-1 + 2 rho, 0), or of
  /// (-1/2, 0) when the pencil floor is 1/2 or more.
  std::vector<double> cross_points() const {
    const FamilyConfig* pen = pencil_family();
    if (!pen) return {};
    const double lo = pen->floor < 0.5 ? -1.0 + 2.0 * pen->floor : -0.5;
    std::vector<double> out;
    for (std::size_t k = 0; k < t_count; ++k)
      out.push_back(lo + (0.0 - lo) * (static_cast<double>(k) + 0.5) / static_cast<double>(t_count));
    return out;
  }
};

struct Verdict {
  std::vector<FamilyReport> families;
  bool hypotheses_satisfied = false;
  std::vector<CrossConsistency> cross;
  std::optional<double> cross_residual;
  DbarResult dbar;
  Classification overall = Classification::Inconclusive;
  std::vector<std::string> notes;
  double cross_tol = kDefaultCrossTol;
  double dbar_tol = kDefaultDbarTol;
};

template <ComplexOracle F>
Verdict verdict(const F& f, const VerdictConfig& config) {
  config.validate();
  Verdict v;
  v.cross_tol = config.cross_tol;
  v.dbar_tol = config.dbar_tol;
  v.hypotheses_satisfied = validate_families(config.families[0], config.families[1]);
  if (!v.hypotheses_satisfied)
    v.notes.push_back("smallest circles of the two families are not disjoint: the configuration does not force "
                      "holomorphy");

  bool failure = false, inconclusive = false;
  for (const FamilyConfig& fc : config.families) {
    v.families.push_back(test_family(f, fc, config.sweep));
    failure = failure || v.families.back().any_failure;
    inconclusive = inconclusive || v.families.back().any_inconclusive;
  }
  v.dbar = dbar_residual(f, config.dbar);

  if (failure) {
    v.overall = Classification::MoreraFailure;
    return v;
  }
  if (inconclusive) {
    v.overall = Classification::Inconclusive;
    v.notes.push_back("some circles remained undersampled at the sample cap");
    return v;
  }

  const FamilyConfig* cen = config.centered_family();
  const FamilyConfig* pen = config.pencil_family();
  if (cen && pen) {
    CrossOptions co = config.cross;
    co.sweep = config.sweep;
    double worst = 0.0;
    for (double T : config.cross_points()) {
      v.cross.push_back(cross_consistency(f, T, *cen, *pen, co));
      worst = std::max(worst, v.cross.back().residual);
    }
    v.cross_residual = worst;
  } else {
    v.notes.push_back("two-pencil configuration: coverage limited to family sweeps and the dbar check");
  }

  const bool cross_ok = !v.cross_residual || *v.cross_residual <= config.cross_tol;
  const bool dbar_ok = v.dbar.residual <= config.dbar_tol;
  v.overall = cross_ok && dbar_ok ? Classification::HolomorphicConsistent : Classification::Inconsistent;
  return v;
}

}  // namespace morera
