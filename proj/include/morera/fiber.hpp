#pragma once

// Fiber curves M_z and the Cauchy transform of the two-family extension F.
//
// All coordinates are normalized so that the pencil point is -1. For a base
// point z (Im z != 0) in the admissible region, M_z is the closed curve made of
//   - the segment {R^2/z : |z| <= R <= 1} from conj(z) to 1/z, swept by the
//     centered semiquadrics, and
//   - the arc lambda_z of the tangent circle C_z, swept by the pencil
//     semiquadrics with parameter t in [t(z), 0].
// F(z, w) is the value at z of the holomorphic extension of f from the circle
// whose semiquadric passes through (z, w).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "morera/complex.hpp"
#include "morera/error.hpp"
#include "morera/extension.hpp"
#include "morera/geometry.hpp"
#include "morera/quadrature.hpp"
#include "morera/semiquadric.hpp"

namespace morera {

inline constexpr double kDefaultTau = 0.25;
inline constexpr int kDefaultNodesPerPiece = 256;

struct FiberOptions {
  double tau = kDefaultTau;
  std::size_t samples = kDefaultSamples;
  double morera_tol = kDefaultMoreraTol;
};

/// z in the unit disc, off the closed smallest pencil disc and off [0, 1].
/// The excluded disc is the one of the pencil circle with radius tau.
inline bool in_admissible_region(Complex z, double tau) {
  if (!(std::abs(z) < 1.0)) return false;
  if (std::abs(z - Complex(-1.0 + tau, 0.0)) <= tau) return false;
  if (z.imag() == 0.0 && z.real() >= 0.0 && z.real() <= 1.0) return false;
  return true;
}

enum class FiberPiece { Segment, Arc };

inline const char* to_string(FiberPiece p) { return p == FiberPiece::Segment ? "segment" : "arc"; }

struct FiberNode {
  FiberPiece piece;
  double param;  // R on the segment, angle from the tangent-circle center on the arc
  Complex w;
  Complex dw;    // quadrature weight times dw/dparam, positively oriented
};

inline double distance_to_segment(Complex w, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(w - a);
  const double s = std::clamp(((w - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(w - (a + s * ab));
}

struct FiberCurve {
  Complex z;
  Complex seg_start;  // conj(z)
  Complex seg_end;    // 1/z
  Arc arc;            // oriented as part of the positive boundary of D_z
  int orientation;    // sign of the traversal conj(z) -> 1/z -> (arc) -> conj(z) about D_z
  double diameter;
  std::vector<FiberNode> nodes;  // in positive traversal order

  double distance_to(Complex w) const {
    return std::min(distance_to_segment(w, seg_start, seg_end), arc.distance_to(w));
  }
  /// Points closer than this to the curve are not classified or integrated against.
  double proximity_guard() const { return 1e-6 * diameter; }
};

inline FiberCurve fiber_curve(Complex z, int nodes_per_piece = kDefaultNodesPerPiece, double tau = kDefaultTau) {
  if (std::abs(z.imag()) < kGeomEps)
    throw Error(ErrorKind::Degenerate, "fiber_curve: z is real; the fiber is the extended real line");
  if (!in_admissible_region(z, tau))
    throw Error(ErrorKind::Domain, "fiber_curve: z = " + format_complex(z) + " outside the admissible region");
  if (nodes_per_piece < 1) throw Error(ErrorKind::Domain, "fiber_curve: need at least one node per piece");

  FiberCurve curve;
  curve.z = z;
  curve.seg_start = std::conj(z);
  curve.seg_end = 1.0 / z;
  curve.arc = arc_lambda(z);
  curve.orientation = z.imag() > 0 ? +1 : -1;

  const GaussRule& rule = gauss_legendre(nodes_per_piece);
  const double r_lo = std::abs(z);
  const double r_mid = 0.5 * (1.0 + r_lo);
  const double r_half = 0.5 * (1.0 - r_lo);

  std::vector<FiberNode> segment;
  segment.reserve(rule.nodes.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double R = r_mid + r_half * rule.nodes[k];
    const Complex w = R * R / z;
    const Complex dw = rule.weights[k] * r_half * (2.0 * R / z) * static_cast<double>(curve.orientation);
    segment.push_back(FiberNode{FiberPiece::Segment, R, w, dw});
  }
  if (curve.orientation < 0) std::reverse(segment.begin(), segment.end());

  std::vector<FiberNode> arc;
  arc.reserve(rule.nodes.size());
  const double sweep = curve.arc.sweep();
  const double rho = curve.arc.circle.radius;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double s = 0.5 * (rule.nodes[k] + 1.0);
    const double phi = curve.arc.angle_start + s * sweep;
    const Complex e = std::polar(1.0, phi);
    const Complex w = curve.arc.circle.center + rho * e;
    const Complex dw = 0.5 * rule.weights[k] * kI * rho * e * sweep;
    arc.push_back(FiberNode{FiberPiece::Arc, canonical_angle(phi), w, dw});
  }

  if (curve.orientation > 0) {
    curve.nodes = std::move(segment);
    curve.nodes.insert(curve.nodes.end(), arc.begin(), arc.end());
  } else {
    curve.nodes = std::move(arc);
    curve.nodes.insert(curve.nodes.end(), segment.begin(), segment.end());
  }

  // The enclosed region is convex, so sampling the boundary bounds the diameter well.
  std::vector<Complex> probe{curve.seg_start, curve.seg_end};
  for (int k = 0; k <= 64; ++k) probe.push_back(curve.arc.at(k / 64.0));
  double diam = 0.0;
  for (std::size_t i = 0; i < probe.size(); ++i)
    for (std::size_t j = i + 1; j < probe.size(); ++j) diam = std::max(diam, std::abs(probe[i] - probe[j]));
  curve.diameter = diam;
  return curve;
}

/// Winding number of the positively oriented M_z about W. Exact: the segment
/// contributes its subtended angle; each sub-arc contributes its chord angle
/// plus a full turn when W sits between the chord and the sub-arc.
inline int winding_number(const FiberCurve& curve, Complex W) {
  auto chord_angle = [&](Complex a, Complex b) { return std::arg((b - W) / (a - W)); };

  double total = 0.0;
  const Complex a = curve.orientation > 0 ? curve.seg_start : curve.seg_end;
  const Complex b = curve.orientation > 0 ? curve.seg_end : curve.seg_start;
  total += chord_angle(a, b);

  const Arc& arc = curve.arc;
  const double sweep = arc.sweep();
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(sweep) / (kPi / 2))));
  const Complex c = arc.circle.center;
  const double rho = arc.circle.radius;
  const double sign = sweep > 0 ? 1.0 : -1.0;
  for (int k = 0; k < pieces; ++k) {
    const Complex A = arc.at(static_cast<double>(k) / pieces);
    const Complex B = arc.at(static_cast<double>(k + 1) / pieces);
    const Complex ratio = (B - W) / (A - W);
    double d = std::arg(ratio);
    const auto cross = [](Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); };
    const double side_w = cross(B - A, W - A);
    const double side_c = cross(B - A, c - A);
    const bool between = std::abs(W - c) < rho && side_w * side_c < 0.0;
    if (ratio.imag() == 0.0 && ratio.real() < 0.0) d = sign * kPi;
    else if (between) d += sign * kTwoPi;
    total += d;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

inline bool region_contains(const FiberCurve& curve, Complex W) {
  if (curve.distance_to(W) < curve.proximity_guard())
    throw Error(ErrorKind::BoundaryAmbiguity, "region_contains: point lies on the fiber curve");
  const int wn = winding_number(curve, W);
  return wn == 1 || wn == -1;
}

// ---------------------------------------------------------------------------
// The extension F on M_z.

namespace detail {

template <ComplexOracle F>
Complex extension_at(const F& f, const Circle& circle, Complex z, const FiberOptions& opt) {
  const CircleAnalysis an = analyze_adaptive(f, circle, opt.morera_tol, opt.samples, kMaxSamples);
  if (an.inconclusive || !an.result.passes)
    throw MoreraFailure(circle.center, circle.radius,
                        std::string(an.inconclusive ? "extension test inconclusive" : "no holomorphic extension") +
                            " from circle center " + format_complex(circle.center) + " radius " +
                            std::to_string(circle.radius));
  return evaluate_extension(an.data, z, opt.morera_tol);
}

inline double segment_radius(Complex z, Complex w) {
  const Complex wz = w * z;
  if (std::abs(wz.imag()) > 1e-9) throw Error(ErrorKind::Domain, "eval_F: w is not on the radial segment of M_z");
  const double R = std::sqrt(std::max(0.0, wz.real()));
  if (R < std::abs(z) * (1.0 - 1e-9) || R > 1.0 + 1e-9)
    throw Error(ErrorKind::Domain, "eval_F: w is beyond the radial segment of M_z");
  return std::clamp(R, std::abs(z), 1.0);
}

inline double arc_parameter(Complex z, Complex w, double tau) {
  double t = invert_pencil_fiber(z, w);
  const double tz = pencil_param(z);
  if (t < tz - 1e-9 || t > 1e-9) throw Error(ErrorKind::Domain, "eval_F: w is not on the arc of M_z");
  t = std::clamp(t, tz, 0.0);
  if (t < -1.0 + tau - 1e-12) throw Error(ErrorKind::Domain, "eval_F: owning pencil circle below the radius floor");
  return t;
}

}  // namespace detail

/// F(z, w) from the extension along the centered circle of radius R.
template <ComplexOracle F>
Complex eval_F_segment(const F& f, Complex z, double R, const FiberOptions& opt = {}) {
  return detail::extension_at(f, Circle{Complex{}, R}, z, opt);
}

/// F(z, w) from the extension along the pencil circle with parameter t.
template <ComplexOracle F>
Complex eval_F_arc(const F& f, Complex z, double t, const FiberOptions& opt = {}) {
  return detail::extension_at(f, pencil_circle(t), z, opt);
}

/// F(z, w) for w on M_z. The branch is chosen by which piece w is closer to;
/// at the two corners both branches agree.
template <ComplexOracle F>
Complex eval_F(const F& f, Complex z, Complex w, const FiberOptions& opt = {}) {
  if (std::abs(z.imag()) < kGeomEps) throw Error(ErrorKind::Degenerate, "eval_F: z is real");
  const Complex zb = std::conj(z);
  const Complex zi = 1.0 / z;
  const double d_seg = distance_to_segment(w, zb, zi);
  const double d_arc = arc_lambda(z).distance_to(w);
  const double scale = std::max(1.0, std::abs(zi));
  if (std::min(d_seg, d_arc) > 1e-6 * scale) throw Error(ErrorKind::Domain, "eval_F: w is not on M_z");
  if (d_seg <= d_arc) return eval_F_segment(f, z, detail::segment_radius(z, w), opt);
  return eval_F_arc(f, z, detail::arc_parameter(z, w, opt.tau), opt);
}

/// F evaluated at every quadrature node of a fiber curve.
struct FiberField {
  FiberCurve curve;
  std::vector<Complex> values;
};

template <ComplexOracle F>
FiberField sample_fiber(const F& f, FiberCurve curve, const FiberOptions& opt = {}) {
  std::vector<Complex> values;
  values.reserve(curve.nodes.size());
  for (const FiberNode& n : curve.nodes) {
    if (n.piece == FiberPiece::Segment) {
      values.push_back(eval_F_segment(f, curve.z, n.param, opt));
    } else {
      values.push_back(eval_F_arc(f, curve.z, detail::arc_parameter(curve.z, n.w, opt.tau), opt));
    }
  }
  return FiberField{std::move(curve), std::move(values)};
}

/// (1 / 2 pi i) * integral over M_z of F(z, w) / (w - W) dw.
inline Complex cauchy_transform(const FiberField& field, Complex W) {
  if (field.curve.distance_to(W) < field.curve.proximity_guard())
    throw Error(ErrorKind::NearSingularity, "cauchy_transform: W lies on the fiber curve");
  Complex sum{};
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    const FiberNode& n = field.curve.nodes[k];
    sum += field.values[k] * n.dw / (n.w - W);
  }
  return sum / (kTwoPi * kI);
}

/// integral over M_z of F(z, w) dw.
inline Complex fiber_integral(const FiberField& field) {
  Complex sum{};
  for (std::size_t k = 0; k < field.values.size(); ++k) sum += field.values[k] * field.curve.nodes[k].dw;
  return sum;
}

template <ComplexOracle F>
Complex cauchy_transform(const F& f, Complex z, Complex W, int nodes_per_piece = kDefaultNodesPerPiece,
                         const FiberOptions& opt = {}) {
  return cauchy_transform(sample_fiber(f, fiber_curve(z, nodes_per_piece, opt.tau), opt), W);
}

struct AdaptiveIntegral {
  Complex value;
  int nodes_per_piece;
  double last_change;
  bool converged;
};

/// fiber_integral with node counts doubled until two successive refinements
/// differ by less than `refine_tol` (relative to max(1, |value|)).
template <ComplexOracle F>
AdaptiveIntegral fiber_integral_adaptive(const F& f, Complex z, const FiberOptions& opt = {},
                                         int initial_nodes = 32, int max_nodes = 1024,
                                         double refine_tol = 1e-8) {
  Complex prev = fiber_integral(sample_fiber(f, fiber_curve(z, initial_nodes, opt.tau), opt));
  int n = initial_nodes;
  double change = 0.0;
  while (n < max_nodes) {
    n *= 2;
    const Complex cur = fiber_integral(sample_fiber(f, fiber_curve(z, n, opt.tau), opt));
    change = std::abs(cur - prev);
    prev = cur;
    if (change < refine_tol * std::max(1.0, std::abs(cur))) return AdaptiveIntegral{cur, n, change, true};
  }
  return AdaptiveIntegral{prev, n, change, false};
}

template <ComplexOracle F>
Complex fiber_integral(const F& f, Complex z, int nodes_per_piece = kDefaultNodesPerPiece,
                       const FiberOptions& opt = {}) {
  return fiber_integral(sample_fiber(f, fiber_curve(z, nodes_per_piece, opt.tau), opt));
}

}  // namespace morera
