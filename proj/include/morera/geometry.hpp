#pragma once

// Circles, the pencil of circles through a boundary point of the unit disc,
// and the tangent circle C_z carrying the curved half of a fiber curve.
//
// Pencil computations are done in normalized coordinates where the common
// boundary point is -1. PencilConfig rotates between user and normalized
// coordinates.

#include <algorithm>
#include <cmath>
#include <string>

#include "morera/complex.hpp"
#include "morera/error.hpp"

namespace morera {

/// Inputs with |Im z| below this are treated as lying on the real axis.
inline constexpr double kGeomEps = 1e-9;
/// Relative slack below which two circles count as tangent (neither surrounds).
inline constexpr double kTangencyTol = 1e-12;

struct Circle {
  Complex center;
  double radius;

  static Circle make(Complex center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius) || !is_finite(center))
      throw Error(ErrorKind::Domain, "circle radius must be positive and finite");
    return Circle{center, radius};
  }

  Complex point(double theta) const { return center + radius * std::polar(1.0, theta); }
  bool contains_closed(Complex w, double slack = 0.0) const {
    return std::abs(w - center) <= radius * (1.0 + slack);
  }

  friend bool operator==(const Circle&, const Circle&) = default;
};

/// True iff the closed disc of `inner` lies in the open disc of `outer`.
/// Tangent configurations (within kTangencyTol) are not containment.
inline bool surrounds(const Circle& inner, const Circle& outer) {
  const double lhs = std::abs(inner.center - outer.center) + inner.radius;
  return lhs < outer.radius - kTangencyTol * std::max(1.0, outer.radius);
}

// ---------------------------------------------------------------------------
// The pencil through -1.

/// Member of the pencil of circles through -1: center t, radius t + 1.
struct PencilCircle {
  double t;

  Circle circle() const { return Circle{Complex(t, 0.0), t + 1.0}; }
};

/// Pencil members are internally tangent at -1, so the generic strict test
/// never fires; within the pencil nesting is by parameter.
inline bool surrounds(const PencilCircle& inner, const PencilCircle& outer) {
  return inner.t < outer.t;
}

/// Circle of the pencil through -1 with center t. Requires -1 < t <= 0.
inline Circle pencil_circle(double t) {
  if (!(t > -1.0 && t <= 0.0))
    throw Error(ErrorKind::Domain, "pencil parameter t must lie in (-1, 0], got " + std::to_string(t));
  return PencilCircle{t}.circle();
}

/// Parameter t of the pencil circle through z: solves |z - t| = t + 1.
inline double pencil_param(Complex z) {
  if (std::abs(z) > 1.0 + 1e-12) throw Error(ErrorKind::Domain, "pencil_param: z outside the closed unit disc");
  const double denom = 2.0 * (z.real() + 1.0);
  if (denom <= 0.0) throw Error(ErrorKind::Degenerate, "pencil_param: every pencil circle passes through -1");
  return (std::norm(z) - 1.0) / denom;
}

/// Boundary point p with a radius floor tau for the pencil through p.
/// Stores the rotation that maps p to -1.
class PencilConfig {
 public:
  PencilConfig(Complex p, double tau) : p_(p), tau_(tau) {
    if (!is_finite(p) || std::abs(std::abs(p) - 1.0) > 1e-12)
      throw Error(ErrorKind::Config, "pencil point p must lie on the unit circle");
    if (!(tau > 0.0 && tau <= 1.0)) throw Error(ErrorKind::Config, "pencil radius floor tau must lie in (0, 1]");
    to_normalized_ = -std::conj(p_) / std::abs(p_);
  }

  Complex p() const { return p_; }
  double tau() const { return tau_; }
  double t_min() const { return -1.0 + tau_; }

  Complex to_normalized(Complex z) const { return z * to_normalized_; }
  Complex to_user(Complex z) const { return z / to_normalized_; }

  /// Pencil circle with parameter t, in user coordinates.
  Circle circle(double t) const {
    if (t < t_min() - 1e-15 || t > 0.0)
      throw Error(ErrorKind::Domain, "pencil parameter outside [-1 + tau, 0]");
    const Circle c = pencil_circle(t);
    return Circle{to_user(c.center), c.radius};
  }

 private:
  Complex p_;
  double tau_;
  Complex to_normalized_;
};

// ---------------------------------------------------------------------------
// Tangent circle and the arc lambda_z.

/// Circle through conj(z), 1/z and -1; it is tangent to the real axis at -1.
inline Circle tangent_circle(Complex z) {
  if (std::abs(z.imag()) < kGeomEps)
    throw Error(ErrorKind::Degenerate, "tangent_circle: z is real; the fiber is the extended real line");
  const double q = std::norm(z + 1.0);
  return Circle{Complex(-1.0, -q / (2.0 * z.imag())), q / (2.0 * std::abs(z.imag()))};
}

struct Arc {
  Circle circle;
  double angle_start;  // (-pi, pi], measured from circle.center
  double angle_end;    // (-pi, pi]
  int direction;       // +1 counter-clockwise, -1 clockwise

  /// Signed angular extent, nonzero with the sign of `direction`.
  double sweep() const {
    return direction > 0 ? ccw_sweep(angle_start, angle_end) : -ccw_sweep(angle_end, angle_start);
  }
  double length() const { return std::abs(sweep()) * circle.radius; }
  Complex start() const { return circle.point(angle_start); }
  Complex end() const { return circle.point(angle_end); }
  /// Point at fraction s in [0, 1] of the way along the arc.
  Complex at(double s) const { return circle.point(angle_start + s * sweep()); }

  /// Whether the ray from the center at `angle` crosses the arc.
  bool covers_angle(double angle) const {
    const double s = sweep();
    const double off = s > 0 ? ccw_sweep(angle_start, angle) : ccw_sweep(angle, angle_start);
    return off <= std::abs(s);
  }

  double distance_to(Complex w) const {
    const Complex d = w - circle.center;
    if (std::abs(d) > 0.0 && covers_angle(std::arg(d))) return std::abs(std::abs(d) - circle.radius);
    return std::min(std::abs(w - start()), std::abs(w - end()));
  }
};

/// The arc of tangent_circle(z) joining conj(z) and 1/z that avoids -1,
/// oriented as part of the positively oriented boundary of the region it
/// encloses together with the segment [conj(z), 1/z]. For Im z > 0 it runs
/// from 1/z to conj(z); for Im z < 0 from conj(z) to 1/z.
inline Arc arc_lambda(Complex z) {
  if (std::abs(z) >= 1.0) throw Error(ErrorKind::Degenerate, "arc_lambda: |z| >= 1 makes conj(z) and 1/z coincide");
  const Circle c = tangent_circle(z);
  const Complex first = z.imag() > 0 ? 1.0 / z : std::conj(z);
  const Complex last = z.imag() > 0 ? std::conj(z) : 1.0 / z;
  if (std::abs(first - last) == 0.0) throw Error(ErrorKind::Degenerate, "arc_lambda: coincident endpoints");

  const double a0 = canonical_angle(std::arg(first - c.center));
  const double a1 = canonical_angle(std::arg(last - c.center));
  const double minus_one = std::arg(Complex(-1.0, 0.0) - c.center);
  Arc arc{c, a0, a1, +1};
  if (arc.covers_angle(minus_one)) arc.direction = -1;
  return arc;
}

}  // namespace morera
