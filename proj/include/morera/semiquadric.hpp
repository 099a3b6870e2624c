#pragma once

// Semiquadrics {(z, w) : (z - a)(w - conj(a)) = r^2, 0 < |z - a| < r}.
// A function continuous on the circle |z - a| = r extends holomorphically into
// the disc iff its lift to the boundary {(zeta, conj(zeta))} extends
// holomorphically along the semiquadric; the fiber map below is the bridge.

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "morera/complex.hpp"
#include "morera/error.hpp"
#include "morera/geometry.hpp"

namespace morera {

struct Semiquadric {
  Complex a;
  double r;

  static Semiquadric make(Complex a, double r) {
    if (!(r > 0.0)) throw Error(ErrorKind::Domain, "semiquadric radius must be positive");
    return Semiquadric{a, r};
  }
  /// Semiquadric over the pencil circle with parameter t (normalized, p = -1).
  static Semiquadric pencil(double t) {
    const Circle c = pencil_circle(t);
    return Semiquadric{c.center, c.radius};
  }

  Circle circle() const { return Circle{a, r}; }
  friend bool operator==(const Semiquadric&, const Semiquadric&) = default;
};

struct QuadricPoint {
  Complex z;
  ExtendedComplex w;
};

/// w = conj(a) + r^2 / (z - a); the point at infinity over z = a.
inline ExtendedComplex fiber_w(const Semiquadric& q, Complex z) {
  const Complex d = z - q.a;
  if (std::abs(d) > q.r * (1.0 + 1e-12)) throw Error(ErrorKind::Domain, "fiber_w: z outside the closed disc");
  if (d == Complex{}) return ExtendedComplex::infinity();
  return std::conj(q.a) + q.r * q.r / d;
}

inline bool quadrics_intersect(const Semiquadric& q1, const Semiquadric& q2) {
  if (q1 == q2) throw Error(ErrorKind::InvalidComparison, "quadrics_intersect: identical semiquadrics");
  if (q1.a == q2.a) return false;
  return surrounds(q1.circle(), q2.circle()) || surrounds(q2.circle(), q1.circle());
}

/// The single point where the centered semiquadric of radius R meets the pencil
/// semiquadric with parameter t. Both coordinates are real and positive.
inline QuadricPoint family_intersection_point(double R, double t) {
  if (!(t > -0.5 && t < 0.0) || !(R > 0.0) || !(R < 2.0 * t + 1.0))
    throw Error(ErrorKind::NoIntersection, "family_intersection_point: requires 0 < R < 2t + 1 and -1/2 < t < 0");

  // z w = R^2 with w = t + (t+1)^2/(z - t) gives t z^2 - b z + t R^2 = 0.
  const double b = R * R + t * t - (t + 1.0) * (t + 1.0);
  const double disc = b * b - 4.0 * t * t * R * R;
  if (disc < 0.0) throw Error(ErrorKind::NoIntersection, "family_intersection_point: no real root");
  const double s = std::sqrt(disc);
  // Cancellation-free pair of roots.
  const double qv = -0.5 * (-b + (b >= 0 ? -s : s));
  const std::array<double, 2> roots{qv / t, t * R * R / qv};

  std::optional<double> pick;
  for (double z : roots) {
    const double dz0 = std::abs(z);
    const double dzt = std::abs(z - t);
    if (dz0 > 0.0 && dz0 < R && dzt > 0.0 && dzt < t + 1.0) {
      if (pick) throw Error(ErrorKind::InvalidState, "family_intersection_point: both roots admissible");
      pick = z;
    }
  }
  if (!pick) throw Error(ErrorKind::NoIntersection, "family_intersection_point: no admissible root");
  const double z = *pick;
  return QuadricPoint{Complex(z, 0.0), Complex(R * R / z, 0.0)};
}

/// Inverse of the pencil fiber map: the real t with t + (t+1)^2/(z - t) = w.
inline double invert_pencil_fiber(Complex z, Complex w) {
  const Complex denom = w + z + 2.0;
  if (std::abs(denom) < 1e-14) throw Error(ErrorKind::Singular, "invert_pencil_fiber: w + z + 2 = 0");
  const Complex t = (w * z - 1.0) / denom;
  if (std::abs(t.imag()) > 1e-8 * std::max(1.0, std::abs(t.real())))
    throw Error(ErrorKind::NotOnPencil, "invert_pencil_fiber: (z, w) lies on no pencil semiquadric");
  return t.real();
}

}  // namespace morera
