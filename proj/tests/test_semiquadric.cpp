#include "catch_amalgamated.hpp"

#include "morera/semiquadric.hpp"

using namespace morera;
using Catch::Matchers::WithinAbs;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Domain;
}

}  // namespace

TEST_CASE("fiber_w examples") {
  CHECK_THAT(std::abs(fiber_w(Semiquadric{0, 0.5}, 0.25).value() - 1.0), WithinAbs(0.0, 1e-15));
  const Complex w = fiber_w(Semiquadric{-0.25, 0.75}, Complex(0, 0.5)).value();
  CHECK_THAT(std::abs(w - Complex(0.2, -0.9)), WithinAbs(0.0, 1e-15));
  for (double th : {0.0, 0.4, 2.0, -2.9}) {
    const Complex z = std::polar(1.0, th);
    CHECK_THAT(std::abs(fiber_w(Semiquadric{0, 1}, z).value() - std::conj(z)), WithinAbs(0.0, 1e-15));
  }
  CHECK(fiber_w(Semiquadric{Complex(0.1, 0.1), 0.3}, Complex(0.1, 0.1)).is_infinite());
  CHECK(kind_of([] { fiber_w(Semiquadric{0, 0.5}, 0.6); }) == ErrorKind::Domain);
}

TEST_CASE("fiber_w boundary identity off the origin") {
  const Semiquadric q{Complex(-0.3, 0.2), 0.4};
  for (int k = 0; k < 16; ++k) {
    const Complex z = q.circle().point(kTwoPi * k / 16.0);
    CHECK_THAT(std::abs(fiber_w(q, z).value() - std::conj(z)), WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("quadrics_intersect examples") {
  CHECK(quadrics_intersect(Semiquadric{0, 0.5}, Semiquadric{-0.2, 0.8}));
  CHECK_FALSE(quadrics_intersect(Semiquadric{0, 0.7}, Semiquadric{-0.2, 0.8}));
  CHECK_FALSE(quadrics_intersect(Semiquadric{0, 0.5}, Semiquadric{0, 0.9}));
  CHECK(kind_of([] { quadrics_intersect(Semiquadric{0, 0.5}, Semiquadric{0, 0.5}); }) ==
        ErrorKind::InvalidComparison);
  // symmetric in its arguments
  CHECK(quadrics_intersect(Semiquadric{-0.2, 0.8}, Semiquadric{0, 0.5}));
}

TEST_CASE("family_intersection_point examples") {
  const QuadricPoint p = family_intersection_point(0.5, -0.2);
  CHECK_THAT(p.z.real(), WithinAbs(0.15693, 1e-5));
  CHECK_THAT(p.w.value().real(), WithinAbs(1.59307, 1e-5));
  CHECK(p.z.real() > 0.0);
  CHECK(p.w.value().real() > 0.0);
  CHECK(p.z.imag() == 0.0);
  CHECK_THAT(std::abs(p.z * p.w.value() - 0.25), WithinAbs(0.0, 1e-14));
  CHECK(kind_of([] { family_intersection_point(0.6, -0.2); }) == ErrorKind::NoIntersection);
  CHECK(kind_of([] { family_intersection_point(0.1, -0.6); }) == ErrorKind::NoIntersection);
}

TEST_CASE("family_intersection_point lies on both semiquadrics") {
  for (int i = 1; i < 10; ++i) {
    const double t = -0.05 * i;
    for (int j = 1; j < 20; ++j) {
      const double R = (2 * t + 1) * j / 20.0;
      const QuadricPoint p = family_intersection_point(R, t);
      const Complex z = p.z, w = p.w.value();
      CHECK_THAT(std::abs(z * w - R * R), WithinAbs(0.0, 1e-10));
      CHECK_THAT(std::abs((z - t) * (w - t) - (t + 1) * (t + 1)), WithinAbs(0.0, 1e-10));
      CHECK(z.real() > 0.0);
      CHECK(w.real() > 0.0);
    }
  }
}

TEST_CASE("invert_pencil_fiber examples") {
  const Complex z(0, 0.5);
  CHECK_THAT(invert_pencil_fiber(z, Complex(0.2, -0.9)), WithinAbs(-0.25, 1e-14));
  CHECK_THAT(invert_pencil_fiber(z, 1.0 / z), WithinAbs(0.0, 1e-15));
  CHECK_THAT(invert_pencil_fiber(z, std::conj(z)), WithinAbs(-0.375, 1e-15));
  CHECK(kind_of([&] { invert_pencil_fiber(z, Complex(0.5, 0.5)); }) == ErrorKind::NotOnPencil);
  CHECK(kind_of([&] { invert_pencil_fiber(z, -2.0 - z); }) == ErrorKind::Singular);
}

TEST_CASE("invert_pencil_fiber round trip") {
  for (double t : {-0.3, -0.1, -0.05}) {
    const Semiquadric q = Semiquadric::pencil(t);
    const Complex z(0.1, 0.2);
    const Complex w = fiber_w(q, z).value();
    CHECK_THAT(invert_pencil_fiber(z, w), WithinAbs(t, 1e-12));
  }
}
