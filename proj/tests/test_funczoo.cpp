#include "catch_amalgamated.hpp"

#include "morera/analysis.hpp"
#include "morera/funczoo.hpp"

using namespace morera;
using Catch::Matchers::WithinAbs;

TEST_CASE("builtin lookup") {
  const auto& ce = zoo::builtin("counterexample");
  CHECK_THAT(std::abs(ce(Complex(0, 0.5)) - Complex(0, -0.5)), WithinAbs(0.0, 1e-15));
  CHECK(ce(Complex{}) == Complex{});
  try {
    zoo::builtin("nosuch");
    FAIL("expected lookup error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Lookup);
  }
  for (const char* name : {"poly3", "expz", "rational", "counterexample", "conjugate", "absq", "radial-smooth"})
    CHECK(zoo::builtin(name).name == name);
  CHECK(zoo::holomorphic_members().size() == 3);
}

TEST_CASE("counterexample_pole") {
  const auto p = zoo::counterexample_pole(Complex(-0.7, 0), 0.3);
  REQUIRE(p);
  CHECK_THAT(p->real(), WithinAbs(-0.5714285714285714, 1e-12));
  CHECK(std::abs(*p - Complex(-0.7, 0)) < 0.3);

  const auto q = zoo::counterexample_pole(Complex(-0.4, 0), 0.6);
  REQUIRE(q);
  CHECK_THAT(std::abs(*q - Complex(-0.4, 0)), WithinAbs(0.9, 1e-14));

  CHECK_FALSE(zoo::counterexample_pole(Complex{}, 0.5));
}

TEST_CASE("radial-smooth vanishes on the boundary") {
  const auto& rs = zoo::builtin("radial-smooth");
  CHECK(rs(Complex(1, 0)) == Complex{});
  CHECK_THAT(rs(Complex{}).real(), WithinAbs(std::exp(-1.0), 1e-15));
  CHECK(std::abs(rs(std::polar(0.999, 1.0))) < 1e-200);
}

TEST_CASE("extension_test agrees with the closed-form predicates") {
  const VerdictConfig cfg = VerdictConfig::circles_through_point(0.25, Complex(-1, 0), 12);
  for (const zoo::ZooEntry& e : zoo::registry()) {
    for (const FamilyConfig& fam : cfg.families) {
      for (double param : fam.parameters()) {
        const Circle c = fam.circle(param);
        if (e.boundary_case(c)) continue;
        const CircleAnalysis an = analyze_adaptive(e.oracle, c);
        INFO(e.name << " circle center " << format_complex(c.center) << " radius " << c.radius);
        REQUIRE_FALSE(an.inconclusive);
        CHECK(an.result.passes == e.extends_from(c));
      }
    }
  }
}

TEST_CASE("evaluate_extension matches closed-form extensions") {
  const Circle circles[] = {Circle{0, 0.6}, pencil_circle(-0.3), pencil_circle(-0.45), Circle{Complex(0.1, 0.2), 0.5}};
  for (const zoo::ZooEntry& e : zoo::registry()) {
    for (const Circle& c : circles) {
      const auto ext = e.extension(c);
      if (!ext) continue;
      const CircleAnalysis an = analyze_adaptive(e.oracle, c);
      REQUIRE(an.result.passes);
      for (int k = 0; k < 20; ++k) {
        const Complex probe = c.center + c.radius * 0.9 * std::polar(std::sqrt((k + 0.5) / 20.0), 2.4 * k);
        INFO(e.name << " probe " << format_complex(probe));
        CHECK_THAT(std::abs(evaluate_extension(an.data, probe) - (*ext)(probe)), WithinAbs(0.0, 1e-8));
      }
    }
  }
}

TEST_CASE("boundary case: circle through the origin") {
  const auto& ce = zoo::builtin("counterexample");
  const Circle c = pencil_circle(-0.5);
  CHECK(ce.boundary_case(c));
  CHECK(ce.extends_from(c));
  const auto ext = ce.extension(c);
  REQUIRE(ext);
  // the simplified closed form agrees with f on the circle away from the origin
  for (double th : {0.3, 1.5, -2.0}) {
    const Complex z = c.point(th);
    CHECK_THAT(std::abs((*ext)(z) - ce(z)), WithinAbs(0.0, 1e-14));
  }
}
