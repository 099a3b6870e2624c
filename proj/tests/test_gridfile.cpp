#include "catch_amalgamated.hpp"

#include <sstream>

#include "morera/analysis.hpp"
#include "morera/funczoo.hpp"
#include "morera/gridfile.hpp"

using namespace morera;
using Catch::Matchers::WithinAbs;

namespace {

PolarGrid grid_of(const zoo::ZooEntry& e, std::size_t n_r = 101, std::size_t n_theta = 256) {
  std::istringstream in(PolarGrid::export_csv(e.oracle, n_r, n_theta));
  return PolarGrid::from_csv(in);
}

}  // namespace

TEST_CASE("grid nodes are reproduced exactly") {
  const auto& e = zoo::builtin("expz");
  const PolarGrid g = grid_of(e, 11, 16);
  CHECK(g.n_r() == 11);
  CHECK(g.n_theta() == 16);
  for (std::size_t i = 0; i < 11; ++i)
    for (std::size_t k = 0; k < 16; ++k) {
      const Complex z = std::polar(i / 10.0, kTwoPi * k / 16.0);
      CHECK_THAT(std::abs(g(z) - e(z)), WithinAbs(0.0, 1e-14));
    }
}

TEST_CASE("interpolation error is small between nodes") {
  const auto& e = zoo::builtin("poly3");
  const PolarGrid g = grid_of(e);
  for (int k = 0; k < 50; ++k) {
    const Complex z = std::polar(0.013 + 0.0197 * k, 0.37 * k);
    CHECK(std::abs(g(z) - e(z)) < 1e-5);
  }
}

TEST_CASE("malformed grid files") {
  std::istringstream empty("r,theta,re,im\n");
  CHECK_THROWS_AS(PolarGrid::from_csv(empty), Error);
  std::istringstream ragged("0,0,1,0\n0,3.14159,1,0\n1,0,1,0\n");
  CHECK_THROWS_AS(PolarGrid::from_csv(ragged), Error);
  std::istringstream junk("r,theta,re,im\n0,0,1\n");
  CHECK_THROWS_AS(PolarGrid::from_csv(junk), Error);
  CHECK_THROWS_AS(PolarGrid::load("/nonexistent/grid.csv"), Error);
}

TEST_CASE("round trip reproduces per-circle verdicts") {
  const auto cfg = VerdictConfig::circles_through_point(0.25, Complex(-1, 0), 12);
  for (const char* name : {"poly3", "expz", "rational", "counterexample", "conjugate", "absq"}) {
    const auto& e = zoo::builtin(name);
    const PolarGrid g = grid_of(e, 201, 512);
    const auto interpolated = [&g](Complex z) { return g(z); };
    SweepOptions direct, inflated;
    inflated.morera_tol = kDefaultMoreraTol * kGridTolInflation;
    for (const FamilyConfig& fam : cfg.families) {
      const FamilyReport a = test_family(e.oracle, fam, direct);
      const FamilyReport b = test_family(interpolated, fam, inflated);
      for (std::size_t i = 0; i < a.circles.size(); ++i) {
        INFO(name << " " << to_string(fam.kind) << " parameter " << a.circles[i].parameter);
        CHECK(a.circles[i].passes == b.circles[i].passes);
      }
    }
  }
}
