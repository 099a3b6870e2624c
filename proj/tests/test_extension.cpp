#include "catch_amalgamated.hpp"

#include <random>

#include "morera/extension.hpp"

using namespace morera;
using Catch::Matchers::WithinAbs;

namespace {

// Direct O(N^2) DFT: c_k = (1/N) sum_j g_j e^{-2 pi i j k / N}.
Complex direct_coeff(const std::vector<Complex>& g, long k) {
  const std::size_t n = g.size();
  Complex s{};
  for (std::size_t j = 0; j < n; ++j)
    s += g[j] * std::polar(1.0, -kTwoPi * static_cast<double>(j) * static_cast<double>(k) / static_cast<double>(n));
  return s / static_cast<double>(n);
}

}  // namespace

TEST_CASE("analyze_circle examples") {
  const Circle unit{0, 1};
  const auto sq = analyze_circle([](Complex z) { return z * z; }, unit, 16);
  for (long k = -8; k < 8; ++k) CHECK_THAT(std::abs(sq.coeff(k) - (k == 2 ? 1.0 : 0.0)), WithinAbs(0.0, 1e-15));

  const auto bar = analyze_circle([](Complex z) { return std::conj(z); }, unit, 16);
  for (long k = -8; k < 8; ++k) CHECK_THAT(std::abs(bar.coeff(k) - (k == -1 ? 1.0 : 0.0)), WithinAbs(0.0, 1e-15));

  const auto ce = analyze_circle([](Complex z) { return z * z / std::conj(z); }, Circle{0, 0.5}, 16);
  for (long k = -8; k < 8; ++k) CHECK_THAT(std::abs(ce.coeff(k) - (k == 3 ? 0.5 : 0.0)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("analyze_circle matches direct DFT") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = std::size_t{8} << (trial % 3);
    const Circle c{Complex(u(rng), u(rng)), 0.2 + std::abs(u(rng))};
    const Complex a(u(rng), u(rng)), b(u(rng), u(rng));
    const auto f = [&](Complex z) { return a * std::exp(z) + b * std::conj(z) * z; };
    const FourierData d = analyze_circle(f, c, n);
    const CircleTrace tr = sample_circle(f, c, n);
    for (long k = d.min_index(); k <= d.max_index(); ++k)
      CHECK_THAT(std::abs(d.coeff(k) - direct_coeff(tr.values, k)), WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("sampling errors") {
  const auto bad = [](Complex z) { return 1.0 / (z - 1.0); };
  try {
    analyze_circle(bad, Circle{0, 1}, 16);
    FAIL("expected a sampling error");
  } catch (const SamplingError& e) {
    CHECK(e.kind() == ErrorKind::Sampling);
    CHECK(e.theta() == 0.0);
  }
  CHECK_THROWS_AS(analyze_circle([](Complex z) { return z; }, Circle{0, 1}, 12), Error);
  CHECK_THROWS_AS(analyze_circle([](Complex z) { return z; }, Circle{0, 1}, 4), Error);
}

TEST_CASE("extension_test examples") {
  const Circle unit{0, 1};
  const auto sq = extension_test(analyze_circle([](Complex z) { return z * z; }, unit, 64));
  CHECK(sq.passes);
  CHECK_FALSE(sq.aliasing_flag);

  const auto bar = extension_test(analyze_circle([](Complex z) { return std::conj(z); }, unit, 64));
  CHECK_FALSE(bar.passes);
  CHECK_THAT(bar.negative_energy, WithinAbs(1.0, 1e-14));

  // z^2 / conj(z) on pencil_circle(-0.7): the closed-form extension has a pole inside.
  const Circle pc = pencil_circle(-0.7);
  const Complex a = pc.center;
  const Complex zp = a - pc.radius * pc.radius / std::conj(a);
  CHECK(std::abs(zp - a) < pc.radius);
  CHECK_THAT(zp.real(), WithinAbs(-0.7 + 0.09 / 0.7, 1e-14));
  const auto ce = extension_test(analyze_circle([](Complex z) { return z * z / std::conj(z); }, pc, 256));
  CHECK_FALSE(ce.passes);
  CHECK(ce.negative_energy > 1e-2);
}

TEST_CASE("zero trace passes") {
  const auto r = extension_test(analyze_circle([](Complex) { return Complex{}; }, Circle{0, 0.5}, 16));
  CHECK(r.passes);
  CHECK(r.negative_energy == 0.0);
}

TEST_CASE("evaluate_extension") {
  const auto sq = analyze_circle([](Complex z) { return z * z; }, Circle{0, 1}, 64);
  CHECK_THAT(std::abs(evaluate_extension(sq, Complex(0.3, 0.4)) - Complex(-0.07, 0.24)), WithinAbs(0.0, 1e-15));

  const auto ce = analyze_circle([](Complex z) { return z * z / std::conj(z); }, Circle{0, 0.5}, 64);
  CHECK_THAT(std::abs(evaluate_extension(ce, Complex(0.2, 0)) - 0.032), WithinAbs(0.0, 1e-15));

  const Circle off{Complex(0.1, -0.2), 0.3};
  const auto cst = analyze_circle([](Complex) { return Complex(2.5, -1); }, off, 32);
  CHECK_THAT(std::abs(evaluate_extension(cst, Complex(0.15, -0.1)) - Complex(2.5, -1)), WithinAbs(0.0, 1e-14));

  // on the circle the extension reproduces the trace
  const auto ex = analyze_circle([](Complex z) { return std::exp(z); }, off, 64);
  const Complex on = off.point(0.3);
  CHECK_THAT(std::abs(evaluate_extension(ex, on) - std::exp(on)), WithinAbs(0.0, 1e-13));

  CHECK_THROWS_AS(evaluate_extension(sq, Complex(1.1, 0)), Error);
  const auto bar = analyze_circle([](Complex z) { return std::conj(z); }, Circle{0, 1}, 16);
  try {
    evaluate_extension(bar, Complex(0.1, 0));
    FAIL("expected invalid-state");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidState);
  }
}

TEST_CASE("adaptive sampling resolves high frequencies") {
  // e^{40 z} on the unit circle has significant coefficients well past k = 64.
  const auto f = [](Complex z) { return std::exp(40.0 * z) * 1e-17; };
  const CircleAnalysis low = analyze_adaptive(f, Circle{0, 1}, 1e-8, 32, 32);
  CHECK(low.inconclusive);
  const CircleAnalysis an = analyze_adaptive(f, Circle{0, 1}, 1e-8, 32, 4096);
  CHECK_FALSE(an.inconclusive);
  CHECK(an.result.passes);
  CHECK(an.data.sample_count() > 32);
}

TEST_CASE("threshold is relative") {
  const double scale = 1e-30;
  const auto r = extension_test(analyze_circle([&](Complex z) { return scale * (z + 0.5 * std::conj(z)); },
                                               Circle{0, 1}, 16));
  CHECK_FALSE(r.passes);
}
