#pragma once

// Discrete Morera test on a single circle.
//
// A continuous g on the circle |zeta - a| = r extends holomorphically into the
// disc iff its Fourier coefficients with negative index vanish; the extension
// is then sum_{k>=0} c_k ((zeta - a)/r)^k. Numerically we sample N points,
// take the DFT and compare the negative-index energy against the total.

#include <bit>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "morera/complex.hpp"
#include "morera/error.hpp"
#include "morera/fft.hpp"
#include "morera/geometry.hpp"

namespace morera {

inline constexpr double kDefaultMoreraTol = 1e-8;
inline constexpr std::size_t kDefaultSamples = 256;
inline constexpr std::size_t kMaxSamples = 4096;

/// f sampled at circle.center + circle.radius * e^{2 pi i k / N}.
struct CircleTrace {
  Circle circle;
  std::vector<Complex> values;

  std::size_t sample_count() const { return values.size(); }
  double theta(std::size_t k) const { return kTwoPi * static_cast<double>(k) / static_cast<double>(values.size()); }
};

inline void check_sample_count(std::size_t n) {
  if (n < 8 || !std::has_single_bit(n))
    throw Error(ErrorKind::Domain, "sample count must be a power of two >= 8, got " + std::to_string(n));
}

template <ComplexOracle F>
CircleTrace sample_circle(const F& f, const Circle& circle, std::size_t n) {
  check_sample_count(n);
  CircleTrace trace{circle, std::vector<Complex>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = trace.theta(k);
    const Complex v = f(circle.point(theta));
    if (!is_finite(v))
      throw SamplingError(theta, "oracle returned a non-finite value on circle center " +
                                     format_complex(circle.center) + " radius " + std::to_string(circle.radius) +
                                     " at theta " + std::to_string(theta));
    trace.values[k] = v;
  }
  return trace;
}

/// Fourier coefficients c_k, k in [-N/2, N/2), of a circle trace.
class FourierData {
 public:
  FourierData(Circle circle, std::vector<Complex> coefficients)
      : circle_(circle), coeffs_(std::move(coefficients)) {
    const long half = static_cast<long>(coeffs_.size() / 2);
    const long quarter = half / 2;
    for (long k = -half; k < half; ++k) {
      const double e = std::norm(coeff(k));
      total_ += e;
      if (k < 0) negative_ += e;
      if (k >= quarter || k <= -quarter) high_ += e;
    }
  }

  const Circle& circle() const { return circle_; }
  std::size_t sample_count() const { return coeffs_.size(); }
  long min_index() const { return -static_cast<long>(coeffs_.size() / 2); }
  long max_index() const { return static_cast<long>(coeffs_.size() / 2) - 1; }

  Complex coeff(long k) const {
    if (k < min_index() || k > max_index()) return Complex{};
    return coeffs_[static_cast<std::size_t>(k - min_index())];
  }

  /// sum_{k<0} |c_k|^2
  double tail_energy_negative() const { return negative_; }
  /// sum_{|k| >= N/4} |c_k|^2, large when the trace is undersampled.
  double tail_energy_high() const { return high_; }
  double total_energy() const { return total_; }

 private:
  Circle circle_;
  std::vector<Complex> coeffs_;  // index k - min_index()
  double negative_ = 0.0;
  double high_ = 0.0;
  double total_ = 0.0;
};

inline FourierData analyze_trace(const CircleTrace& trace) {
  const std::size_t n = trace.sample_count();
  check_sample_count(n);
  std::vector<Complex> x = trace.values;
  detail::fft_inplace(x);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<Complex> coeffs(n);
  // c_k for k >= 0 sits at x[k]; k < 0 wraps to x[N + k].
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = (j + n / 2) % n;
    coeffs[j] = x[src] * inv_n;
  }
  return FourierData(trace.circle, std::move(coeffs));
}

template <ComplexOracle F>
FourierData analyze_circle(const F& f, const Circle& circle, std::size_t n = kDefaultSamples) {
  return analyze_trace(sample_circle(f, circle, n));
}

struct ExtensionResult {
  bool passes = false;
  double negative_energy = 0.0;
  double threshold_used = 0.0;
  bool aliasing_flag = false;
};

inline ExtensionResult extension_test(const FourierData& data, double tol = kDefaultMoreraTol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::Domain, "extension_test: tolerance must be positive");
  ExtensionResult r;
  r.negative_energy = data.tail_energy_negative();
  r.threshold_used = tol * (data.total_energy() + DBL_MIN);
  r.aliasing_flag = data.tail_energy_high() > r.threshold_used;
  r.passes = r.negative_energy <= r.threshold_used && !r.aliasing_flag;
  return r;
}

/// Holomorphic extension of a passing trace: sum_{k=0}^{N/2-1} c_k ((zeta-a)/r)^k.
inline Complex evaluate_extension(const FourierData& data, Complex zeta, double tol = kDefaultMoreraTol) {
  const Circle& c = data.circle();
  const Complex u = (zeta - c.center) / c.radius;
  if (std::abs(u) > 1.0 + 1e-12)
    throw Error(ErrorKind::Domain, "evaluate_extension: point outside the closed disc");
  if (!extension_test(data, tol).passes)
    throw Error(ErrorKind::InvalidState, "evaluate_extension: trace on circle center " + format_complex(c.center) +
                                             " radius " + std::to_string(c.radius) +
                                             " does not extend holomorphically");
  Complex acc{};
  for (long k = data.max_index(); k >= 0; --k) acc = acc * u + data.coeff(k);
  return acc;
}

/// Outcome of the sampled test with automatic refinement.
struct CircleAnalysis {
  FourierData data;
  ExtensionResult result;
  bool inconclusive = false;  // aliasing guard still tripped at the sample cap
};

/// Runs the extension test, doubling N while the aliasing guard trips, up to
/// max_samples.
template <ComplexOracle F>
CircleAnalysis analyze_adaptive(const F& f, const Circle& circle, double tol = kDefaultMoreraTol,
                                std::size_t initial_samples = kDefaultSamples,
                                std::size_t max_samples = kMaxSamples) {
  std::size_t n = initial_samples;
  for (;;) {
    FourierData data = analyze_circle(f, circle, n);
    ExtensionResult res = extension_test(data, tol);
    if (!res.aliasing_flag || n >= max_samples) {
      const bool capped = res.aliasing_flag;
      return CircleAnalysis{std::move(data), res, capped};
    }
    n *= 2;
  }
}

}  // namespace morera
