#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <string>

#include "morera/error.hpp"

namespace morera {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Anything callable as Complex -> Complex.
template <class F>
concept ComplexOracle = std::invocable<const F&, Complex> &&
    std::convertible_to<std::invoke_result_t<const F&, Complex>, Complex>;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Point of the extended plane C ∪ {∞}. The point at infinity is carried as an
/// explicit flag, never as a huge float.
class ExtendedComplex {
 public:
  constexpr ExtendedComplex(Complex value) : value_(value) {}  // NOLINT: implicit by intent
  static constexpr ExtendedComplex infinity() { return ExtendedComplex(); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  Complex value() const {
    if (infinite_) throw Error(ErrorKind::InvalidState, "point at infinity has no finite value");
    return value_;
  }

  friend constexpr bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  constexpr ExtendedComplex() : infinite_(true) {}
  Complex value_{};
  bool infinite_ = false;
};

/// Reduce an angle to (-pi, pi].
inline double canonical_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

/// Counter-clockwise sweep from `from` to `to`, in [0, 2pi).
inline double ccw_sweep(double from, double to) {
  double d = std::fmod(to - from, kTwoPi);
  if (d < 0) d += kTwoPi;
  return d;
}

inline std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

}  // namespace morera
