#pragma once

// Built-in test functions with known answers on every circle.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morera/complex.hpp"
#include "morera/error.hpp"
#include "morera/geometry.hpp"

namespace morera::zoo {

enum class Classification { Holomorphic, Counterexample, NonExtendable, Radial };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::Holomorphic: return "holomorphic";
    case Classification::Counterexample: return "counterexample";
    case Classification::NonExtendable: return "non-extendable";
    case Classification::Radial: return "radial";
  }
  return "?";
}

using Oracle = std::function<Complex(Complex)>;

/// Pole of the closed-form extension of z^2/conj(z) from the circle |z - a| = r.
/// On that circle conj(z) = conj(a) + r^2/(z - a), so the extension is
/// z^2 (z - a) / (conj(a)(z - a) + r^2) with a pole at a - r^2/conj(a).
/// Returns nothing for a = 0, where the extension z^3/r^2 is entire.
inline std::optional<Complex> counterexample_pole(Complex a, double r) {
  if (a == Complex{}) return std::nullopt;
  return a - r * r / std::conj(a);
}

struct ZooEntry {
  std::string name;
  Oracle oracle;
  Classification classification;
  std::string formula;

  /// Closed-form answer to "does f extend holomorphically from this circle".
  std::function<bool(const Circle&)> extends_from;
  /// Closed-form extension into the disc of `circle`, where one is known.
  std::function<std::optional<Oracle>(const Circle&)> extension;

  Complex operator()(Complex z) const { return oracle(z); }

  /// The circle passes through the origin, where the counterexample's
  /// closed-form denominator vanishes on the circle itself.
  bool boundary_case(const Circle& c) const {
    return classification == Classification::Counterexample &&
           std::abs(std::abs(c.center) - c.radius) <= 1e-12 * c.radius;
  }
};

namespace detail {

inline ZooEntry holomorphic(std::string name, std::string formula, Oracle f) {
  ZooEntry e{std::move(name), f, Classification::Holomorphic, std::move(formula), {}, {}};
  e.extends_from = [](const Circle&) { return true; };
  e.extension = [f](const Circle&) -> std::optional<Oracle> { return f; };
  return e;
}

/// f depends on |z| only: the trace is real-valued times a constant, hence
/// extends iff it is constant, i.e. iff the circle is centered at 0.
inline ZooEntry radial(std::string name, std::string formula, std::function<double(double)> profile) {
  Oracle f = [profile](Complex z) { return Complex(profile(std::abs(z)), 0.0); };
  ZooEntry e{std::move(name), f, Classification::Radial, std::move(formula), {}, {}};
  e.extends_from = [](const Circle& c) { return c.center == Complex{}; };
  e.extension = [profile](const Circle& c) -> std::optional<Oracle> {
    if (c.center != Complex{}) return std::nullopt;
    const Complex v(profile(c.radius), 0.0);
    return Oracle([v](Complex) { return v; });
  };
  return e;
}

inline std::vector<ZooEntry> build_registry() {
  std::vector<ZooEntry> out;
  out.push_back(holomorphic("poly3", "z^3 - 2", [](Complex z) { return z * z * z - 2.0; }));
  out.push_back(holomorphic("expz", "exp(z)", [](Complex z) { return std::exp(z); }));
  out.push_back(holomorphic("rational", "1/(z - 2)", [](Complex z) { return 1.0 / (z - 2.0); }));

  {
    Oracle f = [](Complex z) { return z == Complex{} ? Complex{} : z * z / std::conj(z); };
    ZooEntry e{"counterexample", f, Classification::Counterexample, "z^2/conj(z), 0 at z = 0", {}, {}};
    // Extends iff the origin is inside or on the circle: |pole - a| = r^2/|a| >= r.
    e.extends_from = [](const Circle& c) { return std::abs(c.center) <= c.radius * (1.0 + 1e-12); };
    e.extension = [](const Circle& c) -> std::optional<Oracle> {
      const Complex a = c.center;
      const double r = c.radius;
      if (a == Complex{}) return Oracle([r](Complex z) { return z * z * z / (r * r); });
      if (std::abs(std::abs(a) - r) <= 1e-12 * r) {
        // conj(a)(z - a) + r^2 = conj(a) z, so the quotient simplifies.
        return Oracle([a](Complex z) { return z * (z - a) / std::conj(a); });
      }
      if (std::abs(a) > r) return std::nullopt;
      return Oracle([a, r](Complex z) { return z * z * (z - a) / (std::conj(a) * (z - a) + r * r); });
    };
    out.push_back(std::move(e));
  }

  {
    Oracle f = [](Complex z) { return std::conj(z); };
    ZooEntry e{"conjugate", f, Classification::NonExtendable, "conj(z)", {}, {}};
    // conj(z) = conj(a) + r^2/(z - a) on the circle: always a pole at the center.
    e.extends_from = [](const Circle&) { return false; };
    e.extension = [](const Circle&) -> std::optional<Oracle> { return std::nullopt; };
    out.push_back(std::move(e));
  }

  out.push_back(radial("absq", "|z|^2", [](double s) { return s * s; }));
  out.push_back(radial("radial-smooth", "exp(-1/(1 - |z|^2)), 0 on the unit circle", [](double s) {
    const double q = 1.0 - s * s;
    return q <= 0.0 ? 0.0 : std::exp(-1.0 / q);
  }));
  return out;
}

}  // namespace detail

inline const std::vector<ZooEntry>& registry() {
  static const std::vector<ZooEntry> entries = detail::build_registry();
  return entries;
}

inline const ZooEntry& builtin(std::string_view name) {
  for (const ZooEntry& e : registry())
    if (e.name == name) return e;
  std::string known;
  for (const ZooEntry& e : registry()) known += (known.empty() ? "" : ", ") + e.name;
  throw Error(ErrorKind::Lookup, "unknown builtin function '" + std::string(name) + "' (known: " + known + ")");
}

inline std::vector<const ZooEntry*> holomorphic_members() {
  std::vector<const ZooEntry*> out;
  for (const ZooEntry& e : registry())
    if (e.classification == Classification::Holomorphic) out.push_back(&e);
  return out;
}

}  // namespace morera::zoo
