#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace morera {

enum class ErrorKind {
  Domain,             // argument outside the operation's domain
  Degenerate,         // geometric degeneracy (real base point, coincident endpoints, ...)
  Sampling,           // oracle returned a non-finite value
  InvalidState,       // operation called on data that does not satisfy its precondition
  InvalidComparison,  // comparing an object with itself where that is meaningless
  NoIntersection,
  NotOnPencil,
  Singular,
  BoundaryAmbiguity,  // point too close to a curve to classify
  NearSingularity,    // Cauchy kernel evaluated too close to the contour
  MoreraFailure,      // a circle's trace does not extend holomorphically
  Config,
  Parse,
  Eval,
  Lookup,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Sampling: return "sampling";
    case ErrorKind::InvalidState: return "invalid-state";
    case ErrorKind::InvalidComparison: return "invalid-comparison";
    case ErrorKind::NoIntersection: return "no-intersection";
    case ErrorKind::NotOnPencil: return "not-on-pencil";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::BoundaryAmbiguity: return "boundary-ambiguity";
    case ErrorKind::NearSingularity: return "near-singularity";
    case ErrorKind::MoreraFailure: return "morera-failure";
    case ErrorKind::Config: return "config";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Eval: return "eval";
    case ErrorKind::Lookup: return "lookup";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

/// Base exception for everything thrown by the library. `kind()` lets callers
/// branch on the failure class without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Oracle produced NaN or infinity at angle `theta` of the sampled circle.
class SamplingError : public Error {
 public:
  SamplingError(double theta, const std::string& what)
      : Error(ErrorKind::Sampling, what), theta_(theta) {}
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

/// A circle whose trace failed the extension test while an operation needed
/// its holomorphic extension.
class MoreraFailure : public Error {
 public:
  MoreraFailure(std::complex<double> center, double radius, const std::string& what)
      : Error(ErrorKind::MoreraFailure, what), center_(center), radius_(radius) {}
  std::complex<double> center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }

 private:
  std::complex<double> center_;
  double radius_;
};

}  // namespace morera
