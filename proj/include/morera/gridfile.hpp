#pragma once

// Black-box functions given as samples on a polar grid.
//
// File format: CSV rows `r,theta,re,im` (an optional non-numeric header line is
// skipped). The rows must form a full tensor grid, uniform in r and uniform in
// theta over [0, 2pi). Values between nodes come from cubic convolution
// (Catmull-Rom) in r and periodic cubic convolution in theta.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "morera/complex.hpp"
#include "morera/error.hpp"

namespace morera {

/// Default factor applied to the Morera tolerance for interpolated sources.
inline constexpr double kGridTolInflation = 10.0;

class PolarGrid {
 public:
  PolarGrid(std::vector<double> radii, std::size_t n_theta, std::vector<Complex> values)
      : radii_(std::move(radii)), n_theta_(n_theta), values_(std::move(values)) {
    if (radii_.size() < 4 || n_theta_ < 4) throw Error(ErrorKind::Config, "polar grid needs at least 4x4 nodes");
    if (values_.size() != radii_.size() * n_theta_) throw Error(ErrorKind::Config, "polar grid value count mismatch");
    dr_ = (radii_.back() - radii_.front()) / static_cast<double>(radii_.size() - 1);
    for (std::size_t i = 1; i < radii_.size(); ++i)
      if (std::abs(radii_[i] - radii_[i - 1] - dr_) > 1e-9)
        throw Error(ErrorKind::Config, "polar grid radii are not uniformly spaced");
  }

  /// Parses CSV text.
  static PolarGrid from_csv(std::istream& in) {
    std::map<double, std::map<double, Complex>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      for (char& c : line)
        if (c == ',') c = ' ';
      std::istringstream ss(line);
      double r, th, re, im;
      if (!(ss >> r >> th >> re >> im)) {
        if (lineno == 1) continue;  // header
        throw Error(ErrorKind::Config, "grid file: malformed row " + std::to_string(lineno));
      }
      rows[r][th] = Complex(re, im);
    }
    if (rows.empty()) throw Error(ErrorKind::Config, "grid file: no data rows");
    const std::size_t n_theta = rows.begin()->second.size();
    std::vector<double> radii;
    std::vector<Complex> values;
    for (const auto& [r, by_theta] : rows) {
      if (by_theta.size() != n_theta) throw Error(ErrorKind::Config, "grid file: ragged theta rows");
      radii.push_back(r);
      std::size_t k = 0;
      for (const auto& [th, v] : by_theta) {
        const double expect = kTwoPi * static_cast<double>(k) / static_cast<double>(n_theta);
        if (std::abs(th - expect) > 1e-9) throw Error(ErrorKind::Config, "grid file: theta not uniform on [0, 2pi)");
        values.push_back(v);
        ++k;
      }
    }
    return PolarGrid(std::move(radii), n_theta, std::move(values));
  }

  static PolarGrid load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open grid file " + path);
    return from_csv(in);
  }

  /// Samples f on n_r radii uniformly spaced in [0, r_max] and n_theta angles.
  template <ComplexOracle F>
  static std::string export_csv(const F& f, std::size_t n_r, std::size_t n_theta, double r_max = 1.0) {
    std::string out = "r,theta,re,im\n";
    char buf[160];
    for (std::size_t i = 0; i < n_r; ++i) {
      const double r = r_max * static_cast<double>(i) / static_cast<double>(n_r - 1);
      for (std::size_t k = 0; k < n_theta; ++k) {
        const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(n_theta);
        const Complex v = f(std::polar(r, th));
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r, th, v.real(), v.imag());
        out += buf;
      }
    }
    return out;
  }

  double r_min() const { return radii_.front(); }
  double r_max() const { return radii_.back(); }
  std::size_t n_r() const { return radii_.size(); }
  std::size_t n_theta() const { return n_theta_; }

  Complex operator()(Complex z) const {
    const double r = std::abs(z);
    if (r < r_min() - 1e-12 || r > r_max() + 1e-12)
      throw Error(ErrorKind::Domain, "grid function evaluated outside its radial range");
    double th = std::atan2(z.imag(), z.real());
    if (th < 0) th += kTwoPi;

    const double u = std::clamp((r - r_min()) / dr_, 0.0, static_cast<double>(n_r() - 1));
    const double v = th / (kTwoPi / static_cast<double>(n_theta_));
    const long i0 = std::min(static_cast<long>(std::floor(u)), static_cast<long>(n_r()) - 2);
    const long k0 = static_cast<long>(std::floor(v));
    const double fu = u - static_cast<double>(i0);
    const double fv = v - static_cast<double>(k0);

    Complex col[4];
    for (int a = 0; a < 4; ++a) {
      const long i = i0 - 1 + a;
      Complex row[4];
      for (int b = 0; b < 4; ++b) row[b] = radial_node(i, k0 - 1 + b);
      col[a] = cubic(row, fv);
    }
    return cubic(col, fu);
  }

 private:
  std::vector<double> radii_;
  std::size_t n_theta_;
  std::vector<Complex> values_;  // row-major: radius index, then theta index
  double dr_;

  Complex node(long i, long k) const {
    const long n = static_cast<long>(n_theta_);
    const long kk = ((k % n) + n) % n;
    return values_[static_cast<std::size_t>(i) * n_theta_ + static_cast<std::size_t>(kk)];
  }

  // Ghost rows beyond the radial ends. Through the origin the row at -dr is
  // the row at +dr turned by pi; otherwise f(-1) = 3f(0) - 3f(1) + f(2).
  Complex radial_node(long i, long k) const {
    const long last = static_cast<long>(n_r()) - 1;
    if (i < 0 && r_min() == 0.0 && n_theta_ % 2 == 0) return node(-i, k + static_cast<long>(n_theta_ / 2));
    if (i < 0) return 3.0 * node(0, k) - 3.0 * node(1, k) + node(2, k);
    if (i > last) return 3.0 * node(last, k) - 3.0 * node(last - 1, k) + node(last - 2, k);
    return node(i, k);
  }

  static Complex cubic(const Complex p[4], double x) {
    // Catmull-Rom through p[1] (x = 0) and p[2] (x = 1).
    return p[1] + 0.5 * x * (p[2] - p[0] + x * (2.0 * p[0] - 5.0 * p[1] + 4.0 * p[2] - p[3] +
                                                  x * (3.0 * (p[1] - p[2]) + p[3] - p[0])));
  }
};

}  // namespace morera
