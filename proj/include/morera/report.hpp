#pragma once

// JSON serialization of sweep and verdict results. Key names are part of the
// documented report schema (docs/report-schema.md); keep them stable.

#include <string>

#include <nlohmann/json.hpp>

#include "morera/analysis.hpp"
#include "morera/extension.hpp"

namespace morera {

inline constexpr const char* kReportSchema = "morera-report/1";

inline nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json to_json(const CircleReport& c) {
  return {
      {"family", to_string(c.family)},
      {"parameter", c.parameter},
      {"center", complex_json(c.circle.center)},
      {"radius", c.circle.radius},
      {"samples", c.samples},
      {"negative_energy", c.negative_energy},
      {"total_energy", c.total_energy},
      {"threshold", c.threshold},
      {"aliasing", c.aliasing},
      {"passes", c.passes},
      {"inconclusive", c.inconclusive},
      {"flagged", c.flagged},
  };
}

inline nlohmann::json to_json(const FamilyConfig& f) {
  nlohmann::json j{
      {"family", to_string(f.kind)},
      {"floor", f.floor},
      {"grid_size", f.grid_size},
      {"margin", f.margin},
      {"parameter_range", {f.param_min(), f.param_max()}},
  };
  if (f.kind == FamilyKind::Pencil) j["p"] = complex_json(f.p);
  else j["full"] = f.full;
  return j;
}

inline nlohmann::json to_json(const FamilyReport& r) {
  nlohmann::json circles = nlohmann::json::array();
  for (const auto& c : r.circles) circles.push_back(to_json(c));
  nlohmann::json j{
      {"config", to_json(r.config)},
      {"passes", r.passes},
      {"any_failure", r.any_failure},
      {"any_inconclusive", r.any_inconclusive},
      {"circles", std::move(circles)},
      {"worst", nullptr},
  };
  if (const CircleReport* w = r.worst_circle()) j["worst"] = to_json(*w);
  return j;
}

inline nlohmann::json to_json(const Verdict& v) {
  nlohmann::json fams = nlohmann::json::array();
  for (const auto& f : v.families) fams.push_back(to_json(f));
  nlohmann::json cross = nullptr;
  if (v.cross_residual) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& c : v.cross) pts.push_back({{"T", c.T}, {"residual", c.residual}, {"circles", c.circles_used}});
    cross = {{"residual", *v.cross_residual}, {"tolerance", v.cross_tol}, {"points", std::move(pts)}};
  }
  return {
      {"schema", kReportSchema},
      {"verdict", to_string(v.overall)},
      {"hypotheses_satisfied", v.hypotheses_satisfied},
      {"families", std::move(fams)},
      {"cross_consistency", std::move(cross)},
      {"dbar",
       {{"residual", v.dbar.residual},
        {"error_estimate", v.dbar.error_estimate},
        {"worst_point", complex_json(v.dbar.worst_point)},
        {"tolerance", v.dbar_tol}}},
      {"notes", v.notes},
  };
}

inline nlohmann::json to_json(const FourierData& d, const ExtensionResult& r, bool inconclusive) {
  return {
      {"schema", kReportSchema},
      {"center", complex_json(d.circle().center)},
      {"radius", d.circle().radius},
      {"samples", d.sample_count()},
      {"negative_energy", r.negative_energy},
      {"high_energy", d.tail_energy_high()},
      {"total_energy", d.total_energy()},
      {"threshold", r.threshold_used},
      {"aliasing", r.aliasing_flag},
      {"passes", r.passes},
      {"inconclusive", inconclusive},
  };
}

}  // namespace morera
