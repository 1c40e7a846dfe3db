#pragma once

#include <string>

#include <json.hpp>

#include "polyharm/criticality.hpp"
#include "polyharm/ellipsoid.hpp"
#include "polyharm/stability.hpp"
#include "polyharm/warped_domain.hpp"

// JSON projections of the solver records. ordered_json keeps insertion
// order, so identical inputs serialize byte-identically (the wall-time
// field of a run report is the only nondeterministic value).

namespace polyharm {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const Bump& b) {
  return ordered_json{{"expr", b.to_string()}, {"m", b.m}, {"k", b.k}, {"amplitude", b.amplitude}};
}

inline ordered_json to_json(const CriticalAngleRecord& rec) {
  ordered_json j{{"r", rec.r},
                 {"variant", to_string(rec.variant)},
                 {"n", rec.n},
                 {"a", rec.a},
                 {"cos_2a", rec.cos_2a},
                 {"first_variation_residuals", rec.residuals},
                 {"sobolev_ok", rec.sobolev_ok}};
  if (rec.closed_form) {
    j["closed_form"] = ordered_json{{"reference", rec.closed_form->reference},
                                    {"deviation", rec.closed_form->deviation}};
  }
  j["theorem"] = rec.theorem;
  return j;
}

inline ordered_json to_json(const DimensionEntry& entry) {
  ordered_json roots = ordered_json::array();
  for (const auto& rec : entry.roots) roots.push_back(to_json(rec));
  return ordered_json{{"n", entry.n}, {"sobolev_ok", entry.sobolev_ok}, {"roots", roots}};
}

inline ordered_json to_json(const StabilityRecord& rec) {
  ordered_json j{{"case", rec.case_name},
                 {"r", rec.r},
                 {"variant", to_string(rec.variant)},
                 {"n", rec.n},
                 {"a", rec.a},
                 {"bump", rec.bump.to_string()},
                 {"second_variation", rec.second_variation},
                 {"first_variation", rec.first_variation},
                 {"calibration_constant", rec.calibration_constant},
                 {"quad_error", rec.quad_error},
                 {"verdict", rec.verdict}};
  if (rec.reference) j["reference"] = *rec.reference;
  j["theorem"] = rec.theorem;
  return j;
}

inline ordered_json to_json(const SobolevReport& rep) {
  ordered_json constraints = ordered_json::array();
  for (const auto& c : rep.constraints) {
    constraints.push_back(ordered_json{{"k", c.k},
                                       {"integrand", c.integrand},
                                       {"exponent", c.exponent},
                                       {"inequality", "rho^" + std::to_string(c.exponent) +
                                                          " integrable on (0,1)"},
                                       {"pass", c.pass}});
  }
  return ordered_json{{"r", rep.r},
                      {"n", rep.n},
                      {"constraints", constraints},
                      {"member", rep.member},
                      {"theorem", "Lem3.1"}};
}

inline ordered_json to_json(const WindowReport& w) {
  return ordered_json{{"order", w.order}, {"n", w.n},           {"b", w.b},
                      {"b2", w.b2},       {"bound", w.bound},   {"inside", w.inside},
                      {"theorem", w.theorem}};
}

inline ordered_json to_json(const EllipsoidPolynomial& p) {
  return ordered_json{{"order", p.order},
                      {"n", p.n},
                      {"b", p.b},
                      {"coefficients", p.coefficients},
                      {"admissible_roots", p.admissible_roots},
                      {"angles", p.angles},
                      {"theorem", p.order == 2 ? "Thm1.6" : "Thm1.8"}};
}

inline ordered_json to_json(const ConjectureAngle& c) {
  return ordered_json{{"r", c.r},
                      {"n", c.n},
                      {"arccos_argument", c.arccos_argument},
                      {"a", c.a},
                      {"theorem", "Rem3.3"}};
}

inline ordered_json to_json(const ShootResult& s) {
  return ordered_json{{"n", s.n},
                      {"sup_deviation", s.sup_deviation},
                      {"first_integral_drift", s.first_integral_drift},
                      {"max_residual", s.max_residual},
                      {"observed_points", s.observed_points},
                      {"theorem", "Thm7.1"}};
}

inline ordered_json to_json(const QValue& q) {
  return ordered_json{{"j", q.j},
                      {"rational_part", q.rational_part},
                      {"sqrt10_part", q.sqrt10_part},
                      {"nonzero", q.nonzero},
                      {"approx", q.approx}};
}

inline ordered_json to_json(const SeriesInductionSummary& s) {
  ordered_json j{{"max_j", s.max_j}, {"all_nonzero", s.all_nonzero}, {"theorem", "Thm7.2"}};
  if (s.first_zero) j["first_zero"] = *s.first_zero;
  return j;
}

struct RunReport {
  std::string command;
  ordered_json parameters = ordered_json::object();
  ordered_json tolerances = ordered_json::object();
  ordered_json records = ordered_json::array();
  double wall_time_ms = 0.0;

  ordered_json to_json() const {
    return ordered_json{{"command", command},
                        {"parameters", parameters},
                        {"tolerances", tolerances},
                        {"records", records},
                        {"wall_time_ms", wall_time_ms}};
  }
};

}  // namespace polyharm
