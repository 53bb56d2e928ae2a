#pragma once

#include <json.hpp>

#include <complex>

#include "henon/checks.hpp"
#include "henon/horseshoe.hpp"
#include "henon/map.hpp"
#include "henon/orbits.hpp"
#include "henon/spectrum.hpp"
#include "henon/trapping.hpp"

namespace henon {

inline void to_json(nlohmann::json& j, const State& s) {
  j = nlohmann::json{{"x", s.x}, {"y", s.y}};
}

inline void to_json(nlohmann::json& j, const TrappingDomain& d) {
  j = nlohmann::json{{"alpha_minus", d.alpha_minus},
                     {"alpha_plus", d.alpha_plus},
                     {"gamma", d.gamma},
                     {"certified_by", to_string(d.certified_by)}};
}

inline void to_json(nlohmann::json& j, const CheckReport& r) {
  j = nlohmann::json{{"check", r.check},
                     {"pass", r.pass},
                     {"samples", r.samples},
                     {"worst_margin", r.worst_margin}};
  if (r.counterexample) j["counterexample"] = *r.counterexample;
}

inline void to_json(nlohmann::json& j, const OracleReport& r) {
  j = nlohmann::json{{"pass", r.pass},
                     {"seeds", r.seeds},
                     {"iterations", r.iterations},
                     {"escaped", r.escaped},
                     {"worst_x_margin", r.worst_x_margin},
                     {"worst_y_margin", r.worst_y_margin}};
  if (r.counterexample) j["counterexample"] = *r.counterexample;
}

inline void to_json(nlohmann::json& j, const Interval& iv) {
  j = nlohmann::json{{"lo", iv.lo}, {"hi", iv.hi}};
}

inline void to_json(nlohmann::json& j, const HorseshoeReport& r) {
  j = nlohmann::json{{"mu", r.mu},
                     {"gamma", r.gamma},
                     {"condition_holds", r.condition_holds},
                     {"domain", r.domain},
                     {"escape_inner", r.escape_inner},
                     {"escape_outer_threshold", r.escape_outer_threshold},
                     {"strip_left", r.strip_left},
                     {"strip_right", r.strip_right},
                     {"strip_gap", r.strip_gap},
                     {"covering_verified", r.covering_verified},
                     {"lines_checked", r.lines_checked},
                     {"points_per_line", r.points_per_line},
                     {"min_endpoint_clearance", r.min_endpoint_clearance},
                     {"min_apex_clearance", r.min_apex_clearance}};
  if (!r.failure.empty()) j["failure"] = r.failure;
}

inline nlohmann::json complex_to_json(const std::complex<double>& z) {
  return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
}

inline void to_json(nlohmann::json& j, const CharPoly& cp) {
  j = nlohmann::json{{"coeffs_low_first", cp.q.coeffs()},
                     {"n", cp.n},
                     {"built_from", cp.built_from == CharPolyBuild::ClosedForm
                                        ? "closed-form"
                                        : "determinant"}};
}

inline void to_json(nlohmann::json& j, const PeriodicOrbit& o) {
  nlohmann::json mult = nlohmann::json::array();
  for (const auto& lam : o.multipliers) mult.push_back(complex_to_json(lam));
  j = nlohmann::json{{"period", o.period},
                     {"b", o.b_value},
                     {"points", o.points},
                     {"multipliers", mult},
                     {"m_x", o.m_x},
                     {"residual", o.residual}};
}

inline void to_json(nlohmann::json& j, const ContinuationResult& r) {
  j = nlohmann::json{{"status", to_string(r.status)},
                     {"steps_accepted", r.history.empty() ? 0 : r.history.size() - 1},
                     {"history", r.history}};
  if (!r.message.empty()) j["message"] = r.message;
}

}  // namespace henon
