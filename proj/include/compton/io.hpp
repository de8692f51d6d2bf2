#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include <json.hpp>

#include "compton/amplitudes.hpp"
#include "compton/calibration.hpp"
#include "compton/report.hpp"
#include "compton/scan.hpp"

// Flat-file formats: one CSV per scan plus a JSON metadata document; JSON for
// point, calibration and discrepancy reports.

namespace compton::io {

using json = nlohmann::ordered_json;

/// Round-trippable, locale-independent text for a double; "nan" for holes.
inline std::string format_double(double x)
{
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::uint64_t fnv1a64(std::string_view data)
{
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v)
{
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline constexpr std::string_view kCsvHeader =
    "axis0,axis1,theta_e,theta_ph,phi_ph,up_R,up_L,down_R,down_L,clamped,error\n";

inline std::string scan_csv(const ScanResult& r)
{
  std::string out(kCsvHeader);
  out.reserve(r.points.size() * 160);
  for (const auto& p : r.points) {
    out += format_double(p.axis0) + ',' + format_double(p.axis1) + ',' + format_double(p.config.theta_e) + ',' +
           format_double(p.config.theta_ph) + ',' + format_double(p.config.phi_ph);
    for (double v : p.value) out += ',' + format_double(v);
    out += p.clamped ? ",1," : ",0,";
    out += to_string(p.error);
    out += '\n';
  }
  return out;
}

inline json to_json(const Conventions& c)
{
  return json{{"levi_civita_0123", c.levi_civita_sign},
              {"t2_up_sign", c.t2_up_sign},
              {"rcp_x_sign", c.rcp_x_sign},
              {"description", c.describe()}};
}

inline json to_json(const FourVector& v) { return json::array({v.t, v.x, v.y, v.z}); }

inline json to_json(const ScatterConfig& c)
{
  return json{{"energy_electron", c.energy_electron},
              {"energy_photon", c.energy_photon},
              {"theta_e", c.theta_e},
              {"theta_ph", c.theta_ph},
              {"phi_ph", c.phi_ph}};
}

inline json quad_json(const std::array<double, 4>& q)
{
  json j;
  for (std::size_t i = 0; i < 4; ++i) j[state_label(kOutStates[i])] = q[i];
  return j;
}

inline json to_json(const ScanSpec& s)
{
  return json{{"figure", std::string(to_string(s.figure))},
              {"energy_electron", s.energy_electron},
              {"energy_photon", s.energy_photon},
              {"theta_e", s.theta_e},
              {"phi_ph", s.phi_ph},
              {"fig5_far_phi", s.fig5_far_phi},
              {"rows", s.rows},
              {"cols", s.axis1_size()},
              {"quantity", std::string(to_string(s.quantity))},
              {"normalization", std::string(to_string(s.normalization))},
              {"conventions", to_json(s.conventions)},
              {"jump_ratio_threshold", s.jump_params.ratio_threshold},
              {"jump_bell_epsilon", s.jump_params.bell_epsilon},
              {"jump_tie_tolerance", s.jump_params.tie_tolerance}};
}

/// Row records for the structured data format.
inline json scan_records(const ScanResult& r)
{
  json rows = json::array();
  for (const auto& p : r.points) {
    json row{{"axis0", p.axis0}, {"axis1", p.axis1}, {"config", to_json(p.config)}};
    if (p.ok()) {
      row["values"] = quad_json(p.value);
      row["raw"] = quad_json(p.raw);
      row["clamped"] = p.clamped;
    }
    row["error"] = std::string(to_string(p.error));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// `data_checksum` is the FNV-1a 64 of the data file bytes.
inline json scan_metadata(const ScanResult& r, const std::string& data_file, std::uint64_t data_checksum)
{
  json holes = json::object();
  for (const auto& [code, n] : r.holes_by_code()) holes[std::string(to_string(code))] = n;

  json jumps = json::array();
  for (const auto& jc : r.jumps) {
    json j{{"theta_e", jc.jump.theta_e},
           {"theta_ph", jc.jump.theta_ph},
           {"kind", std::string(to_string(jc.jump.kind))},
           {"set1", jc.jump.set1_value},
           {"set2", jc.jump.set2_value}};
    if (jc.contour) {
      json pts = json::array();
      for (const auto& [a, b] : jc.contour->points) pts.push_back(json::array({a, b}));
      j["contour"] = {{"closed", true}, {"points", std::move(pts)}};
    } else {
      j["contour"] = {{"closed", false}, {"error", std::string(to_string(jc.error))}};
    }
    jumps.push_back(std::move(j));
  }

  json meta{{"spec", to_json(r.spec)},
            {"points", r.points.size()},
            {"holes", r.hole_count()},
            {"holes_by_code", std::move(holes)},
            {"normalization_factor", r.normalization_factor},
            {"data_file", data_file},
            {"data_checksum_fnv1a64", hex64(data_checksum)}};
  if (r.jumps_evaluated) {
    meta["jump_points"] = std::move(jumps);
  } else if (r.jump_error != ErrorCode::None) {
    meta["jump_points_error"] = std::string(to_string(r.jump_error));
  }
  return meta;
}

inline json to_json(const PointReport& r)
{
  json j{{"config", to_json(r.config)}, {"quantity", std::string(to_string(r.quantity))}};
  j["error"] = std::string(to_string(r.error));
  if (!r.error_message.empty()) j["error_message"] = r.error_message;
  if (!r.momenta) return j;

  const auto& m = *r.momenta;
  j["momenta"] = {{"p", to_json(m.p)},       {"k", to_json(m.k)},   {"pbar", to_json(m.pbar)},
                  {"kbar", to_json(m.kbar)}, {"P", to_json(m.P)},   {"Pbar", to_json(m.Pbar)}};
  j["invariants"] = {{"P2", m.P2}, {"Pbar2", m.Pbar2}, {"p_dot_k", m.p_dot_k}, {"p_dot_kbar", m.p_dot_kbar},
                     {"p_dot_pbar", m.p_dot_pbar}};
  j["exchange_closed"] = quad_json(r.paths.closed_form.values);
  j["exchange_trace"] = quad_json(r.paths.trace_path.values);
  j["path_max_abs_discrepancy"] = r.paths.max_abs_discrepancy;
  j["residual_imaginary"] = r.paths.residual_imaginary;
  json direct;
  for (std::size_t i = 0; i < 4; ++i) {
    direct[state_label(kOutStates[i])] = {{"s", r.direct[i].s_term}, {"u", r.direct[i].u_term}};
  }
  j["direct_terms"] = std::move(direct);
  j["total_per_state"] = quad_json(r.totals.values);
  j["klein_nishina"] = r.klein_nishina;
  j["quad"] = quad_json(r.quad.values);
  if (r.coefficients) {
    j["coefficients"] = {{"c11", r.coefficients->c11()},
                         {"c12", r.coefficients->c12()},
                         {"c21", r.coefficients->c21()},
                         {"c22", r.coefficients->c22()},
                         {"clamped", r.coefficients->clamped}};
  }
  if (r.concurrence) {
    j["concurrence"] = {{"c_max", r.concurrence->c_max},
                        {"c_min", r.concurrence->c_min},
                        {"is_bell", r.concurrence->is_bell}};
  }
  return j;
}

inline json to_json(const CalibrationReport& r)
{
  json cases = json::array();
  for (const auto& c : r.cases) {
    cases.push_back({{"conventions", to_json(c.conventions)},
                     {"quad", quad_json(c.quad)},
                     {"residual", c.residual},
                     {"pass", c.pass}});
  }
  json j{{"anchor", to_json(anchor_config())},
         {"expected_quad", quad_json(kAnchorQuad)},
         {"tolerance", kCalibrationTol},
         {"passed", r.passed},
         {"passing_assignments", r.passing_count()}};
  if (r.passed) {
    j["chosen"] = to_json(r.chosen);
    j["chosen_residual"] = r.chosen_residual;
  }
  j["klein_nishina"] = {{"expected", r.kn_expected},
                        {"direct_out_summed", r.kn_direct},
                        {"total_closure", r.kn_closure},
                        {"pass", r.kn_pass}};
  j["cases"] = std::move(cases);
  return j;
}

inline json to_json(const DiscrepancyReport& r)
{
  return json{{"samples", r.samples},
              {"seed", r.seed},
              {"max_abs_discrepancy", quad_json(r.max_abs_discrepancy)},
              {"max_rel_discrepancy", r.max_rel_discrepancy},
              {"max_residual_imaginary", r.max_residual_imaginary},
              {"max_set_asymmetry", r.max_set_asymmetry},
              {"max_physical_exchange_sum_rel", r.max_physical_exchange_sum},
              {"max_covariant_exchange_sum_rel", r.max_covariant_exchange_sum},
              {"max_direct_kn_error_rel", r.max_direct_kn_error},
              {"max_total_closure_error_rel", r.max_total_closure_error}};
}

}  // namespace compton::io
