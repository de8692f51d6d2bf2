#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include "compton/amplitudes.hpp"
#include "compton/conventions.hpp"
#include "compton/entanglement.hpp"
#include "compton/error.hpp"
#include "compton/kinematics.hpp"

namespace compton {

enum class Figure { Fig3, Fig4, Fig5, Custom };
enum class Normalization { GridMax, None };

constexpr std::string_view to_string(Figure f)
{
  switch (f) {
    case Figure::Fig3: return "3";
    case Figure::Fig4: return "4";
    case Figure::Fig5: return "5";
    case Figure::Custom: return "custom";
  }
  return "?";
}

constexpr std::string_view to_string(Normalization n) { return n == Normalization::GridMax ? "gridmax" : "none"; }

/// Scan request. Axis meaning by figure:
///   Fig3   axis0 = theta_ph in [0, pi], axis1 = phi_ph in [0, 2pi]; theta_e = pi/2
///   Fig4   axis0 = theta_e in [0, pi], axis1 = theta_ph in [0, pi]; phi_ph = pi
///   Custom as Fig4 but at the requested phi_ph
///   Fig5   axis0 = in-plane angle theta_s in [0, 2pi] (single axis) at the requested theta_e
struct ScanSpec {
  Figure figure = Figure::Fig4;
  double energy_electron = 1.0;
  double energy_photon = 1.0;
  double theta_e = std::numbers::pi / 2;  ///< Fig5 (and Fig3, where it is pinned to pi/2)
  double phi_ph = std::numbers::pi;       ///< Custom
  double fig5_far_phi = 0.0;              ///< phi_ph used for theta_s > pi in Fig5
  std::size_t rows = 181;
  std::size_t cols = 181;
  Quantity quantity = Quantity::ExchangeOnly;
  Normalization normalization = Normalization::GridMax;
  unsigned threads = 1;
  Conventions conventions{};
  JumpParams jump_params{};

  static ScanSpec fig3(double energy = 1.0)
  {
    ScanSpec s;
    s.figure = Figure::Fig3;
    s.energy_electron = s.energy_photon = energy;
    s.rows = 181;
    s.cols = 361;
    return s;
  }
  static ScanSpec fig4(double energy = 1.0)
  {
    ScanSpec s;
    s.figure = Figure::Fig4;
    s.energy_electron = s.energy_photon = energy;
    return s;
  }
  static ScanSpec fig5(double theta_e, double energy = 1.0)
  {
    ScanSpec s;
    s.figure = Figure::Fig5;
    s.energy_electron = s.energy_photon = energy;
    s.theta_e = theta_e;
    s.rows = 721;
    s.cols = 1;
    return s;
  }

  void validate() const
  {
    auto bad = [](const char* what) { throw Error(ErrorCode::InvalidSpec, what); };
    if (rows < 2) bad("grid resolution must be at least 2");
    if (figure != Figure::Fig5 && cols < 2) bad("grid resolution must be at least 2");
    if (threads == 0) bad("threads must be at least 1");
    ScatterConfig probe{energy_electron, energy_photon, theta_e, 0.0, phi_ph};
    probe.validate();
    if (!(fig5_far_phi >= 0 && fig5_far_phi <= 2 * std::numbers::pi)) bad("fig5 far-side phi outside [0, 2pi]");
  }

  std::size_t axis1_size() const { return figure == Figure::Fig5 ? 1 : cols; }
};

inline std::vector<double> linspace(double lo, double hi, std::size_t n)
{
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

struct ScanPoint {
  double axis0 = 0, axis1 = 0;
  ScatterConfig config;
  std::array<double, 4> raw{};    ///< as evaluated, before clamp/normalization
  std::array<double, 4> value{};  ///< clamped at zero, then normalized
  bool clamped = false;
  ErrorCode error = ErrorCode::None;

  bool ok() const { return error == ErrorCode::None; }
};

struct JumpContour {
  JumpPoint jump;
  std::optional<Contour> contour;
  ErrorCode error = ErrorCode::None;
};

struct ScanResult {
  ScanSpec spec;
  std::vector<double> axis0, axis1;
  std::vector<ScanPoint> points;  ///< row-major over (axis0, axis1)
  double normalization_factor = 1.0;
  std::vector<JumpContour> jumps;
  bool jumps_evaluated = false;
  ErrorCode jump_error = ErrorCode::None;

  std::size_t hole_count() const
  {
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const ScanPoint& p) { return !p.ok(); }));
  }
  bool all_degenerate() const { return hole_count() == points.size(); }

  std::map<ErrorCode, std::size_t> holes_by_code() const
  {
    std::map<ErrorCode, std::size_t> m;
    for (const auto& p : points)
      if (!p.ok()) ++m[p.error];
    return m;
  }

  const ScanPoint& at(std::size_t i, std::size_t j) const { return points[i * axis1.size() + j]; }

  /// Set-1 / set-2 view (up R and up L columns) of the normalized values; holes are NaN.
  SetGrid set_grid() const
  {
    SetGrid g{axis0, axis1, {}, {}};
    g.set1.reserve(points.size());
    g.set2.reserve(points.size());
    for (const auto& p : points) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      g.set1.push_back(p.ok() ? p.value[0] : nan);
      g.set2.push_back(p.ok() ? p.value[1] : nan);
    }
    return g;
  }
};

/// Maps an in-plane angle to the photon direction: theta_s in [0, pi] is
/// (theta_s, pi); beyond pi it is (2pi - theta_s, far_phi).
inline std::pair<double, double> fig5_direction(double theta_s, double far_phi = 0.0)
{
  if (theta_s <= std::numbers::pi) return {theta_s, std::numbers::pi};
  return {std::max(0.0, 2 * std::numbers::pi - theta_s), far_phi};
}

inline ScatterConfig scan_config(const ScanSpec& spec, double a0, double a1)
{
  ScatterConfig c{spec.energy_electron, spec.energy_photon, spec.theta_e, 0.0, spec.phi_ph};
  switch (spec.figure) {
    case Figure::Fig3:
      c.theta_e = std::numbers::pi / 2;
      c.theta_ph = a0;
      c.phi_ph = a1;
      break;
    case Figure::Fig4:
      c.phi_ph = std::numbers::pi;
      [[fallthrough]];
    case Figure::Custom:
      c.theta_e = a0;
      c.theta_ph = a1;
      break;
    case Figure::Fig5: {
      const auto [th, ph] = fig5_direction(a0, spec.fig5_far_phi);
      c.theta_ph = th;
      c.phi_ph = ph;
      break;
    }
  }
  return c;
}

inline void evaluate_scan_point(ScanPoint& pt, Quantity quantity, const Conventions& conv)
{
  try {
    const auto ms = solve_kinematics(pt.config);
    pt.raw = evaluate_quad(ms, quantity, conv).values;
  } catch (const Error& e) {
    pt.error = e.code();
  }
}

namespace detail {

// Static contiguous partition; each worker owns a disjoint index range, so the
// merged result does not depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn)
{
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

inline ScanResult run_scan(const ScanSpec& spec)
{
  spec.validate();
  ScanResult res;
  res.spec = spec;
  constexpr double pi = std::numbers::pi;
  switch (spec.figure) {
    case Figure::Fig3:
      res.axis0 = linspace(0.0, pi, spec.rows);
      res.axis1 = linspace(0.0, 2 * pi, spec.cols);
      break;
    case Figure::Fig4:
    case Figure::Custom:
      res.axis0 = linspace(0.0, pi, spec.rows);
      res.axis1 = linspace(0.0, pi, spec.cols);
      break;
    case Figure::Fig5:
      res.axis0 = linspace(0.0, 2 * pi, spec.rows);
      res.axis1 = {0.0};
      break;
  }

  const std::size_t n1 = res.axis1.size();
  res.points.resize(res.axis0.size() * n1);
  for (std::size_t i = 0; i < res.axis0.size(); ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      auto& pt = res.points[i * n1 + j];
      pt.axis0 = res.axis0[i];
      pt.axis1 = res.axis1[j];
      pt.config = scan_config(spec, pt.axis0, pt.axis1);
    }
  }

  detail::parallel_for(res.points.size(), spec.threads,
                       [&](std::size_t i) { evaluate_scan_point(res.points[i], spec.quantity, spec.conventions); });

  double grid_max = 0.0;
  for (auto& pt : res.points) {
    if (!pt.ok()) {
      pt.value.fill(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    for (std::size_t s = 0; s < 4; ++s) {
      if (pt.raw[s] < 0) pt.clamped = true;
      pt.value[s] = std::max(pt.raw[s], 0.0);
      grid_max = std::max(grid_max, pt.value[s]);
    }
  }
  if (spec.normalization == Normalization::GridMax && grid_max > 0) {
    res.normalization_factor = grid_max;
    for (auto& pt : res.points)
      if (pt.ok())
        for (auto& v : pt.value) v /= grid_max;
  }

  if (spec.figure == Figure::Fig4 || spec.figure == Figure::Custom) {
    const auto grid = res.set_grid();
    try {
      const auto jumps = find_jump_points(grid, spec.jump_params);
      res.jumps_evaluated = true;
      const auto loops = jumps.empty() ? std::vector<Contour>{} : zero_level_loops(grid);
      for (const auto& jp : jumps) {
        JumpContour jc{jp, std::nullopt, ErrorCode::None};
        try {
          jc.contour = zero_concurrence_contour(loops, jp);
        } catch (const Error& e) {
          jc.error = e.code();
        }
        res.jumps.push_back(std::move(jc));
      }
    } catch (const Error& e) {
      res.jump_error = e.code();
    }
  }
  return res;
}

inline ScanResult scan_fig3(double energy = 1.0, std::size_t rows = 181, std::size_t cols = 361, unsigned threads = 1)
{
  auto s = ScanSpec::fig3(energy);
  s.rows = rows;
  s.cols = cols;
  s.threads = threads;
  return run_scan(s);
}

inline ScanResult scan_fig4(double energy = 1.0, std::size_t rows = 181, std::size_t cols = 181, unsigned threads = 1)
{
  auto s = ScanSpec::fig4(energy);
  s.rows = rows;
  s.cols = cols;
  s.threads = threads;
  return run_scan(s);
}

inline ScanResult scan_fig5(double theta_e, double energy = 1.0, std::size_t points = 721, unsigned threads = 1)
{
  auto s = ScanSpec::fig5(theta_e, energy);
  s.rows = points;
  s.threads = threads;
  return run_scan(s);
}

}  // namespace compton
