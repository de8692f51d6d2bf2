#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "compton/amplitudes.hpp"
#include "compton/conventions.hpp"
#include "compton/entanglement.hpp"
#include "compton/error.hpp"
#include "compton/kinematics.hpp"
#include "compton/sampling.hpp"

namespace compton {

struct PointReport {
  ScatterConfig config;
  Quantity quantity = Quantity::ExchangeOnly;
  ErrorCode error = ErrorCode::None;
  std::string error_message;

  std::optional<MomentumSet> momenta;
  AmplitudePathReport paths;
  ExchangeQuad totals;
  std::array<DirectTerms, 4> direct{};
  double klein_nishina = 0;
  ExchangeQuad quad;  ///< the quantity used for coefficients
  std::optional<CoefficientMagnitudes> coefficients;
  std::optional<ConcurrenceReport> concurrence;

  bool ok() const { return error == ErrorCode::None; }
};

/// Everything known about one configuration. Kinematic failures are captured
/// in `error`, never thrown.
inline PointReport point_report(const ScatterConfig& cfg, Quantity quantity = Quantity::ExchangeOnly,
                                const Conventions& conv = {})
{
  PointReport r;
  r.config = cfg;
  r.quantity = quantity;
  try {
    const auto ms = solve_kinematics(cfg);
    r.momenta = ms;
    r.paths = compare_paths(ms, conv);
    r.totals = total_quad(ms, conv);
    for (std::size_t i = 0; i < 4; ++i) r.direct[i] = direct_terms(ms, kOutStates[i], conv);
    r.klein_nishina = klein_nishina_massless(ms);
    r.quad = quantity == Quantity::ExchangeOnly ? closed_quad(ms, conv) : r.totals;
    try {
      r.coefficients = quad_to_coefficients(r.quad);
      r.concurrence = concurrence_bounds(*r.coefficients);
    } catch (const Error& e) {
      r.error = e.code();
      r.error_message = e.what();
    }
  } catch (const Error& e) {
    r.error = e.code();
    r.error_message = e.what();
  }
  return r;
}

/// Cross-path comparison over a random sample.
struct DiscrepancyReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::array<double, 4> max_abs_discrepancy{};
  double max_rel_discrepancy = 0;
  double max_residual_imaginary = 0;
  double max_set_asymmetry = 0;
  /// max |sum over the four physical out-states of the exchange term| / max |value|
  double max_physical_exchange_sum = 0;
  /// max |exchange summed over out-states by completeness| / scale
  double max_covariant_exchange_sum = 0;
  /// max relative deviation of sum_states total_per_state / 4 from Klein-Nishina
  double max_total_closure_error = 0;
  /// max relative deviation of completeness-summed direct terms / 4 from Klein-Nishina
  double max_direct_kn_error = 0;
};

inline DiscrepancyReport report_discrepancy(std::size_t samples, std::uint64_t seed, const Conventions& conv = {})
{
  DiscrepancyReport rep;
  rep.samples = samples;
  rep.seed = seed;
  for (const auto& cfg : random_configs(samples, seed)) {
    const auto ms = solve_kinematics(cfg);
    const auto paths = compare_paths(ms, conv);
    double scale = 0, phys_sum = 0, total_sum = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      rep.max_abs_discrepancy[i] = std::max(rep.max_abs_discrepancy[i], paths.abs_discrepancy[i]);
      scale = std::max(scale, std::abs(paths.closed_form.values[i]));
      phys_sum += paths.closed_form.values[i];
      total_sum += total_per_state(ms, kOutStates[i], conv);
    }
    if (scale > 0) rep.max_rel_discrepancy = std::max(rep.max_rel_discrepancy, paths.max_abs_discrepancy / scale);
    rep.max_residual_imaginary = std::max(rep.max_residual_imaginary, paths.residual_imaginary);
    rep.max_set_asymmetry = std::max({rep.max_set_asymmetry, paths.closed_form.set_asymmetry(),
                                      paths.trace_path.set_asymmetry()});
    if (scale > 0) rep.max_physical_exchange_sum = std::max(rep.max_physical_exchange_sum, std::abs(phys_sum) / scale);

    const auto summed = out_summed_terms(ms);
    const double kn = klein_nishina_massless(ms);
    const double direct_scale = std::abs(summed.s_term) + std::abs(summed.u_term);
    rep.max_covariant_exchange_sum = std::max(rep.max_covariant_exchange_sum, std::abs(summed.exchange) / direct_scale);
    rep.max_direct_kn_error =
        std::max(rep.max_direct_kn_error, std::abs(0.25 * (summed.s_term + summed.u_term) - kn) / kn);
    rep.max_total_closure_error = std::max(rep.max_total_closure_error, std::abs(0.25 * total_sum - kn) / kn);
  }
  return rep;
}

}  // namespace compton
