#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "compton/conventions.hpp"
#include "compton/dirac.hpp"
#include "compton/error.hpp"
#include "compton/kinematics.hpp"
#include "compton/polarization.hpp"
#include "compton/tensor.hpp"

// Every quantity here is in units of e^4 (e = 1) and summed, not averaged,
// over the incoming electron spin and photon polarization.

namespace compton {

/// Tolerance on the imaginary part left over after forming 2 Re(...).
inline constexpr double kImaginaryTol = 1e-8;

struct OutChannelState {
  ElectronSpin spin;
  PhotonPolarization pol;

  friend bool operator==(const OutChannelState&, const OutChannelState&) = default;
};

/// Canonical order (up R, up L, down R, down L). Set-1 is {0, 3}, set-2 is {1, 2}.
inline constexpr std::array<OutChannelState, 4> kOutStates{{
    {ElectronSpin::Up, PhotonPolarization::R},
    {ElectronSpin::Up, PhotonPolarization::L},
    {ElectronSpin::Down, PhotonPolarization::R},
    {ElectronSpin::Down, PhotonPolarization::L},
}};

inline std::string state_label(const OutChannelState& s)
{
  return std::string(to_string(s.spin)) + "_" + std::string(to_string(s.pol));
}

enum class Quantity { ExchangeOnly, TotalPerState };

constexpr std::string_view to_string(Quantity q) { return q == Quantity::ExchangeOnly ? "exchange" : "total"; }

struct ExchangeQuad {
  std::array<double, 4> values{};
  Quantity quantity = Quantity::ExchangeOnly;

  double set1() const { return values[0]; }
  double set2() const { return values[1]; }

  /// Worst relative violation of value(up R) = value(down L), value(up L) = value(down R).
  double set_asymmetry() const
  {
    const double scale = std::max({std::abs(values[0]), std::abs(values[1]), std::abs(values[2]),
                                   std::abs(values[3]), 1e-300});
    return std::max(std::abs(values[0] - values[3]), std::abs(values[1] - values[2])) / scale;
  }
};

struct DirectTerms {
  double s_term = 0;
  double u_term = 0;
};

namespace detail {

struct TraceInputs {
  SpinorMatrix proj, eps_slash, eps_conj_slash, P_slash, Pbar_slash, p_slash;
};

inline TraceInputs trace_inputs(const MomentumSet& ms, const OutChannelState& out, const Conventions& conv)
{
  const auto eps = circular_polarization(ms.kbar, out.pol, conv).eps;
  return {helicity_projector(ms.pbar, out.spin), slash(eps), slash(eps.conj()),
          slash(ms.P), slash(ms.Pbar), slash(ms.p)};
}

inline double checked_real(complex z, double scale, const char* what)
{
  if (std::abs(z.imag()) > kImaginaryTol * scale + 1e-300) {
    throw Error(ErrorCode::ImaginaryResidue, what);
  }
  return z.real();
}

}  // namespace detail

/// T1^{nu nubar} = 8[(p.k)((p-pbar)^nu Pbar^nubar + Pbar^nu (p-pbar)^nubar)
///                 + (p.kbar)((p-pbar)^nu P^nubar + P^nu (p-pbar)^nubar)]
inline Rank2Tensor exchange_T1(const MomentumSet& ms)
{
  const FourVector q = ms.p - ms.pbar;
  const double pk = mink_dot(ms.p, ms.k);
  const double pkb = mink_dot(ms.p, ms.kbar);
  return (sym_outer(q, ms.Pbar) * complex(8.0 * pk)) + (sym_outer(q, ms.P) * complex(8.0 * pkb));
}

/// T2^{nu nubar} = -/+ 8i eps^{nu alpha beta nubar} P_alpha Pbar_beta (p.pbar).
inline Rank2Tensor exchange_T2(const MomentumSet& ms, ElectronSpin spin, const Conventions& conv = {})
{
  const double sign = (spin == ElectronSpin::Up ? 1.0 : -1.0) * conv.t2_up_sign;
  const double ppb = mink_dot(ms.p, ms.pbar);
  return levi_civita_contract(ms.P, ms.Pbar, conv.levi_civita_sign) * complex(0.0, 8.0 * sign * ppb);
}

/// Closed-form channel-exchange term before the reality check.
inline complex exchange_closed_complex(const MomentumSet& ms, const OutChannelState& out,
                                       const Conventions& conv = {}, double* scale_out = nullptr)
{
  const auto eps = circular_polarization(ms.kbar, out.pol, conv).eps;
  const complex c1 = contract_conj(eps, exchange_T1(ms), eps);
  const complex c2 = contract_conj(eps, exchange_T2(ms, out.spin, conv), eps);
  const double denom = ms.P2 * ms.Pbar2;
  if (scale_out) *scale_out = (std::abs(c1) + std::abs(c2)) / std::abs(denom);
  return -(c1 + c2) / denom;
}

inline double exchange_closed(const MomentumSet& ms, const OutChannelState& out, const Conventions& conv = {})
{
  double scale = 0;
  const complex z = exchange_closed_complex(ms, out, conv, &scale);
  return detail::checked_real(z, scale, "closed-form exchange term is not real");
}

/// Direct gamma-trace evaluation of Pi1* Pi2 + Pi2* Pi1 with the explicit
/// operator orderings of the two cross terms. Incoming photon polarizations
/// are summed with -g, incoming electron spins with p-slash.
inline complex exchange_trace_complex(const MomentumSet& ms, const OutChannelState& out,
                                      const Conventions& conv = {}, double* scale_out = nullptr)
{
  const auto in = detail::trace_inputs(ms, out, conv);
  const SpinorMatrix left_a = in.proj * in.eps_conj_slash * in.P_slash;
  const SpinorMatrix left_b = in.proj;
  complex a{}, b{};
  for (std::size_t mu = 0; mu < 4; ++mu) {
    const auto& g = gamma_matrix(mu);
    const complex w = -kMetric[mu];
    // proj eps* P g^mu p eps Pbar g^mu
    a += w * mat_trace(left_a * g * in.p_slash * in.eps_slash * in.Pbar_slash * g);
    // proj g^mu Pbar eps* p g^mu P eps
    b += w * mat_trace(left_b * g * in.Pbar_slash * in.eps_conj_slash * in.p_slash * g * in.P_slash * in.eps_slash);
  }
  const double denom = ms.P2 * ms.Pbar2;
  if (scale_out) *scale_out = (std::abs(a) + std::abs(b)) / std::abs(denom);
  return (a + b) / denom;
}

inline double exchange_trace(const MomentumSet& ms, const OutChannelState& out, const Conventions& conv = {})
{
  double scale = 0;
  const complex z = exchange_trace_complex(ms, out, conv, &scale);
  return detail::checked_real(z, scale, "trace-path exchange term is not real");
}

/// |Pi1|^2 and |Pi2|^2 for one out-state (radiation-gauge outgoing photon).
/// Individually gauge dependent; only their sum with the exchange term is physical.
inline DirectTerms direct_terms(const MomentumSet& ms, const OutChannelState& out, const Conventions& conv = {})
{
  const auto in = detail::trace_inputs(ms, out, conv);
  complex s{}, u{};
  for (std::size_t mu = 0; mu < 4; ++mu) {
    const auto& g = gamma_matrix(mu);
    const complex w = -kMetric[mu];
    s += w * mat_trace(in.proj * in.eps_conj_slash * in.P_slash * g * in.p_slash * g * in.P_slash * in.eps_slash);
    u += w * mat_trace(in.proj * g * in.Pbar_slash * in.eps_conj_slash * in.p_slash * in.eps_slash * in.Pbar_slash * g);
  }
  const double s_term = detail::checked_real(s, std::abs(s), "s-channel term is not real") / (ms.P2 * ms.P2);
  const double u_term = detail::checked_real(u, std::abs(u), "u-channel term is not real") / (ms.Pbar2 * ms.Pbar2);
  return {s_term, u_term};
}

/// Out-state sums taken by completeness: the two helicity projectors add to
/// pbar-slash and the outgoing photon is summed with -g.
struct OutSummedTerms {
  double s_term = 0;
  double u_term = 0;
  double exchange = 0;
};

inline OutSummedTerms out_summed_terms(const MomentumSet& ms)
{
  const SpinorMatrix pbar_slash =
      helicity_projector(ms.pbar, ElectronSpin::Up) + helicity_projector(ms.pbar, ElectronSpin::Down);
  const SpinorMatrix P = slash(ms.P), Pb = slash(ms.Pbar), p = slash(ms.p);
  complex s{}, u{}, x{};
  for (std::size_t nu = 0; nu < 4; ++nu) {
    const auto& gn = gamma_matrix(nu);
    const double wn = -kMetric[nu];
    const SpinorMatrix head_s = pbar_slash * gn * P;
    for (std::size_t mu = 0; mu < 4; ++mu) {
      const auto& gm = gamma_matrix(mu);
      const complex w = wn * -kMetric[mu];
      s += w * mat_trace(head_s * gm * p * gm * P * gn);
      u += w * mat_trace(pbar_slash * gm * Pb * gn * p * gn * Pb * gm);
      x += w * mat_trace(head_s * gm * p * gn * Pb * gm);
      x += w * mat_trace(pbar_slash * gm * Pb * gn * p * gm * P * gn);
    }
  }
  return {s.real() / (ms.P2 * ms.P2), u.real() / (ms.Pbar2 * ms.Pbar2), x.real() / (ms.P2 * ms.Pbar2)};
}

/// Spin/polarization-summed, incoming-averaged massless Compton |M|^2:
/// 2 ((p.k)/(p.kbar) + (p.kbar)/(p.k)).
inline double klein_nishina_massless(const MomentumSet& ms)
{
  const double pk = mink_dot(ms.p, ms.k);
  const double pkb = mink_dot(ms.p, ms.kbar);
  if (std::abs(pkb) < kPropagatorTol * ms.energy_scale || std::abs(pk) < kPropagatorTol * ms.energy_scale) {
    throw Error(ErrorCode::CollinearSingularity, "Klein-Nishina pole");
  }
  return 2.0 * (pk / pkb + pkb / pk);
}

/// |Pi1 + Pi2|^2 for one out-state.
inline double total_per_state(const MomentumSet& ms, const OutChannelState& out, const Conventions& conv = {})
{
  const auto d = direct_terms(ms, out, conv);
  return d.s_term + d.u_term + exchange_closed(ms, out, conv);
}

inline ExchangeQuad closed_quad(const MomentumSet& ms, const Conventions& conv = {})
{
  ExchangeQuad q;
  for (std::size_t i = 0; i < 4; ++i) q.values[i] = exchange_closed(ms, kOutStates[i], conv);
  return q;
}

inline ExchangeQuad trace_quad(const MomentumSet& ms, const Conventions& conv = {})
{
  ExchangeQuad q;
  for (std::size_t i = 0; i < 4; ++i) q.values[i] = exchange_trace(ms, kOutStates[i], conv);
  return q;
}

inline ExchangeQuad total_quad(const MomentumSet& ms, const Conventions& conv = {})
{
  ExchangeQuad q;
  q.quantity = Quantity::TotalPerState;
  for (std::size_t i = 0; i < 4; ++i) q.values[i] = total_per_state(ms, kOutStates[i], conv);
  return q;
}

inline ExchangeQuad evaluate_quad(const MomentumSet& ms, Quantity quantity, const Conventions& conv = {})
{
  return quantity == Quantity::ExchangeOnly ? closed_quad(ms, conv) : total_quad(ms, conv);
}

/// Cross-validation record between the closed form and the trace path.
struct AmplitudePathReport {
  ExchangeQuad closed_form;
  ExchangeQuad trace_path;
  std::array<double, 4> abs_discrepancy{};
  double max_abs_discrepancy = 0;
  double residual_imaginary = 0;  ///< max |Im| / max |value| over both paths
};

inline AmplitudePathReport compare_paths(const MomentumSet& ms, const Conventions& conv = {})
{
  AmplitudePathReport r;
  double max_imag = 0, max_val = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const complex c = exchange_closed_complex(ms, kOutStates[i], conv);
    const complex t = exchange_trace_complex(ms, kOutStates[i], conv);
    r.closed_form.values[i] = c.real();
    r.trace_path.values[i] = t.real();
    r.abs_discrepancy[i] = std::abs(c.real() - t.real());
    r.max_abs_discrepancy = std::max(r.max_abs_discrepancy, r.abs_discrepancy[i]);
    max_imag = std::max({max_imag, std::abs(c.imag()), std::abs(t.imag())});
    max_val = std::max({max_val, std::abs(c.real()), std::abs(t.real())});
  }
  r.residual_imaginary = max_val > 0 ? max_imag / max_val : max_imag;
  return r;
}

}  // namespace compton
