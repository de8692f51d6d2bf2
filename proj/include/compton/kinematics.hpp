#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "compton/error.hpp"
#include "compton/tensor.hpp"

namespace compton {

/// Propagator-pole guard, relative to E_e * E_ph.
inline constexpr double kPropagatorTol = 1e-9;

/// Lab-frame scattering geometry. The outgoing electron defines +z; the
/// incoming electron travels in the ZX-plane at theta_e from +z; the incoming
/// photon travels along (theta_ph, phi_ph). Energies in MeV, angles in radians.
struct ScatterConfig {
  double energy_electron = 1.0;
  double energy_photon = 1.0;
  double theta_e = std::numbers::pi / 2;
  double theta_ph = std::numbers::pi / 2;
  double phi_ph = std::numbers::pi;

  /// Throws InvalidSpec. phi_ph = 2*pi is accepted so closed azimuthal grids can include their endpoint.
  void validate() const
  {
    constexpr double pi = std::numbers::pi;
    constexpr double slack = 1e-12;
    auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidSpec, what); };
    if (!(std::isfinite(energy_electron) && energy_electron > 0)) bad("electron energy must be > 0");
    if (!(std::isfinite(energy_photon) && energy_photon > 0)) bad("photon energy must be > 0");
    if (!(theta_e >= -slack && theta_e <= pi + slack)) bad("theta_e outside [0, pi]");
    if (!(theta_ph >= -slack && theta_ph <= pi + slack)) bad("theta_ph outside [0, pi]");
    if (!(phi_ph >= -slack && phi_ph <= 2 * pi + slack)) bad("phi_ph outside [0, 2pi]");
  }

  ScatterConfig scaled(double lambda) const
  {
    ScatterConfig c = *this;
    c.energy_electron *= lambda;
    c.energy_photon *= lambda;
    return c;
  }
};

/// Fully solved external momenta plus the two propagator momenta and the
/// invariants the amplitudes need.
struct MomentumSet {
  FourVector p, k, pbar, kbar;
  FourVector P;     ///< p + k (s-channel)
  FourVector Pbar;  ///< p - kbar = pbar - k (u-channel)
  double P2 = 0, Pbar2 = 0;
  double p_dot_k = 0, p_dot_kbar = 0, p_dot_pbar = 0;
  double energy_scale = 1.0;  ///< E_e * E_ph, used for the pole guard
};

inline std::pair<FourVector, FourVector> incoming_momenta(const ScatterConfig& cfg)
{
  const double Ee = cfg.energy_electron, Eph = cfg.energy_photon;
  const FourVector p{Ee, Ee * std::sin(cfg.theta_e), 0.0, Ee * std::cos(cfg.theta_e)};
  const double st = std::sin(cfg.theta_ph);
  const FourVector k{Eph, Eph * st * std::cos(cfg.phi_ph), Eph * st * std::sin(cfg.phi_ph),
                     Eph * std::cos(cfg.theta_ph)};
  return {p, k};
}

struct Propagators {
  FourVector P, Pbar;
  double P2 = 0, Pbar2 = 0;
};

inline Propagators propagators(const MomentumSet& ms)
{
  Propagators pr{ms.p + ms.k, ms.p - ms.kbar, 0.0, 0.0};
  pr.P2 = mink_dot(pr.P, pr.P);
  pr.Pbar2 = mink_dot(pr.Pbar, pr.Pbar);
  const double guard = kPropagatorTol * ms.energy_scale;
  if (std::abs(pr.P2) < guard) throw Error(ErrorCode::CollinearSingularity, "s-channel propagator pole");
  if (std::abs(pr.Pbar2) < guard) throw Error(ErrorCode::CollinearSingularity, "u-channel propagator pole");
  return pr;
}

/// Closes energy-momentum conservation with the outgoing electron pinned to +z:
/// E_out = P^2 / (2 (P^0 - P_z)), pbar = E_out (1, 0, 0, 1), kbar = P - pbar.
/// kbar is built on the light cone from kbar^0 - kbar_z = P^0 - P_z and its
/// transverse part, and P^2 = 2 p.k uses 1 - cos = |n - n'|^2 / 2, so nearly
/// forward configurations keep full relative precision.
inline MomentumSet solve_kinematics(const ScatterConfig& cfg)
{
  cfg.validate();
  const auto [p, k] = incoming_momenta(cfg);
  const FourVector P = p + k;
  const double Ee = cfg.energy_electron, Eph = cfg.energy_photon;
  const double scale = Ee * Eph;

  auto one_minus_cos = [](double theta) {
    const double s = std::sin(0.5 * theta);
    return 2.0 * s * s;
  };
  const double light_cone = Ee * one_minus_cos(cfg.theta_e) + Eph * one_minus_cos(cfg.theta_ph);
  if (light_cone <= kOnshellTol * P.t) {
    throw Error(ErrorCode::DegenerateForward, "both incoming momenta collinear with +z");
  }
  const Vec3 ne{p.x / Ee, p.y / Ee, p.z / Ee}, nk{k.x / Eph, k.y / Eph, k.z / Eph};
  const double dn2 = (ne[0] - nk[0]) * (ne[0] - nk[0]) + (ne[1] - nk[1]) * (ne[1] - nk[1]) +
                     (ne[2] - nk[2]) * (ne[2] - nk[2]);
  const double P2 = scale * dn2;
  if (std::abs(P2) < kPropagatorTol * scale) {
    throw Error(ErrorCode::CollinearSingularity, "incoming electron and photon are collinear");
  }
  const double e_out = P2 / (2.0 * light_cone);
  if (!(e_out > 0)) throw Error(ErrorCode::NonPhysical, "outgoing electron energy is not positive");

  const double kt2 = P.x * P.x + P.y * P.y;
  const double plus = kt2 / light_cone;  // kbar^0 + kbar_z
  MomentumSet ms;
  ms.p = p;
  ms.k = k;
  ms.pbar = FourVector{e_out, 0.0, 0.0, e_out};
  ms.kbar = FourVector{0.5 * (plus + light_cone), P.x, P.y, 0.5 * (plus - light_cone)};
  if (ms.kbar.t <= kOnshellTol * P.t) {
    throw Error(ErrorCode::NonPhysical, "outgoing photon energy is not positive");
  }
  ms.energy_scale = scale;

  const auto pr = propagators(ms);
  ms.P = pr.P;
  ms.Pbar = pr.Pbar;
  ms.P2 = P2;
  ms.Pbar2 = pr.Pbar2;
  ms.p_dot_k = 0.5 * P2;
  ms.p_dot_kbar = mink_dot(p, ms.kbar);
  ms.p_dot_pbar = mink_dot(p, ms.pbar);
  return ms;
}

}  // namespace compton
