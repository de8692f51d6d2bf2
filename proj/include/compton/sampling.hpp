#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "compton/error.hpp"
#include "compton/kinematics.hpp"

namespace compton {

/// Minimum |invariant| / (E_e E_ph) for a sampled configuration to count as
/// nondegenerate: keeps relative comparisons away from propagator poles.
inline constexpr double kSampleInvariantFloor = 1e-3;

inline bool nondegenerate(const MomentumSet& ms)
{
  const double floor = kSampleInvariantFloor * ms.energy_scale;
  return std::abs(ms.P2) > floor && std::abs(ms.Pbar2) > floor && std::abs(ms.p_dot_kbar) > floor &&
         std::abs(ms.p_dot_pbar) > floor;
}

/// Reproducible random configurations: E in [0.5, 2] MeV for both particles,
/// theta uniform in [0, pi], phi uniform in [0, 2pi). Degenerate draws are rejected.
inline std::vector<ScatterConfig> random_configs(std::size_t count, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> energy(0.5, 2.0);
  std::uniform_real_distribution<double> polar(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> azimuth(0.0, 2 * std::numbers::pi);
  std::vector<ScatterConfig> out;
  out.reserve(count);
  while (out.size() < count) {
    ScatterConfig c;
    c.energy_electron = energy(rng);
    c.energy_photon = energy(rng);
    c.theta_e = polar(rng);
    c.theta_ph = polar(rng);
    c.phi_ph = azimuth(rng);
    try {
      if (nondegenerate(solve_kinematics(c))) out.push_back(c);
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace compton
