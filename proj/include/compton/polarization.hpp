#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>

#include "compton/conventions.hpp"
#include "compton/error.hpp"
#include "compton/tensor.hpp"

namespace compton {

enum class PhotonPolarization { R, L };

constexpr std::string_view to_string(PhotonPolarization p) { return p == PhotonPolarization::R ? "R" : "L"; }

struct PolarizationVector {
  ComplexFourVector eps;
  Vec3 direction;  ///< unit propagation direction
};

/// Reference circular states for propagation along +z (contravariant).
inline ComplexFourVector reference_polarization(PhotonPolarization pol, const Conventions& conv = {})
{
  const double x = (pol == PhotonPolarization::R ? 1.0 : -1.0) * conv.rcp_x_sign;
  const double s = 1.0 / std::numbers::sqrt2;
  return {complex{0.0}, complex{x * s}, complex{0.0, -s}, complex{0.0}};
}

/// Helicity state for a photon with momentum kbar: the +z reference state
/// carried by rotation_to_direction(theta, phi) of the propagation direction.
/// `gauge_angle` pre-rotates the reference about +z, which only changes the
/// overall phase of a circular state.
inline PolarizationVector circular_polarization(const FourVector& kbar, PhotonPolarization pol,
                                                const Conventions& conv = {}, double gauge_angle = 0.0)
{
  if (!(kbar.t > 0)) throw Error(ErrorCode::NonPhysical, "photon energy must be positive");
  const double norm = std::sqrt(kbar.x * kbar.x + kbar.y * kbar.y + kbar.z * kbar.z);
  if (norm == 0.0) throw Error(ErrorCode::ZeroSpatialMomentum, "photon has no propagation direction");
  if (!is_lightlike(kbar)) throw Error(ErrorCode::NotLightlike, "photon momentum is not lightlike");

  const Vec3 n{kbar.x / norm, kbar.y / norm, kbar.z / norm};
  const double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
  double phi = std::atan2(n[1], n[0]);
  if (phi < 0) phi += 2 * std::numbers::pi;

  auto eps = reference_polarization(pol, conv);
  if (gauge_angle != 0.0) eps = rotate(rotation_z(gauge_angle), eps);
  eps = rotate(rotation_to_direction(theta, phi), eps);
  return {eps, n};
}

}  // namespace compton
