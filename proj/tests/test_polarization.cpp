#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "compton/polarization.hpp"

using namespace compton;

namespace {

constexpr double pi = std::numbers::pi;
const double r2 = 1.0 / std::numbers::sqrt2;

complex cdot(const ComplexFourVector& a, const ComplexFourVector& b)
{
  return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

void expect_cvec(const ComplexFourVector& v, complex t, complex x, complex y, complex z, double tol = 1e-15)
{
  EXPECT_LE(std::abs(v.t - t), tol);
  EXPECT_LE(std::abs(v.x - x), tol);
  EXPECT_LE(std::abs(v.y - y), tol);
  EXPECT_LE(std::abs(v.z - z), tol);
}

FourVector random_photon(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> e(0.1, 5.0), th(0.0, pi), ph(0.0, 2 * pi);
  const double E = e(rng), t = th(rng), p = ph(rng);
  return {E, E * std::sin(t) * std::cos(p), E * std::sin(t) * std::sin(p), E * std::cos(t)};
}

}  // namespace

TEST(Polarization, AlongPlusZ)
{
  const FourVector k{1, 0, 0, 1};
  expect_cvec(circular_polarization(k, PhotonPolarization::R).eps, 0, -r2, complex(0, -r2), 0);
  expect_cvec(circular_polarization(k, PhotonPolarization::L).eps, 0, r2, complex(0, -r2), 0);
}

TEST(Polarization, AlongMinusZ)
{
  const FourVector k{1, 0, 0, -1};
  expect_cvec(circular_polarization(k, PhotonPolarization::R).eps, 0, r2, complex(0, -r2), 0);
}

TEST(Polarization, AlongPlusX)
{
  const auto e = circular_polarization(FourVector{2, 2, 0, 0}, PhotonPolarization::R).eps;
  expect_cvec(e, 0, 0, complex(0, -r2), r2);
}

TEST(Polarization, Errors)
{
  auto code = [](const FourVector& k) {
    try {
      circular_polarization(k, PhotonPolarization::R);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::None;
  };
  EXPECT_EQ(code({1, 0, 0, 0}), ErrorCode::ZeroSpatialMomentum);
  EXPECT_EQ(code({2, 0, 0, 1}), ErrorCode::NotLightlike);
  EXPECT_EQ(code({0, 0, 0, 0}), ErrorCode::NonPhysical);
  EXPECT_EQ(code({-1, 0, 0, 1}), ErrorCode::NonPhysical);
}

TEST(Polarization, Invariants)
{
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const auto k = random_photon(rng);
    const auto R = circular_polarization(k, PhotonPolarization::R).eps;
    const auto L = circular_polarization(k, PhotonPolarization::L).eps;
    const auto kc = to_complex(k);
    EXPECT_LE(std::abs(cdot(R, R.conj()) + 1.0), 1e-12);
    EXPECT_LE(std::abs(cdot(L, L.conj()) + 1.0), 1e-12);
    EXPECT_LE(std::abs(cdot(R, kc)), 1e-12 * k.t);
    EXPECT_LE(std::abs(cdot(L, kc)), 1e-12 * k.t);
    EXPECT_LE(std::abs(cdot(R, L.conj())), 1e-12);
    EXPECT_LE(std::abs(cdot(R, R)), 1e-12);
    // L = -R*
    for (std::size_t m = 0; m < 4; ++m) EXPECT_LE(std::abs(L[m] + std::conj(R[m])), 1e-15);
    EXPECT_EQ(R.t, complex(0.0));
  }
}

TEST(Polarization, TransverseCompleteness)
{
  std::mt19937_64 rng(18);
  for (int i = 0; i < 100; ++i) {
    const auto k = random_photon(rng);
    const auto R = circular_polarization(k, PhotonPolarization::R);
    const auto L = circular_polarization(k, PhotonPolarization::L);
    const auto& n = R.direction;
    for (std::size_t a = 1; a < 4; ++a)
      for (std::size_t b = 1; b < 4; ++b) {
        const complex sum = R.eps[a] * std::conj(R.eps[b]) + L.eps[a] * std::conj(L.eps[b]);
        const double expected = (a == b ? 1.0 : 0.0) - n[a - 1] * n[b - 1];
        EXPECT_LE(std::abs(sum - expected), 1e-12);
      }
  }
}

TEST(Polarization, HelicityHandedness)
{
  // i n x eps = +eps for R (positive helicity), -eps for L.
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    const auto k = random_photon(rng);
    for (auto pol : {PhotonPolarization::R, PhotonPolarization::L}) {
      const auto pv = circular_polarization(k, pol);
      const auto& n = pv.direction;
      const std::array<complex, 3> e{pv.eps.x, pv.eps.y, pv.eps.z};
      const std::array<complex, 3> cross{n[1] * e[2] - n[2] * e[1], n[2] * e[0] - n[0] * e[2],
                                         n[0] * e[1] - n[1] * e[0]};
      const double h = pol == PhotonPolarization::R ? 1.0 : -1.0;
      for (std::size_t c = 0; c < 3; ++c) EXPECT_LE(std::abs(complex(0, 1) * cross[c] - h * e[c]), 1e-12);
    }
  }
}

TEST(Polarization, GaugeAngleIsAPhase)
{
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> ang(0.0, 2 * pi);
  for (int i = 0; i < 100; ++i) {
    const auto k = random_photon(rng);
    const double a = ang(rng);
    const auto e0 = circular_polarization(k, PhotonPolarization::R).eps;
    const auto e1 = circular_polarization(k, PhotonPolarization::R, {}, a).eps;
    // e1 = phase * e0 with |phase| = 1
    const complex phase = -cdot(e1, e0.conj());
    EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
    for (std::size_t m = 0; m < 4; ++m) EXPECT_LE(std::abs(e1[m] - phase * e0[m]), 1e-12);
  }
}

TEST(Polarization, ConventionFlipSwapsStates)
{
  const FourVector k{1, 0.6, 0, 0.8};
  Conventions flipped;
  flipped.rcp_x_sign = +1;
  const auto a = circular_polarization(k, PhotonPolarization::R, flipped).eps;
  const auto b = circular_polarization(k, PhotonPolarization::L).eps;
  for (std::size_t m = 0; m < 4; ++m) EXPECT_LE(std::abs(a[m] - b[m]), 1e-15);
}
