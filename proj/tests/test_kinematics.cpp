#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "compton/kinematics.hpp"
#include "compton/sampling.hpp"

using namespace compton;

namespace {

constexpr double pi = std::numbers::pi;

void expect_vec(const FourVector& v, double t, double x, double y, double z, double tol = 1e-14)
{
  EXPECT_NEAR(v.t, t, tol);
  EXPECT_NEAR(v.x, x, tol);
  EXPECT_NEAR(v.y, y, tol);
  EXPECT_NEAR(v.z, z, tol);
}

ErrorCode code_of(const ScatterConfig& c)
{
  try {
    solve_kinematics(c);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::None;
}

}  // namespace

TEST(Kinematics, BackToBack)
{
  const auto ms = solve_kinematics({1.0, 1.0, pi / 2, pi / 2, pi});
  expect_vec(ms.p, 1, 1, 0, 0);
  expect_vec(ms.k, 1, -1, 0, 0);
  expect_vec(ms.pbar, 1, 0, 0, 1);
  expect_vec(ms.kbar, 1, 0, 0, -1);
  expect_vec(ms.P, 2, 0, 0, 0);
  expect_vec(ms.Pbar, 0, 1, 0, 1);
  EXPECT_NEAR(ms.P2, 4.0, 1e-14);
  EXPECT_NEAR(ms.Pbar2, -2.0, 1e-14);
  EXPECT_NEAR(ms.p_dot_k, 2.0, 1e-14);
  EXPECT_NEAR(ms.p_dot_kbar, 1.0, 1e-14);
  EXPECT_NEAR(ms.p_dot_pbar, 1.0, 1e-14);
}

TEST(Kinematics, ScalesWithEnergy)
{
  const auto ms = solve_kinematics({2.5, 2.5, pi / 2, pi / 2, pi});
  expect_vec(ms.pbar, 2.5, 0, 0, 2.5);
  EXPECT_NEAR(ms.P2, 25.0, 1e-12);
}

TEST(Kinematics, ForwardCollinearIsDegenerate)
{
  EXPECT_EQ(code_of({1.0, 1.0, 0.0, 0.0, 0.0}), ErrorCode::DegenerateForward);
  EXPECT_EQ(code_of({1.0, 3.0, 0.0, 0.0, 1.0}), ErrorCode::DegenerateForward);
}

TEST(Kinematics, PhotonAlongDetectorAxisHitsUChannelPole)
{
  // k along +z: the outgoing photon takes the electron's momentum, so p - kbar = 0.
  EXPECT_EQ(code_of({1.0, 1.0, pi / 2, 0.0, 0.0}), ErrorCode::CollinearSingularity);
}

TEST(Kinematics, ParallelIncomingIsCollinear)
{
  EXPECT_EQ(code_of({1.0, 1.0, pi / 3, pi / 3, 0.0}), ErrorCode::CollinearSingularity);
}

TEST(Kinematics, InvalidSpec)
{
  EXPECT_EQ(code_of({-1.0, 1.0, pi / 2, pi / 2, pi}), ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of({1.0, 0.0, pi / 2, pi / 2, pi}), ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of({1.0, 1.0, 4.0, pi / 2, pi}), ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of({1.0, 1.0, pi / 2, -0.1, pi}), ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of({1.0, 1.0, pi / 2, pi / 2, 7.0}), ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of({1.0, 1.0, pi / 2, pi / 3, 2 * pi}), ErrorCode::None);
}

TEST(Kinematics, ConservationAndMasslessness)
{
  for (const auto& cfg : random_configs(500, 77)) {
    const auto ms = solve_kinematics(cfg);
    const double s = ms.energy_scale;
    const auto lhs = ms.p + ms.k, rhs = ms.pbar + ms.kbar;
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LE(std::abs(lhs[i] - rhs[i]), 1e-12 * (cfg.energy_electron + cfg.energy_photon));
    EXPECT_LE(std::abs(mink_dot(ms.pbar, ms.pbar)), 1e-10 * s);
    EXPECT_LE(std::abs(mink_dot(ms.kbar, ms.kbar)), 1e-10 * s);
    EXPECT_GT(ms.pbar.t, 0);
    EXPECT_GT(ms.kbar.t, 0);
    EXPECT_NEAR(ms.pbar.x, 0.0, 0.0);
    EXPECT_NEAR(ms.pbar.y, 0.0, 0.0);
    // Pbar from both sides of the vertex.
    const auto alt = ms.pbar - ms.k;
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LE(std::abs(alt[i] - ms.Pbar[i]), 1e-12 * (cfg.energy_electron + cfg.energy_photon));
  }
}

TEST(Kinematics, MandelstamClosure)
{
  for (const auto& cfg : random_configs(500, 78)) {
    const auto ms = solve_kinematics(cfg);
    const auto q = ms.p - ms.pbar;
    const double t = mink_dot(q, q);
    EXPECT_LE(std::abs(ms.P2 + ms.Pbar2 + t), 1e-10 * ms.energy_scale);
    EXPECT_NEAR(ms.P2, 2 * ms.p_dot_k, 1e-10 * ms.energy_scale);
    EXPECT_NEAR(ms.Pbar2, -2 * ms.p_dot_kbar, 1e-10 * ms.energy_scale);
  }
}

TEST(Kinematics, ScaleCovariance)
{
  for (const auto& cfg : random_configs(100, 79)) {
    const auto base = solve_kinematics(cfg);
    for (double lambda : {0.5, 2.0, 10.0}) {
      const auto ms = solve_kinematics(cfg.scaled(lambda));
      for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(ms.pbar[i], lambda * base.pbar[i], 1e-12 * lambda * 4);
        EXPECT_NEAR(ms.kbar[i], lambda * base.kbar[i], 1e-12 * lambda * 4);
      }
      EXPECT_NEAR(ms.P2, lambda * lambda * base.P2, 1e-10 * lambda * lambda * base.energy_scale);
    }
  }
}

TEST(Sampling, ReproducibleAndNondegenerate)
{
  const auto a = random_configs(50, 5), b = random_configs(50, 5), c = random_configs(50, 6);
  ASSERT_EQ(a.size(), 50u);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].theta_e, b[i].theta_e);
    EXPECT_EQ(a[i].energy_photon, b[i].energy_photon);
    differs |= a[i].theta_e != c[i].theta_e;
    EXPECT_TRUE(nondegenerate(solve_kinematics(a[i])));
  }
  EXPECT_TRUE(differs);
}
