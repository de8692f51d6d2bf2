#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "compton/dirac.hpp"

using namespace compton;

namespace {

SpinorMatrix random_matrix(std::mt19937_64& rng)
{
  std::normal_distribution<double> n;
  SpinorMatrix m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = complex(n(rng), n(rng));
  return m;
}

}  // namespace

TEST(Gamma, Gamma0IsDiagonal)
{
  const auto& g0 = gamma_matrix(0);
  EXPECT_EQ(g0.max_abs_diff(SpinorMatrix::diagonal(1, 1, -1, -1)), 0.0);
  EXPECT_EQ((g0 * g0).max_abs_diff(SpinorMatrix::identity()), 0.0);
}

TEST(Gamma, CliffordAlgebra)
{
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu) {
      const auto anti = gamma_matrix(mu) * gamma_matrix(nu) + gamma_matrix(nu) * gamma_matrix(mu);
      const double g = mu == nu ? 2.0 * kMetric[mu] : 0.0;
      EXPECT_LE(anti.max_abs_diff(SpinorMatrix::identity() * complex(g)), 1e-14) << mu << nu;
    }
}

TEST(Gamma, IndexOutOfRange)
{
  EXPECT_THROW(gamma_matrix(4), Error);
}

TEST(Gamma5, SquaresToIdentityAndAnticommutes)
{
  EXPECT_LE((gamma5() * gamma5()).max_abs_diff(SpinorMatrix::identity()), 1e-15);
  for (std::size_t mu = 0; mu < 4; ++mu) {
    EXPECT_LE((gamma5() * gamma_matrix(mu) + gamma_matrix(mu) * gamma5()).max_abs_diff(SpinorMatrix{}), 1e-15);
  }
  EXPECT_EQ(mat_trace(gamma5()), complex(0.0));
  // Off-diagonal identity blocks.
  EXPECT_EQ(gamma5()(0, 2), complex(1.0));
  EXPECT_EQ(gamma5()(1, 3), complex(1.0));
  EXPECT_EQ(gamma5()(0, 0), complex(0.0));
}

TEST(Trace, Identities)
{
  EXPECT_EQ(mat_trace(SpinorMatrix::identity()), complex(4.0));
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu) {
      const complex expected = mu == nu ? 4.0 * kMetric[mu] : 0.0;
      EXPECT_LE(std::abs(mat_trace(gamma_matrix(mu) * gamma_matrix(nu)) - expected), 1e-15);
    }
  // Explicit product: g5 g0 g1 g2 g3 = -i g5^2.
  const complex t = mat_trace(gamma5() * gamma_matrix(0) * gamma_matrix(1) * gamma_matrix(2) * gamma_matrix(3));
  EXPECT_LE(std::abs(t - complex(0.0, -4.0)), 1e-14);
}

TEST(Trace, OddProductsVanish)
{
  for (std::size_t a = 0; a < 4; ++a) {
    EXPECT_EQ(mat_trace(gamma_matrix(a)), complex(0.0));
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c) {
        EXPECT_LE(std::abs(mat_trace(gamma_matrix(a) * gamma_matrix(b) * gamma_matrix(c))), 1e-15);
        for (std::size_t d = 0; d < 4; ++d)
          for (std::size_t e = 0; e < 4; ++e)
            EXPECT_LE(std::abs(mat_trace(gamma_matrix(a) * gamma_matrix(b) * gamma_matrix(c) * gamma_matrix(d) * gamma_matrix(e))), 1e-14);
      }
  }
}

TEST(Trace, Cyclicity)
{
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto A = random_matrix(rng), B = random_matrix(rng), C = random_matrix(rng);
    const complex abc = mat_trace(A * B * C), bca = mat_trace(B * C * A);
    EXPECT_LE(std::abs(abc - bca), 1e-10 * std::max(1.0, std::abs(abc)));
  }
}

TEST(Slash, Examples)
{
  EXPECT_LE(slash(FourVector{1, 0, 0, 0}).max_abs_diff(gamma_matrix(0)), 0.0);
  const FourVector p{2.0, 0.3, -1.1, 0.7}, q{-0.5, 1.0, 0.2, 2.2};
  EXPECT_LE((slash(p) * slash(p)).max_abs_diff(SpinorMatrix::identity() * complex(mink_dot(p, p))), 1e-13);
  EXPECT_LE(slash(p + q).max_abs_diff(slash(p) + slash(q)), 1e-15);
}

TEST(Slash, ComplexVector)
{
  const ComplexFourVector e{0.0, complex(1.0, 0.0), complex(0.0, -1.0), 0.0};
  const auto s = slash(e);
  const auto expected = gamma_matrix(1) * complex(-1.0) + gamma_matrix(2) * complex(0.0, 1.0);
  EXPECT_LE(s.max_abs_diff(expected), 1e-15);
}

TEST(HelicityProjector, Examples)
{
  const double E = 2.5;
  const FourVector pbar{E, 0, 0, E};
  const auto up = helicity_projector(pbar, ElectronSpin::Up);
  const auto down = helicity_projector(pbar, ElectronSpin::Down);
  EXPECT_LE(std::abs(mat_trace(up)), 1e-14);
  EXPECT_LE(std::abs(mat_trace(up * gamma_matrix(0)) - complex(2 * E)), 1e-14);
  EXPECT_LE(std::abs(mat_trace(down * gamma_matrix(0)) - complex(2 * E)), 1e-14);
  EXPECT_LE((up * up).max_abs_diff(SpinorMatrix{}), 1e-13);
  EXPECT_LE((up + down).max_abs_diff(slash(pbar)), 0.0);
}

TEST(HelicityProjector, CompletenessForArbitraryDirection)
{
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng), y = u(rng), z = u(rng);
    const double E = std::sqrt(x * x + y * y + z * z);
    const FourVector p{E, x, y, z};
    const auto sum = helicity_projector(p, ElectronSpin::Up) + helicity_projector(p, ElectronSpin::Down);
    EXPECT_LE(sum.max_abs_diff(slash(p)), 1e-15);
  }
}

TEST(HelicityProjector, RejectsMassive)
{
  EXPECT_THROW(helicity_projector(FourVector{2.0, 0, 0, 1.0}, ElectronSpin::Up), Error);
}
