#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>

#include "compton/error.hpp"
#include "compton/tensor.hpp"

namespace compton {

/// 4x4 complex operator on Dirac spinor space.
class SpinorMatrix {
 public:
  SpinorMatrix() = default;

  static SpinorMatrix identity()
  {
    SpinorMatrix r;
    for (std::size_t i = 0; i < 4; ++i) r.a_[i][i] = 1.0;
    return r;
  }

  static SpinorMatrix diagonal(complex d0, complex d1, complex d2, complex d3)
  {
    SpinorMatrix r;
    r.a_[0][0] = d0;
    r.a_[1][1] = d1;
    r.a_[2][2] = d2;
    r.a_[3][3] = d3;
    return r;
  }

  complex& operator()(std::size_t i, std::size_t j) { return a_[i][j]; }
  const complex& operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }

  SpinorMatrix& operator+=(const SpinorMatrix& o)
  {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) a_[i][j] += o.a_[i][j];
    return *this;
  }
  SpinorMatrix& operator-=(const SpinorMatrix& o)
  {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) a_[i][j] -= o.a_[i][j];
    return *this;
  }
  SpinorMatrix& operator*=(complex s)
  {
    for (auto& row : a_)
      for (auto& x : row) x *= s;
    return *this;
  }

  friend SpinorMatrix operator+(SpinorMatrix a, const SpinorMatrix& b) { return a += b; }
  friend SpinorMatrix operator-(SpinorMatrix a, const SpinorMatrix& b) { return a -= b; }
  friend SpinorMatrix operator*(SpinorMatrix a, complex s) { return a *= s; }
  friend SpinorMatrix operator*(complex s, SpinorMatrix a) { return a *= s; }

  friend SpinorMatrix operator*(const SpinorMatrix& a, const SpinorMatrix& b)
  {
    SpinorMatrix r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) {
        const complex aik = a.a_[i][k];
        if (aik == complex{}) continue;
        for (std::size_t j = 0; j < 4; ++j) r.a_[i][j] += aik * b.a_[k][j];
      }
    return r;
  }

  double max_abs_diff(const SpinorMatrix& o) const
  {
    double m = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m = std::max(m, std::abs(a_[i][j] - o.a_[i][j]));
    return m;
  }

 private:
  std::array<std::array<complex, 4>, 4> a_{};
};

enum class ElectronSpin { Up, Down };

constexpr std::string_view to_string(ElectronSpin s) { return s == ElectronSpin::Up ? "up" : "down"; }

namespace detail {

// Dirac-Pauli: gamma^0 = diag(I, -I), gamma^i = [[0, sigma_i], [-sigma_i, 0]].
inline std::array<SpinorMatrix, 4> make_gammas()
{
  using namespace std::complex_literals;
  std::array<SpinorMatrix, 4> g;
  g[0] = SpinorMatrix::diagonal(1.0, 1.0, -1.0, -1.0);

  const std::array<std::array<std::array<complex, 2>, 2>, 3> pauli{{
      {{{0.0, 1.0}, {1.0, 0.0}}},
      {{{0.0, -1i}, {1i, 0.0}}},
      {{{1.0, 0.0}, {0.0, -1.0}}},
  }};
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        g[k + 1](i, j + 2) = pauli[k][i][j];
        g[k + 1](i + 2, j) = -pauli[k][i][j];
      }
  }
  return g;
}

inline const std::array<SpinorMatrix, 4>& gammas()
{
  static const auto g = make_gammas();
  return g;
}

}  // namespace detail

inline const SpinorMatrix& gamma_matrix(std::size_t mu)
{
  if (mu > 3) throw Error(ErrorCode::IndexOutOfRange, "gamma index must be 0..3");
  return detail::gammas()[mu];
}

/// i gamma^0 gamma^1 gamma^2 gamma^3; off-diagonal identity blocks in Dirac-Pauli.
/// Consistent with Tr[g5 g^m g^n g^r g^s] = -4i eps^{mnrs}, eps^{0123} = +1.
inline const SpinorMatrix& gamma5()
{
  static const SpinorMatrix g5 = complex{0.0, 1.0} * (gamma_matrix(0) * gamma_matrix(1) * gamma_matrix(2) * gamma_matrix(3));
  return g5;
}

/// gamma^mu v_mu for a contravariant v.
template <typename T>
SpinorMatrix slash(const BasicFourVector<T>& v)
{
  SpinorMatrix r;
  for (std::size_t mu = 0; mu < 4; ++mu) r += gamma_matrix(mu) * complex(kMetric[mu] * v[mu]);
  return r;
}

inline complex mat_trace(const SpinorMatrix& m)
{
  return m(0, 0) + m(1, 1) + m(2, 2) + m(3, 3);
}

/// Outgoing massless electron density u ubar = 1/2 (I +- gamma5) pbar-slash, '+' for Up.
inline SpinorMatrix helicity_projector(const FourVector& pbar, ElectronSpin spin)
{
  if (!is_lightlike(pbar)) {
    throw Error(ErrorCode::NotLightlike, "helicity projector needs a massless (lightlike) momentum");
  }
  const double chirality = spin == ElectronSpin::Up ? 1.0 : -1.0;
  const SpinorMatrix half_proj = (SpinorMatrix::identity() + gamma5() * complex(chirality)) * complex(0.5);
  return half_proj * slash(pbar);
}

}  // namespace compton
