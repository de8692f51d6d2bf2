#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "compton/error.hpp"

namespace compton {

using complex = std::complex<double>;

/// Relative tolerance for lightlike checks: |v.v| <= kOnshellTol * (v.t)^2.
inline constexpr double kOnshellTol = 1e-9;

namespace detail {
inline bool finite(double x) { return std::isfinite(x); }
inline bool finite(const complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
inline double conj(double x) { return x; }
inline complex conj(const complex& z) { return std::conj(z); }
}  // namespace detail

/// Minkowski 4-vector, contravariant components (t, x, y, z), metric (+,-,-,-).
template <typename T>
class BasicFourVector {
 public:
  T t{}, x{}, y{}, z{};

  BasicFourVector() = default;
  BasicFourVector(T t_, T x_, T y_, T z_) : t(t_), x(x_), y(y_), z(z_) {
    if (!(detail::finite(t) && detail::finite(x) && detail::finite(y) && detail::finite(z))) {
      throw Error(ErrorCode::NonPhysical, "four-vector with non-finite component");
    }
  }

  T operator[](std::size_t mu) const {
    switch (mu) {
      case 0: return t;
      case 1: return x;
      case 2: return y;
      case 3: return z;
    }
    throw Error(ErrorCode::IndexOutOfRange, "four-vector index");
  }

  BasicFourVector operator+(const BasicFourVector& o) const { return {t + o.t, x + o.x, y + o.y, z + o.z}; }
  BasicFourVector operator-(const BasicFourVector& o) const { return {t - o.t, x - o.x, y - o.y, z - o.z}; }
  BasicFourVector operator-() const { return {-t, -x, -y, -z}; }
  BasicFourVector operator*(double s) const { return {t * s, x * s, y * s, z * s}; }
  friend BasicFourVector operator*(double s, const BasicFourVector& v) { return v * s; }

  BasicFourVector conj() const
  {
    return {detail::conj(t), detail::conj(x), detail::conj(y), detail::conj(z)};
  }

  std::array<T, 3> spatial() const { return {x, y, z}; }
};

using FourVector = BasicFourVector<double>;
using ComplexFourVector = BasicFourVector<complex>;

inline ComplexFourVector to_complex(const FourVector& v) { return {v.t, v.x, v.y, v.z}; }

/// a.t*b.t - a.x*b.x - a.y*b.y - a.z*b.z. No conjugation is applied.
template <typename A, typename B>
auto mink_dot(const BasicFourVector<A>& a, const BasicFourVector<B>& b)
{
  return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

template <typename T>
BasicFourVector<T> lower_index(const BasicFourVector<T>& v)
{
  return {v.t, -v.x, -v.y, -v.z};
}

/// Diagonal of the metric g_{mu mu}.
inline constexpr std::array<double, 4> kMetric{1.0, -1.0, -1.0, -1.0};

inline bool is_lightlike(const FourVector& v, double tol = kOnshellTol)
{
  return std::abs(mink_dot(v, v)) <= tol * v.t * v.t;
}

/// 4x4 complex grid with both indices contravariant.
struct Rank2Tensor {
  std::array<std::array<complex, 4>, 4> m{};

  complex& operator()(std::size_t a, std::size_t b) { return m[a][b]; }
  const complex& operator()(std::size_t a, std::size_t b) const { return m[a][b]; }

  Rank2Tensor operator+(const Rank2Tensor& o) const
  {
    Rank2Tensor r;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) r.m[a][b] = m[a][b] + o.m[a][b];
    return r;
  }
  Rank2Tensor operator*(complex s) const
  {
    Rank2Tensor r;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) r.m[a][b] = m[a][b] * s;
    return r;
  }
  Rank2Tensor transpose() const
  {
    Rank2Tensor r;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) r.m[a][b] = m[b][a];
    return r;
  }
};

/// Symmetrized outer product a^mu b^nu + b^mu a^nu.
inline Rank2Tensor sym_outer(const FourVector& a, const FourVector& b)
{
  Rank2Tensor r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r.m[i][j] = a[i] * b[j] + b[i] * a[j];
  return r;
}

/// sum_{mu nu} (a_mu)^* b_nu T^{mu nu}, with a and b given contravariant and lowered here.
inline complex contract_conj(const ComplexFourVector& a, const Rank2Tensor& tensor, const ComplexFourVector& b)
{
  const auto al = lower_index(a);
  const auto bl = lower_index(b);
  complex sum{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) sum += std::conj(al[i]) * bl[j] * tensor.m[i][j];
  return sum;
}

namespace detail {

struct LeviEntry {
  std::array<std::size_t, 4> idx;
  int sign;
};

// Parity from the cycle decomposition: a cycle of length L contributes (L-1) transpositions.
constexpr int permutation_parity(const std::array<std::size_t, 4>& p)
{
  std::array<bool, 4> seen{};
  int transpositions = 0;
  for (std::size_t s = 0; s < 4; ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (std::size_t c = s; !seen[c]; c = p[c]) {
      seen[c] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

constexpr std::array<LeviEntry, 24> make_levi_table()
{
  std::array<LeviEntry, 24> table{};
  std::size_t n = 0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t d = 0; d < 4; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          const std::array<std::size_t, 4> p{a, b, c, d};
          table[n++] = {p, permutation_parity(p)};
        }
  return table;
}

inline constexpr auto kLeviTable = make_levi_table();

}  // namespace detail

/// Nonzero entries of epsilon^{abcd} with epsilon^{0123} = +1.
inline constexpr const std::array<detail::LeviEntry, 24>& levi_civita_entries() { return detail::kLeviTable; }

/// M^{nu nubar} = eps^{nu alpha beta nubar} P_alpha Pbar_beta.
///
/// P and Pbar are contravariant and lowered internally. `sign` selects the
/// global convention eps^{0123} = sign (+1 by default).
inline Rank2Tensor levi_civita_contract(const FourVector& P, const FourVector& Pbar, int sign = +1)
{
  const auto Pl = lower_index(P);
  const auto Pbl = lower_index(Pbar);
  Rank2Tensor r;
  for (const auto& e : detail::kLeviTable) {
    const auto [nu, alpha, beta, nubar] = e.idx;
    r.m[nu][nubar] += static_cast<double>(sign * e.sign) * Pl[alpha] * Pbl[beta];
  }
  return r;
}

using Vec3 = std::array<double, 3>;
using Rotation = std::array<std::array<double, 3>, 3>;

template <typename T>
std::array<T, 3> apply_rotation(const Rotation& r, const std::array<T, 3>& v)
{
  std::array<T, 3> out{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i] += r[i][j] * v[j];
  return out;
}

inline Rotation operator*(const Rotation& a, const Rotation& b)
{
  Rotation r{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline Rotation rotation_z(double angle)
{
  const double c = std::cos(angle), s = std::sin(angle);
  return {{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}};
}

inline Rotation rotation_y(double angle)
{
  const double c = std::cos(angle), s = std::sin(angle);
  return {{{c, 0.0, s}, {0.0, 1.0, 0.0}, {-s, 0.0, c}}};
}

/// R_z(phi) R_y(theta): carries +z onto (sin t cos p, sin t sin p, cos t).
inline Rotation rotation_to_direction(double theta, double phi)
{
  return rotation_z(phi) * rotation_y(theta);
}

/// Applies a spatial rotation to the (x, y, z) part, leaving t untouched.
template <typename T>
BasicFourVector<T> rotate(const Rotation& r, const BasicFourVector<T>& v)
{
  const auto s = apply_rotation(r, v.spatial());
  return {v.t, s[0], s[1], s[2]};
}

}  // namespace compton
