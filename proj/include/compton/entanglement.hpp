#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <string_view>
#include <utility>
#include <vector>

#include "compton/amplitudes.hpp"
#include "compton/error.hpp"

namespace compton {

inline constexpr double kBellTol = 1e-9;

/// |c_ij| in basis order (up R, up L, down R, down L).
struct CoefficientMagnitudes {
  std::array<double, 4> c{};
  bool clamped = false;

  double c11() const { return c[0]; }
  double c12() const { return c[1]; }
  double c21() const { return c[2]; }
  double c22() const { return c[3]; }
};

struct ConcurrenceReport {
  double c_max = 0;
  double c_min = 0;
  bool is_bell = false;
};

/// |c_ij|^2 proportional to the per-state probabilities; negative entries are
/// clamped to zero and flagged.
inline CoefficientMagnitudes quad_to_coefficients(const ExchangeQuad& q)
{
  CoefficientMagnitudes out;
  double total = 0;
  for (double v : q.values) {
    if (v < 0) out.clamped = true;
    total += std::max(v, 0.0);
  }
  if (!(total > 0)) throw Error(ErrorCode::AllNonPositive, "no positive out-state probability");
  for (std::size_t i = 0; i < 4; ++i) out.c[i] = std::sqrt(std::max(q.values[i], 0.0) / total);
  return out;
}

/// Concurrence extremized over the unknown phases of c_ij:
/// C_max = 2(|c11||c22| + |c12||c21|), C_min = 2||c11||c22| - |c12||c21||.
inline ConcurrenceReport concurrence_bounds(const CoefficientMagnitudes& m)
{
  const double diag = m.c11() * m.c22();
  const double anti = m.c12() * m.c21();
  ConcurrenceReport r;
  r.c_max = 2.0 * (diag + anti);
  r.c_min = 2.0 * std::abs(diag - anti);
  r.is_bell = r.c_max >= 1.0 - kBellTol && r.c_min >= 1.0 - kBellTol;
  return r;
}

/// Set-1 / set-2 values on a rectilinear (theta_e, theta_ph) grid, row-major
/// with rows along axis0. Holes are NaN.
struct SetGrid {
  std::vector<double> axis0;  ///< theta_e
  std::vector<double> axis1;  ///< theta_ph
  std::vector<double> set1;
  std::vector<double> set2;

  std::size_t rows() const { return axis0.size(); }
  std::size_t cols() const { return axis1.size(); }
  std::size_t index(std::size_t i, std::size_t j) const { return i * cols() + j; }
  double s1(std::size_t i, std::size_t j) const { return set1[index(i, j)]; }
  double s2(std::size_t i, std::size_t j) const { return set2[index(i, j)]; }
};

enum class JumpKind { ConeStrong, PlanarMaximal };

constexpr std::string_view to_string(JumpKind k)
{
  return k == JumpKind::ConeStrong ? "cone_strong" : "planar_maximal";
}

struct JumpPoint {
  double theta_e = 0;
  double theta_ph = 0;
  std::size_t row = 0, col = 0;
  JumpKind kind = JumpKind::ConeStrong;
  double set1_value = 0;
  double set2_value = 0;
};

struct JumpParams {
  double ratio_threshold = 0.05;  ///< rho: set-2 / set-1 must fall below this
  double bell_epsilon = 1e-6;     ///< PlanarMaximal when set-2 <= eps * set-1
  double max_step = std::numbers::pi / 180.0;
  /// Neighbour differences below tie_tolerance * max|set-1| count as ties, so
  /// rounding noise on a flat ridge does not create extrema.
  double tie_tolerance = 1e-9;
};

namespace detail {

inline double max_spacing(const std::vector<double>& axis)
{
  double m = 0;
  for (std::size_t i = 1; i < axis.size(); ++i) m = std::max(m, std::abs(axis[i] - axis[i - 1]));
  return m;
}

}  // namespace detail

/// Grid points that are simultaneously a local maximum of set-1 and a local
/// minimum of set-2 over their finite 8-neighbourhood (not a plateau), with
/// set-2 / set-1 < rho. Output is ordered by theta_e, then theta_ph.
inline std::vector<JumpPoint> find_jump_points(const SetGrid& grid, const JumpParams& params = {})
{
  const double slack = 1.0 + 1e-9;
  if (grid.rows() < 2 || grid.cols() < 2 || detail::max_spacing(grid.axis0) > params.max_step * slack ||
      detail::max_spacing(grid.axis1) > params.max_step * slack) {
    throw Error(ErrorCode::GridTooCoarse, "jump detection needs a grid step of at most 1 degree");
  }

  double peak = 0;
  for (double v : grid.set1)
    if (std::isfinite(v)) peak = std::max(peak, std::abs(v));
  const double tie = params.tie_tolerance * peak;

  std::vector<JumpPoint> jumps;
  const auto R = static_cast<std::ptrdiff_t>(grid.rows());
  const auto C = static_cast<std::ptrdiff_t>(grid.cols());
  for (std::ptrdiff_t i = 0; i < R; ++i) {
    for (std::ptrdiff_t j = 0; j < C; ++j) {
      const double a = grid.s1(i, j), b = grid.s2(i, j);
      if (!std::isfinite(a) || !std::isfinite(b) || !(a > 0)) continue;
      if (!(b / a < params.ratio_threshold)) continue;

      bool extremal = true, strict = false;
      for (std::ptrdiff_t di = -1; di <= 1 && extremal; ++di) {
        for (std::ptrdiff_t dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const std::ptrdiff_t ni = i + di, nj = j + dj;
          if (ni < 0 || nj < 0 || ni >= R || nj >= C) continue;
          const double na = grid.s1(ni, nj), nb = grid.s2(ni, nj);
          if (!std::isfinite(na) || !std::isfinite(nb)) continue;
          if (na > a + tie || nb < b - tie) {
            extremal = false;
            break;
          }
          if (na < a - tie || nb > b + tie) strict = true;
        }
      }
      if (!extremal || !strict) continue;

      JumpPoint jp;
      jp.row = static_cast<std::size_t>(i);
      jp.col = static_cast<std::size_t>(j);
      jp.theta_e = grid.axis0[jp.row];
      jp.theta_ph = grid.axis1[jp.col];
      jp.set1_value = a;
      jp.set2_value = b;
      jp.kind = b <= params.bell_epsilon * a ? JumpKind::PlanarMaximal : JumpKind::ConeStrong;
      jumps.push_back(jp);
    }
  }
  return jumps;
}

/// Closed polyline in (theta_e, theta_ph); first point is not repeated at the end.
struct Contour {
  std::vector<std::pair<double, double>> points;

  double signed_area() const
  {
    double a = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& [x0, y0] = points[i];
      const auto& [x1, y1] = points[(i + 1) % points.size()];
      a += x0 * y1 - x1 * y0;
    }
    return 0.5 * a;
  }

  bool encloses(double x, double y) const
  {
    bool inside = false;
    for (std::size_t i = 0, j = points.size() - 1; i < points.size(); j = i++) {
      const auto& [xi, yi] = points[i];
      const auto& [xj, yj] = points[j];
      if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) inside = !inside;
    }
    return inside;
  }
};

namespace detail {

// Marching squares on f = set1 - set2 (inside: f > 0). Cells touching a hole
// are skipped, so contours running into holes stay open. Edge ids:
// 2*node for the edge to the right neighbour, 2*node+1 for the edge below.
class ZeroLevelTracer {
 public:
  explicit ZeroLevelTracer(const SetGrid& g) : g_(g), f_(g.set1.size())
  {
    for (std::size_t n = 0; n < f_.size(); ++n) f_[n] = g.set1[n] - g.set2[n];
  }

  std::vector<Contour> closed_loops()
  {
    build_segments();
    std::vector<Contour> loops;
    std::map<std::size_t, bool> visited;
    for (const auto& [start, unused] : adj_) {
      if (visited[start]) continue;
      const auto component = collect_component(start, visited);
      const bool is_cycle = std::all_of(component.begin(), component.end(),
                                        [&](std::size_t e) { return adj_.at(e).size() == 2; });
      if (!is_cycle || component.size() < 3) continue;

      // Every node has degree two: walk it in order.
      Contour c;
      std::size_t prev = start, cur = start;
      bool first = true;
      do {
        c.points.push_back(point_.at(cur));
        const auto& nb = adj_.at(cur);
        const std::size_t next = first || nb[0] != prev ? nb[0] : nb[1];
        first = false;
        prev = cur;
        cur = next;
      } while (cur != start);
      loops.push_back(std::move(c));
    }
    return loops;
  }

 private:
  bool inside(std::size_t n) const { return f_[n] > 0; }

  std::vector<std::size_t> collect_component(std::size_t start, std::map<std::size_t, bool>& visited) const
  {
    std::vector<std::size_t> out{start}, stack{start};
    visited[start] = true;
    while (!stack.empty()) {
      const std::size_t e = stack.back();
      stack.pop_back();
      for (std::size_t n : adj_.at(e)) {
        if (!visited[n]) {
          visited[n] = true;
          out.push_back(n);
          stack.push_back(n);
        }
      }
    }
    return out;
  }

  std::pair<double, double> crossing(std::size_t a, std::size_t b, std::size_t ia, std::size_t ja,
                                     std::size_t ib, std::size_t jb) const
  {
    const double t = f_[a] / (f_[a] - f_[b]);
    return {g_.axis0[ia] + t * (g_.axis0[ib] - g_.axis0[ia]), g_.axis1[ja] + t * (g_.axis1[jb] - g_.axis1[ja])};
  }

  void link(std::size_t e1, std::size_t e2)
  {
    adj_[e1].push_back(e2);
    adj_[e2].push_back(e1);
  }

  void build_segments()
  {
    const std::size_t R = g_.rows(), C = g_.cols();
    for (std::size_t i = 0; i + 1 < R; ++i) {
      for (std::size_t j = 0; j + 1 < C; ++j) {
        const std::array<std::size_t, 4> n{g_.index(i, j), g_.index(i, j + 1), g_.index(i + 1, j + 1),
                                           g_.index(i + 1, j)};
        if (!std::all_of(n.begin(), n.end(), [&](std::size_t k) { return std::isfinite(f_[k]); })) continue;
        // top, right, bottom, left
        const std::array<std::size_t, 4> edge{2 * n[0], 2 * n[1] + 1, 2 * n[3], 2 * n[0] + 1};
        const std::array<std::array<std::size_t, 2>, 4> ends{{{n[0], n[1]}, {n[1], n[2]}, {n[3], n[2]}, {n[0], n[3]}}};
        const std::array<std::array<std::size_t, 4>, 4> coords{{{i, j, i, j + 1},
                                                                 {i, j + 1, i + 1, j + 1},
                                                                 {i + 1, j, i + 1, j + 1},
                                                                 {i, j, i + 1, j}}};
        std::array<bool, 4> cut{};
        int ncut = 0;
        for (std::size_t e = 0; e < 4; ++e) {
          cut[e] = inside(ends[e][0]) != inside(ends[e][1]);
          if (cut[e]) {
            ++ncut;
            if (!point_.count(edge[e])) {
              const auto& c = coords[e];
              point_[edge[e]] = crossing(ends[e][0], ends[e][1], c[0], c[1], c[2], c[3]);
            }
          }
        }
        if (ncut == 2) {
          std::size_t first = 4;
          for (std::size_t e = 0; e < 4; ++e) {
            if (!cut[e]) continue;
            if (first == 4) {
              first = e;
            } else {
              link(edge[first], edge[e]);
            }
          }
        } else if (ncut == 4) {
          const double centre = 0.25 * (f_[n[0]] + f_[n[1]] + f_[n[2]] + f_[n[3]]);
          // Separate the corners whose side differs from the centre.
          // Corner k sits between edges (k+3)%4 and k.
          const bool centre_inside = centre > 0;
          for (std::size_t k = 0; k < 4; ++k) {
            if (inside(n[k]) != centre_inside) link(edge[(k + 3) % 4], edge[k]);
          }
        }
      }
    }
  }

  const SetGrid& g_;
  std::vector<double> f_;
  std::map<std::size_t, std::vector<std::size_t>> adj_;
  std::map<std::size_t, std::pair<double, double>> point_;
};

}  // namespace detail

/// Every closed zero level of (set1 - set2) on the grid.
inline std::vector<Contour> zero_level_loops(const SetGrid& grid)
{
  detail::ZeroLevelTracer tracer(grid);
  return tracer.closed_loops();
}

/// Innermost loop around the jump point. Throws ContourNotClosed when no
/// closed level curve encircles it.
inline Contour zero_concurrence_contour(const std::vector<Contour>& loops, const JumpPoint& jump)
{
  const Contour* best = nullptr;
  for (const auto& loop : loops) {
    if (loop.points.size() < 3 || !loop.encloses(jump.theta_e, jump.theta_ph)) continue;
    if (!best || std::abs(loop.signed_area()) < std::abs(best->signed_area())) best = &loop;
  }
  if (!best) throw Error(ErrorCode::ContourNotClosed, "no closed set1 = set2 contour encloses the jump point");
  return *best;
}

inline Contour zero_concurrence_contour(const SetGrid& grid, const JumpPoint& jump)
{
  return zero_concurrence_contour(zero_level_loops(grid), jump);
}

}  // namespace compton
