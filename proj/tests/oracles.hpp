#pragma once

// Reference computations that do not go through the library's invariant code.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using Vec3 = std::array<double, 3>;
constexpr double pi = std::numbers::pi;

inline Vec3 normalized(Vec3 v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Signed solid angle of the spherical triangle (a, b, c), unit vectors.
inline double solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 2.0 * std::atan2(dot(a, cross(b, c)), 1.0 + dot(a, b) + dot(b, c) + dot(c, a));
}

// Degree of the unit-vector field d over an (i, j) lattice taken in that
// (oriented) order; wrapping axes close up periodically.
inline double sphere_degree(const std::function<Vec3(int, int)>& d, int ni, int nj, bool wrap_i, bool wrap_j) {
  double total = 0.0;
  const int ci = wrap_i ? ni : ni - 1;
  const int cj = wrap_j ? nj : nj - 1;
  for (int i = 0; i < ci; ++i) {
    for (int j = 0; j < cj; ++j) {
      const Vec3 p = normalized(d(i, j));
      const Vec3 pi_ = normalized(d((i + 1) % ni, j));
      const Vec3 pij = normalized(d((i + 1) % ni, (j + 1) % nj));
      const Vec3 pj = normalized(d(i, (j + 1) % nj));
      total += solid_angle(p, pi_, pij) + solid_angle(p, pij, pj);
    }
  }
  return total / (4.0 * pi);
}

// For H = d . sigma: C1 of the empty band is +deg, of the occupied band -deg
// (library sign convention, anchored on the monopole).
inline double two_band_c1(const std::function<Vec3(int, int)>& d, int ni, int nj, bool wrap_i, bool wrap_j, bool empty) {
  const double deg = sphere_degree(d, ni, nj, wrap_i, wrap_j);
  return empty ? deg : -deg;
}

// Winding of a scalar loop f(k), k in [0, 2 pi), from n dense samples.
inline double dense_winding(const std::function<std::complex<double>(double)>& f, int n) {
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    const double k0 = 2.0 * pi * j / n;
    const double k1 = 2.0 * pi * (j + 1) / n;
    total += std::arg(f(k1) / f(k0));
  }
  return total / (2.0 * pi);
}

inline Vec3 suspension_point(double t, double k) {
  return {std::sin(pi * t) * std::cos(k), std::sin(pi * t) * std::sin(k), std::cos(pi * t)};
}

using Vec5 = Eigen::Matrix<double, 5, 1>;

// The S^2 x S^2 -> S^4 map of the five-gamma model, in oriented chart
// order (k1, t1, k2, t2).
inline Vec5 chart_map(const std::array<double, 4>& u) {
  const Vec3 x1 = suspension_point(u[1], u[0]);
  const Vec3 x2 = suspension_point(u[3], u[2]);
  Vec5 y;
  y << x1[0] * x2[0], x1[0] * x2[1], x1[0] * x2[2], x1[1], x1[2];
  return y;
}

// Degree of chart_map by signed preimage counting at a regular value.
inline int chart_degree() {
  Vec5 y0;
  y0 << 0.3, -0.2, 0.5, 0.4, 0.6;
  y0.normalize();
  const double r = std::sqrt(1.0 - y0(3) * y0(3) - y0(4) * y0(4));
  int degree = 0;
  for (double s : {1.0, -1.0}) {
    const Vec3 x1{s * r, y0(3), y0(4)};
    const Vec3 x2{y0(0) / (s * r), y0(1) / (s * r), y0(2) / (s * r)};
    const std::array<double, 4> u{std::atan2(x1[1], x1[0]), std::acos(x1[2]) / pi, std::atan2(x2[1], x2[0]),
                                  std::acos(x2[2]) / pi};
    Eigen::Matrix<double, 5, 5> m;
    m.col(0) = chart_map(u);
    for (int a = 0; a < 4; ++a) {
      auto up = u, dn = u;
      up[static_cast<std::size_t>(a)] += 1e-6;
      dn[static_cast<std::size_t>(a)] -= 1e-6;
      m.col(a + 1) = (chart_map(up) - chart_map(dn)) / 2e-6;
    }
    degree += m.determinant() > 0 ? 1 : -1;
  }
  return degree;
}

}  // namespace oracle
