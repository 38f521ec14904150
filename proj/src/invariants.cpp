#include "bott/invariants.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace bott::invariants {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLinkFloor = 1e-8;
constexpr double kMaxIncrement = 0.9 * kPi;

void require_closed(const ParameterGrid& g, int rank, const char* op) {
  if (g.rank() != rank || !g.is_closed()) {
    throw Error(errc::invalid_grid, std::string(op) + " needs a closed " + std::to_string(rank) + "D grid, got " + g.describe());
  }
}

// Derivative of the field along one axis at point p.
MatrixXc derivative(const ProjectorFamily& f, std::size_t p, int axis, Stencil stencil) {
  const ParameterGrid& g = f.grid();
  const Axis& a = g.axis(axis);
  const double h = g.step(axis);
  auto at = [&](int off) -> const MatrixXc& { return f[*g.shifted(p, axis, off)]; };
  const int j = g.index_along(p, axis);
  if (a.kind == AxisKind::suspension) {
    if (j == 0) return (at(1) - f[p]) / h;
    if (j == a.size - 1) return (f[p] - at(-1)) / h;
    if (stencil == Stencil::central3 || j < 2 || j > a.size - 3) return (at(1) - at(-1)) / (2.0 * h);
  } else if (stencil == Stencil::central3) {
    return (at(1) - at(-1)) / (2.0 * h);
  }
  return (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
}

double weighted_total(const ParameterGrid& g, const std::vector<double>& density) {
  const auto w = cell_weights(g);
  std::vector<double> terms(density.size());
  for (std::size_t i = 0; i < density.size(); ++i) terms[i] = density[i] * w[i];
  return pairwise_sum(terms);
}

cplx unit(cplx z) { return z / std::abs(z); }

}  // namespace

InvariantReport make_report(double raw, const ParameterGrid& grid) {
  InvariantReport r;
  r.raw = raw;
  r.value = std::lround(raw);
  r.residual = std::abs(raw - static_cast<double>(r.value));
  r.converged = r.residual < kResidualGate;
  r.grid = grid.describe();
  return r;
}

InvariantReport winding_number(const UnitaryFamily& u) {
  const ParameterGrid& g = u.grid();
  if (g.kind() != ParameterGrid::Kind::circle) throw Error(errc::invalid_grid, "winding_number needs a circle grid, got " + g.describe());
  const std::size_t n = g.size();
  if (n < 8) throw Error(errc::grid_too_coarse, "winding_number needs at least 8 points");
  const auto dets = generate_points<cplx>(n, [&](std::size_t i) { return unit(u[i].determinant()); });
  std::vector<double> steps(n);
  for (std::size_t j = 0; j < n; ++j) {
    steps[j] = std::arg(dets[(j + 1) % n] * std::conj(dets[j]));
    if (std::abs(steps[j]) >= kMaxIncrement) {
      throw Error(errc::grid_too_coarse, "phase of det U jumps by " + std::to_string(steps[j]) + " after " + g.describe_point(j));
    }
  }
  auto report = make_report(pairwise_sum(steps) / (2.0 * kPi), g);
  report.odd_chern = -report.raw;
  return report;
}

std::vector<double> odd_chern_density(const UnitaryFamily& u) {
  const ParameterGrid& g = u.grid();
  if (g.kind() != ParameterGrid::Kind::circle) throw Error(errc::invalid_grid, "odd_chern_density needs a circle grid");
  const std::size_t n = g.size();
  const double h = g.step(0);
  return generate_points<double>(n, [&](std::size_t j) {
    const MatrixXc w = u[j].adjoint() * u[(j + 1) % n];
    Eigen::ComplexEigenSolver<MatrixXc> es(w, false);
    double phase = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) phase += std::arg(es.eigenvalues()(k));
    // (i / 2pi) * (i * phase) / h
    return -phase / (2.0 * kPi * h);
  });
}

std::vector<MatrixXc> band_frames(const ProjectorFamily& p) {
  const int rank = p.rank();
  return generate_points<MatrixXc>(p.size(), [&](std::size_t i) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(p[i]);
    // Eigenvalues ascending: the last `rank` columns span the range.
    return MatrixXc(es.eigenvectors().rightCols(rank));
  });
}

InvariantReport chern1_link(const ProjectorFamily& p) {
  const auto frames = band_frames(p);
  return chern1_link(p.grid(), frames);
}

InvariantReport chern1_link(const ParameterGrid& g, std::span<const MatrixXc> frames) {
  require_closed(g, 2, "chern1_link");
  if (frames.size() != g.size()) throw Error(errc::shape_mismatch, "one frame per grid point expected");
  const int a = g.orientation_sign() > 0 ? 0 : 1;
  const int b = 1 - a;

  auto link = [&](std::size_t p, int axis) {
    const std::size_t q = *g.shifted(p, axis, 1);
    const cplx d = (frames[p].adjoint() * frames[q]).determinant();
    if (std::abs(d) < kLinkFloor) {
      throw Error(errc::singular_link, "link overlap vanishes at " + g.describe_point(p) + "; refine the grid");
    }
    return unit(d);
  };
  auto is_base = [&](std::size_t p, int axis) {
    return g.axis(axis).kind == AxisKind::periodic || g.index_along(p, axis) < g.axis(axis).size - 1;
  };

  const auto flux = generate_points<double>(g.size(), [&](std::size_t p) {
    if (!is_base(p, a) || !is_base(p, b)) return 0.0;
    const std::size_t pa = *g.shifted(p, a, 1);
    const std::size_t pb = *g.shifted(p, b, 1);
    const cplx loop = link(p, a) * link(pa, b) * std::conj(link(pb, a)) * std::conj(link(p, b));
    return std::arg(loop);
  });
  return make_report(pairwise_sum(flux) / (2.0 * kPi), g);
}

std::vector<double> cell_weights(const ParameterGrid& g) {
  return generate_points<double>(g.size(), [&](std::size_t p) {
    double w = 1.0;
    for (int ax = 0; ax < g.rank(); ++ax) {
      w *= g.step(ax);
      const Axis& a = g.axis(ax);
      if (a.kind == AxisKind::suspension) {
        const int j = g.index_along(p, ax);
        if (j == 0 || j == a.size - 1) w *= 0.5;
      }
    }
    return w;
  });
}

std::vector<double> chern1_curvature_density(const ProjectorFamily& f, Stencil stencil) {
  require_closed(f.grid(), 2, "chern1_curvature");
  const double orient = f.grid().orientation_sign();
  return generate_points<double>(f.size(), [&](std::size_t p) {
    const MatrixXc d0 = derivative(f, p, 0, stencil);
    const MatrixXc d1 = derivative(f, p, 1, stencil);
    const cplx tr = (f[p] * (d0 * d1 - d1 * d0)).trace();
    // (1 / 2 pi i) tr(...); the trace is purely imaginary.
    return orient * std::real(tr / cplx(0.0, 2.0 * kPi));
  });
}

double chern1_curvature(const ProjectorFamily& f, Stencil stencil) {
  return weighted_total(f.grid(), chern1_curvature_density(f, stencil));
}

std::vector<double> chern2_density(const ProjectorFamily& f, Stencil stencil) {
  require_closed(f.grid(), 4, "chern2");
  const double scale = f.grid().orientation_sign() / (4.0 * kPi * kPi);
  return generate_points<double>(f.size(), [&](std::size_t p) {
    const MatrixXc& pp = f[p];
    std::array<MatrixXc, 4> d;
    for (int ax = 0; ax < 4; ++ax) d[static_cast<std::size_t>(ax)] = derivative(f, p, ax, stencil);
    auto curv = [&](int x, int y) {
      const auto& dx = d[static_cast<std::size_t>(x)];
      const auto& dy = d[static_cast<std::size_t>(y)];
      return MatrixXc(pp * (dx * dy - dy * dx) * pp);
    };
    const MatrixXc f01 = curv(0, 1), f23 = curv(2, 3);
    const MatrixXc f02 = curv(0, 2), f13 = curv(1, 3);
    const MatrixXc f03 = curv(0, 3), f12 = curv(1, 2);
    auto pair = [](const MatrixXc& x, const MatrixXc& y) { return (x * y).trace() - x.trace() * y.trace(); };
    // (1/4) eps^{abcd} X_ab,cd = 2 (X_01,23 - X_02,13 + X_03,12)
    const cplx sum = pair(f01, f23) - pair(f02, f13) + pair(f03, f12);
    return scale * std::real(sum);
  });
}

InvariantReport chern2(const ProjectorFamily& f, Stencil stencil) {
  return make_report(weighted_total(f.grid(), chern2_density(f, stencil)), f.grid());
}

namespace {

using Point5 = Eigen::Matrix<double, 5, 1>;

// Integral of -(3/8pi^2) det[y, d1 y, .., d4 y] over a box chart, given the
// chart map, per-axis ranges and midpoint/periodic sampling.
double pullback_integral(const std::function<Point5(const std::array<double, 4>&)>& chart,
                         const std::array<std::pair<double, double>, 4>& range, const std::array<int, 4>& n,
                         bool absolute) {
  std::array<double, 4> h{};
  for (std::size_t i = 0; i < 4; ++i) h[i] = (range[i].second - range[i].first) / n[i];
  const std::size_t total = static_cast<std::size_t>(n[0]) * n[1] * n[2] * n[3];
  const double fd = 1e-5;
  const auto terms = generate_points<double>(total, [&](std::size_t idx) {
    std::array<double, 4> u{};
    std::size_t rest = idx;
    for (int i = 3; i >= 0; --i) {
      const auto ui = static_cast<std::size_t>(i);
      u[ui] = range[ui].first + (static_cast<double>(rest % n[ui]) + 0.5) * h[ui];
      rest /= n[ui];
    }
    Eigen::Matrix<double, 5, 5> m;
    m.col(0) = chart(u);
    for (std::size_t i = 0; i < 4; ++i) {
      auto up = u, dn = u;
      up[i] += fd;
      dn[i] -= fd;
      m.col(static_cast<Eigen::Index>(i) + 1) = (chart(up) - chart(dn)) / (2.0 * fd);
    }
    const double det = m.determinant();
    return (absolute ? std::abs(det) : det) * h[0] * h[1] * h[2] * h[3];
  });
  return -3.0 / (8.0 * kPi * kPi) * pairwise_sum(terms);
}

}  // namespace

double chern2_dirac_analytic(int n, bool reverse_orientation) {
  if (n < 8) throw Error(errc::grid_too_coarse, "chern2_dirac_analytic needs n >= 8");
  auto hyperspherical = [](const std::array<double, 4>& u) {
    const double s1 = std::sin(u[0]), s2 = std::sin(u[1]), s3 = std::sin(u[2]);
    Point5 y;
    y << s1 * s2 * s3 * std::cos(u[3]), s1 * s2 * s3 * std::sin(u[3]), s1 * s2 * std::cos(u[2]), s1 * std::cos(u[1]),
        std::cos(u[0]);
    return y;
  };
  // Integrated against the standard orientation of S^4: |det| is the volume element.
  const double v = pullback_integral(hyperspherical, {{{0, kPi}, {0, kPi}, {0, kPi}, {0, 2 * kPi}}}, {n, n, n, n}, true);
  return reverse_orientation ? -v : v;
}

double chern2_dirac_chart_pullback(int n_t, int n_k) {
  // Oriented order (k1, t1, k2, t2); same parity as the stored (t1, k1, t2, k2).
  auto chart = [](const std::array<double, 4>& u) {
    auto x = [](double k, double t) {
      return std::array<double, 3>{std::sin(kPi * t) * std::cos(k), std::sin(kPi * t) * std::sin(k), std::cos(kPi * t)};
    };
    const auto x1 = x(u[0], u[1]);
    const auto x2 = x(u[2], u[3]);
    Point5 y;
    y << x1[0] * x2[0], x1[0] * x2[1], x1[0] * x2[2], x1[1], x1[2];
    return y;
  };
  return pullback_integral(chart, {{{0, 2 * kPi}, {0, 1}, {0, 2 * kPi}, {0, 1}}}, {n_k, n_t, n_k, n_t}, false);
}

std::string density_csv(const ParameterGrid& g, std::span<const double> density) {
  if (density.size() != g.size()) throw Error(errc::shape_mismatch, "density size does not match grid");
  std::ostringstream os;
  os.precision(17);
  for (int ax = 0; ax < g.rank(); ++ax) os << (g.axis(ax).kind == AxisKind::periodic ? "k" : "t") << ax << ",";
  os << "density\n";
  for (std::size_t p = 0; p < g.size(); ++p) {
    for (int ax = 0; ax < g.rank(); ++ax) os << g.coordinate(ax, g.index_along(p, ax)) << ",";
    os << density[p] << "\n";
  }
  return os.str();
}

}  // namespace bott::invariants
