#include "bott/models.hpp"

#include <cmath>

#include "bott/spectral.hpp"

namespace bott::models {

namespace {

const cplx I1{0.0, 1.0};

bool is_s2(const ParameterGrid& g) {
  return g.kind() == ParameterGrid::Kind::suspension && g.inner().kind() == ParameterGrid::Kind::circle;
}

void require_circle(const ParameterGrid& g, const char* model) {
  if (g.kind() != ParameterGrid::Kind::circle) {
    throw Error(errc::invalid_grid, std::string(model) + " needs a circle grid, got " + g.describe());
  }
}

void require_s2(const ParameterGrid& g, const char* model) {
  if (!is_s2(g)) throw Error(errc::invalid_grid, std::string(model) + " needs an S^2 = suspension(circle) grid, got " + g.describe());
}

MatrixXc sigma(const std::array<double, 3>& x) {
  const Pauli& s = pauli();
  return x[0] * s.x + x[1] * s.y + x[2] * s.z;
}

}  // namespace

const Pauli& pauli() {
  static const Pauli p = [] {
    Pauli s;
    s.id = MatrixXc::Identity(2, 2);
    s.x = MatrixXc::Zero(2, 2);
    s.x(0, 1) = s.x(1, 0) = 1.0;
    s.y = MatrixXc::Zero(2, 2);
    s.y(0, 1) = -I1;
    s.y(1, 0) = I1;
    s.z = MatrixXc::Zero(2, 2);
    s.z(0, 0) = 1.0;
    s.z(1, 1) = -1.0;
    return s;
  }();
  return p;
}

std::array<double, 3> sphere_point(double t, double k) {
  const auto [c, s] = cos_sin_pi(t);
  return {s * std::cos(k), s * std::sin(k), c};
}

std::array<double, 3> sphere_point(const ParameterGrid& grid, std::size_t point, int axis_offset) {
  const double t = grid.coordinate(axis_offset, grid.index_along(point, axis_offset));
  const double k = grid.coordinate(axis_offset + 1, grid.index_along(point, axis_offset + 1));
  return sphere_point(t, k);
}

HamiltonianFamily ssh(double v, double w, const ParameterGrid& circle) {
  require_circle(circle, "ssh");
  auto values = generate_points<MatrixXc>(circle.size(), [&](std::size_t i) {
    const double k = circle.coordinate(0, static_cast<int>(i));
    MatrixXc h = MatrixXc::Zero(2, 2);
    h(1, 0) = v + w * std::polar(1.0, k);
    h(0, 1) = std::conj(h(1, 0));
    return h;
  });
  return HamiltonianFamily(circle, 2, std::move(values), pauli().z);
}

HamiltonianFamily chiral_winding(int winding, const ParameterGrid& circle) {
  require_circle(circle, "chiral_winding");
  auto values = generate_points<MatrixXc>(circle.size(), [&](std::size_t i) {
    const double k = circle.coordinate(0, static_cast<int>(i));
    MatrixXc h = MatrixXc::Zero(2, 2);
    h(1, 0) = std::polar(1.0, winding * k);
    h(0, 1) = std::conj(h(1, 0));
    return h;
  });
  return HamiltonianFamily(circle, 2, std::move(values), pauli().z);
}

HamiltonianFamily dirac_monopole(const ParameterGrid& s2) {
  require_s2(s2, "dirac_monopole");
  auto values = generate_points<MatrixXc>(s2.size(), [&](std::size_t i) { return sigma(sphere_point(s2, i)); });
  return HamiltonianFamily(s2, 2, std::move(values));
}

HamiltonianFamily massive_dirac(double mass, const ParameterGrid& torus2) {
  if (torus2.rank() != 2 || torus2.axis(0).kind != AxisKind::periodic || torus2.axis(1).kind != AxisKind::periodic) {
    throw Error(errc::invalid_grid, "massive_dirac needs a 2-torus grid, got " + torus2.describe());
  }
  auto values = generate_points<MatrixXc>(torus2.size(), [&](std::size_t i) {
    const double k1 = torus2.coordinate(0, torus2.index_along(i, 0));
    const double k2 = torus2.coordinate(1, torus2.index_along(i, 1));
    return sigma({std::sin(k1), std::sin(k2), mass - std::cos(k1) - std::cos(k2)});
  });
  return HamiltonianFamily(torus2, 2, std::move(values));
}

const std::array<MatrixXc, 5>& gamma5() {
  static const std::array<MatrixXc, 5> g = [] {
    const Pauli& s = pauli();
    return std::array<MatrixXc, 5>{kron(s.x, s.x), kron(s.x, s.y), kron(s.x, s.z), kron(s.y, s.id), kron(s.z, s.id)};
  }();
  return g;
}

HamiltonianFamily dirac5(const ParameterGrid& s2xs2) {
  if (s2xs2.kind() != ParameterGrid::Kind::product || !is_s2(s2xs2.first()) || !is_s2(s2xs2.second())) {
    throw Error(errc::invalid_grid, "dirac5 needs a product(S^2, S^2) grid, got " + s2xs2.describe());
  }
  const auto& g = gamma5();
  auto values = generate_points<MatrixXc>(s2xs2.size(), [&](std::size_t i) {
    const auto x1 = sphere_point(s2xs2, i, 0);
    const auto x2 = sphere_point(s2xs2, i, 2);
    const std::array<double, 5> y{x1[0] * x2[0], x1[0] * x2[1], x1[0] * x2[2], x1[1], x1[2]};
    MatrixXc h = MatrixXc::Zero(4, 4);
    for (int a = 0; a < 5; ++a) h += y[static_cast<std::size_t>(a)] * g[static_cast<std::size_t>(a)];
    return h;
  });
  return HamiltonianFamily(s2xs2, 4, std::move(values));
}

HamiltonianFamily generalized_dirac_monopole(const HamiltonianFamily& h, const ParameterGrid& s2) {
  require_s2(s2, "generalized_dirac_monopole");
  require_flat(h, "generalized_dirac_monopole input");
  const ParameterGrid grid = ParameterGrid::product(s2, h.grid());
  const std::size_t nx = h.grid().size();
  const Pauli& s = pauli();
  const MatrixXc id = MatrixXc::Identity(h.dim(), h.dim());
  const MatrixXc y_part = kron(s.y, id);
  const MatrixXc z_part = kron(s.z, id);
  auto values = generate_points<MatrixXc>(grid.size(), [&](std::size_t p) {
    const auto x = sphere_point(s2, p / nx);
    return MatrixXc(x[0] * kron(s.x, h[p % nx]) + x[1] * y_part + x[2] * z_part);
  });
  return HamiltonianFamily(grid, 2 * h.dim(), std::move(values));
}

}  // namespace bott::models
