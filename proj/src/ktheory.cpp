#include "bott/ktheory.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>

namespace bott::ktheory {

namespace {

const cplx kI{0.0, 1.0};

MatrixXc identity(Eigen::Index n) { return MatrixXc::Identity(n, n); }

// Splits a suspension grid point into (t index, inner point).
struct SuspensionPoint {
  int t;
  std::size_t inner;
};

SuspensionPoint split(const ParameterGrid& s, std::size_t p) {
  const std::size_t n = s.inner().size();
  return {static_cast<int>(p / n), p % n};
}

void require_suspension(const HamiltonianFamily& f, const char* op) {
  if (f.grid().kind() != ParameterGrid::Kind::suspension) {
    throw Error(errc::not_suspension, std::string(op) + " needs a family over a suspension grid, got " + f.grid().describe());
  }
}

// Returns N for Gamma = diag(I_N, -I_N) at the t = 0 slice.
int standard_gamma_half(const HamiltonianFamily& f, const char* op) {
  if (f.dim() % 2 != 0 || max_abs(f[0] - trivial_block(f.dim() / 2)) > tol::hermitian) {
    throw Error(errc::not_suspension, std::string(op) + ": t = 0 slice is not Gamma = diag(I, -I)");
  }
  return f.dim() / 2;
}

}  // namespace

StableClassWitness<HamiltonianFamily> stabilize(const HamiltonianFamily& h, int n) {
  if (n < 0) throw Error(errc::shape_mismatch, "padding must be nonnegative");
  return {direct_sum(h, trivial_hamiltonian(h.grid(), n)), n};
}

StableClassWitness<HamiltonianFamily> stabilize(const StableClassWitness<HamiltonianFamily>& w, int n) {
  auto next = stabilize(w.family, n);
  next.padding += w.padding;
  return next;
}

StableClassWitness<ProjectorFamily> stabilize(const ProjectorFamily& p, int n) {
  if (n < 0) throw Error(errc::shape_mismatch, "padding must be nonnegative");
  ProjectorFamily pad(p.grid(), n, n, std::vector<MatrixXc>(p.size(), identity(n)));
  return {direct_sum(p, pad), n};
}

HamiltonianFamily star_product_pointwise(const HamiltonianFamily& h1, const HamiltonianFamily& h2) {
  detail::require_same_grid(h1.grid(), h2.grid(), "star_product");
  require_flat(h1, "star_product left factor");
  require_flat(h2, "star_product right factor");
  const int n1 = negative_count(h1);
  const int n2 = negative_count(h2);
  const MatrixXc t1 = trivial_block(n1);
  const MatrixXc t2 = trivial_block(n2);
  const int dim = h1.dim() * h2.dim() + 2 * n2 * h1.dim() + 2 * n1 * h2.dim();
  auto values = generate_points<MatrixXc>(h1.size(), [&](std::size_t i) {
    return block_diag(block_diag(kron(h1[i], h2[i]), kron(MatrixXc(-h1[i]), t2)), kron(t1, MatrixXc(-h2[i])));
  });
  return HamiltonianFamily(h1.grid(), dim, std::move(values));
}

HamiltonianFamily star_product(const HamiltonianFamily& h1, const HamiltonianFamily& h2) {
  const ParameterGrid grid = ParameterGrid::product(h1.grid(), h2.grid());
  return star_product_pointwise(pullback_projection(h1, grid, Factor::first), pullback_projection(h2, grid, Factor::second));
}

ProjectorFamily star_product_projectors(const ProjectorFamily& p1, const ProjectorFamily& p2) {
  const ParameterGrid grid = ParameterGrid::product(p1.grid(), p2.grid());
  const std::size_t n2pts = p2.grid().size();
  const int r1 = p1.rank(), r2 = p2.rank();
  const int n1 = p1.dim(), n2 = p2.dim();
  const MatrixXc i_r1 = identity(r1), i_r2 = identity(r2);
  const MatrixXc i_n1 = identity(n1), i_n2 = identity(n2);
  auto values = generate_points<MatrixXc>(grid.size(), [&](std::size_t p) {
    const MatrixXc& a = p1[p / n2pts];
    const MatrixXc& b = p2[p % n2pts];
    return block_diag(block_diag(kron(a, b), kron(MatrixXc(i_n1 - a), i_r2)), kron(i_r1, MatrixXc(i_n2 - b)));
  });
  const int dim = n1 * n2 + n1 * r2 + r1 * n2;
  const int rank = r1 * r2 + (n1 - r1) * r2 + r1 * (n2 - r2);
  return ProjectorFamily(grid, dim, rank, std::move(values));
}

HamiltonianFamily suspend(const HamiltonianFamily& h, int n_t) {
  if (!h.is_chiral()) throw Error(errc::missing_chiral, "suspend needs a chiral family");
  require_flat(h, "suspend input");
  const ParameterGrid grid = ParameterGrid::suspension(h.grid(), n_t);
  const MatrixXc& gamma = *h.chiral();
  auto values = generate_points<MatrixXc>(grid.size(), [&](std::size_t p) {
    const auto [j, x] = split(grid, p);
    const auto [c, s] = cos_sin_pi(grid.coordinate(0, j));
    return MatrixXc(c * gamma + s * h[x]);
  });
  return HamiltonianFamily(grid, h.dim(), std::move(values));
}

HamiltonianFamily loop_extend(const HamiltonianFamily& suspended) {
  require_suspension(suspended, "loop_extend");
  const int half = standard_gamma_half(suspended, "loop_extend");
  const ParameterGrid& s = suspended.grid();
  const ParameterGrid& inner = s.inner();
  const int n_t = s.axis(0).size;
  const int m = 2 * (n_t - 1);
  const ParameterGrid grid = ParameterGrid::product(ParameterGrid::circle(m), inner);
  const MatrixXc gamma = trivial_block(half);
  MatrixXc h0 = MatrixXc::Zero(2 * half, 2 * half);
  h0.topRightCorner(half, half) = identity(half);
  h0.bottomLeftCorner(half, half) = identity(half);
  const std::size_t nx = inner.size();
  auto values = generate_points<MatrixXc>(grid.size(), [&](std::size_t p) {
    const int j = static_cast<int>(p / nx);
    if (j < n_t - 1) return suspended[p];
    const auto [c, sn] = cos_sin_pi(2.0 * j / m);
    return MatrixXc(c * gamma + sn * h0);
  });
  return HamiltonianFamily(grid, suspended.dim(), std::move(values));
}

HamiltonianFamily chiral_from_unitary(const UnitaryFamily& u) {
  const int n = u.dim();
  auto values = generate_points<MatrixXc>(u.size(), [&](std::size_t i) {
    MatrixXc h = MatrixXc::Zero(2 * n, 2 * n);
    h.bottomLeftCorner(n, n) = u[i];
    h.topRightCorner(n, n) = u[i].adjoint();
    return h;
  });
  return HamiltonianFamily(u.grid(), 2 * n, std::move(values), trivial_block(n));
}

UnitaryFamily chiral_unitary(const HamiltonianFamily& h) {
  if (!h.is_chiral()) throw Error(errc::missing_chiral, "chiral_unitary needs a chiral family");
  const int half = h.dim() / 2;
  if (h.dim() % 2 != 0 || max_abs(*h.chiral() - trivial_block(half)) > tol::hermitian) {
    throw Error(errc::missing_chiral, "chiral_unitary needs Gamma = diag(I, -I)");
  }
  require_flat(h, "chiral_unitary input");
  std::vector<MatrixXc> values(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) values[i] = h[i].bottomLeftCorner(half, half);
  return UnitaryFamily(h.grid(), half, std::move(values));
}

UnitaryFamily extract_clutching(const HamiltonianFamily& suspended) {
  require_suspension(suspended, "extract_clutching");
  const int half = standard_gamma_half(suspended, "extract_clutching");
  const ParameterGrid& s = suspended.grid();
  const int n_t = s.axis(0).size;
  if ((n_t - 1) % 2 != 0) throw Error(errc::not_suspension, "extract_clutching: t = 1/2 is not a grid point (n_t must be odd)");
  const std::size_t nx = s.inner().size();
  const std::size_t offset = static_cast<std::size_t>((n_t - 1) / 2) * nx;
  std::vector<MatrixXc> values(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    const MatrixXc& h = suspended[offset + x];
    const double diag = std::max(max_abs(h.topLeftCorner(half, half)), max_abs(h.bottomRightCorner(half, half)));
    if (diag > tol::unitary) {
      throw Error(errc::not_suspension, "extract_clutching: t = 1/2 slice is not off-diagonal at " + s.inner().describe_point(x));
    }
    values[x] = h.bottomLeftCorner(half, half);
  }
  return UnitaryFamily(s.inner(), half, std::move(values));
}

namespace {

UnitaryFamily bott_unitary_impl(const HamiltonianFamily& h, int n_t, bool loop) {
  require_flat(h, "bott_unitary input");
  const int n = h.dim();
  MatrixXc h0;
  if (loop) {
    const int neg = negative_count(h);
    h0 = identity(n);
    h0.topLeftCorner(neg, neg) *= -1.0;
  }
  const int m = 2 * (n_t - 1);
  const ParameterGrid grid = loop ? ParameterGrid::product(ParameterGrid::circle(m), h.grid())
                                  : ParameterGrid::suspension(h.grid(), n_t);
  const std::size_t nx = h.grid().size();
  const MatrixXc id = identity(n);
  auto values = generate_points<MatrixXc>(grid.size(), [&](std::size_t p) {
    const int j = static_cast<int>(p / nx);
    const double t = loop ? 2.0 * j / m : grid.coordinate(0, j);
    const auto [c, s] = cos_sin_pi(t);
    const MatrixXc& arm = (loop && j >= n_t - 1) ? h0 : h[p % nx];
    return MatrixXc(kI * c * id + s * arm);
  });
  return UnitaryFamily(grid, n, std::move(values));
}

}  // namespace

UnitaryFamily bott_unitary(const HamiltonianFamily& h, int n_t) { return bott_unitary_impl(h, n_t, false); }

UnitaryFamily bott_unitary_loop(const HamiltonianFamily& h, int n_t) {
  ParameterGrid::suspension(h.grid(), n_t);  // validates n_t
  return bott_unitary_impl(h, n_t, true);
}

MatrixXc similarity_homotopy(const MatrixXc& s, double t) {
  if (s.rows() != s.cols()) throw Error(errc::shape_mismatch, "similarity_homotopy needs a square matrix");
  Eigen::FullPivLU<MatrixXc> lu(s);
  if (!lu.isInvertible()) throw Error(errc::singular_matrix, "similarity_homotopy: S is singular");
  const Eigen::Index n = s.rows();
  const double c = std::cos(std::numbers::pi * t / 2.0);
  const double sn = std::sin(std::numbers::pi * t / 2.0);
  MatrixXc r(2 * n, 2 * n), r_inv(2 * n, 2 * n);
  const MatrixXc id = identity(n);
  r << c * id, -sn * id, sn * id, c * id;
  r_inv << c * id, sn * id, -sn * id, c * id;
  return block_diag(s, id) * r * block_diag(MatrixXc(lu.inverse()), id) * r_inv;
}

std::pair<double, double> endpoints_check(const MatrixXc& p_e, const MatrixXc& p_f, const MatrixXc& s) {
  const Eigen::Index n = s.rows();
  if (p_e.rows() != n || p_f.rows() != n) throw Error(errc::shape_mismatch, "endpoints_check: shapes differ");
  const MatrixXc zero = MatrixXc::Zero(n, n);
  const MatrixXc e = block_diag(p_e, zero);
  const MatrixXc f = block_diag(p_f, zero);
  const MatrixXc t0 = similarity_homotopy(s, 0.0);
  const MatrixXc t1 = similarity_homotopy(s, 1.0);
  return {max_abs(t0 * e * t0.inverse() - e), max_abs(t1 * e * t1.inverse() - f)};
}

std::vector<std::size_t> reflection_permutation(const ParameterGrid& grid, int axis) {
  const Axis& a = grid.axis(axis);
  const auto stride = static_cast<long long>(grid.stride(axis));
  std::vector<std::size_t> perm(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const int j = grid.index_along(p, axis);
    const int r = a.kind == AxisKind::periodic ? (a.size - j) % a.size : a.size - 1 - j;
    perm[p] = static_cast<std::size_t>(static_cast<long long>(p) + (r - j) * stride);
  }
  return perm;
}

}  // namespace bott::ktheory
