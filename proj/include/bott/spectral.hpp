#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bott/family.hpp"

namespace bott {

enum class Band { occupied, empty };

// Block-diagonal a (+) b.
template <typename DA, typename DB>
auto block_diag(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  Matrix<Scalar> out = Matrix<Scalar>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

template <typename DA, typename DB>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// I_n (+) (-I_n).
template <typename Scalar = cplx>
Matrix<Scalar> trivial_block(int n) {
  Matrix<Scalar> out = Matrix<Scalar>::Identity(2 * n, 2 * n);
  out.bottomRightCorner(n, n) *= Scalar(-1);
  return out;
}

template <typename Derived>
Matrix<typename Derived::Scalar> hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.adjoint()) * typename Derived::RealScalar(0.5);
}

namespace detail {

template <typename Scalar>
struct PointSpectrum {
  double min_abs = 0.0;
  int negatives = 0;
  Matrix<Scalar> result;
};

// Diagonalizes every point, failing with gap-violation at the worst point when
// any eigenvalue lies within tol::gap of zero; `make` builds the per-point
// result from (eigenvalues, eigenvectors).
template <typename Scalar, typename Make>
std::vector<PointSpectrum<Scalar>> spectra(const BasicHamiltonianFamily<Scalar>& h, Make&& make) {
  auto out = generate_points<PointSpectrum<Scalar>>(h.size(), [&](std::size_t i) {
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(h[i]);
    const auto& ev = es.eigenvalues();
    PointSpectrum<Scalar> p;
    p.min_abs = ev.size() ? static_cast<double>(ev.cwiseAbs().minCoeff()) : std::numeric_limits<double>::infinity();
    p.negatives = static_cast<int>((ev.array() < 0).count());
    if (p.min_abs > tol::gap) p.result = make(ev, es.eigenvectors());
    return p;
  });
  std::size_t worst = 0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].min_abs < out[worst].min_abs) worst = i;
  }
  if (!out.empty() && !(out[worst].min_abs > tol::gap)) {
    throw Error(errc::gap_violation, "family is gapless at " + h.grid().describe_point(worst) +
                                         ": min |eigenvalue| = " + std::to_string(out[worst].min_abs));
  }
  return out;
}

}  // namespace detail

// Smallest |eigenvalue| over the grid; admissible iff > tol::gap.
template <typename Scalar>
double min_gap(const BasicHamiltonianFamily<Scalar>& h) {
  const auto gaps = generate_points<double>(h.size(), [&](std::size_t i) {
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(h[i], Eigen::EigenvaluesOnly);
    return es.eigenvalues().size() ? static_cast<double>(es.eigenvalues().cwiseAbs().minCoeff())
                                   : std::numeric_limits<double>::infinity();
  });
  return gaps.empty() ? std::numeric_limits<double>::infinity() : *std::min_element(gaps.begin(), gaps.end());
}

// max_x |H(x)^2 - I|.
template <typename Scalar>
double flatness_defect(const BasicHamiltonianFamily<Scalar>& h) {
  double worst = 0.0;
  const auto id = Matrix<Scalar>::Identity(h.dim(), h.dim());
  for (const auto& m : h) worst = std::max(worst, max_abs(m * m - id));
  return worst;
}

template <typename Scalar>
bool is_flat(const BasicHamiltonianFamily<Scalar>& h, double tolerance = tol::flat) {
  return flatness_defect(h) <= tolerance;
}

template <typename Scalar>
void require_flat(const BasicHamiltonianFamily<Scalar>& h, const std::string& what) {
  const double d = flatness_defect(h);
  if (!(d <= tol::flat)) {
    throw Error(errc::not_flat, what + " must be flat (H^2 = I); defect " + std::to_string(d));
  }
}

// Number of negative eigenvalues, asserted constant over the grid.
template <typename Scalar>
int negative_count(const BasicHamiltonianFamily<Scalar>& h) {
  const auto s = detail::spectra(h, [](const auto&, const auto&) { return Matrix<Scalar>(); });
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].negatives != s[0].negatives) {
      throw Error(errc::rank_jump, "negative-eigenvalue count jumps at " + h.grid().describe_point(i));
    }
  }
  return s.empty() ? 0 : s[0].negatives;
}

// sgn(H(x)) pointwise; same eigenvectors, chiral declaration preserved.
template <typename Scalar>
BasicHamiltonianFamily<Scalar> spectral_flatten(const BasicHamiltonianFamily<Scalar>& h) {
  auto s = detail::spectra(h, [](const auto& ev, const auto& vecs) {
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    const auto signs = ev.unaryExpr([](Real x) { return x > 0 ? Real(1) : Real(-1); });
    return hermitian_part(Matrix<Scalar>(vecs * signs.asDiagonal() * vecs.adjoint()));
  });
  std::vector<Matrix<Scalar>> values(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) values[i] = std::move(s[i].result);
  return BasicHamiltonianFamily<Scalar>(h.grid(), h.dim(), std::move(values), h.chiral());
}

// Projector onto the strictly negative (occupied) or strictly positive (empty)
// eigenspace. Rank jumps across the grid are an error.
template <typename Scalar>
BasicProjectorFamily<Scalar> band_projector(const BasicHamiltonianFamily<Scalar>& h, Band which) {
  const bool occupied = which == Band::occupied;
  auto s = detail::spectra(h, [occupied](const auto& ev, const auto& vecs) {
    Matrix<Scalar> p = Matrix<Scalar>::Zero(vecs.rows(), vecs.rows());
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if ((ev(k) < 0) == occupied) p += vecs.col(k) * vecs.col(k).adjoint();
    }
    return hermitian_part(p);
  });
  std::vector<Matrix<Scalar>> values(s.size());
  int rank = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int r = occupied ? s[i].negatives : h.dim() - s[i].negatives;
    if (i == 0) rank = r;
    if (r != rank) throw Error(errc::rank_jump, "band rank jumps at " + h.grid().describe_point(i));
    values[i] = std::move(s[i].result);
  }
  return BasicProjectorFamily<Scalar>(h.grid(), h.dim(), rank, std::move(values));
}

// Theta(-H): Fermi level at zero.
template <typename Scalar>
BasicProjectorFamily<Scalar> fermi_projector(const BasicHamiltonianFamily<Scalar>& h) {
  return band_projector(h, Band::occupied);
}

namespace detail {

inline void require_same_grid(const ParameterGrid& a, const ParameterGrid& b, const char* op) {
  if (!(a == b)) throw Error(errc::grid_mismatch, std::string(op) + ": grids differ (" + a.describe() + " vs " + b.describe() + ")");
}

template <typename Scalar, typename Fn>
std::vector<Matrix<Scalar>> combine(const BasicFamily<Scalar>& a, const BasicFamily<Scalar>& b, Fn&& fn) {
  return generate_points<Matrix<Scalar>>(a.size(), [&](std::size_t i) { return fn(a[i], b[i]); });
}

}  // namespace detail

// A (+) B; chiral operator Gamma_A (+) Gamma_B when both are declared.
template <typename Scalar>
BasicHamiltonianFamily<Scalar> direct_sum(const BasicHamiltonianFamily<Scalar>& a,
                                          const BasicHamiltonianFamily<Scalar>& b) {
  detail::require_same_grid(a.grid(), b.grid(), "direct_sum");
  std::optional<Matrix<Scalar>> chiral;
  if (a.is_chiral() && b.is_chiral()) chiral = block_diag(*a.chiral(), *b.chiral());
  return BasicHamiltonianFamily<Scalar>(a.grid(), a.dim() + b.dim(),
                                        detail::combine(a, b, [](const auto& x, const auto& y) { return block_diag(x, y); }),
                                        std::move(chiral));
}

template <typename Scalar>
BasicProjectorFamily<Scalar> direct_sum(const BasicProjectorFamily<Scalar>& a, const BasicProjectorFamily<Scalar>& b) {
  detail::require_same_grid(a.grid(), b.grid(), "direct_sum");
  return BasicProjectorFamily<Scalar>(a.grid(), a.dim() + b.dim(), a.rank() + b.rank(),
                                      detail::combine(a, b, [](const auto& x, const auto& y) { return block_diag(x, y); }));
}

template <typename Scalar>
BasicUnitaryFamily<Scalar> direct_sum(const BasicUnitaryFamily<Scalar>& a, const BasicUnitaryFamily<Scalar>& b) {
  detail::require_same_grid(a.grid(), b.grid(), "direct_sum");
  return BasicUnitaryFamily<Scalar>(a.grid(), a.dim() + b.dim(),
                                    detail::combine(a, b, [](const auto& x, const auto& y) { return block_diag(x, y); }));
}

template <typename Scalar>
BasicHamiltonianFamily<Scalar> negate(const BasicHamiltonianFamily<Scalar>& h) {
  auto values = generate_points<Matrix<Scalar>>(h.size(), [&](std::size_t i) { return Matrix<Scalar>(-h[i]); });
  return BasicHamiltonianFamily<Scalar>(h.grid(), h.dim(), std::move(values), h.chiral());
}

// Pointwise Kronecker product A(x) (x) B(x) on a shared grid. No chiral operator
// is declared on the result.
template <typename Scalar>
BasicHamiltonianFamily<Scalar> tensor(const BasicHamiltonianFamily<Scalar>& a, const BasicHamiltonianFamily<Scalar>& b) {
  detail::require_same_grid(a.grid(), b.grid(), "tensor");
  return BasicHamiltonianFamily<Scalar>(a.grid(), a.dim() * b.dim(),
                                        detail::combine(a, b, [](const auto& x, const auto& y) { return kron(x, y); }));
}

// Constant I_N (+) (-I_N).
template <typename Scalar = cplx>
BasicHamiltonianFamily<Scalar> trivial_hamiltonian(const ParameterGrid& grid, int n) {
  return BasicHamiltonianFamily<Scalar>(grid, 2 * n, std::vector<Matrix<Scalar>>(grid.size(), trivial_block<Scalar>(n)));
}

template <typename Scalar>
BasicHamiltonianFamily<Scalar> constant_hamiltonian(const ParameterGrid& grid, const Matrix<Scalar>& m,
                                                    std::optional<Matrix<Scalar>> chiral = std::nullopt) {
  return BasicHamiltonianFamily<Scalar>(grid, static_cast<int>(m.rows()), std::vector<Matrix<Scalar>>(grid.size(), m),
                                        std::move(chiral));
}

}  // namespace bott
