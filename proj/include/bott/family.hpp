#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bott/error.hpp"
#include "bott/grid.hpp"
#include "bott/parallel.hpp"

namespace bott {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using cplx = std::complex<double>;
using MatrixXc = Matrix<cplx>;

namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double gap = 1e-8;
inline constexpr double projector = 1e-10;
inline constexpr double trace = 1e-8;
inline constexpr double unitary = 1e-10;
inline constexpr double flat = 1e-10;
}  // namespace tol

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return static_cast<double>(m.cwiseAbs().maxCoeff());
}

// Builds one value per grid point as a data-parallel map.
template <typename Value, typename Fn>
std::vector<Value> generate_points(std::size_t n, Fn&& fn) {
  std::vector<Value> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

namespace detail {

// Throws invariant-violation naming the worst point if residual(i) > limit anywhere.
template <typename Fn>
void require_pointwise(const ParameterGrid& grid, double limit, const std::string& what, Fn&& residual) {
  const auto r = generate_points<double>(grid.size(), residual);
  std::size_t worst = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] <= r[worst])) worst = i;
  }
  if (!r.empty() && !(r[worst] <= limit)) {
    throw Error(errc::invariant_violation, what + " violated at " + grid.describe_point(worst) +
                                               ": residual " + std::to_string(r[worst]));
  }
}

}  // namespace detail

// Immutable per-point matrix field over a grid.
template <typename Scalar>
class BasicFamily {
 public:
  using scalar_type = Scalar;
  using matrix_type = Matrix<Scalar>;

  BasicFamily(ParameterGrid grid, int dim, std::vector<matrix_type> values)
      : grid_(std::move(grid)), dim_(dim), values_(std::move(values)) {
    if (dim_ < 0) throw Error(errc::shape_mismatch, "negative matrix dimension");
    if (values_.size() != grid_.size()) {
      throw Error(errc::shape_mismatch, "family has " + std::to_string(values_.size()) +
                                            " values for " + std::to_string(grid_.size()) + " grid points");
    }
    for (const auto& m : values_) {
      if (m.rows() != dim_ || m.cols() != dim_) {
        throw Error(errc::shape_mismatch, "matrix is not " + std::to_string(dim_) + "x" + std::to_string(dim_));
      }
    }
  }

  const ParameterGrid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return values_.size(); }
  const matrix_type& operator[](std::size_t i) const { return values_[i]; }
  std::span<const matrix_type> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

 protected:
  ParameterGrid grid_;
  int dim_;
  std::vector<matrix_type> values_;
};

// Hermitian family H(x), optionally with a declared chiral operator Gamma
// (Gamma Hermitian, Gamma^2 = I, H Gamma = -Gamma H).
template <typename Scalar>
class BasicHamiltonianFamily : public BasicFamily<Scalar> {
 public:
  using matrix_type = Matrix<Scalar>;

  BasicHamiltonianFamily(ParameterGrid grid, int dim, std::vector<matrix_type> values,
                         std::optional<matrix_type> chiral = std::nullopt)
      : BasicFamily<Scalar>(std::move(grid), dim, std::move(values)), chiral_(std::move(chiral)) {
    validate();
  }

  const std::optional<matrix_type>& chiral() const noexcept { return chiral_; }
  bool is_chiral() const noexcept { return chiral_.has_value(); }

  BasicHamiltonianFamily with_values(ParameterGrid grid, std::vector<matrix_type> values) const {
    return BasicHamiltonianFamily(std::move(grid), this->dim_, std::move(values), chiral_);
  }

 private:
  void validate() const {
    const auto& g = this->grid_;
    const auto& v = this->values_;
    detail::require_pointwise(g, tol::hermitian, "Hermiticity",
                              [&](std::size_t i) { return max_abs(v[i] - v[i].adjoint()); });
    if (chiral_) {
      const matrix_type& c = *chiral_;
      if (c.rows() != this->dim_ || c.cols() != this->dim_) {
        throw Error(errc::shape_mismatch, "chiral operator has wrong shape");
      }
      const auto id = matrix_type::Identity(this->dim_, this->dim_);
      if (max_abs(c - c.adjoint()) > tol::hermitian || max_abs(c * c - id) > tol::hermitian) {
        throw Error(errc::invariant_violation, "chiral operator must be Hermitian with square I");
      }
      detail::require_pointwise(g, tol::hermitian, "chiral anticommutation",
                                [&](std::size_t i) { return max_abs(v[i] * c + c * v[i]); });
    }
    // Suspension ends: constant along the collapsed axes.
    for (int a = 0; a < g.rank(); ++a) {
      const Axis& ax = g.axis(a);
      if (ax.kind != AxisKind::suspension || ax.collapsed == 0) continue;
      detail::require_pointwise(g, tol::hermitian, "constancy at suspension ends", [&](std::size_t i) {
        const int j = g.index_along(i, a);
        if (j != 0 && j != ax.size - 1) return 0.0;
        std::size_t base = i;
        for (int b = a + 1; b <= a + ax.collapsed; ++b) base -= g.index_along(i, b) * g.stride(b);
        return max_abs(v[i] - v[base]);
      });
    }
  }

  std::optional<matrix_type> chiral_;
};

// Orthogonal projectors of constant rank.
template <typename Scalar>
class BasicProjectorFamily : public BasicFamily<Scalar> {
 public:
  using matrix_type = Matrix<Scalar>;

  BasicProjectorFamily(ParameterGrid grid, int dim, int rank, std::vector<matrix_type> values)
      : BasicFamily<Scalar>(std::move(grid), dim, std::move(values)), rank_(rank) {
    const auto& v = this->values_;
    detail::require_pointwise(this->grid_, tol::projector, "projector P = P^dag, P^2 = P", [&](std::size_t i) {
      return std::max(max_abs(v[i] - v[i].adjoint()), max_abs(v[i] * v[i] - v[i]));
    });
    detail::require_pointwise(this->grid_, tol::trace, "projector rank", [&](std::size_t i) {
      return std::abs(static_cast<double>(std::real(v[i].trace())) - rank_);
    });
  }

  int rank() const noexcept { return rank_; }

  BasicProjectorFamily with_values(ParameterGrid grid, std::vector<matrix_type> values) const {
    return BasicProjectorFamily(std::move(grid), this->dim_, rank_, std::move(values));
  }

 private:
  int rank_;
};

template <typename Scalar>
class BasicUnitaryFamily : public BasicFamily<Scalar> {
 public:
  using matrix_type = Matrix<Scalar>;

  BasicUnitaryFamily(ParameterGrid grid, int dim, std::vector<matrix_type> values)
      : BasicFamily<Scalar>(std::move(grid), dim, std::move(values)) {
    const auto& v = this->values_;
    const auto id = matrix_type::Identity(this->dim_, this->dim_);
    detail::require_pointwise(this->grid_, tol::unitary, "unitarity",
                              [&](std::size_t i) { return max_abs(v[i].adjoint() * v[i] - id); });
  }

  BasicUnitaryFamily with_values(ParameterGrid grid, std::vector<matrix_type> values) const {
    return BasicUnitaryFamily(std::move(grid), this->dim_, std::move(values));
  }
};

using HamiltonianFamily = BasicHamiltonianFamily<cplx>;
using ProjectorFamily = BasicProjectorFamily<cplx>;
using UnitaryFamily = BasicUnitaryFamily<cplx>;

}  // namespace bott
