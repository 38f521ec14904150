#pragma once

#include <utility>

#include "bott/family.hpp"
#include "bott/spectral.hpp"

namespace bott::ktheory {

// A family together with the number of trivial blocks appended to it.
// Hamiltonians are padded with I_n (+) (-I_n), projectors with I_n; padding
// always goes at the end.
template <typename Family>
struct StableClassWitness {
  Family family;
  int padding = 0;
};

StableClassWitness<HamiltonianFamily> stabilize(const HamiltonianFamily& h, int n);
StableClassWitness<HamiltonianFamily> stabilize(const StableClassWitness<HamiltonianFamily>& w, int n);
StableClassWitness<ProjectorFamily> stabilize(const ProjectorFamily& p, int n);

// H1 * H2 on a shared grid, both flat:
//   H1 (x) H2  (+)  (-H1) (x) (I_n2 (+) -I_n2)  (+)  (I_n1 (+) -I_n1) (x) (-H2)
// with n_i the (constant) number of negative eigenvalues of H_i.
// Output dimension N1 N2 + 2 n2 N1 + 2 n1 N2.
HamiltonianFamily star_product_pointwise(const HamiltonianFamily& h1, const HamiltonianFamily& h2);

// External star product over X x Y: pullbacks of H1 and H2, then the pointwise product.
HamiltonianFamily star_product(const HamiltonianFamily& h1, const HamiltonianFamily& h2);

// P1 (x) P2 (+) (I_N1 - P1) (x) I_r2 (+) I_r1 (x) (I_N2 - P2) over X x Y,
// r_i = rank P_i. Rank r1 r2 + (N1 - r1) r2 + r1 (N2 - r2).
ProjectorFamily star_product_projectors(const ProjectorFamily& p1, const ProjectorFamily& p2);

// H(t, x) = cos(pi t) Gamma + sin(pi t) H(x) over S(X). H must be chiral and flat.
HamiltonianFamily suspend(const HamiltonianFamily& h, int n_t);

// Extends a suspended family (Gamma = diag(I, -I) at t = 0) past t = 1 with
// cos(pi t) Gamma + sin(pi t) H0, H0 = [[0, I], [I, 0]], giving a loop on
// t in [0, 2). The result lives on product(circle(2 (n_t - 1)), X) with
// t = k / pi on the circle axis.
HamiltonianFamily loop_extend(const HamiltonianFamily& suspended);

// Chiral family [[0, U^dag], [U, 0]] with Gamma = diag(I, -I).
HamiltonianFamily chiral_from_unitary(const UnitaryFamily& u);

// Lower-left block of a flat chiral family with Gamma = diag(I_N, -I_N), so
// that H = [[0, U^dag], [U, 0]].
UnitaryFamily chiral_unitary(const HamiltonianFamily& h);

// Lower-left block U(x) of the t = 1/2 slice of a suspension whose t = 0
// slice is Gamma = diag(I_N, -I_N): the clutching function g_{+-}.
UnitaryFamily extract_clutching(const HamiltonianFamily& suspended);

// U(t, x) = i cos(pi t) I + sin(pi t) h(x) over S(X); h flat.
UnitaryFamily bott_unitary(const HamiltonianFamily& h, int n_t);

// Same, extended for 1 <= t <= 2 by i cos(pi t) I + sin(pi t) (-I_n (+) I_{N-n}),
// n = number of negative eigenvalues of h. Lives on product(circle(2 (n_t - 1)), X).
UnitaryFamily bott_unitary_loop(const HamiltonianFamily& h, int n_t);

// T_t = (S (+) I) R_t (S^-1 (+) I) R_t^-1 with R_t the rotation by pi t / 2
// between the two blocks; T_0 = I, T_1 = S (+) S^-1.
MatrixXc similarity_homotopy(const MatrixXc& s, double t);

// ( |T_0 (P_E (+) 0) T_0^-1 - P_E (+) 0|, |T_1 (P_E (+) 0) T_1^-1 - P_F (+) 0| ), max-abs norm.
std::pair<double, double> endpoints_check(const MatrixXc& p_e, const MatrixXc& p_f, const MatrixXc& s);

// Index reversal along one stored axis: periodic j -> -j mod n, suspension j -> n-1-j.
std::vector<std::size_t> reflection_permutation(const ParameterGrid& grid, int axis);

template <typename Family>
Family reflect_coordinate(const Family& f, int axis) {
  if (axis < 0 || axis >= f.grid().rank()) {
    throw Error(errc::bad_axis, "axis " + std::to_string(axis) + " out of range for " + f.grid().describe());
  }
  const auto perm = reflection_permutation(f.grid(), axis);
  std::vector<typename Family::matrix_type> values(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) values[i] = f[perm[i]];
  return f.with_values(f.grid(), std::move(values));
}

enum class Factor { first, second };

// Pulls F over one factor back to the product grid (constant along the other).
template <typename Family>
Family pullback_projection(const Family& f, const ParameterGrid& product, Factor which) {
  const bool first = which == Factor::first;
  const ParameterGrid& factor = product.kind() == ParameterGrid::Kind::product
                                    ? (first ? product.first() : product.second())
                                    : product;
  if (!(factor == f.grid())) {
    throw Error(errc::grid_mismatch, "pullback: factor " + factor.describe() + " does not match " + f.grid().describe());
  }
  const std::size_t other = product.size() / f.grid().size();
  std::vector<typename Family::matrix_type> values(product.size());
  for (std::size_t p = 0; p < product.size(); ++p) values[p] = f[first ? p / other : p % f.grid().size()];
  return f.with_values(product, std::move(values));
}

// Restriction of F over X x Y to X x {y} (which = first) or {x} x Y
// (which = second), where `at` is the point index in the other factor.
template <typename Family>
Family restrict_to_factor(const Family& f, Factor which, std::size_t at) {
  const ParameterGrid& g = f.grid();
  if (g.kind() != ParameterGrid::Kind::product) throw Error(errc::invalid_grid, "restriction needs a product grid");
  const bool first = which == Factor::first;
  const ParameterGrid& keep = first ? g.first() : g.second();
  const std::size_t n2 = g.second().size();
  if (at >= (first ? n2 : g.first().size())) throw Error(errc::bad_axis, "restriction point out of range");
  std::vector<typename Family::matrix_type> values(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) values[i] = f[first ? i * n2 + at : at * n2 + i];
  return f.with_values(keep, std::move(values));
}

}  // namespace bott::ktheory
