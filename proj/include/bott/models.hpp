#pragma once

#include <array>

#include "bott/family.hpp"

// Analytic Hamiltonian families. All generators are pure functions of the grid
// coordinates. The S^2 chart is the suspension chart
//   (t, k) -> (sin(pi t) cos k, sin(pi t) sin k, cos(pi t)).
namespace bott::models {

struct Pauli {
  MatrixXc id, x, y, z;
};
const Pauli& pauli();

// S^2 point for suspension coordinates (t, k).
std::array<double, 3> sphere_point(double t, double k);

// Unit S^2 vector at a point of a suspension(circle) grid, or of the
// `axis_offset` pair of a larger grid.
std::array<double, 3> sphere_point(const ParameterGrid& grid, std::size_t point, int axis_offset = 0);

// [[0, v + w e^{-ik}], [v + w e^{ik}, 0]] with Gamma = diag(1, -1).
HamiltonianFamily ssh(double v, double w, const ParameterGrid& circle);

// Flat chiral family [[0, e^{-iwk}], [e^{iwk}, 0]]: clutching function e^{iwk}.
HamiltonianFamily chiral_winding(int winding, const ParameterGrid& circle);

// x.sigma over S^2 = suspension(circle).
HamiltonianFamily dirac_monopole(const ParameterGrid& s2);

// sin k1 s1 + sin k2 s2 + (M - cos k1 - cos k2) s3 over T^2.
HamiltonianFamily massive_dirac(double mass, const ParameterGrid& torus2);

// gamma_i = s1 (x) s_i (i = 1..3), gamma_4 = s2 (x) I, gamma_5 = s3 (x) I.
const std::array<MatrixXc, 5>& gamma5();

// sum_i y^i gamma_i with y = (x1^1 x2, x1^2, x1^3) over product(S^2, S^2).
HamiltonianFamily dirac5(const ParameterGrid& s2xs2);

// x^1 s1 (x) h(x) + x^2 s2 (x) I + x^3 s3 (x) I over product(s2, X); h flat.
HamiltonianFamily generalized_dirac_monopole(const HamiltonianFamily& h, const ParameterGrid& s2);

}  // namespace bott::models
