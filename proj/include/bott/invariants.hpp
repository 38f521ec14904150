#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bott/family.hpp"

namespace bott::invariants {

// Rounded invariant. Accepted (converged) iff residual < kResidualGate; a
// non-converged report keeps its nearest integer but says so.
struct InvariantReport {
  double raw = 0.0;
  long value = 0;
  double residual = 0.0;
  bool converged = false;
  std::string grid;
  std::optional<double> odd_chern;  // winding only: integral of the odd Chern character
};

inline constexpr double kResidualGate = 0.05;

InvariantReport make_report(double raw, const ParameterGrid& grid);

// Winding of det U around a circle grid (n >= 8), principal-branch increments.
// k -> e^{ik} has winding +1. An increment of magnitude >= 0.9 pi is reported
// as grid-too-coarse.
InvariantReport winding_number(const UnitaryFamily& u);

// (i/2pi) tr(U^-1 dU/dk) on each link [k_j, k_{j+1}], from the principal
// matrix log of U(k_j)^-1 U(k_{j+1}). Sum times the step is minus the winding.
std::vector<double> odd_chern_density(const UnitaryFamily& u);

// Orthonormal frame (N x rank) of the range of P at every point.
std::vector<MatrixXc> band_frames(const ProjectorFamily& p);

// Plaquette (field-strength) first Chern number on a closed 2D grid:
// (1/2pi) sum of principal arg of U_a(p) U_b(p+a) U_a(p+b)^* U_b(p)^*, with
// U_a(p) = det(f(p)^dag f(p+a)) normalized and (a, b) in oriented order.
// Integer by construction, gauge invariant.
InvariantReport chern1_link(const ProjectorFamily& p);
InvariantReport chern1_link(const ParameterGrid& grid, std::span<const MatrixXc> frames);

enum class Stencil {
  central3,  // (f(+1) - f(-1)) / 2h
  central5,  // (-f(+2) + 8 f(+1) - 8 f(-1) + f(-2)) / 12h, 3-point next to suspension ends
};

// Per-point density (1/2pi i) tr(P [d_a P, d_b P]) in oriented order, and its
// quadrature (trapezoid along suspension axes). Approaches chern1_link.
std::vector<double> chern1_curvature_density(const ProjectorFamily& p, Stencil stencil = Stencil::central5);
double chern1_curvature(const ProjectorFamily& p, Stencil stencil = Stencil::central5);

// Second Chern number on a closed 4D grid:
// (1/8pi^2) (1/4) eps^{abcd} [tr(F_ab F_cd) - tr F_ab tr F_cd], F_ab = P [D_a P, D_b P] P.
std::vector<double> chern2_density(const ProjectorFamily& p, Stencil stencil = Stencil::central5);
InvariantReport chern2(const ProjectorFamily& p, Stencil stencil = Stencil::central5);

// Closed form of the second Chern form for sum_i y^i gamma_i, -(3/8pi^2) dvol,
// integrated over S^4 with an n^4 hyperspherical quadrature. Tends to -1.
double chern2_dirac_analytic(int n, bool reverse_orientation = false);

// The same 4-form pulled back through the S^2 x S^2 chart
// (t1, k1, t2, k2) -> y, oriented like the grids. The chart map has degree 2.
double chern2_dirac_chart_pullback(int n_t, int n_k);

// Quadrature weight (cell measure) of each point.
std::vector<double> cell_weights(const ParameterGrid& grid);

// "c0,c1,...,density" rows, coordinates first.
std::string density_csv(const ParameterGrid& grid, std::span<const double> density);

}  // namespace bott::invariants
