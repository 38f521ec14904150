#pragma once

#include <cstddef>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bott {

enum class AxisKind { periodic, suspension };

// One coordinate of a grid.
//   periodic:   k_j = 2*pi*j/size, j = 0..size-1 (endpoint excluded)
//   suspension: t_j = j/(size-1),  j = 0..size-1 (both endpoints present)
// A suspension axis collapses the `collapsed` axes that follow it in storage
// order: at t = 0 and t = 1 the family may not depend on them.
struct Axis {
  AxisKind kind = AxisKind::periodic;
  int size = 0;
  int collapsed = 0;

  friend bool operator==(const Axis&, const Axis&) = default;
};

// Discretized parameter space. Grids are immutable values built from
// circle/torus/suspension/product constructors; point index is row-major over
// the stored axes (axis 0 slowest).
class ParameterGrid {
 public:
  enum class Kind { point, circle, torus, suspension, product };

  static ParameterGrid point();
  static ParameterGrid circle(int n);
  static ParameterGrid torus(std::vector<int> sizes);
  // S(inner): storage order is (t, inner axes...).
  static ParameterGrid suspension(const ParameterGrid& inner, int n_t);
  // a x b: storage order is (a axes..., b axes...). product(g, point) == g.
  static ParameterGrid product(const ParameterGrid& a, const ParameterGrid& b);

  Kind kind() const noexcept { return kind_; }
  int rank() const noexcept { return static_cast<int>(axes_.size()); }
  std::size_t size() const noexcept { return size_; }
  const Axis& axis(int i) const { return axes_.at(static_cast<std::size_t>(i)); }
  const std::vector<Axis>& axes() const noexcept { return axes_; }

  // Inner grid of a suspension, factors of a product.
  const ParameterGrid& inner() const;
  const ParameterGrid& first() const;
  const ParameterGrid& second() const;

  double coordinate(int axis, int index) const;
  double step(int axis) const;

  std::vector<int> unravel(std::size_t point) const;
  std::size_t ravel(std::span<const int> index) const;
  int index_along(std::size_t point, int axis) const;
  std::size_t stride(int axis) const { return strides_.at(static_cast<std::size_t>(axis)); }

  // Neighbour `offset` steps along `axis`; periodic axes wrap, suspension axes
  // return nullopt past either end.
  std::optional<std::size_t> shifted(std::size_t point, int axis, int offset) const;

  // Sign of the permutation from storage order to the oriented order.
  // Suspensions are oriented as the product X x [0,1] (inner axes, then t);
  // products as (first, second).
  int orientation_sign() const noexcept { return orientation_; }

  // True when no axis bounds an open end: every suspension axis collapses
  // at least one other axis. Required for integrating top-degree densities.
  bool is_closed() const;

  std::string describe() const;
  std::string describe_point(std::size_t point) const;

  friend bool operator==(const ParameterGrid& a, const ParameterGrid& b);

 private:
  ParameterGrid() = default;
  void finish();

  Kind kind_ = Kind::point;
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
  int orientation_ = 1;
  std::shared_ptr<const ParameterGrid> left_;
  std::shared_ptr<const ParameterGrid> right_;
};

inline constexpr int kMinAxisPoints = 3;

// (cos(pi t), sin(pi t)) with exact values at t in {0, 1/2, 1, 3/2, 2};
// keeps suspension poles exactly constant.
std::pair<double, double> cos_sin_pi(double t);

}  // namespace bott
