#include "bott/grid.hpp"

#include <cmath>
#include <sstream>

#include "bott/error.hpp"

namespace bott {

namespace {

void require_size(int n, const char* what) {
  if (n < kMinAxisPoints) {
    throw Error(errc::invalid_grid, std::string(what) + " axis needs at least " +
                                        std::to_string(kMinAxisPoints) + " points, got " +
                                        std::to_string(n));
  }
}

}  // namespace

std::pair<double, double> cos_sin_pi(double t) {
  // Reduce to [0, 2) and snap the quarter turns.
  double r = std::fmod(t, 2.0);
  if (r < 0) r += 2.0;
  if (r == 0.0) return {1.0, 0.0};
  if (r == 0.5) return {0.0, 1.0};
  if (r == 1.0) return {-1.0, 0.0};
  if (r == 1.5) return {0.0, -1.0};
  return {std::cos(std::numbers::pi * r), std::sin(std::numbers::pi * r)};
}

ParameterGrid ParameterGrid::point() {
  ParameterGrid g;
  g.kind_ = Kind::point;
  g.finish();
  return g;
}

ParameterGrid ParameterGrid::circle(int n) {
  require_size(n, "periodic");
  ParameterGrid g;
  g.kind_ = Kind::circle;
  g.axes_.push_back({AxisKind::periodic, n, 0});
  g.finish();
  return g;
}

ParameterGrid ParameterGrid::torus(std::vector<int> sizes) {
  if (sizes.empty()) throw Error(errc::invalid_grid, "torus needs at least one axis");
  ParameterGrid g;
  g.kind_ = sizes.size() == 1 ? Kind::circle : Kind::torus;
  for (int n : sizes) {
    require_size(n, "periodic");
    g.axes_.push_back({AxisKind::periodic, n, 0});
  }
  g.finish();
  return g;
}

ParameterGrid ParameterGrid::suspension(const ParameterGrid& inner, int n_t) {
  require_size(n_t, "suspension");
  ParameterGrid g;
  g.kind_ = Kind::suspension;
  g.axes_.push_back({AxisKind::suspension, n_t, inner.rank()});
  g.axes_.insert(g.axes_.end(), inner.axes_.begin(), inner.axes_.end());
  g.left_ = std::make_shared<const ParameterGrid>(inner);
  g.finish();
  g.orientation_ = inner.orientation_ * ((inner.rank() % 2 == 0) ? 1 : -1);
  return g;
}

ParameterGrid ParameterGrid::product(const ParameterGrid& a, const ParameterGrid& b) {
  if (b.kind_ == Kind::point) return a;
  if (a.kind_ == Kind::point) return b;
  ParameterGrid g;
  g.kind_ = Kind::product;
  g.axes_ = a.axes_;
  g.axes_.insert(g.axes_.end(), b.axes_.begin(), b.axes_.end());
  g.left_ = std::make_shared<const ParameterGrid>(a);
  g.right_ = std::make_shared<const ParameterGrid>(b);
  g.finish();
  g.orientation_ = a.orientation_ * b.orientation_;
  return g;
}

void ParameterGrid::finish() {
  strides_.assign(axes_.size(), 1);
  size_ = 1;
  for (int i = rank() - 1; i >= 0; --i) {
    strides_[static_cast<std::size_t>(i)] = size_;
    size_ *= static_cast<std::size_t>(axes_[static_cast<std::size_t>(i)].size);
  }
}

const ParameterGrid& ParameterGrid::inner() const {
  if (kind_ != Kind::suspension) throw Error(errc::invalid_grid, "grid is not a suspension");
  return *left_;
}

const ParameterGrid& ParameterGrid::first() const {
  if (kind_ != Kind::product) throw Error(errc::invalid_grid, "grid is not a product");
  return *left_;
}

const ParameterGrid& ParameterGrid::second() const {
  if (kind_ != Kind::product) throw Error(errc::invalid_grid, "grid is not a product");
  return *right_;
}

double ParameterGrid::coordinate(int ax, int index) const {
  const Axis& a = axis(ax);
  if (a.kind == AxisKind::periodic) return 2.0 * std::numbers::pi * index / a.size;
  return static_cast<double>(index) / (a.size - 1);
}

double ParameterGrid::step(int ax) const {
  const Axis& a = axis(ax);
  if (a.kind == AxisKind::periodic) return 2.0 * std::numbers::pi / a.size;
  return 1.0 / (a.size - 1);
}

std::vector<int> ParameterGrid::unravel(std::size_t point) const {
  std::vector<int> idx(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    idx[i] = static_cast<int>(point / strides_[i]);
    point %= strides_[i];
  }
  return idx;
}

std::size_t ParameterGrid::ravel(std::span<const int> index) const {
  if (index.size() != axes_.size()) throw Error(errc::bad_axis, "index rank mismatch");
  std::size_t p = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (index[i] < 0 || index[i] >= axes_[i].size) throw Error(errc::bad_axis, "index out of range");
    p += static_cast<std::size_t>(index[i]) * strides_[i];
  }
  return p;
}

int ParameterGrid::index_along(std::size_t point, int ax) const {
  const auto a = static_cast<std::size_t>(ax);
  return static_cast<int>((point / strides_[a]) % static_cast<std::size_t>(axes_[a].size));
}

std::optional<std::size_t> ParameterGrid::shifted(std::size_t point, int ax, int offset) const {
  const Axis& a = axis(ax);
  const int j = index_along(point, ax);
  int moved = j + offset;
  if (a.kind == AxisKind::periodic) {
    moved %= a.size;
    if (moved < 0) moved += a.size;
  } else if (moved < 0 || moved >= a.size) {
    return std::nullopt;
  }
  const auto s = static_cast<long long>(stride(ax));
  return static_cast<std::size_t>(static_cast<long long>(point) + (moved - j) * s);
}

bool ParameterGrid::is_closed() const {
  for (const Axis& a : axes_) {
    if (a.kind == AxisKind::suspension && a.collapsed == 0) return false;
  }
  return true;
}

std::string ParameterGrid::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::point: os << "point"; break;
    case Kind::circle: os << "circle(" << axes_[0].size << ")"; break;
    case Kind::torus:
      os << "torus(";
      for (std::size_t i = 0; i < axes_.size(); ++i) os << (i ? "x" : "") << axes_[i].size;
      os << ")";
      break;
    case Kind::suspension: os << "S[" << axes_[0].size << "](" << left_->describe() << ")"; break;
    case Kind::product: os << left_->describe() << " * " << right_->describe(); break;
  }
  return os.str();
}

std::string ParameterGrid::describe_point(std::size_t point) const {
  std::ostringstream os;
  os << "#" << point << " (";
  const auto idx = unravel(point);
  for (int i = 0; i < rank(); ++i) {
    os << (i ? ", " : "") << (axis(i).kind == AxisKind::periodic ? "k=" : "t=")
       << coordinate(i, idx[static_cast<std::size_t>(i)]);
  }
  os << ")";
  return os.str();
}

bool operator==(const ParameterGrid& a, const ParameterGrid& b) {
  if (a.kind_ != b.kind_ || a.axes_ != b.axes_) return false;
  switch (a.kind_) {
    case ParameterGrid::Kind::suspension: return *a.left_ == *b.left_;
    case ParameterGrid::Kind::product: return *a.left_ == *b.left_ && *a.right_ == *b.right_;
    default: return true;
  }
}

}  // namespace bott
