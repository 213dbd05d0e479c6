#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace robin {

// Axis-aligned box prod_i (0, l_i), d >= 1. Sides are kept sorted ascending;
// the Laplacian is invariant under permuting axes, so this is the canonical
// representative.
class Cuboid {
 public:
  explicit Cuboid(std::vector<double> sides) : sides_(std::move(sides)) {
    if (sides_.empty()) throw std::invalid_argument("cuboid needs at least one side");
    for (double s : sides_)
      if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("cuboid sides must be finite and > 0");
    std::sort(sides_.begin(), sides_.end());
  }

  static Cuboid interval(double l) { return Cuboid({l}); }
  static Cuboid cube(int d, double side = 1.0) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    return Cuboid(std::vector<double>(static_cast<std::size_t>(d), side));
  }

  int dimension() const { return static_cast<int>(sides_.size()); }
  const std::vector<double>& sides() const { return sides_; }
  double side(int i) const { return sides_.at(static_cast<std::size_t>(i)); }
  double min_side() const { return sides_.front(); }
  double max_side() const { return sides_.back(); }
  double aspect_ratio() const { return sides_.back() / sides_.front(); }

  double volume() const {
    return std::accumulate(sides_.begin(), sides_.end(), 1.0, std::multiplies<double>());
  }

  // H^{d-1} measure of the boundary: 2 sum_i volume / l_i for d >= 2,
  // and the counting measure 2 of the two endpoints for d = 1.
  double surface() const {
    if (dimension() == 1) return 2.0;
    const double vol = volume();
    double s = 0.0;
    for (double l : sides_) s += vol / l;
    return 2.0 * s;
  }

  Cuboid scaled(double factor) const {
    std::vector<double> s(sides_);
    for (double& v : s) v *= factor;
    return Cuboid(std::move(s));
  }

  // Cuboid with side i removed (d >= 2).
  Cuboid without_side(int i) const {
    if (dimension() < 2) throw std::invalid_argument("cannot reduce a 1-d cuboid");
    std::vector<double> s;
    s.reserve(sides_.size() - 1);
    for (int j = 0; j < dimension(); ++j)
      if (j != i) s.push_back(sides_[static_cast<std::size_t>(j)]);
    return Cuboid(std::move(s));
  }

 private:
  std::vector<double> sides_;
};

}  // namespace robin
