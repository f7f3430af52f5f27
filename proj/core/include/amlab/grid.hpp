#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "amlab/vec3.hpp"

namespace amlab {

/// Uniform Cartesian grid. Node (i,j,k) sits at origin + (i*hx, j*hy, k*hz);
/// each node owns one cell of volume hx*hy*hz centred on it.
class Grid3 {
 public:
  static constexpr int kMinPoints = 8;

  Grid3(std::array<int, 3> n, Vec3 h, Vec3 origin);

  /// Cubic grid with n points per axis covering [-half_width, half_width]^3
  /// with cell-centred nodes, so the node set is symmetric about the origin.
  static Grid3 cube(int n, double half_width);

  const std::array<int, 3>& n() const { return n_; }
  const Vec3& h() const { return h_; }
  const Vec3& origin() const { return origin_; }

  std::size_t size() const {
    return static_cast<std::size_t>(n_[0]) * static_cast<std::size_t>(n_[1]) *
           static_cast<std::size_t>(n_[2]);
  }
  double cell_volume() const { return h_.x * h_.y * h_.z; }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * static_cast<std::size_t>(n_[1]) +
            static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(n_[0]) +
           static_cast<std::size_t>(i);
  }
  std::array<int, 3> ijk(std::size_t idx) const;

  Vec3 node(int i, int j, int k) const {
    return {origin_.x + i * h_.x, origin_.y + j * h_.y, origin_.z + k * h_.z};
  }
  Vec3 node(std::size_t idx) const {
    const auto c = ijk(idx);
    return node(c[0], c[1], c[2]);
  }

  /// Lower and upper corners of the union of all node cells.
  Vec3 lower_corner() const { return origin_ - 0.5 * h_; }
  Vec3 upper_corner() const;

  /// Same spacing, `margin` extra nodes on every side.
  Grid3 extended(int margin) const;
  /// Same spacing, `margin` nodes removed from every side.
  Grid3 shrunk(int margin) const;

  bool operator==(const Grid3&) const = default;
  /// Same shape with spacing and origin equal up to the rounding that
  /// extend/shrink round trips introduce (1e-9 of the spacing).
  bool same_lattice(const Grid3& o) const {
    if (n_ != o.n_) return false;
    for (int a = 0; a < 3; ++a) {
      const double tol = 1e-9 * h_[a];
      if (std::abs(h_[a] - o.h_[a]) > tol || std::abs(origin_[a] - o.origin_[a]) > tol) return false;
    }
    return true;
  }

 private:
  struct Unchecked {};
  Grid3(Unchecked, std::array<int, 3> n, Vec3 h, Vec3 origin) : n_(n), h_(h), origin_(origin) {}

  std::array<int, 3> n_;
  Vec3 h_;
  Vec3 origin_;
};

}  // namespace amlab
