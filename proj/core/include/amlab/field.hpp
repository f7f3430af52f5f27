#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "amlab/error.hpp"
#include "amlab/grid.hpp"

namespace amlab {

using cplx = std::complex<double>;

/// Field with K components per node, stored component-slowest, then z, y, x
/// (x fastest). Component c of node idx lives at data[c * grid.size() + idx].
template <typename T, int K>
class Field {
 public:
  using value_type = T;
  static constexpr int kComponents = K;

  explicit Field(const Grid3& grid) : grid_(grid), data_(grid.size() * K) {}

  Field(const Grid3& grid, std::vector<T> data) : grid_(grid), data_(std::move(data)) {
    if (data_.size() != grid_.size() * K) {
      throw ShapeError("field data length does not match grid size times components");
    }
  }

  const Grid3& grid() const { return grid_; }
  std::size_t nodes() const { return grid_.size(); }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  std::span<T> component(int c) {
    return std::span<T>(data_).subspan(static_cast<std::size_t>(c) * grid_.size(), grid_.size());
  }
  std::span<const T> component(int c) const {
    return std::span<const T>(data_).subspan(static_cast<std::size_t>(c) * grid_.size(),
                                             grid_.size());
  }

  T& operator()(int c, std::size_t idx) { return data_[static_cast<std::size_t>(c) * grid_.size() + idx]; }
  const T& operator()(int c, std::size_t idx) const {
    return data_[static_cast<std::size_t>(c) * grid_.size() + idx];
  }

  Field& operator+=(const Field& o) {
    require_same_grid(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    require_same_grid(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  template <typename S>
  Field& operator*=(S s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  template <typename S>
  friend Field operator*(S s, Field a) {
    return a *= s;
  }

  void require_same_grid(const Grid3& g) const {
    if (!grid_.same_lattice(g)) throw ShapeError("fields live on different grids");
  }
  template <typename U, int L>
  void require_same_grid(const Field<U, L>& o) const {
    require_same_grid(o.grid());
  }

 private:
  Grid3 grid_;
  std::vector<T> data_;
};

using ScalarField = Field<double, 1>;
using ComplexField = Field<cplx, 1>;
using VectorField = Field<double, 3>;
using SpinorField = Field<cplx, 4>;

/// Throws NonFiniteError naming the first NaN/Inf node, if any.
template <typename T, int K>
void require_finite(const Field<T, K>& f, const char* what);

/// Copy of the interior obtained by removing `margin` nodes from every side.
template <typename T, int K>
Field<T, K> crop(const Field<T, K>& f, int margin);

/// Zero-padded copy with `margin` extra nodes on every side.
template <typename T, int K>
Field<T, K> embed(const Field<T, K>& f, int margin);

/// Vector at one node.
inline Vec3 at(const VectorField& v, std::size_t idx) { return {v(0, idx), v(1, idx), v(2, idx)}; }
inline void set(VectorField& v, std::size_t idx, const Vec3& a) {
  v(0, idx) = a.x;
  v(1, idx) = a.y;
  v(2, idx) = a.z;
}

/// Copy of one component of a vector field.
inline ScalarField component_of(const VectorField& v, int c) {
  return ScalarField(v.grid(), std::vector<double>(v.component(c).begin(), v.component(c).end()));
}

/// Sum over components of |value|^2 at every node, times dV, summed deterministically.
double norm2(const SpinorField& psi);
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& f);
double l2_norm(const SpinorField& f);

/// Largest |value| over all nodes at least `margin` nodes away from the boundary.
template <typename T, int K>
double interior_max_abs(const Field<T, K>& f, int margin);
/// sqrt(sum |value|^2 dV) over the same interior region.
template <typename T, int K>
double interior_l2(const Field<T, K>& f, int margin);

/// Largest |value| on the outermost node layer divided by the largest |value|
/// anywhere; 0 for an all-zero field.
template <typename T, int K>
double boundary_ratio(const Field<T, K>& f);

}  // namespace amlab
