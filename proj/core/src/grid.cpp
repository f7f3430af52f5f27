#include "amlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "amlab/error.hpp"
#include "amlab/field.hpp"
#include "amlab/reduce.hpp"

namespace amlab {

Grid3::Grid3(std::array<int, 3> n, Vec3 h, Vec3 origin) : n_(n), h_(h), origin_(origin) {
  for (int a = 0; a < 3; ++a) {
    if (n_[a] < kMinPoints) {
      std::ostringstream os;
      os << "grid needs at least " << kMinPoints << " points per axis, got " << n_[a]
         << " on axis " << a;
      throw ShapeError(os.str());
    }
    if (!(h_[a] > 0.0) || !std::isfinite(h_[a])) throw ShapeError("grid spacing must be positive");
    if (!std::isfinite(origin_[a])) throw ShapeError("grid origin must be finite");
  }
}

Grid3 Grid3::cube(int n, double half_width) {
  if (!(half_width > 0.0)) throw ShapeError("half width must be positive");
  const double h = 2.0 * half_width / n;
  const double o = -half_width + 0.5 * h;
  return Grid3({n, n, n}, {h, h, h}, {o, o, o});
}

std::array<int, 3> Grid3::ijk(std::size_t idx) const {
  const auto nx = static_cast<std::size_t>(n_[0]);
  const auto ny = static_cast<std::size_t>(n_[1]);
  const int i = static_cast<int>(idx % nx);
  const int j = static_cast<int>((idx / nx) % ny);
  const int k = static_cast<int>(idx / (nx * ny));
  return {i, j, k};
}

Vec3 Grid3::upper_corner() const {
  return {origin_.x + (n_[0] - 0.5) * h_.x, origin_.y + (n_[1] - 0.5) * h_.y,
          origin_.z + (n_[2] - 0.5) * h_.z};
}

Grid3 Grid3::extended(int margin) const {
  if (margin < 0) throw ShapeError("negative margin");
  return Grid3(Unchecked{}, {n_[0] + 2 * margin, n_[1] + 2 * margin, n_[2] + 2 * margin}, h_,
               origin_ - static_cast<double>(margin) * h_);
}

Grid3 Grid3::shrunk(int margin) const {
  if (margin < 0) throw ShapeError("negative margin");
  for (int a = 0; a < 3; ++a) {
    if (n_[a] - 2 * margin < 1) throw ShapeError("margin removes the whole grid");
  }
  return Grid3(Unchecked{}, {n_[0] - 2 * margin, n_[1] - 2 * margin, n_[2] - 2 * margin}, h_,
               origin_ + static_cast<double>(margin) * h_);
}

namespace {

template <typename T>
bool finite_value(const T& v) {
  if constexpr (std::is_same_v<T, cplx>) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  } else {
    return std::isfinite(v);
  }
}

template <typename T, int K>
Field<T, K> copy_box(const Field<T, K>& src, const Grid3& dst_grid, int offset) {
  // offset > 0: dst is interior of src; offset < 0: src is interior of dst.
  Field<T, K> out(dst_grid);
  const auto& ns = src.grid().n();
  const auto& nd = dst_grid.n();
  for (int c = 0; c < K; ++c) {
    for (int k = 0; k < nd[2]; ++k) {
      const int ks = k + offset;
      if (ks < 0 || ks >= ns[2]) continue;
      for (int j = 0; j < nd[1]; ++j) {
        const int js = j + offset;
        if (js < 0 || js >= ns[1]) continue;
        for (int i = 0; i < nd[0]; ++i) {
          const int is = i + offset;
          if (is < 0 || is >= ns[0]) continue;
          out(c, dst_grid.index(i, j, k)) = src(c, src.grid().index(is, js, ks));
        }
      }
    }
  }
  return out;
}

template <typename T>
double sq(const T& v) {
  return std::norm(v);
}
template <>
double sq(const double& v) {
  return v * v;
}

}  // namespace

template <typename T, int K>
void require_finite(const Field<T, K>& f, const char* what) {
  const std::size_t n = f.nodes();
  for (int c = 0; c < K; ++c) {
    const auto comp = f.component(c);
    for (std::size_t idx = 0; idx < n; ++idx) {
      if (!finite_value(comp[idx])) {
        const auto node = f.grid().ijk(idx);
        std::ostringstream os;
        os << what << ": non-finite value at node (" << node[0] << "," << node[1] << ","
           << node[2] << ") component " << c;
        throw NonFiniteError(os.str(), node, c);
      }
    }
  }
}

template <typename T, int K>
Field<T, K> crop(const Field<T, K>& f, int margin) {
  return copy_box(f, f.grid().shrunk(margin), margin);
}

template <typename T, int K>
Field<T, K> embed(const Field<T, K>& f, int margin) {
  return copy_box(f, f.grid().extended(margin), -margin);
}

template <typename T, int K>
double interior_max_abs(const Field<T, K>& f, int margin) {
  const auto& n = f.grid().n();
  double m = 0.0;
  for (int c = 0; c < K; ++c) {
    for (int k = margin; k < n[2] - margin; ++k) {
      for (int j = margin; j < n[1] - margin; ++j) {
        for (int i = margin; i < n[0] - margin; ++i) {
          m = std::max(m, std::abs(f(c, f.grid().index(i, j, k))));
        }
      }
    }
  }
  return m;
}

template <typename T, int K>
double interior_l2(const Field<T, K>& f, int margin) {
  const auto& g = f.grid();
  const auto& n = g.n();
  std::vector<double> buf(g.size(), 0.0);
  for (int c = 0; c < K; ++c) {
    for (int k = margin; k < n[2] - margin; ++k) {
      for (int j = margin; j < n[1] - margin; ++j) {
        for (int i = margin; i < n[0] - margin; ++i) {
          const auto idx = g.index(i, j, k);
          buf[idx] += sq(f(c, idx));
        }
      }
    }
  }
  return std::sqrt(pairwise_sum(buf) * g.cell_volume());
}

template <typename T, int K>
double boundary_ratio(const Field<T, K>& f) {
  const auto& g = f.grid();
  const auto& n = g.n();
  double peak = 0.0;
  double edge = 0.0;
  for (int c = 0; c < K; ++c) {
    for (int k = 0; k < n[2]; ++k) {
      for (int j = 0; j < n[1]; ++j) {
        for (int i = 0; i < n[0]; ++i) {
          const double v = std::abs(f(c, g.index(i, j, k)));
          peak = std::max(peak, v);
          const bool on_edge = i == 0 || j == 0 || k == 0 || i == n[0] - 1 || j == n[1] - 1 ||
                               k == n[2] - 1;
          if (on_edge) edge = std::max(edge, v);
        }
      }
    }
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

double norm2(const SpinorField& psi) {
  std::vector<double> buf(psi.nodes(), 0.0);
  for (int c = 0; c < 4; ++c) {
    const auto comp = psi.component(c);
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] += std::norm(comp[i]);
  }
  return pairwise_sum(buf) * psi.grid().cell_volume();
}

double l2_norm(const ScalarField& f) { return interior_l2(f, 0); }
double l2_norm(const VectorField& f) { return interior_l2(f, 0); }
double l2_norm(const SpinorField& f) { return interior_l2(f, 0); }

#define AMLAB_INSTANTIATE(T, K)                                          \
  template void require_finite(const Field<T, K>&, const char*);         \
  template Field<T, K> crop(const Field<T, K>&, int);                    \
  template Field<T, K> embed(const Field<T, K>&, int);                   \
  template double interior_max_abs(const Field<T, K>&, int);             \
  template double interior_l2(const Field<T, K>&, int);                  \
  template double boundary_ratio(const Field<T, K>&);

AMLAB_INSTANTIATE(double, 1)
AMLAB_INSTANTIATE(cplx, 1)
AMLAB_INSTANTIATE(double, 3)
AMLAB_INSTANTIATE(cplx, 4)

#undef AMLAB_INSTANTIATE

}  // namespace amlab
