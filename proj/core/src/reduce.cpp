#include "amlab/reduce.hpp"

#include <cmath>
#include <sstream>

namespace amlab {

namespace {

constexpr std::size_t kLeaf = 16;
constexpr std::size_t kBlock = 4096;

template <typename T>
T tree_sum(const T* v, std::size_t n) {
  if (n <= kLeaf) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return tree_sum(v, half) + tree_sum(v + half, n - half);
}

template <typename T>
T blocked_sum(std::span<const T> values) {
  const std::size_t n = values.size();
  if (n <= kBlock) return tree_sum(values.data(), n);
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<T> partial(blocks);
  const T* base = values.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t len = std::min(kBlock, n - lo);
    partial[static_cast<std::size_t>(b)] = tree_sum(base + lo, len);
  }
  return tree_sum(partial.data(), blocks);
}

template <typename T, int K>
void check(const Field<T, K>& f) {
  require_finite(f, "integrate");
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return blocked_sum(values); }
cplx pairwise_sum(std::span<const cplx> values) { return blocked_sum(values); }

double integrate(const ScalarField& f) {
  check(f);
  return pairwise_sum(f.component(0)) * f.grid().cell_volume();
}

cplx integrate(const ComplexField& f) {
  check(f);
  return pairwise_sum(f.component(0)) * f.grid().cell_volume();
}

Vec3 integrate(const VectorField& f) {
  check(f);
  const double dv = f.grid().cell_volume();
  return {pairwise_sum(f.component(0)) * dv, pairwise_sum(f.component(1)) * dv,
          pairwise_sum(f.component(2)) * dv};
}

double integrate_fn(const Grid3& grid, const std::function<double(std::size_t, const Vec3&)>& f) {
  const std::size_t n = grid.size();
  std::vector<double> buf(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(n); ++s) {
    const auto idx = static_cast<std::size_t>(s);
    buf[idx] = f(idx, grid.node(idx));
  }
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (!std::isfinite(buf[idx])) {
      const auto node = grid.ijk(idx);
      std::ostringstream os;
      os << "integrate: non-finite integrand at node (" << node[0] << "," << node[1] << ","
         << node[2] << ")";
      throw NonFiniteError(os.str(), node, 0);
    }
  }
  return pairwise_sum(buf) * grid.cell_volume();
}

Vec3 integrate_vec(const Grid3& grid, const std::function<Vec3(std::size_t, const Vec3&)>& f) {
  VectorField buf(grid);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(grid.size()); ++s) {
    const auto idx = static_cast<std::size_t>(s);
    set(buf, idx, f(idx, grid.node(idx)));
  }
  return integrate(buf);
}

}  // namespace amlab
