#include "amlab/diff.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "fftw_support.hpp"

namespace amlab {

namespace detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

int next_smooth_size(int n) {
  for (int m = std::max(n, 1);; ++m) {
    int r = m;
    for (int p : {2, 3, 5, 7}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

}  // namespace detail

Scheme parse_scheme(std::string_view name) {
  if (name == "fd4") return Scheme::fd4;
  if (name == "spectral") return Scheme::spectral;
  throw Error("unknown differencing scheme '" + std::string(name) + "' (expected fd4|spectral)");
}

std::string to_string(Scheme s) { return s == Scheme::fd4 ? "fd4" : "spectral"; }

namespace {

struct AxisLayout {
  std::size_t len;     // points along the axis
  std::size_t stride;  // distance between neighbours along the axis
};

AxisLayout layout(const Grid3& g, int axis) {
  const auto& n = g.n();
  const std::size_t nx = static_cast<std::size_t>(n[0]);
  const std::size_t ny = static_cast<std::size_t>(n[1]);
  switch (axis) {
    case 0:
      return {nx, 1};
    case 1:
      return {ny, nx};
    default:
      return {static_cast<std::size_t>(n[2]), nx * ny};
  }
}

void require_axis(int axis) {
  if (axis < 0 || axis > 2) throw ShapeError("axis must be 0, 1 or 2");
}

template <typename T>
void fd4(std::span<const T> in, std::span<T> out, const Grid3& g, int axis) {
  const auto lay = layout(g, axis);
  if (lay.len < 5) throw ShapeError("grid too small for the fd4 stencil");
  const double inv = 1.0 / (12.0 * g.h()[axis]);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
  const auto len = static_cast<std::ptrdiff_t>(lay.len);
  const auto stride = static_cast<std::ptrdiff_t>(lay.stride);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < n; ++idx) {
    const std::ptrdiff_t pos = (idx / stride) % len;
    const auto val = [&](std::ptrdiff_t off) -> T {
      const std::ptrdiff_t p = pos + off;
      if (p < 0 || p >= len) return T{};
      return in[static_cast<std::size_t>(idx + off * stride)];
    };
    out[static_cast<std::size_t>(idx)] =
        (val(-2) - 8.0 * val(-1) + 8.0 * val(1) - val(2)) * inv;
  }
}

void spectral_complex(std::span<cplx> data, const Grid3& g, int axis) {
  const auto& n = g.n();
  const int len = n[axis];
  const std::size_t nx = static_cast<std::size_t>(n[0]);
  const std::size_t ny = static_cast<std::size_t>(n[1]);
  const std::size_t nz = static_cast<std::size_t>(n[2]);

  detail::FftwBuffer<cplx> buf(data.size());
  std::copy(data.begin(), data.end(), buf.data());

  int howmany = 0;
  int stride = 0;
  int dist = 0;
  int repeats = 1;
  std::size_t repeat_step = 0;
  if (axis == 0) {
    howmany = static_cast<int>(ny * nz);
    stride = 1;
    dist = static_cast<int>(nx);
  } else if (axis == 1) {
    howmany = static_cast<int>(nx);
    stride = static_cast<int>(nx);
    dist = 1;
    repeats = static_cast<int>(nz);
    repeat_step = nx * ny;
  } else {
    howmany = static_cast<int>(nx * ny);
    stride = static_cast<int>(nx * ny);
    dist = 1;
  }

  detail::FftwPlan fwd;
  detail::FftwPlan bwd;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fwd = detail::FftwPlan(fftw_plan_many_dft(1, &len, howmany, detail::as_fftw(buf.data()),
                                              nullptr, stride, dist, detail::as_fftw(buf.data()),
                                              nullptr, stride, dist, FFTW_FORWARD,
                                              FFTW_ESTIMATE));
    bwd = detail::FftwPlan(fftw_plan_many_dft(1, &len, howmany, detail::as_fftw(buf.data()),
                                              nullptr, stride, dist, detail::as_fftw(buf.data()),
                                              nullptr, stride, dist, FFTW_BACKWARD,
                                              FFTW_ESTIMATE));
  }

  const double period = len * g.h()[axis];
  std::vector<cplx> factor(static_cast<std::size_t>(len));
  for (int m = 0; m < len; ++m) {
    int mm = m <= len / 2 ? m : m - len;
    if (len % 2 == 0 && m == len / 2) mm = 0;  // Nyquist mode has no odd derivative
    factor[static_cast<std::size_t>(m)] =
        cplx(0.0, 2.0 * std::numbers::pi * mm / period) / static_cast<double>(len);
  }

  const auto lay = layout(g, axis);
  for (int r = 0; r < repeats; ++r) {
    cplx* base = buf.data() + static_cast<std::size_t>(r) * repeat_step;
    fftw_execute_dft(fwd.get(), detail::as_fftw(base), detail::as_fftw(base));
  }
  for (std::size_t idx = 0; idx < buf.size(); ++idx) {
    const std::size_t pos = (idx / lay.stride) % lay.len;
    buf[idx] *= factor[pos];
  }
  for (int r = 0; r < repeats; ++r) {
    cplx* base = buf.data() + static_cast<std::size_t>(r) * repeat_step;
    fftw_execute_dft(bwd.get(), detail::as_fftw(base), detail::as_fftw(base));
  }
  std::copy(buf.data(), buf.data() + buf.size(), data.begin());
}

}  // namespace

void derivative(std::span<const double> in, std::span<double> out, const Grid3& grid, int axis,
                Scheme scheme) {
  require_axis(axis);
  if (in.size() != grid.size() || out.size() != grid.size()) {
    throw ShapeError("derivative: span length does not match grid");
  }
  if (scheme == Scheme::fd4) {
    fd4(in, out, grid, axis);
    return;
  }
  std::vector<cplx> tmp(in.begin(), in.end());
  spectral_complex(tmp, grid, axis);
  for (std::size_t i = 0; i < tmp.size(); ++i) out[i] = tmp[i].real();
}

void derivative(std::span<const cplx> in, std::span<cplx> out, const Grid3& grid, int axis,
                Scheme scheme) {
  require_axis(axis);
  if (in.size() != grid.size() || out.size() != grid.size()) {
    throw ShapeError("derivative: span length does not match grid");
  }
  if (scheme == Scheme::fd4) {
    fd4(in, out, grid, axis);
    return;
  }
  std::copy(in.begin(), in.end(), out.begin());
  spectral_complex(out, grid, axis);
}

VectorField gradient(const ScalarField& f, Scheme scheme) {
  VectorField g(f.grid());
  for (int a = 0; a < 3; ++a) derivative(f.component(0), g.component(a), f.grid(), a, scheme);
  return g;
}

ScalarField divergence(const VectorField& v, Scheme scheme) {
  ScalarField out(v.grid());
  std::vector<double> tmp(v.nodes());
  auto o = out.component(0);
  for (int a = 0; a < 3; ++a) {
    derivative(v.component(a), tmp, v.grid(), a, scheme);
    for (std::size_t i = 0; i < tmp.size(); ++i) o[i] += tmp[i];
  }
  return out;
}

VectorField curl(const VectorField& v, Scheme scheme) {
  VectorField out(v.grid());
  std::vector<double> tmp(v.nodes());
  // (curl v)_a = d_b v_c - d_c v_b for cyclic (a, b, c)
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    auto o = out.component(a);
    derivative(v.component(c), tmp, v.grid(), b, scheme);
    for (std::size_t i = 0; i < tmp.size(); ++i) o[i] += tmp[i];
    derivative(v.component(b), tmp, v.grid(), c, scheme);
    for (std::size_t i = 0; i < tmp.size(); ++i) o[i] -= tmp[i];
  }
  return out;
}

SpinorField derivative(const SpinorField& psi, int axis, Scheme scheme) {
  SpinorField out(psi.grid());
  for (int c = 0; c < 4; ++c) derivative(psi.component(c), out.component(c), psi.grid(), axis, scheme);
  return out;
}

}  // namespace amlab
