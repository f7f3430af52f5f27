#include "amlab/convolution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "fftw_support.hpp"

namespace amlab {

namespace {

using detail::FftwBuffer;
using detail::FftwPlan;

struct Layout {
  std::array<int, 3> ns;  // source points
  std::array<int, 3> nt;  // target points
  std::array<int, 3> N;   // transform size
  int margin;

  std::size_t complex_count() const {
    return static_cast<std::size_t>(N[0] / 2 + 1) * static_cast<std::size_t>(N[1]) *
           static_cast<std::size_t>(N[2]);
  }
  int padded_x() const { return 2 * (N[0] / 2 + 1); }
};

Layout make_layout(const Grid3& g, int margin) {
  Layout lay{};
  lay.margin = margin;
  for (int a = 0; a < 3; ++a) {
    lay.ns[a] = g.n()[a];
    lay.nt[a] = g.n()[a] + 2 * margin;
    lay.N[a] = detail::next_smooth_size(lay.ns[a] + lay.nt[a] - 1);
  }
  return lay;
}

double cell_average_distance(const Vec3& h) {
  constexpr int m = 24;
  double s = 0.0;
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) {
        const Vec3 x{((i + 0.5) / m - 0.5) * h.x, ((j + 0.5) / m - 0.5) * h.y,
                     ((k + 0.5) / m - 0.5) * h.z};
        s += norm(x);
      }
    }
  }
  return s / (m * m * m);
}

double kernel_value(Kernel kernel, SingularCell singular, const Vec3& h, int dx, int dy, int dz) {
  if (dx == 0 && dy == 0 && dz == 0) {
    if (kernel == Kernel::distance) return cell_average_distance(h);
    return singular == SingularCell::lattice_corrected ? inverse_distance_lattice_weight(h)
                                                       : inverse_distance_cell_average(h);
  }
  const double r = norm(Vec3{dx * h.x, dy * h.y, dz * h.z});
  return kernel == Kernel::distance ? r : 1.0 / r;
}

struct KernelKey {
  Kernel kernel;
  SingularCell singular;
  std::array<int, 3> ns;
  int margin;
  std::array<std::uint64_t, 3> hbits;
  auto tie() const { return std::tie(kernel, singular, ns, margin, hbits); }
  bool operator<(const KernelKey& o) const { return tie() < o.tie(); }
};

using Spectrum = FftwBuffer<cplx>;

class KernelCache {
 public:
  std::shared_ptr<Spectrum> get(const KernelKey& key) {
    std::lock_guard lock(mutex_);
    for (auto it = entries_.begin(); it != entries_.end(); ++it) {
      if (!(it->first < key) && !(key < it->first)) {
        entries_.splice(entries_.begin(), entries_, it);
        return entries_.front().second;
      }
    }
    return nullptr;
  }
  void put(const KernelKey& key, std::shared_ptr<Spectrum> s) {
    std::lock_guard lock(mutex_);
    entries_.emplace_front(key, std::move(s));
    while (entries_.size() > kCapacity) entries_.pop_back();
  }
  void clear() {
    std::lock_guard lock(mutex_);
    entries_.clear();
  }

 private:
  static constexpr std::size_t kCapacity = 4;
  std::mutex mutex_;
  std::list<std::pair<KernelKey, std::shared_ptr<Spectrum>>> entries_;
};

KernelCache& cache() {
  static KernelCache c;
  return c;
}

// In-place r2c transform of a real array laid out with padded rows.
FftwPlan make_r2c(const Layout& lay, cplx* buf) {
  std::lock_guard lock(detail::fftw_planner_mutex());
  return FftwPlan(fftw_plan_dft_r2c_3d(lay.N[2], lay.N[1], lay.N[0], reinterpret_cast<double*>(buf),
                                       detail::as_fftw(buf), FFTW_ESTIMATE));
}

FftwPlan make_c2r(const Layout& lay, cplx* buf) {
  std::lock_guard lock(detail::fftw_planner_mutex());
  return FftwPlan(fftw_plan_dft_c2r_3d(lay.N[2], lay.N[1], lay.N[0], detail::as_fftw(buf),
                                       reinterpret_cast<double*>(buf), FFTW_ESTIMATE));
}

std::size_t real_index(const Layout& lay, int i, int j, int k) {
  return (static_cast<std::size_t>(k) * static_cast<std::size_t>(lay.N[1]) +
          static_cast<std::size_t>(j)) *
             static_cast<std::size_t>(lay.padded_x()) +
         static_cast<std::size_t>(i);
}

std::shared_ptr<Spectrum> kernel_spectrum(const Layout& lay, Kernel kernel, SingularCell singular,
                                          const Vec3& h) {
  KernelKey key{kernel,
                singular,
                lay.ns,
                lay.margin,
                {std::bit_cast<std::uint64_t>(h.x), std::bit_cast<std::uint64_t>(h.y),
                 std::bit_cast<std::uint64_t>(h.z)}};
  if (auto s = cache().get(key)) return s;

  auto spec = std::make_shared<Spectrum>(lay.complex_count());
  std::fill(spec->data(), spec->data() + spec->size(), cplx{});
  double* real = reinterpret_cast<double*>(spec->data());
  // Output node t collects source node s through offset d = t - margin - s.
  // Cyclic slot q = t - s covers [-(ns-1), nt-1], which fits in N without aliasing.
  for (int qz = -(lay.ns[2] - 1); qz <= lay.nt[2] - 1; ++qz) {
    const int kz = (qz + lay.N[2]) % lay.N[2];
    for (int qy = -(lay.ns[1] - 1); qy <= lay.nt[1] - 1; ++qy) {
      const int ky = (qy + lay.N[1]) % lay.N[1];
      for (int qx = -(lay.ns[0] - 1); qx <= lay.nt[0] - 1; ++qx) {
        const int kx = (qx + lay.N[0]) % lay.N[0];
        real[real_index(lay, kx, ky, kz)] = kernel_value(
            kernel, singular, h, qx - lay.margin, qy - lay.margin, qz - lay.margin);
      }
    }
  }
  auto plan = make_r2c(lay, spec->data());
  plan.execute();
  cache().put(key, spec);
  return spec;
}

}  // namespace

double inverse_distance_cell_average(const Vec3& h) {
  const double a = 0.5 * h.x;
  const double b = 0.5 * h.y;
  const double c = 0.5 * h.z;
  const double d = std::sqrt(a * a + b * b + c * c);
  // Integral of 1/r over [0,a]x[0,b]x[0,c].
  const double octant = b * c * std::asinh(a / std::hypot(b, c)) +
                        a * c * std::asinh(b / std::hypot(a, c)) +
                        a * b * std::asinh(c / std::hypot(a, b)) -
                        0.5 * a * a * std::atan(b * c / (a * d)) -
                        0.5 * b * b * std::atan(a * c / (b * d)) -
                        0.5 * c * c * std::atan(a * b / (c * d));
  return octant / (a * b * c);
}

double inverse_distance_lattice_weight(const Vec3& h) {
  const double volume = h.x * h.y * h.z;
  const double alpha = std::sqrt(std::numbers::pi) / std::cbrt(volume);
  const double cutoff = 6.5;  // erfc(6.5) and exp(-6.5^2) are below 1e-18

  double real_sum = 0.0;
  const std::array<int, 3> rmax{static_cast<int>(std::ceil(cutoff / (alpha * h.x))),
                                static_cast<int>(std::ceil(cutoff / (alpha * h.y))),
                                static_cast<int>(std::ceil(cutoff / (alpha * h.z)))};
  for (int k = -rmax[2]; k <= rmax[2]; ++k) {
    for (int j = -rmax[1]; j <= rmax[1]; ++j) {
      for (int i = -rmax[0]; i <= rmax[0]; ++i) {
        if (i == 0 && j == 0 && k == 0) continue;
        const double r = norm(Vec3{i * h.x, j * h.y, k * h.z});
        real_sum += std::erfc(alpha * r) / r;
      }
    }
  }

  double recip_sum = 0.0;
  const double kcut = 2.0 * alpha * cutoff;
  const double two_pi = 2.0 * std::numbers::pi;
  const std::array<int, 3> kmax{static_cast<int>(std::ceil(kcut * h.x / two_pi)),
                                static_cast<int>(std::ceil(kcut * h.y / two_pi)),
                                static_cast<int>(std::ceil(kcut * h.z / two_pi))};
  for (int k = -kmax[2]; k <= kmax[2]; ++k) {
    for (int j = -kmax[1]; j <= kmax[1]; ++j) {
      for (int i = -kmax[0]; i <= kmax[0]; ++i) {
        if (i == 0 && j == 0 && k == 0) continue;
        const Vec3 kv{two_pi * i / h.x, two_pi * j / h.y, two_pi * k / h.z};
        const double k2 = dot(kv, kv);
        recip_sum += std::exp(-k2 / (4.0 * alpha * alpha)) / k2;
      }
    }
  }

  const double zeta = real_sum + 4.0 * std::numbers::pi / volume * recip_sum -
                      2.0 * alpha / std::sqrt(std::numbers::pi) -
                      std::numbers::pi / (volume * alpha * alpha);
  return -zeta;
}

std::size_t convolution_workspace_bytes(const Grid3& grid, int margin) {
  const Layout lay = make_layout(grid, margin);
  return 2 * lay.complex_count() * sizeof(cplx);
}

void clear_convolution_cache() { cache().clear(); }

ScalarField free_space_convolution(const ScalarField& f, Kernel kernel,
                                   const ConvolutionOptions& options) {
  if (options.margin < 0) throw ShapeError("convolution margin must be non-negative");
  require_finite(f, "free_space_convolution");
  const Grid3& g = f.grid();
  const Layout lay = make_layout(g, options.margin);

  const std::size_t required = convolution_workspace_bytes(g, options.margin);
  if (required > options.max_bytes) {
    std::ostringstream os;
    os << "free-space convolution needs " << required << " bytes of workspace (transform "
       << lay.N[0] << "x" << lay.N[1] << "x" << lay.N[2] << "), budget is " << options.max_bytes;
    throw ResourceError(os.str(), required);
  }

  try {
    const auto spec = kernel_spectrum(lay, kernel, options.singular_cell, g.h());

    FftwBuffer<cplx> buf(lay.complex_count());
    std::fill(buf.data(), buf.data() + buf.size(), cplx{});
    double* real = reinterpret_cast<double*>(buf.data());
    const auto src = f.component(0);
    for (int k = 0; k < lay.ns[2]; ++k) {
      for (int j = 0; j < lay.ns[1]; ++j) {
        for (int i = 0; i < lay.ns[0]; ++i) {
          real[real_index(lay, i, j, k)] = src[g.index(i, j, k)];
        }
      }
    }

    auto fwd = make_r2c(lay, buf.data());
    auto bwd = make_c2r(lay, buf.data());
    fwd.execute();
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(buf.size());
    const cplx* ks = spec->data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t s = 0; s < count; ++s) buf[static_cast<std::size_t>(s)] *= ks[s];
    bwd.execute();

    const double scale =
        g.cell_volume() / (static_cast<double>(lay.N[0]) * lay.N[1] * static_cast<double>(lay.N[2]));
    ScalarField out(g.extended(options.margin));
    auto dst = out.component(0);
    for (int k = 0; k < lay.nt[2]; ++k) {
      for (int j = 0; j < lay.nt[1]; ++j) {
        for (int i = 0; i < lay.nt[0]; ++i) {
          dst[out.grid().index(i, j, k)] = real[real_index(lay, i, j, k)] * scale;
        }
      }
    }
    return out;
  } catch (const std::bad_alloc&) {
    throw ResourceError("out of memory allocating convolution workspace of " +
                            std::to_string(required) + " bytes",
                        required);
  }
}

}  // namespace amlab
