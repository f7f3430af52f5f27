#include "amlab/dirac.hpp"

#include <cmath>
#include <sstream>

#include "amlab/reduce.hpp"

namespace amlab {

namespace {

using Pauli = std::array<std::array<CInt, 2>, 2>;

constexpr CInt kZero{0, 0};
constexpr CInt kOne{1, 0};
constexpr CInt kI{0, 1};

constexpr CInt neg(CInt a) { return {-a.re, -a.im}; }

std::array<Pauli, 3> pauli() {
  return {Pauli{{{kZero, kOne}, {kOne, kZero}}}, Pauli{{{kZero, neg(kI)}, {kI, kZero}}},
          Pauli{{{kOne, kZero}, {kZero, neg(kOne)}}}};
}

template <typename T>
Mat4<T> zero4() {
  Mat4<T> m{};
  for (auto& row : m) row.fill(T{});
  return m;
}

Mat4i identity4() {
  Mat4i m = zero4<CInt>();
  for (int i = 0; i < 4; ++i) m[i][i] = kOne;
  return m;
}

Mat4i block(const Pauli& tl, const Pauli& tr, const Pauli& bl, const Pauli& br) {
  Mat4i m = zero4<CInt>();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      m[r][c] = tl[r][c];
      m[r][c + 2] = tr[r][c];
      m[r + 2][c] = bl[r][c];
      m[r + 2][c + 2] = br[r][c];
    }
  }
  return m;
}

Pauli scaled(const Pauli& p, CInt s) {
  Pauli q{};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) q[r][c] = p[r][c] * s;
  }
  return q;
}

Mat4i mul(const Mat4i& a, const Mat4i& b) {
  Mat4i m = zero4<CInt>();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      CInt s = kZero;
      for (int k = 0; k < 4; ++k) s = s + a[r][k] * b[k][c];
      m[r][c] = s;
    }
  }
  return m;
}

Mat4i add(const Mat4i& a, const Mat4i& b) {
  Mat4i m = a;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m[r][c] = a[r][c] + b[r][c];
  }
  return m;
}

Mat4i sub(const Mat4i& a, const Mat4i& b) {
  Mat4i m = a;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m[r][c] = a[r][c] - b[r][c];
  }
  return m;
}

Mat4i scale(const Mat4i& a, CInt s) {
  Mat4i m = a;
  for (auto& row : m) {
    for (auto& v : row) v = v * s;
  }
  return m;
}

Mat4i adjoint(const Mat4i& a) {
  Mat4i m = zero4<CInt>();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m[r][c] = a[c][r].conj();
  }
  return m;
}

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

Mat4c to_double(const Mat4i& a) {
  Mat4c m = zero4<cplx>();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      m[r][c] = cplx(static_cast<double>(a[r][c].re), static_cast<double>(a[r][c].im));
    }
  }
  return m;
}

double norm_sq(const Spinor& s) {
  return std::norm(s[0]) + std::norm(s[1]) + std::norm(s[2]) + std::norm(s[3]);
}

}  // namespace

DiracMatricesT<CInt> build_matrices_exact() {
  const auto s = pauli();
  const Pauli zero{};
  const Pauli id{{{kOne, kZero}, {kZero, kOne}}};
  DiracMatricesT<CInt> d{};
  d.metric = {1, -1, -1, -1};
  d.beta = block(id, zero, zero, scaled(id, neg(kOne)));
  d.gamma[0] = d.beta;
  for (int k = 0; k < 3; ++k) {
    d.gamma[k + 1] = block(zero, s[k], scaled(s[k], neg(kOne)), zero);
    d.alpha[k] = mul(d.gamma[0], d.gamma[k + 1]);
    d.sigma_big[k] = block(s[k], zero, zero, s[k]);
  }
  return d;
}

const DiracMatrices& build_matrices() {
  static const DiracMatrices m = [] {
    const auto e = build_matrices_exact();
    DiracMatrices d{};
    d.metric = e.metric;
    d.beta = to_double(e.beta);
    for (int mu = 0; mu < 4; ++mu) d.gamma[mu] = to_double(e.gamma[mu]);
    for (int k = 0; k < 3; ++k) {
      d.alpha[k] = to_double(e.alpha[k]);
      d.sigma_big[k] = to_double(e.sigma_big[k]);
    }
    return d;
  }();
  return m;
}

std::vector<AlgebraCheck> check_algebra() {
  const auto d = build_matrices_exact();
  const Mat4i id = identity4();
  const auto s = pauli();
  const Pauli zero{};
  std::vector<AlgebraCheck> out;
  const char* axis = "xyz";

  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const Mat4i ac = add(mul(d.gamma[mu], d.gamma[nu]), mul(d.gamma[nu], d.gamma[mu]));
      const CInt eta{mu == nu ? 2L * d.metric[mu] : 0L, 0};
      std::ostringstream name;
      name << "{gamma" << mu << ",gamma" << nu << "} = 2 eta" << mu << nu << " I";
      out.push_back({name.str(), ac == scale(id, eta)});
    }
  }
  for (int i = 0; i < 3; ++i) {
    out.push_back({std::string("Sigma_") + axis[i] + " = diag(sigma, sigma)",
                   d.sigma_big[i] == block(s[i], zero, zero, s[i])});
    out.push_back({std::string("Sigma_") + axis[i] + "^2 = I", mul(d.sigma_big[i], d.sigma_big[i]) == id});
    for (int j = 0; j < 3; ++j) {
      const Mat4i comm = sub(mul(d.sigma_big[i], d.sigma_big[j]), mul(d.sigma_big[j], d.sigma_big[i]));
      Mat4i expect = zero4<CInt>();
      for (int k = 0; k < 3; ++k) {
        const int eps = levi_civita(i, j, k);
        if (eps != 0) expect = add(expect, scale(d.sigma_big[k], CInt{0, 2L * eps}));
      }
      out.push_back({std::string("[Sigma_") + axis[i] + ",Sigma_" + axis[j] + "] = 2i eps Sigma",
                     comm == expect});
    }
    out.push_back({std::string("alpha_") + axis[i] + " Hermitian", adjoint(d.alpha[i]) == d.alpha[i]});
    out.push_back({std::string("alpha_") + axis[i] + "^2 = I", mul(d.alpha[i], d.alpha[i]) == id});
    out.push_back({std::string("alpha_") + axis[i] + " = gamma0 gamma" + std::to_string(i + 1),
                   d.alpha[i] == mul(d.gamma[0], d.gamma[i + 1])});
  }
  out.push_back({"beta Hermitian", adjoint(d.beta) == d.beta});
  out.push_back({"beta^2 = I", mul(d.beta, d.beta) == id});
  for (int i = 0; i < 3; ++i) {
    const Mat4i ab = add(mul(d.alpha[i], d.beta), mul(d.beta, d.alpha[i]));
    out.push_back({std::string("{alpha_") + axis[i] + ",beta} = 0", ab == zero4<CInt>()});
  }
  return out;
}

Spinor mat_vec(const Mat4c& m, const Spinor& s) {
  Spinor r{};
  for (int a = 0; a < 4; ++a) {
    cplx v{};
    for (int b = 0; b < 4; ++b) {
      if (m[a][b] != cplx{}) v += m[a][b] * s[b];
    }
    r[a] = v;
  }
  return r;
}

cplx sandwich(const Spinor& s, const Mat4c& m, const Spinor& t) {
  const Spinor mt = mat_vec(m, t);
  cplx v{};
  for (int a = 0; a < 4; ++a) v += std::conj(s[a]) * mt[a];
  return v;
}

ScalarField probability_density(const SpinorField& psi) {
  ScalarField out(psi.grid());
  auto o = out.component(0);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(psi.nodes());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    o[static_cast<std::size_t>(s)] = norm_sq(spinor_at(psi, static_cast<std::size_t>(s)));
  }
  return out;
}

SourceDensities densities(const SpinorField& psi, const PhysicalParams& params) {
  require_finite(psi, "densities");
  const auto& dm = build_matrices();
  const Grid3& g = psi.grid();
  SourceDensities out{ScalarField(g), VectorField(g)};
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    const Spinor sp = spinor_at(psi, idx);
    const double dens = norm_sq(sp);
    out.rho(0, idx) = params.e * dens;
    for (int k = 0; k < 3; ++k) {
      const cplx v = sandwich(sp, dm.alpha[k], sp);
      worst = std::max(worst, std::abs(v.imag()) / std::max(dens, 1e-300));
      out.j(k, idx) = params.e * params.c * v.real();
    }
  }
  if (worst > 1e-10) {
    throw Error("densities: imaginary part " + std::to_string(worst) +
                " of psi^dagger alpha psi exceeds 1e-10");
  }
  return out;
}

OrbitalTerm orbital_term(const SpinorField& psi, const PhysicalParams& params, Scheme scheme) {
  require_finite(psi, "orbital_term");
  const Grid3& g = psi.grid();
  const std::array<SpinorField, 3> d{derivative(psi, 0, scheme), derivative(psi, 1, scheme),
                                     derivative(psi, 2, scheme)};
  // integrand z = x cross (psi^dagger grad psi); the term is -i hbar z.
  VectorField re_part(g);
  VectorField im_part(g);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    const Vec3 x = g.node(idx);
    std::array<cplx, 3> gk{};
    for (int k = 0; k < 3; ++k) {
      for (int c = 0; c < 4; ++c) gk[k] += std::conj(psi(c, idx)) * d[k](c, idx);
    }
    const std::array<cplx, 3> z{x.y * gk[2] - x.z * gk[1], x.z * gk[0] - x.x * gk[2],
                                x.x * gk[1] - x.y * gk[0]};
    for (int a = 0; a < 3; ++a) {
      re_part(a, idx) = z[a].real();
      im_part(a, idx) = z[a].imag();
    }
  }
  const Vec3 re_z = integrate(re_part);
  const Vec3 im_z = integrate(im_part);
  OrbitalTerm out;
  out.value = params.hbar * im_z;
  out.imaginary = -params.hbar * re_z;
  const double scale = std::max(norm(out.value), params.hbar * norm2(psi));
  out.warning = norm(out.imaginary) > 1e-6 * scale;
  return out;
}

Vec3 gauge_term(const SpinorField& psi, const VectorField& A, const PhysicalParams& params) {
  psi.require_same_grid(A);
  if (params.e == 0.0) return {};
  const Vec3 m = integrate_vec(psi.grid(), [&](std::size_t idx, const Vec3& x) {
    return norm_sq(spinor_at(psi, idx)) * cross(x, at(A, idx));
  });
  return -(params.e / params.c) * m;
}

Vec3 spin_term(const SpinorField& psi, const PhysicalParams& params) {
  const auto& dm = build_matrices();
  const Vec3 s = integrate_vec(psi.grid(), [&](std::size_t idx, const Vec3&) {
    const Spinor sp = spinor_at(psi, idx);
    return Vec3{sandwich(sp, dm.sigma_big[0], sp).real(), sandwich(sp, dm.sigma_big[1], sp).real(),
                sandwich(sp, dm.sigma_big[2], sp).real()};
  });
  return 0.5 * params.hbar * s;
}

SpinorField apply_J(const SpinorField& psi, int axis, const PhysicalParams& params, Scheme scheme) {
  if (axis < 0 || axis > 2) throw ShapeError("axis must be 0, 1 or 2");
  const auto& dm = build_matrices();
  const Grid3& g = psi.grid();
  const int b = (axis + 1) % 3;
  const int c = (axis + 2) % 3;
  const SpinorField db = derivative(psi, b, scheme);
  const SpinorField dc = derivative(psi, c, scheme);
  SpinorField out(g);
  const cplx mih(0.0, -params.hbar);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    const Vec3 x = g.node(idx);
    const Spinor sig = mat_vec(dm.sigma_big[axis], spinor_at(psi, idx));
    for (int k = 0; k < 4; ++k) {
      out(k, idx) = mih * (x[b] * dc(k, idx) - x[c] * db(k, idx)) + 0.5 * params.hbar * sig[k];
    }
  }
  return out;
}

double commutator_defect(const SpinorField& psi, const PhysicalParams& params, Scheme scheme) {
  const SpinorField jx = apply_J(psi, 0, params, scheme);
  const SpinorField jy = apply_J(psi, 1, params, scheme);
  const SpinorField jz = apply_J(psi, 2, params, scheme);
  SpinorField d = apply_J(jy, 0, params, scheme);
  d -= apply_J(jx, 1, params, scheme);
  d -= cplx(0.0, params.hbar) * jz;
  const double scale = l2_norm(jz);
  return scale > 0.0 ? interior_max_abs(d, 2 * kStencilHalfWidth) / scale : 0.0;
}

SpinorField apply_hamiltonian(const SpinorField& psi, const VectorField* A, const ScalarField* phi,
                              const PhysicalParams& params, Scheme scheme) {
  const auto& dm = build_matrices();
  const Grid3& g = psi.grid();
  if (A != nullptr) psi.require_same_grid(*A);
  if (phi != nullptr) psi.require_same_grid(*phi);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
  const double mc2 = params.m * params.c * params.c;

  SpinorField out(g);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    const Spinor sp = spinor_at(psi, idx);
    Spinor acc = mat_vec(dm.beta, sp);
    for (auto& v : acc) v *= mc2;
    if (phi != nullptr) {
      for (int k = 0; k < 4; ++k) acc[k] += params.e * (*phi)(0, idx) * sp[k];
    }
    if (A != nullptr && params.e != 0.0) {
      for (int a = 0; a < 3; ++a) {
        const Spinor as = mat_vec(dm.alpha[a], sp);
        for (int k = 0; k < 4; ++k) acc[k] -= params.e * (*A)(a, idx) * as[k];
      }
    }
    set_spinor(out, idx, acc);
  }

  const cplx kin(0.0, -params.hbar * params.c);
  for (int a = 0; a < 3; ++a) {
    const SpinorField da = derivative(psi, a, scheme);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
      const auto idx = static_cast<std::size_t>(s);
      const Spinor as = mat_vec(dm.alpha[a], spinor_at(da, idx));
      for (int k = 0; k < 4; ++k) out(k, idx) += kin * as[k];
    }
  }
  return out;
}

cplx inner(const SpinorField& a, const SpinorField& b) {
  a.require_same_grid(b);
  ComplexField prod(a.grid());
  auto p = prod.component(0);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.nodes());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    cplx v{};
    for (int c = 0; c < 4; ++c) v += std::conj(a(c, idx)) * b(c, idx);
    p[idx] = v;
  }
  return integrate(prod);
}

}  // namespace amlab
