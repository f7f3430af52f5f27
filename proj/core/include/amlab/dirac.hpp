#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "amlab/diff.hpp"
#include "amlab/field.hpp"
#include "amlab/params.hpp"

namespace amlab {

/// Gaussian integer, used to check the Clifford algebra without rounding.
struct CInt {
  long re = 0;
  long im = 0;
  friend constexpr CInt operator+(CInt a, CInt b) { return {a.re + b.re, a.im + b.im}; }
  friend constexpr CInt operator-(CInt a, CInt b) { return {a.re - b.re, a.im - b.im}; }
  friend constexpr CInt operator*(CInt a, CInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  constexpr CInt conj() const { return {re, -im}; }
  constexpr bool operator==(const CInt&) const = default;
};

template <typename T>
using Mat4 = std::array<std::array<T, 4>, 4>;
using Mat4i = Mat4<CInt>;
using Mat4c = Mat4<cplx>;

/// Dirac-Pauli representation. gamma^0 = beta = diag(I, -I),
/// gamma^k = [[0, sigma_k], [-sigma_k, 0]], alpha_k = gamma^0 gamma^k,
/// Sigma_k = diag(sigma_k, sigma_k).
template <typename T>
struct DiracMatricesT {
  std::array<Mat4<T>, 4> gamma;
  std::array<Mat4<T>, 3> sigma_big;
  std::array<Mat4<T>, 3> alpha;
  Mat4<T> beta;
  std::array<int, 4> metric;  ///< diag(+1, -1, -1, -1)
};
using DiracMatrices = DiracMatricesT<cplx>;

DiracMatricesT<CInt> build_matrices_exact();
/// Floating-point copy of the exact matrices; entries are 0, +-1, +-i.
const DiracMatrices& build_matrices();

struct AlgebraCheck {
  std::string name;
  bool pass = false;
};

/// Every gamma anticommutator, Sigma square and commutator, and alpha/beta
/// Hermiticity and square, evaluated in exact integer arithmetic.
std::vector<AlgebraCheck> check_algebra();

/// 4-spinor at one node.
using Spinor = std::array<cplx, 4>;
inline Spinor spinor_at(const SpinorField& psi, std::size_t idx) {
  return {psi(0, idx), psi(1, idx), psi(2, idx), psi(3, idx)};
}
inline void set_spinor(SpinorField& psi, std::size_t idx, const Spinor& s) {
  for (int c = 0; c < 4; ++c) psi(c, idx) = s[c];
}
Spinor mat_vec(const Mat4c& m, const Spinor& s);
/// s^dagger M t
cplx sandwich(const Spinor& s, const Mat4c& m, const Spinor& t);

struct SourceDensities {
  ScalarField rho;  ///< e psi^dagger psi
  VectorField j;    ///< e c psi^dagger alpha psi
};

/// Throws Error if an imaginary part above 1e-10 appears (algebra bug signal).
SourceDensities densities(const SpinorField& psi, const PhysicalParams& params);

/// psi^dagger psi
ScalarField probability_density(const SpinorField& psi);

struct OrbitalTerm {
  Vec3 value;             ///< Re of -i hbar integral x cross psi^dagger grad psi
  Vec3 imaginary;         ///< imaginary part, a discretization diagnostic
  bool warning = false;   ///< |imaginary| above 1e-6 of the result scale
};

OrbitalTerm orbital_term(const SpinorField& psi, const PhysicalParams& params,
                         Scheme scheme = Scheme::fd4);

/// -(e/c) integral x cross (psi^dagger psi) A
Vec3 gauge_term(const SpinorField& psi, const VectorField& A, const PhysicalParams& params);

/// (hbar/2) integral psi^dagger Sigma psi
Vec3 spin_term(const SpinorField& psi, const PhysicalParams& params);

/// (L_axis + (hbar/2) Sigma_axis) psi with L = -i hbar x cross grad.
SpinorField apply_J(const SpinorField& psi, int axis, const PhysicalParams& params,
                    Scheme scheme = Scheme::fd4);

/// Interior max-norm of ([J_x, J_y] - i hbar J_z) psi relative to ||J_z psi||, with
/// the two outermost stencil reaches excluded.
double commutator_defect(const SpinorField& psi, const PhysicalParams& params,
                         Scheme scheme = Scheme::fd4);

/// H psi with H = c alpha.(-i hbar grad - (e/c) A) + beta m c^2 + e phi.
/// Null potentials are treated as zero.
SpinorField apply_hamiltonian(const SpinorField& psi, const VectorField* A, const ScalarField* phi,
                              const PhysicalParams& params, Scheme scheme = Scheme::fd4);

/// <psi|phi> = sum psi^dagger phi dV
cplx inner(const SpinorField& a, const SpinorField& b);

}  // namespace amlab
