#pragma once

#include <span>
#include <string>
#include <string_view>

#include "amlab/field.hpp"

namespace amlab {

enum class Scheme {
  fd4,       ///< 4th-order central differences, zero outside the grid
  spectral,  ///< Fourier differentiation, fields treated as periodic with period n*h
};

Scheme parse_scheme(std::string_view name);
std::string to_string(Scheme s);

/// d/dx_axis of one component. `in` and `out` must not alias.
void derivative(std::span<const double> in, std::span<double> out, const Grid3& grid, int axis,
                Scheme scheme);
void derivative(std::span<const cplx> in, std::span<cplx> out, const Grid3& grid, int axis,
                Scheme scheme);

VectorField gradient(const ScalarField& f, Scheme scheme = Scheme::fd4);
ScalarField divergence(const VectorField& v, Scheme scheme = Scheme::fd4);
VectorField curl(const VectorField& v, Scheme scheme = Scheme::fd4);

/// Component-wise derivative of a spinor along one axis.
SpinorField derivative(const SpinorField& psi, int axis, Scheme scheme = Scheme::fd4);

/// Number of boundary layers whose fd4 stencil reaches outside the grid.
inline constexpr int kStencilHalfWidth = 2;

}  // namespace amlab
