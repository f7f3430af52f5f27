#pragma once

#include <cstddef>

#include "amlab/field.hpp"

namespace amlab {

enum class Kernel {
  inverse_distance,  ///< 1/|x|, the free-space Coulomb Green's function times 4 pi
  distance,          ///< |x|, whose Laplacian is 2/|x|
};

/// How the kernel value of the source node's own cell is chosen.
enum class SingularCell {
  /// Weight that cancels the leading lattice-sum error of the punctured
  /// trapezoidal rule (Epstein zeta value of the anisotropic lattice), making
  /// the quadrature O(h^4) for smooth sources.
  lattice_corrected,
  /// Analytic average of the kernel over the rectangular cell; O(h^2).
  cell_average,
};

struct ConvolutionOptions {
  /// The result is returned on grid.extended(margin); the extra layers are exact
  /// free-space values, so stencils applied afterwards see no artificial boundary.
  int margin = 0;
  SingularCell singular_cell = SingularCell::lattice_corrected;
  /// Upper bound on transform workspace; larger requests throw ResourceError.
  std::size_t max_bytes = std::size_t{3} << 30;
};

/// out(x) = sum over source nodes x' of f(x') K(x - x') dV, evaluated without
/// periodic images by zero padding to at least twice the domain per axis.
ScalarField free_space_convolution(const ScalarField& f, Kernel kernel,
                                   const ConvolutionOptions& options = {});

/// Bytes of workspace free_space_convolution needs for this grid and margin.
std::size_t convolution_workspace_bytes(const Grid3& grid, int margin);

/// (1/V) * integral of 1/|x| over the cell [-h/2, h/2] (closed form).
double inverse_distance_cell_average(const Vec3& h);

/// Kernel value assigned to the singular cell under SingularCell::lattice_corrected:
/// minus the analytically continued lattice sum of 1/|x| over the lattice with
/// spacing h, evaluated by Ewald summation. For h = (1,1,1) this is 2.8372974794...
double inverse_distance_lattice_weight(const Vec3& h);

/// Drops cached kernel spectra.
void clear_convolution_cache();

}  // namespace amlab
