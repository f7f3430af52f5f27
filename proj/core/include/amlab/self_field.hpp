#pragma once

#include "amlab/convolution.hpp"
#include "amlab/emfield.hpp"
#include "amlab/params.hpp"

namespace amlab {

struct SelfFieldOptions {
  ConvolutionOptions convolution{};
  /// Attach the multipole model of the source so field integrals include the
  /// contribution from outside the box.
  bool far_field_closure = true;
};

/// Static self-fields of psi in Coulomb gauge: phi and E_long from the Coulomb
/// convolution of rho = e psi^dagger psi, A the transverse magnetostatic potential
/// of j = e c psi^dagger alpha psi, B = curl A. No transverse electric field.
/// For e = 0 every field is exactly zero.
EMConfig self_fields(const SpinorField& psi, const PhysicalParams& params,
                     const SelfFieldOptions& options = {});

/// a_weight * a + (1 - a_weight) * b for phi, A, E_long and B. The result carries
/// no far-field model.
EMConfig mix_fields(const EMConfig& a, const EMConfig& b, double a_weight);

}  // namespace amlab
