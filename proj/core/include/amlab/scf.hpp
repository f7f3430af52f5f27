#pragma once

#include <iosfwd>
#include <vector>

#include "amlab/diff.hpp"
#include "amlab/self_field.hpp"

namespace amlab {

struct ResidualResult {
  double energy = 0.0;            ///< Re <psi|H psi> / <psi|psi>
  double energy_imaginary = 0.0;  ///< Im part of the same quotient
  double residual = 0.0;          ///< ||(H - energy) psi|| / ||psi||
};

/// Rayleigh quotient and residual of psi in the fields em (null means free).
ResidualResult dirac_residual(const SpinorField& psi, const EMConfig* em,
                              const PhysicalParams& params, Scheme scheme = Scheme::fd4);

struct ScfParams {
  double mix = 0.5;  ///< weight of the fresh self-fields, in (0, 1]
  double tol = 1e-8;
  int max_iter = 50;
  double step = 0.05;  ///< initial descent step
  Scheme scheme = Scheme::fd4;
  SelfFieldOptions self{};

  /// Throws PreconditionError for values out of range.
  void validate() const;
};

struct ScfState {
  SpinorField psi;
  EMConfig em;
  double energy = 0.0;
  double residual = 0.0;
  int iteration = 0;
  double step = 0.0;
  bool converged = false;
  bool stagnated = false;  ///< step underflowed before the residual decreased
};

struct ScfRecord {
  int iteration = 0;
  double energy = 0.0;
  double residual = 0.0;
  double step = 0.0;  ///< step accepted to reach this record (0 for the start)
  double mix = 0.0;
};

struct ScfResult {
  ScfState state;
  std::vector<ScfRecord> history;
};

/// Mixed fixed-point iteration: fields_k = mix self_fields(psi_k) + (1 - mix) fields_{k-1},
/// psi_{k+1} = normalize(psi_k - s (H - E)^2 psi_k). A candidate is accepted when its
/// residual in its own mixed fields does not exceed the current one; otherwise s is
/// halved. After acceptance s grows by 1.5. The residual history never increases.
ScfResult scf_iterate(const SpinorField& psi0, const ScfParams& scf, const PhysicalParams& params);

/// iteration,energy,residual,step,mix with full round-trip precision.
void write_history_csv(const std::vector<ScfRecord>& history, std::ostream& out);

}  // namespace amlab
