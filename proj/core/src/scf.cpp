#include "amlab/scf.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "amlab/dirac.hpp"

namespace amlab {

namespace {

constexpr double kStepFloor = 1e-14;
constexpr double kStepGrowth = 1.5;

struct Evaluation {
  ResidualResult r;
  SpinorField defect;  ///< (H - E) psi
};

Evaluation evaluate(const SpinorField& psi, const EMConfig* em, const PhysicalParams& params,
                    Scheme scheme) {
  const VectorField* A = em ? &em->A : nullptr;
  const ScalarField* phi = em ? &em->phi : nullptr;
  SpinorField hpsi = apply_hamiltonian(psi, A, phi, params, scheme);
  const double n2 = norm2(psi);
  if (!(n2 > 0.0)) throw PreconditionError("dirac_residual: spinor has zero norm");
  const cplx q = inner(psi, hpsi) / n2;
  Evaluation ev{{q.real(), q.imag(), 0.0}, std::move(hpsi)};
  ev.defect -= q.real() * psi;
  ev.r.residual = std::sqrt(norm2(ev.defect) / n2);
  return ev;
}

SpinorField normalized(SpinorField psi) {
  const double n2 = norm2(psi);
  psi *= 1.0 / std::sqrt(n2);
  return psi;
}

}  // namespace

ResidualResult dirac_residual(const SpinorField& psi, const EMConfig* em,
                              const PhysicalParams& params, Scheme scheme) {
  params.validate();
  if (em) {
    em->validate();
    psi.require_same_grid(em->grid());
  }
  return evaluate(psi, em, params, scheme).r;
}

void ScfParams::validate() const {
  if (!(mix > 0.0 && mix <= 1.0)) throw PreconditionError("scf: mix must lie in (0, 1]");
  if (!(tol >= 0.0)) throw PreconditionError("scf: tol must be non-negative");
  if (max_iter < 0) throw PreconditionError("scf: max_iter must be non-negative");
  if (!(step > 0.0) || !std::isfinite(step)) throw PreconditionError("scf: step must be positive");
}

ScfResult scf_iterate(const SpinorField& psi0, const ScfParams& scf, const PhysicalParams& params) {
  params.validate();
  scf.validate();
  require_finite(psi0, "scf_iterate");

  SpinorField psi = normalized(psi0);
  // F_{-1} = self_fields(psi0), so the first mixed fields equal it for any mix.
  EMConfig fields = self_fields(psi, params, scf.self);
  Evaluation cur = evaluate(psi, &fields, params, scf.scheme);

  ScfResult out{ScfState{psi, fields}, {}};
  out.history.push_back({0, cur.r.energy, cur.r.residual, 0.0, scf.mix});

  double step = scf.step;
  bool stagnated = false;
  int it = 0;
  while (cur.r.residual > scf.tol && it < scf.max_iter) {
    // Descent direction of ||(H - E) psi||^2 at fixed fields.
    const VectorField* A = &fields.A;
    const ScalarField* phi = &fields.phi;
    SpinorField grad = apply_hamiltonian(cur.defect, A, phi, params, scf.scheme);
    grad -= cur.r.energy * cur.defect;

    bool accepted = false;
    while (step >= kStepFloor) {
      SpinorField cand = psi;
      cand -= step * grad;
      cand = normalized(std::move(cand));
      EMConfig cand_fields = mix_fields(self_fields(cand, params, scf.self), fields, scf.mix);
      Evaluation ev = evaluate(cand, &cand_fields, params, scf.scheme);
      if (ev.r.residual <= cur.r.residual) {
        psi = std::move(cand);
        fields = std::move(cand_fields);
        cur = std::move(ev);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      stagnated = true;
      break;
    }
    ++it;
    out.history.push_back({it, cur.r.energy, cur.r.residual, step, scf.mix});
    step *= kStepGrowth;
  }

  out.state.psi = std::move(psi);
  out.state.em = std::move(fields);
  out.state.energy = cur.r.energy;
  out.state.residual = cur.r.residual;
  out.state.iteration = it;
  out.state.step = step;
  out.state.stagnated = stagnated;
  out.state.converged = cur.r.residual <= scf.tol;
  return out;
}

void write_history_csv(const std::vector<ScfRecord>& history, std::ostream& out) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "iteration,energy,residual,step,mix\n";
  for (const auto& r : history) {
    out << r.iteration << ',' << num(r.energy) << ',' << num(r.residual) << ',' << num(r.step)
        << ',' << num(r.mix) << '\n';
  }
}

}  // namespace amlab
