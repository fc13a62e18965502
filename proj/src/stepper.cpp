#include "gvns/moments.hpp"
#include "gvns/solver.hpp"

namespace gvns {

Stepper::Stepper(const PhaseGrid& g, const SolverOptions& opt)
    : opt_(opt),
      t_(std::make_unique<Transformer>(g)),
      ns_(std::make_unique<NavierStokes>(*t_, opt)),
      vl_(std::make_unique<VlasovStep>(*t_, opt)) {}

Stepper::~Stepper() = default;

DistPhysical Stepper::vlasov_substep(const SimState& s, const FluidSpectral& u_frozen, double dt) {
  DistPhysical f = s.f;
  const auto u = t_->fluid_to_physical(u_frozen);
  vl_->substep(f, u, dt);
  return f;
}

FluidSpectral Stepper::ns_substep(const SimState& s, double dt) {
  const auto m = compute_moments(s.f);
  return ns_->substep(s.u, m, dt, s.t);
}

SimState Stepper::step(const SimState& s, double dt) {
  SimState out;
  out.t = s.t + dt;
  out.f = s.f;
  vl_->substep(out.f, t_->fluid_to_physical(s.u), 0.5 * dt);
  const auto m = compute_moments(out.f);
  out.u = ns_->substep(s.u, m, dt, s.t);
  vl_->substep(out.f, t_->fluid_to_physical(out.u), 0.5 * dt);
  return out;
}

}  // namespace gvns
