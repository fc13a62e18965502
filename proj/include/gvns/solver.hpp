#pragma once

#include <memory>
#include <vector>

#include "gvns/fields.hpp"
#include "gvns/transforms.hpp"

namespace gvns {

struct CouplingToggles {
  bool vlasov_force = true;     // particles feel u in the drag u - v
  bool brinkman = true;         // fluid feels j_f - rho_f u
  bool ns_nonlinearity = true;  // -(u . grad) u
};

enum class VelocityInterpolation { Spectral, Cubic };
enum class NsIntegrator { RK2, RK4 };

struct SolverOptions {
  CouplingToggles coupling;
  VelocityInterpolation interpolation = VelocityInterpolation::Spectral;
  NsIntegrator ns_integrator = NsIntegrator::RK4;
  double instability_factor = 10.0;
  double boundary_mass_limit = 1e-6;
};

struct SimState {
  double t = 0.0;
  DistPhysical f;
  FluidSpectral u;
};

// Leray projection in place; in d = 1 every k != 0 mode is removed.
void leray_project(FluidSpectral& uh);
// max_k |k . u^_k| / max_k |u^_k|.
double divergence_residual(const FluidSpectral& uh);

class NavierStokes {
 public:
  NavierStokes(Transformer& t, const SolverOptions& opt);

  // Advance u^ by dt with rho, j frozen. Throws InstabilityError.
  FluidSpectral substep(const FluidSpectral& uh, const MomentFields& m, double dt, double t_now = 0.0) const;
  // Projected, dealiased -(u.grad)u + j - rho u.
  FluidSpectral rhs(const FluidSpectral& uh, const MomentFields& m) const;
  // Zero-mean pressure p^ = -i k . G^ / |k|^2 from the unprojected forcing.
  std::vector<cplx> pressure(const FluidSpectral& uh, const MomentFields& m) const;

 private:
  FluidSpectral raw_forcing(const FluidSpectral& uh, const MomentFields& m) const;
  Transformer& t_;
  SolverOptions opt_;
  std::vector<double> k2_;
};

class VlasovStep {
 public:
  VlasovStep(Transformer& t, const SolverOptions& opt);
  ~VlasovStep();
  VlasovStep(const VlasovStep&) = delete;
  VlasovStep& operator=(const VlasovStep&) = delete;

  // Exact free transport f(x, v) <- f(x - v tau, v), realized on x-Fourier modes.
  void shear(std::vector<double>& f, double tau);
  // Drag and forcing along V(tau) = u + (v - u) e^{-tau}, including the e^{d tau}
  // amplitude. u is the physical fluid velocity (component-major).
  void velocity_step(std::vector<double>& f, const std::vector<double>& u, double tau);
  // shear(tau/2) o velocity_step(tau) o shear(tau/2).
  void substep(DistPhysical& f, const VectorField& u, double tau);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Vlasov(dt/2) o NS(dt) o Vlasov(dt/2).
class Stepper {
 public:
  Stepper(const PhaseGrid& g, const SolverOptions& opt);
  ~Stepper();

  SimState step(const SimState& s, double dt);
  DistPhysical vlasov_substep(const SimState& s, const FluidSpectral& u_frozen, double dt);
  FluidSpectral ns_substep(const SimState& s, double dt);

  Transformer& transformer() { return *t_; }
  const SolverOptions& options() const { return opt_; }

 private:
  SolverOptions opt_;
  std::unique_ptr<Transformer> t_;
  std::unique_ptr<NavierStokes> ns_;
  std::unique_ptr<VlasovStep> vl_;
};

}  // namespace gvns
