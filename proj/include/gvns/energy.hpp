#pragma once

#include <array>

#include "gvns/fields.hpp"
#include "gvns/transforms.hpp"

namespace gvns {

// Means <u>, <j_f> are volume averages over [0, 2pi)^d.
struct EnergyRecord {
  double E = 0.0;
  double D = 0.0;
  double Emod = 0.0;
  std::array<double, kMaxDim> mean_u{};
  std::array<double, kMaxDim> mean_j{};

  double E_fluid = 0.0;
  double E_particles = 0.0;
  double D_drag = 0.0;
  double D_viscous = 0.0;
};

// E = 1/2 int |u|^2 + 1/2 iint |v|^2 f,  D = iint |u - v|^2 f + int |grad u|^2,
// Emod = 1/2 iint |v - <j>|^2 f + 1/2 int |u - <u>|^2 + 1/4 |<u> - <j>|^2.
// Fluid integrals are evaluated spectrally ((2pi)^d sum |u^_k|^2 ...).
EnergyRecord energy_and_dissipation(const DistPhysical& f, const FluidSpectral& uh, Transformer& t);
EnergyRecord energy_and_dissipation(const DistPhysical& f, const FluidSpectral& uh);

}  // namespace gvns
