#pragma once

#include <string>

#include "gvns/solver.hpp"

namespace gvns {

// Parameters shared by the analytic presets.
struct InitialParams {
  double amplitude = 1.0;     // fluid / perturbation amplitude of the preset
  double density = 0.02;      // mean particle density (small_data)
  double perturbation = 0.2;  // relative density modulation (small_data)
  double thermal = 1.0;       // Maxwellian standard deviation
  double tail_width = 0.0;    // w > 0 multiplies the free-streaming datum by prod 1 / (1 + v_a^2 / w^2)
  double drift = 0.2;         // mean particle velocity along axis 0 (small_data)
  double flow = 0.05;         // fluid shear amplitude (small_data)
  double mean_flow = 0.0;     // uniform fluid velocity along axis 0
};

// f = 0, u = A (sin x1 cos x2, -cos x1 sin x2). Requires d = 2.
SimState taylor_green(const PhaseGrid& g, double amplitude = 1.0);
// f = A cos(x1) exp(-|v|^2 / (2 th^2)) L(v), u = 0. L = 1, or the Lorentzian
// factor when tail_width > 0, which gives the eta-spectrum an e^{-w |eta|} tail.
SimState free_streaming(const PhaseGrid& g, const InitialParams& p = {});
// Closed-form solution of the free-streaming preset at time t:
// e^{d t} f0(x - v (e^t - 1), v e^t).
DistPhysical free_streaming_exact(const PhaseGrid& g, const InitialParams& p, double t);
// f = 0, u = A cos(x1) e_2 (d = 2) or u = A (d = 1).
SimState heat_mode(const PhaseGrid& g, double amplitude = 1.0);
// Maxwellian particles with a weak density modulation and a small divergence-free flow.
SimState small_data(const PhaseGrid& g, const InitialParams& p = {});
SimState zero_state(const PhaseGrid& g);

}  // namespace gvns
