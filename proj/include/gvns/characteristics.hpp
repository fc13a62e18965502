#pragma once

#include <array>
#include <vector>

#include "gvns/fields.hpp"
#include "gvns/moments.hpp"

namespace gvns {

using Vec3 = std::array<double, kMaxDim>;

struct Particle {
  Vec3 X{};
  Vec3 V{};
};

// u(s, x): linear interpolation in time between stored spectral fields and
// exact trigonometric evaluation in space. A single field is constant in time.
class FluidHistory {
 public:
  FluidHistory() = default;
  void push(double t, FluidSpectral uh);
  Vec3 operator()(double s, const Vec3& x) const;
  bool empty() const { return fields_.empty(); }
  int d() const { return fields_.empty() ? 0 : fields_.front().grid.d(); }

 private:
  static Vec3 evaluate(const FluidSpectral& uh, const Vec3& x);
  std::vector<double> times_;
  std::vector<FluidSpectral> fields_;
};

struct CharacteristicState {
  std::vector<Particle> particles;
  double s = 0.0;  // current time of the particles
  double t = 0.0;  // time the curves were started from
};

// RK4 on dX/ds = V, dV/ds = u(s, X) - V from t0 to t1 (t1 < t0 traces
// backward). X is wrapped to [0, 2pi)^d after each step.
CharacteristicState integrate_characteristics(const FluidHistory& u, std::vector<Particle> particles, int d, double t0, double t1,
                                              int steps);

// Particles at the centres of cells where |f| exceeds rel_threshold * iint |f|.
std::vector<Particle> seed_on_support(const DistPhysical& f, double rel_threshold = 1e-12);

SupportInfo support_radius(const std::vector<Particle>& particles, int d);

}  // namespace gvns
