#include "gvns/initial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gvns {

namespace {

double maxwellian(const PhaseGrid& g, const Index3& j, double th, double drift) {
  double e = 0.0;
  for (int a = 0; a < g.d(); ++a) {
    const double w = g.v(j[a]) - (a == 0 ? drift : 0.0);
    e += w * w;
  }
  return std::exp(-e / (2.0 * th * th)) / std::pow(2.0 * std::numbers::pi * th * th, 0.5 * g.d());
}

}  // namespace

SimState zero_state(const PhaseGrid& g) {
  SimState s;
  s.f = DistPhysical(g);
  s.u = FluidSpectral(g);
  return s;
}

SimState taylor_green(const PhaseGrid& g, double amplitude) {
  if (g.d() != 2) throw std::invalid_argument("taylor_green requires d = 2");
  SimState s = zero_state(g);
  VectorField u(g);
  for (std::size_t ix = 0; ix < g.spatial_size(); ++ix) {
    const auto i = g.unravel_x(ix);
    const double x = g.x(i[0]), y = g.x(i[1]);
    u.at(0, ix) = amplitude * std::sin(x) * std::cos(y);
    u.at(1, ix) = -amplitude * std::cos(x) * std::sin(y);
  }
  s.u = fluid_to_spectral(u);
  return s;
}

SimState heat_mode(const PhaseGrid& g, double amplitude) {
  SimState s = zero_state(g);
  VectorField u(g);
  for (std::size_t ix = 0; ix < g.spatial_size(); ++ix) {
    if (g.d() == 1) {
      u.at(0, ix) = amplitude;
    } else {
      u.at(1, ix) = amplitude * std::cos(g.x(g.unravel_x(ix)[0]));
    }
  }
  s.u = fluid_to_spectral(u);
  return s;
}

DistPhysical free_streaming_exact(const PhaseGrid& g, const InitialParams& p, double t) {
  DistPhysical f(g);
  const double et = std::exp(t);
  const double amp = std::exp(g.d() * t) * p.amplitude;
  const double th2 = p.thermal * p.thermal;
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    const auto j = g.unravel_v(jv);
    double v2 = 0.0;
    for (int a = 0; a < g.d(); ++a) v2 += g.v(j[a]) * g.v(j[a]);
    double gauss = std::exp(-v2 * et * et / (2.0 * th2));
    if (p.tail_width > 0.0)
      for (int a = 0; a < g.d(); ++a) {
        const double w = g.v(j[a]) * et / p.tail_width;
        gauss /= 1.0 + w * w;
      }
    const double v0 = g.v(j[0]);
    for (std::size_t ix = 0; ix < g.spatial_size(); ++ix) {
      const double x0 = g.x(g.unravel_x(ix)[0]);
      f.at(ix, jv) = amp * std::cos(x0 - v0 * (et - 1.0)) * gauss;
    }
  }
  return f;
}

SimState free_streaming(const PhaseGrid& g, const InitialParams& p) {
  SimState s = zero_state(g);
  s.f = free_streaming_exact(g, p, 0.0);
  return s;
}

SimState small_data(const PhaseGrid& g, const InitialParams& p) {
  SimState s = zero_state(g);
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    const double m = maxwellian(g, g.unravel_v(jv), p.thermal, p.drift);
    for (std::size_t ix = 0; ix < g.spatial_size(); ++ix) {
      const auto i = g.unravel_x(ix);
      double mod = 1.0;
      for (int a = 0; a < g.d(); ++a) mod += p.perturbation * std::cos(g.x(i[a]));
      s.f.at(ix, jv) = p.density * mod * m;
    }
  }
  VectorField u(g);
  for (std::size_t ix = 0; ix < g.spatial_size(); ++ix) {
    const auto i = g.unravel_x(ix);
    u.at(0, ix) = p.mean_flow;
    if (g.d() >= 2) {
      u.at(0, ix) += p.flow * std::sin(g.x(i[1]));
      u.at(1, ix) = p.flow * std::sin(g.x(i[0]));
    }
  }
  s.u = dealias(fluid_to_spectral(u));
  leray_project(s.u);
  return s;
}

}  // namespace gvns
