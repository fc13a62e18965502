#include "gvns/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "gvns/moments.hpp"

namespace gvns {

EnergyRecord energy_and_dissipation(const DistPhysical& f, const FluidSpectral& uh, Transformer& t) {
  const auto& g = f.grid;
  if (!(uh.grid == g)) throw std::invalid_argument("energy_and_dissipation: grid mismatch");
  const int d = g.d();
  const std::size_t nxd = g.spatial_size();
  const double vol = std::pow(kTwoPi, d);
  EnergyRecord r;

  double l2 = 0.0, grad = 0.0, fluct = 0.0;
  for (int c = 0; c < d; ++c) {
    for (std::size_t ix = 0; ix < nxd; ++ix) {
      const double a2 = std::norm(uh.coeffs[c * nxd + ix]);
      auto k = g.unravel_x(ix);
      double k2 = 0.0;
      for (int a = 0; a < d; ++a) {
        const int kk = signed_mode(k[a], g.nx());
        k2 += static_cast<double>(kk) * kk;
      }
      l2 += a2;
      grad += k2 * a2;
      if (ix != 0) fluct += a2;
    }
    r.mean_u[c] = uh.coeffs[c * nxd].real();
  }
  r.E_fluid = 0.5 * vol * l2;
  r.D_viscous = vol * grad;

  const auto u = t.fluid_to_physical(uh);
  const auto mom = compute_moments(f);
  for (int c = 0; c < d; ++c) {
    double s = 0.0;
    for (std::size_t ix = 0; ix < nxd; ++ix) s += mom.j[c * nxd + ix];
    r.mean_j[c] = s / static_cast<double>(nxd);
  }

  const double cell = g.dxd() * g.dvd();
  double kin = 0.0, drag = 0.0, kin_mod = 0.0;
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    auto j = g.unravel_v(jv);
    double v2 = 0.0, vm2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const double v = g.v(j[a]);
      v2 += v * v;
      vm2 += (v - r.mean_j[a]) * (v - r.mean_j[a]);
    }
    const double* row = f.values.data() + jv * nxd;
    double rs = 0.0, ds = 0.0;
    for (std::size_t ix = 0; ix < nxd; ++ix) {
      double rel = 0.0;
      for (int a = 0; a < d; ++a) {
        const double w = u.data[a * nxd + ix] - g.v(j[a]);
        rel += w * w;
      }
      rs += row[ix];
      ds += rel * row[ix];
    }
    kin += v2 * rs;
    kin_mod += vm2 * rs;
    drag += ds;
  }
  r.E_particles = 0.5 * cell * kin;
  r.D_drag = cell * drag;

  double gap = 0.0;
  for (int a = 0; a < d; ++a) gap += (r.mean_u[a] - r.mean_j[a]) * (r.mean_u[a] - r.mean_j[a]);
  r.E = r.E_fluid + r.E_particles;
  r.D = r.D_drag + r.D_viscous;
  r.Emod = 0.5 * cell * kin_mod + 0.5 * vol * fluct + 0.25 * gap;
  return r;
}

EnergyRecord energy_and_dissipation(const DistPhysical& f, const FluidSpectral& uh) {
  Transformer t(f.grid);
  return energy_and_dissipation(f, uh, t);
}

}  // namespace gvns
