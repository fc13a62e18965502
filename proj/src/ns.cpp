#include <algorithm>
#include <cmath>
#include <string>

#include "gvns/errors.hpp"
#include "gvns/solver.hpp"

namespace gvns {

namespace {

double max_abs(const std::vector<cplx>& a) {
  double m = 0.0;
  for (const auto& z : a) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

void leray_project(FluidSpectral& uh) {
  const auto& g = uh.grid;
  const int d = g.d();
  const std::size_t n = g.spatial_size();
  for (std::size_t ix = 1; ix < n; ++ix) {
    if (d == 1) {
      uh.coeffs[ix] = cplx{};
      continue;
    }
    auto ki = g.unravel_x(ix);
    double k[kMaxDim] = {0, 0, 0};
    double k2 = 0.0;
    cplx kdotu{};
    for (int a = 0; a < d; ++a) {
      k[a] = signed_mode(ki[a], g.nx());
      k2 += k[a] * k[a];
      kdotu += k[a] * uh.coeffs[a * n + ix];
    }
    for (int a = 0; a < d; ++a) uh.coeffs[a * n + ix] -= (k[a] / k2) * kdotu;
  }
}

double divergence_residual(const FluidSpectral& uh) {
  const auto& g = uh.grid;
  const std::size_t n = g.spatial_size();
  double umax = max_abs(uh.coeffs), dmax = 0.0;
  for (std::size_t ix = 0; ix < n; ++ix) {
    auto ki = g.unravel_x(ix);
    cplx div{};
    for (int a = 0; a < g.d(); ++a) div += static_cast<double>(signed_mode(ki[a], g.nx())) * uh.coeffs[a * n + ix];
    dmax = std::max(dmax, std::abs(div));
  }
  return umax > 0.0 ? dmax / umax : 0.0;
}

NavierStokes::NavierStokes(Transformer& t, const SolverOptions& opt) : t_(t), opt_(opt) {
  const auto& g = t.grid();
  k2_.resize(g.spatial_size());
  for (std::size_t ix = 0; ix < k2_.size(); ++ix) {
    auto ki = g.unravel_x(ix);
    double k2 = 0.0;
    for (int a = 0; a < g.d(); ++a) {
      const double k = signed_mode(ki[a], g.nx());
      k2 += k * k;
    }
    k2_[ix] = k2;
  }
}

FluidSpectral NavierStokes::raw_forcing(const FluidSpectral& uh, const MomentFields& m) const {
  const auto& g = t_.grid();
  const int d = g.d();
  const std::size_t n = g.spatial_size();
  std::vector<std::vector<double>> u(d);
  std::vector<cplx> comp(n);
  for (int c = 0; c < d; ++c) {
    std::copy(uh.coeffs.begin() + c * n, uh.coeffs.begin() + (c + 1) * n, comp.begin());
    u[c] = t_.scalar_to_physical(comp);
  }
  FluidSpectral out(g);
  std::vector<double> force(n);
  for (int c = 0; c < d; ++c) {
    std::fill(force.begin(), force.end(), 0.0);
    if (opt_.coupling.ns_nonlinearity && d > 1) {
      for (int b = 0; b < d; ++b) {
        for (std::size_t ix = 0; ix < n; ++ix) {
          const double kb = signed_mode(g.unravel_x(ix)[b], g.nx());
          comp[ix] = cplx(0.0, kb) * uh.coeffs[c * n + ix];
        }
        const auto grad = t_.scalar_to_physical(comp);
        for (std::size_t ix = 0; ix < n; ++ix) force[ix] -= u[b][ix] * grad[ix];
      }
    }
    if (opt_.coupling.brinkman && !m.rho.empty()) {
      for (std::size_t ix = 0; ix < n; ++ix) force[ix] += m.j[c * n + ix] - m.rho[ix] * u[c][ix];
    }
    const auto fh = t_.scalar_to_spectral(force);
    std::copy(fh.begin(), fh.end(), out.coeffs.begin() + c * n);
  }
  return dealias(out);
}

FluidSpectral NavierStokes::rhs(const FluidSpectral& uh, const MomentFields& m) const {
  auto r = raw_forcing(uh, m);
  leray_project(r);
  return r;
}

std::vector<cplx> NavierStokes::pressure(const FluidSpectral& uh, const MomentFields& m) const {
  const auto& g = t_.grid();
  const std::size_t n = g.spatial_size();
  const auto G = raw_forcing(uh, m);
  std::vector<cplx> p(n, cplx{});
  for (std::size_t ix = 1; ix < n; ++ix) {
    auto ki = g.unravel_x(ix);
    cplx kg{};
    for (int a = 0; a < g.d(); ++a) kg += static_cast<double>(signed_mode(ki[a], g.nx())) * G.coeffs[a * n + ix];
    p[ix] = cplx(0.0, -1.0) * kg / k2_[ix];
  }
  return p;
}

FluidSpectral NavierStokes::substep(const FluidSpectral& uh, const MomentFields& m, double dt, double t_now) const {
  const auto& g = t_.grid();
  const int d = g.d();
  const std::size_t n = g.spatial_size();
  const bool forced = (opt_.coupling.ns_nonlinearity && d > 1) || opt_.coupling.brinkman;
  std::vector<double> e1(n), eh(n);
  for (std::size_t ix = 0; ix < n; ++ix) {
    e1[ix] = std::exp(-k2_[ix] * dt);
    eh[ix] = std::exp(-k2_[ix] * 0.5 * dt);
  }
  auto scale = [&](const FluidSpectral& a, const std::vector<double>& e) {
    FluidSpectral out = a;
    for (int c = 0; c < d; ++c)
      for (std::size_t ix = 0; ix < n; ++ix) out.coeffs[c * n + ix] *= e[ix];
    return out;
  };
  auto axpy = [&](FluidSpectral& y, double a, const FluidSpectral& x) {
    for (std::size_t i = 0; i < y.coeffs.size(); ++i) y.coeffs[i] += a * x.coeffs[i];
  };

  FluidSpectral next(g);
  double drive = 0.0;  // dt * max|rhs|, so forced growth from rest is not flagged
  if (!forced) {
    next = scale(uh, e1);
  } else if (opt_.ns_integrator == NsIntegrator::RK2) {
    // Integrating-factor Heun.
    const auto k1 = rhs(uh, m);
    drive = dt * max_abs(k1.coeffs);
    FluidSpectral u2 = uh;
    axpy(u2, dt, k1);
    u2 = scale(u2, e1);
    const auto k2 = rhs(u2, m);
    next = scale(uh, e1);
    axpy(next, 0.5 * dt, scale(k1, e1));
    axpy(next, 0.5 * dt, k2);
  } else {
    // Integrating-factor RK4 in v = e^{|k|^2 t} u.
    const auto k1 = rhs(uh, m);
    drive = dt * max_abs(k1.coeffs);
    FluidSpectral u2 = uh;
    axpy(u2, 0.5 * dt, k1);
    u2 = scale(u2, eh);
    const auto k2 = rhs(u2, m);
    FluidSpectral u3 = scale(uh, eh);
    axpy(u3, 0.5 * dt, k2);
    const auto k3 = rhs(u3, m);
    FluidSpectral u4 = scale(uh, e1);
    axpy(u4, dt, scale(k3, eh));
    const auto k4 = rhs(u4, m);
    next = scale(uh, e1);
    axpy(next, dt / 6.0, scale(k1, e1));
    FluidSpectral mid = k2;
    axpy(mid, 1.0, k3);
    axpy(next, dt / 3.0, scale(mid, eh));
    axpy(next, dt / 6.0, k4);
  }
  leray_project(next);
  next = dealias(next);

  const double before = max_abs(uh.coeffs) + drive, after = max_abs(next.coeffs);
  for (const auto& z : next.coeffs) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InstabilityError("fluid step produced non-finite coefficients", t_now);
  }
  if (before > 1e-300 && after > opt_.instability_factor * before) {
    throw InstabilityError("fluid step rejected: max |u^| grew by " + std::to_string(after / before) + "x", t_now);
  }
  return next;
}

}  // namespace gvns
