#include "gvns/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gvns {

void FluidHistory::push(double t, FluidSpectral uh) {
  if (!times_.empty() && !(t > times_.back())) throw std::invalid_argument("FluidHistory: times must increase");
  times_.push_back(t);
  fields_.push_back(std::move(uh));
}

Vec3 FluidHistory::evaluate(const FluidSpectral& uh, const Vec3& x) {
  const auto& g = uh.grid;
  const int d = g.d();
  const int nx = g.nx();
  const std::size_t n = g.spatial_size();
  // Per-axis exponentials e^{i k x_a} for FFT-ordered k.
  std::vector<cplx> ex(static_cast<std::size_t>(d) * nx);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < nx; ++i) ex[a * nx + i] = std::polar(1.0, signed_mode(i, nx) * x[a]);
  Vec3 out{0.0, 0.0, 0.0};
  for (std::size_t ix = 0; ix < n; ++ix) {
    const auto k = g.unravel_x(ix);
    bool nyq = false;
    cplx e = 1.0;
    for (int a = 0; a < d; ++a) {
      nyq = nyq || k[a] == nx / 2;
      e *= ex[a * nx + k[a]];
    }
    if (nyq) continue;
    for (int c = 0; c < d; ++c) out[c] += (uh.coeffs[c * n + ix] * e).real();
  }
  return out;
}

Vec3 FluidHistory::operator()(double s, const Vec3& x) const {
  if (fields_.empty()) return Vec3{0.0, 0.0, 0.0};
  if (fields_.size() == 1 || s <= times_.front()) return evaluate(fields_.front(), x);
  if (s >= times_.back()) return evaluate(fields_.back(), x);
  const auto it = std::upper_bound(times_.begin(), times_.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
  const double w = (s - times_[i]) / (times_[i + 1] - times_[i]);
  const Vec3 a = evaluate(fields_[i], x), b = evaluate(fields_[i + 1], x);
  Vec3 out{};
  for (int c = 0; c < kMaxDim; ++c) out[c] = (1.0 - w) * a[c] + w * b[c];
  return out;
}

CharacteristicState integrate_characteristics(const FluidHistory& u, std::vector<Particle> particles, int d, double t0, double t1,
                                              int steps) {
  if (steps < 1) throw std::invalid_argument("integrate_characteristics: steps must be >= 1");
  if (!u.empty() && u.d() != d) throw std::invalid_argument("integrate_characteristics: dimension mismatch");
  const double h = (t1 - t0) / steps;
  auto deriv = [&](double s, const Particle& p) {
    Particle dp;
    const Vec3 uu = u(s, p.X);
    for (int a = 0; a < d; ++a) {
      dp.X[a] = p.V[a];
      dp.V[a] = uu[a] - p.V[a];
    }
    return dp;
  };
  auto add = [&](const Particle& p, double c, const Particle& q) {
    Particle r = p;
    for (int a = 0; a < d; ++a) {
      r.X[a] += c * q.X[a];
      r.V[a] += c * q.V[a];
    }
    return r;
  };
  for (auto& p : particles) {
    double s = t0;
    for (int n = 0; n < steps; ++n) {
      const Particle k1 = deriv(s, p);
      const Particle k2 = deriv(s + 0.5 * h, add(p, 0.5 * h, k1));
      const Particle k3 = deriv(s + 0.5 * h, add(p, 0.5 * h, k2));
      const Particle k4 = deriv(s + h, add(p, h, k3));
      for (int a = 0; a < d; ++a) {
        p.X[a] += h / 6.0 * (k1.X[a] + 2.0 * k2.X[a] + 2.0 * k3.X[a] + k4.X[a]);
        p.V[a] += h / 6.0 * (k1.V[a] + 2.0 * k2.V[a] + 2.0 * k3.V[a] + k4.V[a]);
        p.X[a] -= kTwoPi * std::floor(p.X[a] / kTwoPi);
      }
      s = t0 + (n + 1) * h;
    }
  }
  CharacteristicState out;
  out.particles = std::move(particles);
  out.s = t1;
  out.t = t0;
  return out;
}

std::vector<Particle> seed_on_support(const DistPhysical& f, double rel_threshold) {
  const auto& g = f.grid;
  const std::size_t nxd = g.spatial_size();
  double abs_mass = 0.0;
  for (double x : f.values) abs_mass += std::abs(x);
  abs_mass *= g.dxd() * g.dvd();
  std::vector<Particle> out;
  if (abs_mass == 0.0) return out;
  const double thr = rel_threshold * abs_mass;
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    const auto j = g.unravel_v(jv);
    for (std::size_t ix = 0; ix < nxd; ++ix) {
      if (std::abs(f.values[jv * nxd + ix]) <= thr) continue;
      const auto i = g.unravel_x(ix);
      Particle p;
      for (int a = 0; a < g.d(); ++a) {
        p.X[a] = g.x(i[a]);
        p.V[a] = g.v(j[a]);
      }
      out.push_back(p);
    }
  }
  return out;
}

SupportInfo support_radius(const std::vector<Particle>& particles, int d) {
  SupportInfo out;
  for (const auto& p : particles) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += p.V[a] * p.V[a];
    out.radius = std::max(out.radius, std::sqrt(r2));
    out.empty = false;
  }
  return out;
}

}  // namespace gvns
