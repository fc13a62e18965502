#include "gvns/moments.hpp"

#include <algorithm>
#include <cmath>

#include "gvns/numerics.hpp"

namespace gvns {

double pairwise_sum(std::span<const double> a) {
  if (a.size() <= 64) {
    double s = 0.0;
    for (double x : a) s += x;
    return s;
  }
  const std::size_t h = a.size() / 2;
  return pairwise_sum(a.first(h)) + pairwise_sum(a.subspan(h));
}

std::vector<Index3> multi_indices(int d, int M) {
  std::vector<Index3> out;
  for (int deg = 0; deg <= M; ++deg) {
    Index3 a{0, 0, 0};
    // Enumerate compositions of deg into d parts, axis 0 descending first.
    auto rec = [&](auto&& self, int axis, int left) -> void {
      if (axis == d - 1) {
        a[axis] = left;
        out.push_back(a);
        return;
      }
      for (int p = left; p >= 0; --p) {
        a[axis] = p;
        self(self, axis + 1, left - p);
      }
    };
    rec(rec, 0, deg);
  }
  return out;
}

std::vector<double> velocity_monomial(const PhaseGrid& g, const Index3& alpha) {
  std::vector<double> w(g.velocity_size(), 1.0);
  for (std::size_t jv = 0; jv < w.size(); ++jv) {
    auto j = g.unravel_v(jv);
    double p = 1.0;
    for (int a = 0; a < g.d(); ++a) {
      const double v = g.v(j[a]);
      for (int e = 0; e < alpha[a]; ++e) p *= v;
    }
    w[jv] = p;
  }
  return w;
}

std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> y) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return out;
}

MomentFields compute_moments(const DistPhysical& f) {
  const auto& g = f.grid;
  const std::size_t nxd = g.spatial_size();
  const std::size_t nvd = g.velocity_size();
  const int d = g.d();
  MomentFields m;
  m.rho.assign(nxd, 0.0);
  m.j.assign(d * nxd, 0.0);
  std::vector<double> vel(d * nvd);
  for (std::size_t jv = 0; jv < nvd; ++jv) {
    auto j = g.unravel_v(jv);
    for (int a = 0; a < d; ++a) vel[a * nvd + jv] = g.v(j[a]);
  }
  // Accumulate over velocity in index order for each x; the x-blocks are contiguous.
  for (std::size_t jv = 0; jv < nvd; ++jv) {
    const double* row = f.values.data() + jv * nxd;
    for (std::size_t ix = 0; ix < nxd; ++ix) m.rho[ix] += row[ix];
    for (int a = 0; a < d; ++a) {
      const double va = vel[a * nvd + jv];
      double* ja = m.j.data() + a * nxd;
      for (std::size_t ix = 0; ix < nxd; ++ix) ja[ix] += va * row[ix];
    }
  }
  const double dvd = g.dvd();
  for (auto& r : m.rho) r *= dvd;
  for (auto& r : m.j) r *= dvd;
  return m;
}

double total_mass(const PhaseGrid& g, const MomentFields& m) { return g.dxd() * pairwise_sum(m.rho); }

double total_mass(const DistPhysical& f) { return total_mass(f.grid, compute_moments(f)); }

double boundary_mass_fraction(const DistPhysical& f, double shell) {
  const auto& g = f.grid;
  const std::size_t nxd = g.spatial_size();
  const double edge = (1.0 - shell) * g.lv();
  double total = 0.0, outer = 0.0;
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    auto j = g.unravel_v(jv);
    bool boundary = false;
    for (int a = 0; a < g.d(); ++a) boundary = boundary || std::abs(g.v(j[a])) >= edge;
    double s = 0.0;
    for (std::size_t ix = 0; ix < nxd; ++ix) s += std::abs(f.values[jv * nxd + ix]);
    total += s;
    if (boundary) outer += s;
  }
  return total > 0.0 ? outer / total : 0.0;
}

SupportInfo support_radius(const DistPhysical& f, double rel_threshold) {
  const auto& g = f.grid;
  const std::size_t nxd = g.spatial_size();
  double abs_mass = 0.0;
  for (double x : f.values) abs_mass += std::abs(x);
  abs_mass *= g.dxd() * g.dvd();
  SupportInfo out;
  if (abs_mass == 0.0) return out;
  const double thr = rel_threshold * abs_mass;
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    auto j = g.unravel_v(jv);
    double r2 = 0.0;
    for (int a = 0; a < g.d(); ++a) r2 += g.v(j[a]) * g.v(j[a]);
    for (std::size_t ix = 0; ix < nxd; ++ix) {
      if (std::abs(f.values[jv * nxd + ix]) > thr) {
        out.radius = std::max(out.radius, std::sqrt(r2));
        out.empty = false;
        break;
      }
    }
  }
  return out;
}

double sup_weighted(const DistPhysical& f, double q) {
  const auto& g = f.grid;
  const std::size_t nxd = g.spatial_size();
  double best = 0.0;
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    auto j = g.unravel_v(jv);
    double r2 = 0.0;
    for (int a = 0; a < g.d(); ++a) r2 += g.v(j[a]) * g.v(j[a]);
    const double w = 1.0 + std::pow(std::sqrt(r2), q);
    for (std::size_t ix = 0; ix < nxd; ++ix) best = std::max(best, w * f.values[jv * nxd + ix]);
  }
  return best;
}

double velocity_moment(const DistPhysical& f, double a) {
  const auto& g = f.grid;
  const std::size_t nxd = g.spatial_size();
  double s = 0.0;
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    auto j = g.unravel_v(jv);
    double r2 = 0.0;
    for (int b = 0; b < g.d(); ++b) r2 += g.v(j[b]) * g.v(j[b]);
    const double w = std::pow(std::sqrt(r2), a);
    double row = 0.0;
    for (std::size_t ix = 0; ix < nxd; ++ix) row += f.values[jv * nxd + ix];
    s += w * row;
  }
  return s * g.dxd() * g.dvd();
}

}  // namespace gvns
