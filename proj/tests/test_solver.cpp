// Solver oracles: exact fluid and kinetic solutions, projection, pressure,
// conservation and the order of the splitting.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gvns/characteristics.hpp"
#include "gvns/energy.hpp"
#include "gvns/initial.hpp"
#include "gvns/moments.hpp"
#include "gvns/numerics.hpp"
#include "gvns/solver.hpp"

using namespace gvns;

namespace {

double rel_l2(const FluidSpectral& a, const FluidSpectral& b, double scale_b) {
  double e = 0.0, n = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    e += std::norm(a.coeffs[i] - scale_b * b.coeffs[i]);
    n += std::norm(scale_b * b.coeffs[i]);
  }
  return std::sqrt(e / n);
}

SimState run(SimState s, Stepper& st, double dt, int steps) {
  for (int n = 0; n < steps; ++n) s = st.step(s, dt);
  return s;
}

}  // namespace

TEST_CASE("Taylor-Green vortex decays like exp(-2t)") {
  const PhaseGrid g(2, 32, 4, 4.0);
  Stepper st(g, SolverOptions{});
  const auto s0 = taylor_green(g);
  const auto s = run(s0, st, 1e-3, 100);
  CHECK(s.t == doctest::Approx(0.1));
  CHECK(rel_l2(s.u, s0.u, std::exp(-0.2)) < 1e-10);
  CHECK(divergence_residual(s.u) < 1e-14);
}

TEST_CASE("heat mode decays like exp(-t)") {
  const PhaseGrid g(2, 16, 4, 4.0);
  Stepper st(g, SolverOptions{});
  const auto s0 = heat_mode(g, 0.5);
  const auto s = run(s0, st, 0.01, 20);
  CHECK(rel_l2(s.u, s0.u, std::exp(-0.2)) < 1e-10);
}

TEST_CASE("Taylor-Green pressure") {
  const PhaseGrid g(2, 16, 4, 4.0);
  Transformer t(g);
  NavierStokes ns(t, SolverOptions{});
  const auto s = taylor_green(g);
  MomentFields m{std::vector<double>(g.spatial_size(), 0.0), std::vector<double>(2 * g.spatial_size(), 0.0)};
  const auto p = ns.pressure(s.u, m);
  // p = (cos 2x + cos 2y) / 4
  for (std::size_t ix = 0; ix < g.spatial_size(); ++ix) {
    const auto k = g.unravel_x(ix);
    const int k0 = signed_mode(k[0], 16), k1 = signed_mode(k[1], 16);
    const bool hit = (std::abs(k0) == 2 && k1 == 0) || (k0 == 0 && std::abs(k1) == 2);
    CHECK(std::abs(p[ix] - std::complex<double>(hit ? 0.125 : 0.0, 0.0)) < 1e-15);
  }
}

TEST_CASE("Leray projection") {
  const PhaseGrid g(2, 8, 4, 1.0);
  FluidSpectral uh(g);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N;
  for (auto& c : uh.coeffs) c = {N(rng), N(rng)};
  leray_project(uh);
  CHECK(divergence_residual(uh) < 1e-14);

  const PhaseGrid g1(1, 8, 4, 1.0);
  FluidSpectral u1(g1);
  for (auto& c : u1.coeffs) c = {1.0, 1.0};
  leray_project(u1);
  for (std::size_t i = 1; i < u1.coeffs.size(); ++i) CHECK(u1.coeffs[i] == std::complex<double>(0.0, 0.0));
  CHECK(u1.coeffs[0] == std::complex<double>(1.0, 1.0));
}

TEST_CASE("free streaming follows the exact characteristics") {
  const PhaseGrid g(1, 32, 32, 8.0);
  InitialParams p;
  Stepper st(g, SolverOptions{});
  const auto s = run(free_streaming(g, p), st, 1e-3, 100);
  const auto ex = free_streaming_exact(g, p, s.t);
  double err = 0.0;
  for (std::size_t i = 0; i < ex.values.size(); ++i) err = std::max(err, std::abs(ex.values[i] - s.f.values[i]));
  CHECK(err < 1e-6);
}

TEST_CASE("characteristics with u = 0") {
  const PhaseGrid g(1, 4, 4, 1.0);
  FluidHistory u;
  u.push(0.0, FluidSpectral(g));
  std::vector<Particle> ps{Particle{{1.0, 0, 0}, {0.5, 0, 0}}};
  const auto fwd = integrate_characteristics(u, ps, 1, 0.0, 1.0, 100);
  const double e = std::exp(-1.0);
  CHECK(fwd.particles[0].V[0] == doctest::Approx(0.5 * e).epsilon(1e-10));
  CHECK(fwd.particles[0].X[0] == doctest::Approx(1.0 + 0.5 * (1.0 - e)).epsilon(1e-10));
  const auto back = integrate_characteristics(u, fwd.particles, 1, 1.0, 0.0, 100);
  CHECK(back.particles[0].V[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(back.particles[0].X[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("coupled step conserves mass and keeps u divergence free") {
  const PhaseGrid g(2, 16, 16, 5.7);
  Stepper st(g, SolverOptions{});
  auto s = small_data(g);
  const double m0 = total_mass(s.f);
  for (int n = 0; n < 5; ++n) {
    const double before = total_mass(s.f);
    s = st.step(s, 0.02);
    CHECK(std::abs(total_mass(s.f) - before) <= 1e-12 * m0);
    CHECK(divergence_residual(s.u) <= 1e-12);
  }
}

TEST_CASE("energy identity residual is second order in dt") {
  const PhaseGrid g(1, 16, 48, 6.0);
  InitialParams p;
  p.density = 0.5;
  p.mean_flow = 0.3;
  auto residual = [&](double dt) {
    Stepper st(g, SolverOptions{});
    Transformer t(g);
    SimState s = small_data(g, p);
    const int steps = static_cast<int>(std::lround(0.4 / dt));
    std::vector<double> ts, D;
    const auto r0 = energy_and_dissipation(s.f, s.u, t);
    ts.push_back(0.0);
    D.push_back(r0.D);
    double E = r0.E;
    for (int n = 0; n < steps; ++n) {
      s = st.step(s, dt);
      const auto r = energy_and_dissipation(s.f, s.u, t);
      ts.push_back(s.t);
      D.push_back(r.D);
      E = r.E;
    }
    return std::abs(E - r0.E + cumulative_trapezoid(ts, D).back()) / r0.E;
  };
  const double a = residual(0.04), b = residual(0.02);
  MESSAGE("energy residual " << a << " -> " << b);
  CHECK(a / b >= 3.5);
}
