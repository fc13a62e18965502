// Transforms, moments and numerics helpers against direct summation.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "gvns/errors.hpp"
#include "gvns/moments.hpp"
#include "gvns/numerics.hpp"
#include "gvns/transforms.hpp"

using namespace gvns;
using cd = std::complex<double>;

namespace {

DistPhysical random_dist(const PhaseGrid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  DistPhysical f(g);
  for (double& x : f.values) x = U(rng);
  return f;
}

// (2pi)^-d sum_x sum_v exp(-i k.x - i eta.v) f dx^d dv^d, written out.
cd brute_coefficient(const DistPhysical& f, const Index3& k, const Index3& m) {
  const auto& g = f.grid;
  const int d = g.d();
  cd acc = 0.0;
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    const auto j = g.unravel_v(jv);
    for (std::size_t ix = 0; ix < g.spatial_size(); ++ix) {
      const auto i = g.unravel_x(ix);
      double phase = 0.0;
      for (int a = 0; a < d; ++a) phase += k[a] * g.x(i[a]) + m[a] * g.deta() * g.v(j[a]);
      acc += std::polar(1.0, -phase) * f.at(ix, jv);
    }
  }
  return acc * g.dxd() * g.dvd() / std::pow(2.0 * std::numbers::pi, d);
}

void compare_with_brute(const PhaseGrid& g, unsigned seed) {
  const auto f = random_dist(g, seed);
  const auto fh = to_spectral(f);
  double worst = 0.0, scale = 0.0;
  for (std::size_t mv = 0; mv < g.velocity_size(); ++mv) {
    Index3 m = g.unravel_v(mv);
    for (int a = 0; a < g.d(); ++a) m[a] = signed_mode(m[a], g.nv());
    for (std::size_t kx = 0; kx < g.spatial_size(); ++kx) {
      Index3 k = g.unravel_x(kx);
      for (int a = 0; a < g.d(); ++a) k[a] = signed_mode(k[a], g.nx());
      const cd ref = brute_coefficient(f, k, m);
      worst = std::max(worst, std::abs(fh.at(kx, mv) - ref));
      scale = std::max(scale, std::abs(ref));
    }
  }
  CHECK(worst <= 1e-13 * scale);
}

}  // namespace

TEST_CASE("phase-space transform matches the direct sum") {
  compare_with_brute(PhaseGrid(1, 8, 8, 3.0), 1);
  compare_with_brute(PhaseGrid(1, 6, 10, 1.5), 2);
  compare_with_brute(PhaseGrid(2, 4, 4, 2.0), 3);
}

TEST_CASE("inverse transform recovers the samples") {
  const PhaseGrid g(2, 8, 6, 2.5);
  const auto f = random_dist(g, 9);
  const auto back = to_physical(to_spectral(f));
  double err = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) err = std::max(err, std::abs(back.f.values[i] - f.values[i]));
  CHECK(err < 1e-14);
  CHECK(back.imag_residual < 1e-14);
  CHECK_FALSE(back.complex_residual);
}

TEST_CASE("constant distribution has zero mode 2L") {
  const double L = 3.0;
  const PhaseGrid g(1, 8, 16, L);
  DistPhysical f(g);
  std::fill(f.values.begin(), f.values.end(), 1.0);
  const auto fh = to_spectral(f);
  CHECK(fh.at(0, 0).real() == doctest::Approx(2.0 * L).epsilon(1e-14));
  double rest = 0.0;
  for (std::size_t i = 1; i < fh.coeffs.size(); ++i) rest = std::max(rest, std::abs(fh.coeffs[i]));
  CHECK(rest < 1e-14);
}

TEST_CASE("Parseval with deta = pi / Lv") {
  const PhaseGrid g(1, 16, 12, 4.0);
  const auto f = random_dist(g, 4);
  const auto fh = to_spectral(f);
  double lhs = 0.0, rhs = 0.0;
  for (const auto& c : fh.coeffs) lhs += std::norm(c);
  for (double x : f.values) rhs += x * x;
  lhs *= g.detad();
  rhs *= g.dxd() * g.dvd();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
}

TEST_CASE("scalar transform of cos x") {
  const PhaseGrid g(1, 16, 4, 1.0);
  Transformer t(g);
  std::vector<double> a(16);
  for (int i = 0; i < 16; ++i) a[i] = std::cos(g.x(i));
  const auto ah = t.scalar_to_spectral(a);
  CHECK(std::abs(ah[1] - cd(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(ah[15] - cd(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(ah[0]) < 1e-15);
  const auto back = t.scalar_to_physical(ah);
  for (int i = 0; i < 16; ++i) CHECK(back[i] == doctest::Approx(a[i]).epsilon(1e-14));
}

TEST_CASE("two-thirds rule") {
  CHECK(dealias_keeps(0, 12));
  CHECK(dealias_keeps(4, 12));
  CHECK(dealias_keeps(-4, 12));
  CHECK_FALSE(dealias_keeps(5, 12));
  CHECK_FALSE(dealias_keeps(-6, 12));
  const PhaseGrid g(1, 12, 12, 2.0);
  DistSpectral fh(g);
  for (auto& c : fh.coeffs) c = 1.0;
  const auto kept = dealias(fh);
  for (std::size_t mv = 0; mv < 12; ++mv)
    for (std::size_t kx = 0; kx < 12; ++kx) {
      const bool keep = dealias_keeps(signed_mode(kx, 12), 12) && dealias_keeps(signed_mode(mv, 12), 12);
      CHECK(kept.at(kx, mv) == (keep ? cd(1.0) : cd(0.0)));
    }
}

TEST_CASE("non-finite input is reported with its index") {
  std::vector<double> a(5, 1.0);
  a[3] = std::nan("");
  try {
    require_finite(a, "probe");
    FAIL("no throw");
  } catch (const NonFiniteInput& e) {
    CHECK(e.index == 3);
  }
}

TEST_CASE("numerics helpers") {
  std::vector<double> ones(1000, 0.1);
  CHECK(pairwise_sum(ones) == doctest::Approx(100.0).epsilon(1e-14));

  std::vector<double> t{0.0, 0.5, 1.5, 2.0}, y;
  for (double x : t) y.push_back(3.0 * x + 1.0);
  const auto I = cumulative_trapezoid(t, y);
  REQUIRE(I.size() == 4);
  CHECK(I[0] == 0.0);
  for (std::size_t n = 0; n < t.size(); ++n) CHECK(I[n] == doctest::Approx(1.5 * t[n] * t[n] + t[n]).epsilon(1e-15));

  const auto idx = multi_indices(2, 2);
  REQUIRE(idx.size() == 6);
  CHECK(idx[0] == Index3{0, 0, 0});
  CHECK(idx[1] == Index3{1, 0, 0});
  CHECK(idx[2] == Index3{0, 1, 0});
  CHECK(multi_indices(3, 2).size() == 10);
}

TEST_CASE("density and current of a drifting Maxwellian") {
  const PhaseGrid g(1, 16, 64, 8.0);
  DistPhysical f(g);
  const double eps = 0.3, u = 0.4;
  for (int j = 0; j < 64; ++j)
    for (int i = 0; i < 16; ++i) {
      const double v = g.v(j);
      f.at(i, j) = (1.0 + eps * std::cos(g.x(i))) * std::exp(-0.5 * (v - u) * (v - u)) / std::sqrt(2.0 * std::numbers::pi);
    }
  const auto m = compute_moments(f);
  for (int i = 0; i < 16; ++i) {
    const double rho = 1.0 + eps * std::cos(g.x(i));
    CHECK(m.rho[i] == doctest::Approx(rho).epsilon(1e-12));
    CHECK(m.j[i] == doctest::Approx(u * rho).epsilon(1e-12));
  }
  CHECK(total_mass(f) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
  CHECK(boundary_mass_fraction(f) < 1e-10);
  CHECK(support_radius(f).radius > 7.0);
}

TEST_CASE("boundary mass of an edge-loaded distribution") {
  const PhaseGrid g(1, 4, 20, 1.0);
  DistPhysical f(g);
  for (int i = 0; i < 4; ++i) f.at(i, 0) = 1.0;
  CHECK(boundary_mass_fraction(f) == doctest::Approx(1.0));
  const DistPhysical zero(g);
  CHECK(total_mass(zero) == 0.0);
  CHECK(support_radius(zero).empty);
}
