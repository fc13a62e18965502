// Gevrey and weighted Sobolev norms against direct summation over modes.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "gvns/errors.hpp"
#include "gvns/norms.hpp"
#include "gvns/numerics.hpp"

using namespace gvns;
using cd = std::complex<double>;

namespace {

DistPhysical smooth_dist(const PhaseGrid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double a = U(rng), b = U(rng), c = U(rng);
  DistPhysical f(g);
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    const auto j = g.unravel_v(jv);
    double v2 = 0.0;
    for (int q = 0; q < g.d(); ++q) v2 += g.v(j[q]) * g.v(j[q]);
    for (std::size_t ix = 0; ix < g.spatial_size(); ++ix) {
      const auto i = g.unravel_x(ix);
      const double x0 = g.x(i[0]), x1 = g.d() > 1 ? g.x(i[1]) : 0.0;
      f.at(ix, jv) = (1.0 + a * std::cos(x0) + b * std::sin(x0 + x1) + c * std::cos(2.0 * x1)) * std::exp(-v2);
    }
  }
  return f;
}

// sum_alpha sum_{k,m} <k,eta>^{2 sigma} e^{2 lambda <k,eta>^s} |(v^alpha f)^|^2 deta^d,
// each coefficient from the defining double sum.
double brute_norm(const DistPhysical& f, double lambda, double sigma, int M, double s) {
  const auto& g = f.grid;
  const int d = g.d();
  double total = 0.0;
  for (const auto& alpha : multi_indices(d, M)) {
    const auto mono = velocity_monomial(g, alpha);
    for (std::size_t mv = 0; mv < g.velocity_size(); ++mv) {
      const auto m = g.unravel_v(mv);
      for (std::size_t kx = 0; kx < g.spatial_size(); ++kx) {
        const auto k = g.unravel_x(kx);
        double kk[kMaxDim] = {}, ee[kMaxDim] = {};
        for (int a = 0; a < d; ++a) {
          kk[a] = signed_mode(k[a], g.nx());
          ee[a] = signed_mode(m[a], g.nv()) * g.deta();
        }
        cd c = 0.0;
        for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
          const auto j = g.unravel_v(jv);
          for (std::size_t ix = 0; ix < g.spatial_size(); ++ix) {
            const auto i = g.unravel_x(ix);
            double ph = 0.0;
            for (int a = 0; a < d; ++a) ph += kk[a] * g.x(i[a]) + ee[a] * g.v(j[a]);
            c += std::polar(1.0, -ph) * mono[jv] * f.at(ix, jv);
          }
        }
        c *= g.dxd() * g.dvd() / std::pow(2.0 * std::numbers::pi, d);
        double b2 = 1.0;
        for (int a = 0; a < d; ++a) b2 += kk[a] * kk[a] + ee[a] * ee[a];
        const double b = std::sqrt(b2);
        total += std::pow(b, 2.0 * sigma) * std::exp(2.0 * lambda * std::pow(b, s)) * std::norm(c) * g.detad();
      }
    }
  }
  return std::sqrt(total);
}

}  // namespace

TEST_CASE("Japanese bracket and multiplier") {
  const double k[2] = {1.0, 2.0}, e[1] = {2.0};
  CHECK(jap_bracket(std::span<const double>(k, 2)) == doctest::Approx(std::sqrt(6.0)));
  CHECK(jap_bracket(std::span<const double>(k, 1), std::span<const double>(e, 1)) == doctest::Approx(std::sqrt(6.0)));
  const double zero[1] = {0.0};
  const auto A = multiplier_A(zero, {}, 0.7, 3.0, 0.5);
  CHECK(A.value == doctest::Approx(std::exp(0.7)));
  CHECK_FALSE(A.saturated);
  const double big[1] = {1e6};
  CHECK(multiplier_A(big, {}, 1.0, 1.0, 1.0).saturated);
}

TEST_CASE("phase-space Gevrey norm matches the direct sum") {
  for (const auto& g : {PhaseGrid(1, 6, 8, 2.5), PhaseGrid(2, 4, 4, 2.0)}) {
    const auto f = smooth_dist(g, 5);
    for (double lambda : {0.0, 0.3}) {
      for (double s : {0.5, 1.0}) {
        const double ref = brute_norm(f, lambda, 2.0, 2, s);
        CHECK(gevrey_norm_f(f, lambda, 2.0, 2, s) == doctest::Approx(ref).epsilon(1e-12));
      }
    }
    CHECK(sobolev_weighted_norm(f, 3.0, 1) == doctest::Approx(brute_norm(f, 0.0, 3.0, 1, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("fluid norm of a single mode") {
  const PhaseGrid g(2, 8, 4, 1.0);
  FluidSpectral uh(g);
  const std::size_t k = g.ravel_x(Index3{1, 2, 0});  // k = (1, 2)
  uh.at(0, k) = cd(0.0, 0.5);
  uh.at(1, k) = cd(0.25, 0.0);
  const double b = std::sqrt(6.0), amp2 = 0.25 + 0.0625;
  const double ref = std::sqrt(std::pow(b, 2 * 3.0) * std::exp(2 * 0.4 * std::sqrt(b)) * amp2);
  CHECK(gevrey_norm_u(uh, 0.4, 3.0, 0.5) == doctest::Approx(ref).epsilon(1e-14));
  CHECK(sobolev_norm_u(uh, 3.0) == doctest::Approx(std::pow(b, 3.0) * std::sqrt(amp2)).epsilon(1e-14));
}

TEST_CASE("norms grow with lambda and sigma") {
  const PhaseGrid g(1, 8, 16, 3.0);
  const auto f = smooth_dist(g, 2);
  double prev = 0.0;
  for (double lambda : {0.0, 0.1, 0.2, 0.4}) {
    const double n = gevrey_norm_f(f, lambda, 2.0, 2, 0.5);
    CHECK(n > prev);
    prev = n;
  }
  CHECK(gevrey_norm_f(f, 0.1, 3.0, 2, 0.5) > gevrey_norm_f(f, 0.1, 2.0, 2, 0.5));
}

TEST_CASE("overflowing weights raise instead of returning infinity") {
  const PhaseGrid g(1, 8, 16, 3.0);
  const auto f = smooth_dist(g, 1);
  CHECK_THROWS_AS(gevrey_norm_f(f, 200.0, 4.0, 2, 1.0), GevreyOverflow);
  CHECK_THROWS_AS(gevrey_norm_f(f, -0.1, 4.0, 2, 1.0), std::invalid_argument);
}

TEST_CASE("weighted sup norm") {
  const PhaseGrid g(1, 4, 8, 2.0);
  DistPhysical f(g);
  f.at(1, 2) = 3.0;  // v = -1
  // alpha = 0: 3, alpha = 1: |v| 3 = 3, alpha = 2: v^2 3 = 3.
  CHECK(linf_weighted_norm(f, 2) == doctest::Approx(std::sqrt(27.0)));
  CHECK(linf_weighted_norm(f, 0) == doctest::Approx(3.0));
}

TEST_CASE("regularity hypotheses are reported, not enforced") {
  GevreyParams p;
  p.sigma = 1.0;
  p.M = 1;
  const auto w = p.hypothesis_warnings(2);
  CHECK(w.size() == 2);
  p.s = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
