// Radius of regularity: Bernoulli closed form, tracker, lower bound and the
// empirical radius on spectra with a known decay.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gvns/errors.hpp"
#include "gvns/fields.hpp"
#include "gvns/radius.hpp"

using namespace gvns;

namespace {

// lambda' = -a lambda - b lambda^2 with constant a, b.
double bernoulli(double t, double a, double b, double lambda0) {
  const double e = std::exp(-a * t);
  return a * e / (a / lambda0 + b * (1.0 - e));
}

}  // namespace

TEST_CASE("constant coefficients: RK4 against the Bernoulli solution") {
  std::vector<double> t;
  for (int n = 0; n <= 50; ++n) t.push_back(0.04 * n);
  const std::vector<double> ys(t.size(), 1.7), yg(t.size(), 0.6);
  const auto rk = integrate_lambda(t, ys, yg, 1.0);
  for (std::size_t n = 0; n < t.size(); ++n) CHECK(std::abs(rk.lambda[n] - bernoulli(t[n], 1.7, 0.6, 1.0)) < 1e-8);
  CHECK(rk.G.back() == doctest::Approx(std::exp(1.7 * 2.0)).epsilon(1e-12));
  CHECK_FALSE(rk.collapsed);
}

TEST_CASE("lambda(ln 2) = 1/3 for unit coefficients") {
  CHECK(bernoulli(std::log(2.0), 1.0, 1.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const std::vector<double> t{0.0, std::log(2.0)}, one{1.0, 1.0};
  CHECK(std::abs(integrate_lambda(t, one, one, 1.0, CoefficientModel::Hold, 64).lambda[1] - 1.0 / 3.0) < 1e-8);
  RadiusTracker tr(1.0);
  for (int n = 0; n < 10; ++n) tr.advance(std::log(2.0) / 10, 1.0, 1.0);
  CHECK(std::abs(tr.lambda() - 1.0 / 3.0) < 1e-8);
  CHECK(tr.G() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("closed form and RK4 agree on varying coefficients") {
  std::vector<double> t, ys, yg;
  for (int n = 0; n <= 40; ++n) {
    const double s = 0.025 * n;
    t.push_back(s);
    ys.push_back(1.0 + 0.5 * std::sin(3.0 * s) + s);
    yg.push_back(2.0 + std::cos(2.0 * s));
  }
  for (auto model : {CoefficientModel::Hold, CoefficientModel::Linear}) {
    const auto a = integrate_lambda(t, ys, yg, 0.5, model);
    const auto b = lambda_closed_form(t, ys, yg, 0.5, model);
    for (std::size_t n = 0; n < t.size(); ++n) CHECK(std::abs(a.lambda[n] - b.lambda[n]) <= 1e-6 * b.lambda[n]);
  }
}

TEST_CASE("tracker predict does not commit") {
  RadiusTracker tr(0.5, CoefficientModel::Linear);
  const double p = tr.predict(0.1, 1.0, 2.0, 1.2, 2.2);
  CHECK(tr.lambda() == 0.5);
  tr.advance(0.1, 1.0, 2.0, 1.2, 2.2);
  CHECK(tr.lambda() == p);
  CHECK(p < 0.5);
  CHECK(lambda_rhs(0.5, 1.0, 2.0) == doctest::Approx(-0.5 - 0.5));
}

TEST_CASE("lower bound formula") {
  CHECK(lambda_lower_bound(0.0, 0.0, 0.5, 3.0) == doctest::Approx(0.5));
  const double v = lambda_lower_bound(1.0, 2.0, 0.5, 0.25);
  CHECK(v == doctest::Approx(std::exp(-0.5) / (0.5 + 2.0)));
}

TEST_CASE("empirical radius recovers synthetic decay") {
  for (double lambda : {0.1, 0.3, 0.5}) {
    for (double s : {0.5, 1.0}) {
      const double sigma = 2.0;
      // Fluid spectrum on T^2.
      const PhaseGrid g(2, 96, 4, 1.0);
      FluidSpectral uh(g);
      for (std::size_t ix = 0; ix < g.spatial_size(); ++ix) {
        const auto k = g.unravel_x(ix);
        const double k0 = signed_mode(k[0], 96), k1 = signed_mode(k[1], 96);
        const double b = std::sqrt(1.0 + k0 * k0 + k1 * k1);
        uh.at(0, ix) = std::pow(b, sigma) * std::exp(-lambda * std::pow(b, s));
      }
      const auto fu = estimate_empirical_radius(uh, sigma, s);
      CHECK(std::abs(fu.lambda_emp - lambda) <= 0.1 * lambda);
      CHECK(fu.shells >= 6);

      // Phase-space spectrum with <k, eta>.
      const PhaseGrid gp(1, 64, 128, 4.0);
      DistSpectral fh(gp);
      for (std::size_t mv = 0; mv < gp.velocity_size(); ++mv)
        for (std::size_t kx = 0; kx < gp.spatial_size(); ++kx) {
          const double k = signed_mode(kx, 64), e = signed_mode(mv, 128) * gp.deta();
          const double b = std::sqrt(1.0 + k * k + e * e);
          fh.at(kx, mv) = std::pow(b, sigma) * std::exp(-lambda * std::pow(b, s));
        }
      const auto ff = estimate_empirical_radius(fh, sigma, s);
      CHECK(std::abs(ff.lambda_emp - lambda) <= 0.1 * lambda);
    }
  }
}

TEST_CASE("documented examples") {
  const PhaseGrid g(1, 128, 4, 1.0);
  FluidSpectral uh(g);
  for (std::size_t ix = 0; ix < g.spatial_size(); ++ix) {
    const double k = signed_mode(ix, 128);
    uh.at(0, ix) = std::exp(-0.5 * std::sqrt(1.0 + k * k));
  }
  CHECK(std::abs(estimate_empirical_radius(uh, 0.0, 1.0).lambda_emp - 0.5) <= 0.02);

  std::vector<double> b, a;
  for (int n = 0; n < 4000; ++n) {
    const double x = 1.0 + 0.05 * n;
    b.push_back(x);
    a.push_back(x * x * std::exp(-0.3 * std::sqrt(x)));
  }
  CHECK(std::abs(estimate_empirical_radius(b, a, 2.0, 0.5).lambda_emp - 0.3) <= 0.05);

  // white noise: no decay, poor fit
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.5, 1.0);
  for (double& x : a) x = U(rng);
  const auto w = estimate_empirical_radius(b, a, 0.0, 1.0);
  CHECK(std::abs(w.lambda_emp) < 0.01);
  CHECK(w.poor_fit);
}

TEST_CASE("corner shells outside the inscribed ball are ignored") {
  std::vector<double> b, a;
  for (int n = 0; n < 40; ++n) {
    const double x = 1.0 + 0.5 * n;
    b.push_back(x);
    a.push_back(std::exp(-2.0 * x));
  }
  // roundoff-level entries beyond the ball would flatten the fit
  for (int n = 0; n < 20; ++n) {
    b.push_back(25.0 + n);
    a.push_back(1e-13);
  }
  CHECK(estimate_empirical_radius(b, a, 0.0, 1.0).lambda_emp < 1.0);
  CHECK(estimate_empirical_radius(b, a, 0.0, 1.0, 21.0).lambda_emp == doctest::Approx(2.0).epsilon(1e-10));

  const PhaseGrid g(1, 64, 64, 8.0);  // eta Nyquist 4 pi < 32
  CHECK(inscribed_bracket(g) == doctest::Approx(std::sqrt(1.0 + 16.0 * std::numbers::pi * std::numbers::pi)));
  CHECK(inscribed_bracket_x(g) == doctest::Approx(std::sqrt(1.0 + 32.0 * 32.0)));
}

TEST_CASE("too few shells is underresolved") {
  std::vector<double> b{1.0, 1.5, 2.2, 3.1}, a{1.0, 0.5, 0.2, 0.1};
  CHECK_THROWS_AS(estimate_empirical_radius(b, a, 0.0, 1.0), Underresolved);
}
