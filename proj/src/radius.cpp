#include "gvns/radius.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "gvns/errors.hpp"

namespace gvns {

double lambda_rhs(double lambda, double y_sob, double y_gev) { return -lambda * y_sob - lambda * lambda * y_gev; }

namespace {

struct Coeffs {
  double s0, g0, s1, g1;
  CoefficientModel model;
  double at_sob(double w) const { return model == CoefficientModel::Hold ? s0 : (1.0 - w) * s0 + w * s1; }
  double at_gev(double w) const { return model == CoefficientModel::Hold ? g0 : (1.0 - w) * g0 + w * g1; }
};

double rk4_interval(double lambda, double h, const Coeffs& c, int substeps) {
  const double dh = h / substeps;
  for (int i = 0; i < substeps; ++i) {
    const double w0 = static_cast<double>(i) / substeps;
    const double wm = (i + 0.5) / substeps;
    const double w1 = static_cast<double>(i + 1) / substeps;
    const double k1 = lambda_rhs(lambda, c.at_sob(w0), c.at_gev(w0));
    const double k2 = lambda_rhs(lambda + 0.5 * dh * k1, c.at_sob(wm), c.at_gev(wm));
    const double k3 = lambda_rhs(lambda + 0.5 * dh * k2, c.at_sob(wm), c.at_gev(wm));
    const double k4 = lambda_rhs(lambda + dh * k3, c.at_sob(w1), c.at_gev(w1));
    lambda += dh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return lambda;
}

// int over one interval of the model's Y_sob; exact for both models.
double sob_integral(double h, const Coeffs& c) {
  return c.model == CoefficientModel::Hold ? h * c.s0 : 0.5 * h * (c.s0 + c.s1);
}

void check_series(std::span<const double> t, std::span<const double> a, std::span<const double> b, double lambda0) {
  if (t.size() != a.size() || t.size() != b.size()) throw std::invalid_argument("lambda series: length mismatch");
  if (!(lambda0 > 0.0)) throw std::invalid_argument("lambda series: lambda0 must be positive");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw std::invalid_argument("lambda series: times must increase");
}

}  // namespace

LambdaSeries integrate_lambda(std::span<const double> t, std::span<const double> y_sob, std::span<const double> y_gev, double lambda0,
                              CoefficientModel model, int substeps) {
  check_series(t, y_sob, y_gev, lambda0);
  LambdaSeries out;
  if (t.empty()) return out;
  RadiusTracker tr(lambda0, model, substeps);
  out.lambda.push_back(tr.lambda());
  out.G.push_back(tr.G());
  for (std::size_t i = 1; i < t.size(); ++i) {
    tr.advance(t[i] - t[i - 1], y_sob[i - 1], y_gev[i - 1], y_sob[i], y_gev[i]);
    out.lambda.push_back(tr.lambda());
    out.G.push_back(tr.G());
  }
  out.collapsed = tr.collapsed();
  return out;
}

LambdaSeries lambda_closed_form(std::span<const double> t, std::span<const double> y_sob, std::span<const double> y_gev, double lambda0,
                                CoefficientModel model, int refine) {
  check_series(t, y_sob, y_gev, lambda0);
  LambdaSeries out;
  if (t.empty()) return out;
  double logG = 0.0, inner = 0.0;
  out.lambda.push_back(lambda0);
  out.G.push_back(1.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double h = t[i] - t[i - 1];
    const Coeffs c{y_sob[i - 1], y_gev[i - 1], y_sob[i], y_gev[i], model};
    // Composite trapezoid for int Y_gev / G; log G is tracked exactly within the interval.
    double prev = c.at_gev(0.0) * std::exp(-logG);
    double sub_log = logG;
    for (int r = 1; r <= refine; ++r) {
      const double w0 = static_cast<double>(r - 1) / refine, w1 = static_cast<double>(r) / refine;
      const double hs = h / refine;
      sub_log += model == CoefficientModel::Hold ? hs * c.s0 : 0.5 * hs * (c.at_sob(w0) + c.at_sob(w1));
      const double cur = c.at_gev(w1) * std::exp(-sub_log);
      inner += 0.5 * hs * (prev + cur);
      prev = cur;
    }
    logG += sob_integral(h, c);
    const double lam = std::exp(-logG) / (1.0 / lambda0 + inner);
    out.lambda.push_back(lam);
    out.G.push_back(std::exp(logG));
    if (lam < kLambdaFloor) out.collapsed = true;
  }
  return out;
}

double lambda_lower_bound(double t, double int_sob, double lambda0, double C3) {
  if (!(C3 > 0.0)) throw std::invalid_argument("lambda_lower_bound: C3 must be positive");
  return std::exp(-C3 * int_sob) / (2.0 * C3 * t + 1.0 / lambda0);
}

RadiusTracker::RadiusTracker(double lambda0, CoefficientModel model, int substeps)
    : lambda_(lambda0), model_(model), substeps_(substeps) {
  if (!(lambda0 > 0.0)) throw std::invalid_argument("RadiusTracker: lambda0 must be positive");
  if (substeps < 1) throw std::invalid_argument("RadiusTracker: substeps must be >= 1");
}

double RadiusTracker::predict(double dt, double y_sob0, double y_gev0, double y_sob1, double y_gev1) const {
  if (collapsed_) return 0.0;
  return rk4_interval(lambda_, dt, Coeffs{y_sob0, y_gev0, y_sob1, y_gev1, model_}, substeps_);
}

void RadiusTracker::advance(double dt, double y_sob0, double y_gev0, double y_sob1, double y_gev1) {
  const Coeffs c{y_sob0, y_gev0, y_sob1, y_gev1, model_};
  logG_ += sob_integral(dt, c);
  G_ = std::exp(logG_);
  if (collapsed_) return;
  lambda_ = rk4_interval(lambda_, dt, c, substeps_);
  if (!(lambda_ >= kLambdaFloor)) {
    collapsed_ = true;
    lambda_ = 0.0;
  }
}

RadiusFit estimate_empirical_radius(std::span<const double> bracket, std::span<const double> amplitude, double sigma, double s,
                                    double max_bracket) {
  if (bracket.size() != amplitude.size()) throw std::invalid_argument("estimate_empirical_radius: length mismatch");
  double amax = 0.0;
  for (double a : amplitude) amax = std::max(amax, std::abs(a));
  const double floor = 1e-14 * amax;
  // shell index -> (best weighted amplitude, its bracket)
  std::map<long, std::pair<double, double>> shells;
  for (std::size_t i = 0; i < bracket.size(); ++i) {
    const double a = std::abs(amplitude[i]);
    if (!(a > floor) || a == 0.0 || !(bracket[i] < max_bracket)) continue;
    const double y = a * std::pow(bracket[i], -sigma);
    const long key = static_cast<long>(std::floor(bracket[i]));
    auto it = shells.find(key);
    if (it == shells.end() || y > it->second.first) shells[key] = {y, bracket[i]};
  }
  const int n = static_cast<int>(shells.size());
  if (n < 6) throw Underresolved("empirical radius: only " + std::to_string(n) + " populated shells (need 6)", n);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> xs, ys;
  for (const auto& [key, v] : shells) {
    const double x = std::pow(v.second, s), y = std::log(v.first);
    xs.push_back(x);
    ys.push_back(y);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  RadiusFit fit;
  fit.shells = n;
  const double den = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - slope * sx) / n;
  fit.lambda_emp = -slope;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ym = sy / n;
  for (int i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + slope * xs[i]);
    ss_res += r * r;
    ss_tot += (ys[i] - ym) * (ys[i] - ym);
  }
  fit.residual = std::sqrt(ss_res / n);
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
  fit.poor_fit = fit.r_squared < 0.9;
  return fit;
}

double inscribed_bracket_x(const PhaseGrid& g) {
  const double k = g.nx() / 2;
  return std::sqrt(1.0 + k * k);
}

double inscribed_bracket(const PhaseGrid& g) {
  const double r = std::min<double>(g.nx() / 2, g.eta(g.nv() / 2));
  return std::sqrt(1.0 + r * r);
}

RadiusFit estimate_empirical_radius(const FluidSpectral& uh, double sigma, double s) {
  const auto& g = uh.grid;
  const std::size_t n = g.spatial_size();
  std::vector<double> br(n), amp(n);
  for (std::size_t ix = 0; ix < n; ++ix) {
    const auto k = g.unravel_x(ix);
    double k2 = 1.0;
    for (int a = 0; a < g.d(); ++a) {
      const double kk = signed_mode(k[a], g.nx());
      k2 += kk * kk;
    }
    double a2 = 0.0;
    for (int c = 0; c < g.d(); ++c) a2 += std::norm(uh.coeffs[c * n + ix]);
    br[ix] = std::sqrt(k2);
    amp[ix] = std::sqrt(a2);
  }
  return estimate_empirical_radius(br, amp, sigma, s, inscribed_bracket_x(g));
}

RadiusFit estimate_empirical_radius(const DistSpectral& fh, double sigma, double s) {
  const auto& g = fh.grid;
  const std::size_t nxd = g.spatial_size();
  std::vector<double> br(g.size()), amp(g.size());
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    const auto m = g.unravel_v(jv);
    double e2 = 0.0;
    for (int a = 0; a < g.d(); ++a) {
      const double eta = g.eta(signed_mode(m[a], g.nv()));
      e2 += eta * eta;
    }
    for (std::size_t ix = 0; ix < nxd; ++ix) {
      const auto k = g.unravel_x(ix);
      double k2 = 1.0 + e2;
      for (int a = 0; a < g.d(); ++a) {
        const double kk = signed_mode(k[a], g.nx());
        k2 += kk * kk;
      }
      br[jv * nxd + ix] = std::sqrt(k2);
      amp[jv * nxd + ix] = std::abs(fh.coeffs[jv * nxd + ix]);
    }
  }
  return estimate_empirical_radius(br, amp, sigma, s, inscribed_bracket(g));
}

}  // namespace gvns
