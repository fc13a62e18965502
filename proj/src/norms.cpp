#include "gvns/norms.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "gvns/errors.hpp"
#include "gvns/numerics.hpp"

namespace gvns {

double jap_bracket(std::span<const double> k, std::span<const double> eta) {
  double s = 1.0;
  for (double x : k) s += x * x;
  for (double x : eta) s += x * x;
  return std::sqrt(s);
}

MultiplierValue multiplier_A(std::span<const double> k, std::span<const double> eta, double lambda, double sigma, double s) {
  if (lambda < 0.0) throw std::invalid_argument("multiplier_A: lambda must be >= 0");
  const double b = jap_bracket(k, eta);
  MultiplierValue out;
  out.log_value = sigma * std::log(b) + lambda * std::pow(b, s);
  if (out.log_value > kMaxLogWeight) {
    out.saturated = true;
    out.value = DBL_MAX;
  } else {
    out.value = std::exp(out.log_value);
  }
  return out;
}

void GevreyParams::validate() const {
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("s must lie in (0,1]");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (M < 0) throw std::invalid_argument("M must be non-negative");
  if (!(lambda0 > 0.0)) throw std::invalid_argument("lambda0 must be positive");
}

std::vector<std::string> GevreyParams::hypothesis_warnings(int d) const {
  std::vector<std::string> w;
  const double hd = 0.5 * d;
  if (s < 1.0 && !(sigma > hd + 0.5 * s + 2.0)) w.push_back("sigma <= d/2 + s/2 + 2: Gevrey propagation hypothesis not met");
  if (s == 1.0 && !(sigma > hd + 2.5)) w.push_back("sigma <= d/2 + 5/2: analytic propagation hypothesis not met");
  if (!(M > hd + 1.0)) w.push_back("M <= d/2 + 1: moment hypothesis not met");
  return w;
}

double weighted_norm(std::span<const double> bracket, std::span<const double> power, double lambda, double sigma, double s) {
  if (lambda < 0.0) throw std::invalid_argument("norm: lambda must be >= 0");
  std::vector<double> e(bracket.size());
  double emax = -INFINITY;
  for (std::size_t i = 0; i < bracket.size(); ++i) {
    const double b = bracket[i];
    const double lw = sigma * std::log(b) + lambda * std::pow(b, s);
    if (power[i] > 0.0) {
      if (lw > kMaxLogWeight) {
        throw GevreyOverflow("Gevrey weight overflow: log A = " + std::to_string(lw) + " at <k,eta> = " + std::to_string(b) + "; shrink lambda or the grid", lw);
      }
      emax = std::max(emax, 2.0 * lw);
    }
    e[i] = 2.0 * lw;
  }
  if (emax == -INFINITY) return 0.0;
  std::vector<double> terms(bracket.size());
  for (std::size_t i = 0; i < bracket.size(); ++i) terms[i] = power[i] > 0.0 ? power[i] * std::exp(e[i] - emax) : 0.0;
  const double sum = pairwise_sum(terms);
  return std::sqrt(sum) * std::exp(0.5 * emax);
}

MomentSpectrum::MomentSpectrum(Transformer& t, const DistPhysical& f, int M) : M_(M) {
  const auto& g = f.grid;
  if (!(g == t.grid())) throw std::invalid_argument("MomentSpectrum: grid mismatch");
  require_finite(f.values, "MomentSpectrum");
  const int d = g.d();
  const int nx = g.nx(), nv = g.nv();
  const int nh0 = nx / 2 + 1;
  const std::size_t half = t.half_size();
  const std::size_t inner = static_cast<std::size_t>(g.spatial_size() / nx) * nh0;  // x part of the half layout

  // Row-major half layout: [v_{d-1} .. v_0][x_{d-1} .. x_1][x_0 half].
  const int maxk2 = d * (nx / 2) * (nx / 2);
  const int maxm2 = d * (nv / 2) * (nv / 2);
  const std::size_t stride = static_cast<std::size_t>(maxm2 + 1);
  std::vector<int> bin(half);
  std::vector<double> mult(half);
  std::vector<char> inband(half);
  for (std::size_t e = 0; e < half; ++e) {
    const std::size_t xpart = e % inner;
    const std::size_t vpart = e / inner;
    const int k0 = static_cast<int>(xpart % nh0);
    std::size_t rest = xpart / nh0;
    int k2 = k0 * k0;
    bool keep = dealias_keeps(k0, nx);
    for (int a = 1; a < d; ++a) {
      const int k = signed_mode(static_cast<int>(rest % nx), nx);
      rest /= nx;
      k2 += k * k;
      keep = keep && dealias_keeps(k, nx);
    }
    auto m = g.unravel_v(vpart);
    int m2 = 0;
    for (int a = 0; a < d; ++a) {
      const int mm = signed_mode(m[a], nv);
      m2 += mm * mm;
      keep = keep && dealias_keeps(mm, nv);
    }
    bin[e] = k2 * static_cast<int>(stride) + m2;
    mult[e] = (k0 == 0 || k0 == nx / 2) ? 1.0 : 2.0;
    inband[e] = keep ? 1 : 0;
  }

  std::vector<double> acc(static_cast<std::size_t>(maxk2 + 1) * stride, 0.0);
  std::vector<double> acc0(acc.size(), 0.0), amax0(acc.size(), 0.0);
  std::vector<double> w(g.size()), power;
  const std::size_t nxd = g.spatial_size();
  double tail = 0.0, all = 0.0;
  for (const auto& alpha : multi_indices(d, M)) {
    const auto mono = velocity_monomial(g, alpha);
    for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
      const double c = mono[jv];
      for (std::size_t ix = 0; ix < nxd; ++ix) w[jv * nxd + ix] = c * f.values[jv * nxd + ix];
    }
    t.half_power(w, power);
    const bool zero = alpha[0] == 0 && alpha[1] == 0 && alpha[2] == 0;
    for (std::size_t e = 0; e < half; ++e) {
      const double p = mult[e] * power[e];
      acc[bin[e]] += p;
      if (zero) {
        acc0[bin[e]] += p;
        amax0[bin[e]] = std::max(amax0[bin[e]], power[e]);
        all += p;
        if (!inband[e]) tail += p;
      }
    }
  }
  const double deta = g.detad();
  const double eta2 = g.deta() * g.deta();
  for (std::size_t b = 0; b < acc.size(); ++b) {
    if (acc[b] == 0.0 && acc0[b] == 0.0) continue;
    const double k2 = static_cast<double>(b / stride);
    const double m2 = static_cast<double>(b % stride);
    bracket_.push_back(std::sqrt(1.0 + k2 + eta2 * m2));
    power_.push_back(acc[b] * deta);
    power0_.push_back(acc0[b] * deta);
    max0_.push_back(std::sqrt(amax0[b]));
  }
  tail_ = all > 0.0 ? tail / all : 0.0;
}

double MomentSpectrum::norm_sq(double lambda, double sigma, double s) const {
  const double n = norm(lambda, sigma, s);
  return n * n;
}

double MomentSpectrum::norm(double lambda, double sigma, double s) const { return weighted_norm(bracket_, power_, lambda, sigma, s); }

double gevrey_norm_f(const DistPhysical& f, double lambda, double sigma, int M, double s) {
  Transformer t(f.grid);
  return MomentSpectrum(t, f, M).norm(lambda, sigma, s);
}

double gevrey_norm_f(const DistPhysical& f, double lambda, const GevreyParams& p) { return gevrey_norm_f(f, lambda, p.sigma, p.M, p.s); }

double sobolev_weighted_norm(const DistPhysical& f, double sigma, int M) { return gevrey_norm_f(f, 0.0, sigma, M, 1.0); }

double sobolev_weighted_norm(const DistSpectral& fh, double sigma, int M) {
  auto r = to_physical(fh);
  return sobolev_weighted_norm(r.f, sigma, M);
}

double gevrey_norm_scalar(const PhaseGrid& g, std::span<const cplx> ah, double lambda, double sigma, double s) {
  const std::size_t n = g.spatial_size();
  std::vector<double> br(n), pw(n);
  for (std::size_t ix = 0; ix < n; ++ix) {
    auto k = g.unravel_x(ix);
    double k2 = 1.0;
    for (int a = 0; a < g.d(); ++a) {
      const int kk = signed_mode(k[a], g.nx());
      k2 += static_cast<double>(kk) * kk;
    }
    br[ix] = std::sqrt(k2);
    pw[ix] = std::norm(ah[ix]);
  }
  return weighted_norm(br, pw, lambda, sigma, s);
}

double gevrey_norm_u(const FluidSpectral& uh, double lambda, double sigma, double s) {
  const auto& g = uh.grid;
  const std::size_t n = g.spatial_size();
  std::vector<double> br(g.d() * n), pw(g.d() * n);
  for (int c = 0; c < g.d(); ++c) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      auto k = g.unravel_x(ix);
      double k2 = 1.0;
      for (int a = 0; a < g.d(); ++a) {
        const int kk = signed_mode(k[a], g.nx());
        k2 += static_cast<double>(kk) * kk;
      }
      br[c * n + ix] = std::sqrt(k2);
      pw[c * n + ix] = std::norm(uh.coeffs[c * n + ix]);
    }
  }
  return weighted_norm(br, pw, lambda, sigma, s);
}

double sobolev_norm_u(const FluidSpectral& uh, double sigma) { return gevrey_norm_u(uh, 0.0, sigma, 1.0); }

double linf_weighted_norm(const DistPhysical& f, int M) {
  const auto& g = f.grid;
  const std::size_t nxd = g.spatial_size();
  double acc = 0.0;
  for (const auto& alpha : multi_indices(g.d(), M)) {
    const auto mono = velocity_monomial(g, alpha);
    double sup = 0.0;
    for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
      for (std::size_t ix = 0; ix < nxd; ++ix) sup = std::max(sup, std::abs(mono[jv] * f.values[jv * nxd + ix]));
    }
    acc += sup * sup;
  }
  return std::sqrt(acc);
}

}  // namespace gvns
