#include "gvns/lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "gvns/errors.hpp"
#include "gvns/moments.hpp"
#include "gvns/norms.hpp"
#include "gvns/transforms.hpp"

namespace gvns {

namespace {

using Rng = std::mt19937_64;
using Labels = std::vector<std::pair<std::string, double>>;

double bracket(const double* a, const double* b, int d) {
  double s = 1.0;
  for (int i = 0; i < d; ++i) s += a[i] * a[i];
  if (b)
    for (int i = 0; i < d; ++i) s += b[i] * b[i];
  return std::sqrt(s);
}

// Running max of LHS / RHS plus violation counts.
struct Ensemble {
  double stated = 0.0;
  double fitted = 0.0;
  long n = 0, skipped = 0, stated_violations = 0, undefined = 0;
  Labels worst;

  void add(double lhs, double rhs, const std::function<Labels()>& inputs) {
    ++n;
    if (!(std::isfinite(lhs) && std::isfinite(rhs))) {
      ++undefined;
      return;
    }
    if (rhs <= 0.0) {
      if (lhs > 0.0) ++undefined;
      else ++skipped;
      return;
    }
    if (stated > 0.0 && lhs > stated * rhs) ++stated_violations;
    const double q = lhs / rhs;
    if (q > fitted || worst.empty()) {
      fitted = std::max(fitted, q);
      worst = inputs();
      worst.emplace_back("lhs", lhs);
      worst.emplace_back("rhs", rhs);
    }
  }
};

InequalityReport make_report(const std::string& name, Labels params, const Ensemble& e, const Ensemble& refined,
                             const std::string& refinement) {
  InequalityReport r;
  r.name = name;
  r.params = std::move(params);
  r.sample_count = e.n;
  r.skipped = e.skipped;
  r.stated_C = e.stated;
  r.fitted_C = e.fitted;
  r.violations = (e.stated > 0.0 ? e.stated_violations : 0) + e.undefined;
  r.refinement = refinement;
  if (e.fitted > 0.0) r.refinement_ratio = refined.fitted / e.fitted;
  else r.refinement_ratio = refined.fitted > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  r.worst_case = e.worst;
  return r;
}

// ---- triangle inequalities on Japanese brackets -------------------------

Ensemble triangle_ensemble(int which, long samples, double s, int d, std::uint64_t seed) {
  Ensemble e;
  e.stated = triangle_constant(which, s);
  Rng rng(seed);
  std::uniform_real_distribution<double> U(-50.0, 50.0);
  std::array<double, kMaxDim> k{}, l{}, eta{};
  for (long n = 0; n < samples; ++n) {
    for (int i = 0; i < d; ++i) k[i] = U(rng);
    for (int i = 0; i < d; ++i) l[i] = U(rng);
    for (int i = 0; i < d; ++i) eta[i] = U(rng);
    const Sides sd = triangle_sides(which, k.data(), l.data(), eta.data(), d, s);
    e.add(sd.lhs, sd.rhs, [&] {
      Labels w;
      for (int i = 0; i < d; ++i) w.emplace_back("k" + std::to_string(i), k[i]);
      for (int i = 0; i < d; ++i) w.emplace_back("l" + std::to_string(i), l[i]);
      if (which >= 5)
        for (int i = 0; i < d; ++i) w.emplace_back("eta" + std::to_string(i), eta[i]);
      return w;
    });
  }
  return e;
}

// ---- random fields --------------------------------------------------------

// Modes of [-K, K]^d with axis 0 fastest.
std::vector<std::array<int, kMaxDim>> mode_box(int d, int K) {
  std::vector<std::array<int, kMaxDim>> out;
  const int w = 2 * K + 1;
  long total = 1;
  for (int i = 0; i < d; ++i) total *= w;
  for (long f = 0; f < total; ++f) {
    std::array<int, kMaxDim> k{};
    long r = f;
    for (int i = 0; i < d; ++i) {
      k[i] = static_cast<int>(r % w) - K;
      r /= w;
    }
    out.push_back(k);
  }
  return out;
}

long mode_index(const std::array<int, kMaxDim>& k, int d, int K) {
  long f = 0, stride = 1;
  for (int i = 0; i < d; ++i) {
    if (k[i] < -K || k[i] > K) return -1;
    f += (k[i] + K) * stride;
    stride *= 2 * K + 1;
  }
  return f;
}

std::vector<std::array<double, kMaxDim>> eta_box(int d, int P) {
  std::vector<std::array<double, kMaxDim>> out;
  long total = 1;
  for (int i = 0; i < d; ++i) total *= P;
  const double h = 8.0 / P;
  for (long f = 0; f < total; ++f) {
    std::array<double, kMaxDim> e{};
    long r = f;
    for (int i = 0; i < d; ++i) {
      e[i] = -4.0 + (static_cast<double>(r % P) + 0.5) * h;
      r /= P;
    }
    out.push_back(e);
  }
  return out;
}

// |c| ~ <k,eta>^{-decay} * U[0,1] with a uniform phase.
std::complex<double> random_coeff(Rng& rng, double br, double decay) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double a = U(rng) * std::pow(br, -decay);
  return std::polar(a, 2.0 * std::numbers::pi * U(rng));
}

// Real band-limited function on the spatial grid, coefficients ~ <k>^{-decay}.
std::vector<double> random_periodic(Rng& rng, const PhaseGrid& g, int K, double decay) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const int d = g.d();
  std::vector<double> out(g.spatial_size(), 0.0);
  for (const auto& k : mode_box(d, K)) {
    // One of each +-k pair, plus the mean.
    bool rep = true;
    for (int i = d - 1; i >= 0; --i) {
      if (k[i] != 0) {
        rep = k[i] > 0;
        break;
      }
    }
    if (!rep) continue;
    double k2 = 1.0;
    for (int i = 0; i < d; ++i) k2 += k[i] * k[i];
    const double amp = std::pow(k2, -0.5 * decay);
    const double a = amp * U(rng), b = amp * U(rng);
    for (std::size_t ix = 0; ix < out.size(); ++ix) {
      const auto i = g.unravel_x(ix);
      double ph = 0.0;
      for (int q = 0; q < d; ++q) ph += k[q] * g.x(i[q]);
      out[ix] += a * std::cos(ph) + b * std::sin(ph);
    }
  }
  return out;
}

double bump(double r) { return r < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r * r)) : 0.0; }

// f(x, v) = sum_b X_b(x) phi_b(v), smooth bumps phi_b supported in |v| <= radius.
// The parameters are drawn once and can be sampled on several velocity grids.
struct RandomDist {
  struct Term {
    std::vector<double> x;
    std::array<double, kMaxDim> centre{};
    double width = 1.0;
  };
  std::vector<Term> terms;

  RandomDist(Rng& rng, const PhaseGrid& g, int K, double decay, double radius, int nterms = 2) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int t = 0; t < nterms; ++t) {
      Term term;
      term.x = random_periodic(rng, g, K, decay);
      double c2 = 0.0;
      for (int i = 0; i < g.d(); ++i) {
        term.centre[i] = radius * (U(rng) - 0.5) * (0.5 / std::sqrt(static_cast<double>(g.d())));
        c2 += term.centre[i] * term.centre[i];
      }
      const double room = radius - std::sqrt(c2);
      term.width = room * (0.5 + 0.5 * U(rng));
      terms.push_back(std::move(term));
    }
  }

  DistPhysical sample(const PhaseGrid& g) const {
    DistPhysical f(g);
    const std::size_t nx = g.spatial_size();
    for (const auto& term : terms) {
      for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
        const auto j = g.unravel_v(jv);
        double r2 = 0.0;
        for (int i = 0; i < g.d(); ++i) {
          const double dv = g.v(j[i]) - term.centre[i];
          r2 += dv * dv;
        }
        const double phi = bump(std::sqrt(r2) / term.width);
        if (phi == 0.0) continue;
        for (std::size_t ix = 0; ix < nx; ++ix) f.values[jv * nx + ix] += term.x[ix] * phi;
      }
    }
    return f;
  }
};

// ---- spectral differentiation --------------------------------------------

using Beta = std::array<int, 2 * kMaxDim>;

// All multi-indices over `axes` axes with |beta| <= order.
std::vector<Beta> derivative_indices(int axes, int order) {
  std::vector<Beta> out;
  Beta b{};
  std::function<void(int, int)> rec = [&](int a, int left) {
    if (a == axes) {
      out.push_back(b);
      return;
    }
    for (int p = 0; p <= left; ++p) {
      b[a] = p;
      rec(a + 1, left - p);
    }
    b[a] = 0;
  };
  rec(0, order);
  return out;
}

std::complex<double> ipow(double w, int p) {
  std::complex<double> z(1.0, 0.0);
  for (int q = 0; q < p; ++q) z *= std::complex<double>(0.0, w);
  return z;
}

// D^beta on phase space; beta[0..d) act on x, beta[d..2d) on v.
DistPhysical phase_derivative(Transformer& tr, const DistSpectral& fh, const Beta& beta) {
  const auto& g = fh.grid;
  const int d = g.d();
  DistSpectral out(g);
  for (std::size_t mv = 0; mv < g.velocity_size(); ++mv) {
    const auto m = g.unravel_v(mv);
    for (std::size_t kx = 0; kx < g.spatial_size(); ++kx) {
      const auto k = g.unravel_x(kx);
      std::complex<double> z(1.0, 0.0);
      bool nyquist = false;
      for (int a = 0; a < d; ++a) {
        if (beta[a] > 0 && k[a] == g.nx() / 2) nyquist = true;
        if (beta[d + a] > 0 && m[a] == g.nv() / 2) nyquist = true;
        z *= ipow(signed_mode(k[a], g.nx()), beta[a]) * ipow(signed_mode(m[a], g.nv()) * g.deta(), beta[d + a]);
      }
      out.at(kx, mv) = nyquist ? std::complex<double>{} : z * fh.at(kx, mv);
    }
  }
  return tr.to_physical(out).f;
}

std::vector<double> spatial_derivative(Transformer& tr, const std::vector<std::complex<double>>& ah, const Beta& beta) {
  const auto& g = tr.grid();
  const int d = g.d();
  std::vector<std::complex<double>> out(ah.size());
  for (std::size_t kx = 0; kx < ah.size(); ++kx) {
    const auto k = g.unravel_x(kx);
    std::complex<double> z(1.0, 0.0);
    bool nyquist = false;
    for (int a = 0; a < d; ++a) {
      if (beta[a] > 0 && k[a] == g.nx() / 2) nyquist = true;
      z *= ipow(signed_mode(k[a], g.nx()), beta[a]);
    }
    out[kx] = nyquist ? std::complex<double>{} : z * ah[kx];
  }
  return tr.scalar_to_physical(out);
}

double l2(const std::vector<double>& a, double measure) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s * measure);
}

double sup_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

// (sum_{|beta| <= order} ||D^beta a||^2)^{1/2} on phase space or on T^d.
double sobolev_phase(Transformer& tr, const DistPhysical& f, int order) {
  const auto fh = tr.to_spectral(f);
  const double meas = f.grid.dxd() * f.grid.dvd();
  double s = 0.0;
  for (const auto& b : derivative_indices(2 * f.grid.d(), order)) s += std::pow(l2(phase_derivative(tr, fh, b).values, meas), 2);
  return std::sqrt(s);
}

double sobolev_spatial(Transformer& tr, const std::vector<double>& a, int order) {
  const auto ah = tr.scalar_to_spectral(a);
  const double meas = tr.grid().dxd();
  double s = 0.0;
  for (const auto& b : derivative_indices(tr.grid().d(), order)) s += std::pow(l2(spatial_derivative(tr, ah, b), meas), 2);
  return std::sqrt(s);
}

double grad_sup(Transformer& tr, const std::vector<double>& a) {
  const auto ah = tr.scalar_to_spectral(a);
  const int d = tr.grid().d();
  std::vector<double> g2(a.size(), 0.0);
  for (int i = 0; i < d; ++i) {
    Beta b{};
    b[i] = 1;
    const auto da = spatial_derivative(tr, ah, b);
    for (std::size_t n = 0; n < a.size(); ++n) g2[n] += da[n] * da[n];
  }
  return std::sqrt(sup_abs(g2));
}

Sides product_sides(Transformer& tr, int which, int sigma, const std::vector<double>& u, const std::vector<double>& w) {
  const auto& g = tr.grid();
  Sides out;
  const double u_sup = sup_abs(u), w_sup = sup_abs(w);
  const double u_sob = sobolev_spatial(tr, u, sigma);
  if (which == 1 || which == 2) {
    DistPhysical f(g), uf(g);
    f.values = w;
    const std::size_t nx = g.spatial_size();
    for (std::size_t i = 0; i < w.size(); ++i) uf.values[i] = u[i % nx] * w[i];
    if (which == 1) {
      out.lhs = sobolev_phase(tr, uf, sigma);
      out.rhs = u_sup * sobolev_phase(tr, f, sigma) + u_sob * w_sup;
      return out;
    }
    const auto fh = tr.to_spectral(f), ufh = tr.to_spectral(uf);
    const double meas = g.dxd() * g.dvd();
    std::vector<double> diff(w.size());
    for (const auto& b : derivative_indices(2 * g.d(), sigma)) {
      const auto a = phase_derivative(tr, ufh, b);
      const auto c = phase_derivative(tr, fh, b);
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a.values[i] - u[i % nx] * c.values[i];
      out.lhs += l2(diff, meas);
    }
    out.rhs = grad_sup(tr, u) * sobolev_phase(tr, f, sigma - 1) + u_sob * w_sup;
    return out;
  }
  std::vector<double> uw(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) uw[i] = u[i] * w[i];
  out.rhs = grad_sup(tr, u) * sobolev_spatial(tr, w, sigma - 1) + u_sob * w_sup;
  if (which == 3) {
    out.lhs = sobolev_spatial(tr, uw, sigma);
    return out;
  }
  const auto uwh = tr.scalar_to_spectral(uw), wh = tr.scalar_to_spectral(w);
  const double meas = g.dxd();
  std::vector<double> diff(u.size());
  for (const auto& b : derivative_indices(g.d(), sigma)) {
    const auto a = spatial_derivative(tr, uwh, b);
    const auto c = spatial_derivative(tr, wh, b);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a[i] - u[i] * c[i];
    out.lhs += l2(diff, meas);
  }
  return out;
}

Labels sample_label(long n) { return {{"sample", static_cast<double>(n)}}; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

bool InequalityReport::passed() const {
  if (violations != 0) return false;
  if (explicit_constant()) return true;
  return std::isfinite(fitted_C) && refinement_ratio >= 0.5 && refinement_ratio <= 2.0;
}

std::string InequalityReport::key() const {
  std::string k = name;
  for (const auto& [p, v] : params) k += "_" + p + num(v);
  return k;
}

std::string to_json(const InequalityReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) p[k] = v;
  j["params"] = p;
  j["sample_count"] = r.sample_count;
  j["skipped"] = r.skipped;
  j["violations"] = r.violations;
  if (r.explicit_constant()) j["stated_C"] = r.stated_C;
  j["fitted_C"] = r.fitted_C;
  j["refinement_ratio"] = r.refinement_ratio;
  j["refinement"] = r.refinement;
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.worst_case) w[k] = v;
  j["worst_case"] = w;
  j["passed"] = r.passed();
  return j.dump(2);
}

double triangle_constant(int which, double s) {
  if (which == 1 || which == 3 || which == 5) return 1.0;
  if (which == 2 || which == 6) return std::pow(2.0, s - 1.0);
  return 0.0;
}

Sides triangle_sides(int which, const double* k, const double* l, const double* eta, int d, double s) {
  std::array<double, kMaxDim> kpl{}, kml{};
  for (int i = 0; i < d; ++i) {
    kpl[i] = k[i] + l[i];
    kml[i] = k[i] - l[i];
  }
  const double bk = bracket(k, nullptr, d), bl = bracket(l, nullptr, d);
  Sides out;
  switch (which) {
    case 1:
    case 2:
      out.lhs = std::pow(bracket(kpl.data(), nullptr, d), s);
      out.rhs = std::pow(bk, s) + std::pow(bl, s);
      break;
    case 3:
      out.lhs = std::abs(std::pow(bk, s) - std::pow(bl, s));
      out.rhs = std::pow(bracket(kml.data(), nullptr, d), s);
      break;
    case 4:
      out.lhs = std::abs(std::pow(bk, s) - std::pow(bl, s));
      out.rhs = bracket(kml.data(), nullptr, d) / (std::pow(bk, 1.0 - s) + std::pow(bl, 1.0 - s));
      break;
    case 5:
    case 6:
    case 7: {
      const double a = bracket(k, eta, d), b = bracket(kml.data(), eta, d);
      out.lhs = std::abs(std::pow(a, s) - std::pow(b, s));
      if (which == 5) out.rhs = std::pow(bl, s);
      else if (which == 6) out.rhs = std::pow(bl, s) + std::pow(b, s);
      else out.rhs = bl / (std::pow(a, 1.0 - s) + std::pow(b, 1.0 - s));
      break;
    }
    default:
      throw std::invalid_argument("triangle case must be 1..7");
  }
  return out;
}

InequalityReport check_triangle(int which, long samples, double s, int d, std::uint64_t seed) {
  if (which < 1 || which > 7) throw std::invalid_argument("triangle case must be 1..7");
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("triangle: d must be 1..3");
  const bool large_s = which == 2 || which == 6;
  if (large_s && !(s >= 1.0)) throw HypothesisError("triangle case " + std::to_string(which) + " needs s >= 1");
  if (!large_s && !(s > 0.0 && s <= 1.0)) throw HypothesisError("triangle case " + std::to_string(which) + " needs s in (0,1]");
  const Ensemble a = triangle_ensemble(which, samples, s, d, seed);
  const Ensemble b = triangle_ensemble(which, samples, s, d, seed + 1);
  return make_report("triangle_case" + std::to_string(which), {{"d", d}, {"s", s}}, a, b, "second ensemble at seed + 1");
}

Sides young_sides(const YoungInput& in) {
  const int d = in.d, K = in.kmax, P = in.eta_points;
  const auto modes = mode_box(d, K);
  const auto etas = eta_box(d, P);
  const double h = std::pow(8.0 / P, d);
  const std::size_t ne = etas.size();
  if (in.f.size() != modes.size() * ne || in.g.size() != modes.size() * ne || in.r.size() != modes.size())
    throw std::invalid_argument("young_sides: field sizes do not match the mode and eta grids");
  const double rpow = in.variant == 1 ? in.nu_or_gamma : in.sigma;
  const double gpow = in.variant == 1 ? in.sigma + in.beta : in.nu_or_gamma;

  // Weighted g and r once, then the triple sum over (k, l, eta).
  std::vector<std::complex<double>> gw(in.g.size()), rw(in.r.size());
  for (std::size_t q = 0; q < modes.size(); ++q) {
    const double kd[kMaxDim] = {double(modes[q][0]), double(modes[q][1]), double(modes[q][2])};
    rw[q] = std::pow(bracket(kd, nullptr, d), rpow) * in.r[q];
    for (std::size_t e = 0; e < ne; ++e) gw[q * ne + e] = std::pow(bracket(kd, etas[e].data(), d), gpow) * in.g[q * ne + e];
  }
  std::complex<double> sum{};
  for (std::size_t kq = 0; kq < modes.size(); ++kq) {
    for (std::size_t lq = 0; lq < modes.size(); ++lq) {
      std::array<int, kMaxDim> kl{};
      for (int i = 0; i < d; ++i) kl[i] = modes[kq][i] - modes[lq][i];
      const long m = mode_index(kl, d, K);
      if (m < 0 || rw[lq] == 0.0) continue;
      std::complex<double> inner{};
      for (std::size_t e = 0; e < ne; ++e) inner += in.f[kq * ne + e] * gw[m * ne + e];
      sum += rw[lq] * inner;
    }
  }
  Sides out;
  out.lhs = std::abs(sum) * h;
  double nf = 0.0, nr = 0.0, ng = 0.0;
  for (std::size_t q = 0; q < modes.size(); ++q) {
    const double kd[kMaxDim] = {double(modes[q][0]), double(modes[q][1]), double(modes[q][2])};
    nr += std::pow(bracket(kd, nullptr, d), 2.0 * in.sigma) * std::norm(in.r[q]);
    for (std::size_t e = 0; e < ne; ++e) {
      nf += std::norm(in.f[q * ne + e]);
      ng += std::pow(bracket(kd, etas[e].data(), d), 2.0 * (in.sigma + in.beta)) * std::norm(in.g[q * ne + e]);
    }
  }
  out.rhs = std::sqrt(nf * h) * std::sqrt(nr) * std::sqrt(ng * h);
  return out;
}

InequalityReport check_young(int variant, int d, double sigma, double nu_or_gamma, double beta, int eta_points, long samples,
                             std::uint64_t seed, int kmax) {
  if (variant != 1 && variant != 2) throw std::invalid_argument("Young variant must be 1 or 2");
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("Young: d must be 1..3");
  if (variant == 1 && !(sigma > 0.5 * d + nu_or_gamma)) throw HypothesisError("Young variant 1 needs sigma > d/2 + nu");
  if (variant == 2 && !(sigma > 0.5 * d + nu_or_gamma - beta)) throw HypothesisError("Young variant 2 needs sigma > d/2 + gamma - beta");

  auto ensemble = [&](int P) {
    Ensemble e;
    Rng rng(seed);
    const auto modes = mode_box(d, kmax);
    const auto etas = eta_box(d, P);
    YoungInput in{variant, d, sigma, nu_or_gamma, beta, kmax, P, {}, {}, {}};
    in.f.resize(modes.size() * etas.size());
    in.g.resize(in.f.size());
    in.r.resize(modes.size());
    const double decay = sigma + d;
    for (long n = 0; n < samples; ++n) {
      for (std::size_t q = 0; q < modes.size(); ++q) {
        const double kd[kMaxDim] = {double(modes[q][0]), double(modes[q][1]), double(modes[q][2])};
        in.r[q] = random_coeff(rng, bracket(kd, nullptr, d), decay);
        for (std::size_t e = 0; e < etas.size(); ++e) {
          const double b = bracket(kd, etas[e].data(), d);
          in.f[q * etas.size() + e] = random_coeff(rng, b, decay);
          in.g[q * etas.size() + e] = random_coeff(rng, b, decay);
        }
      }
      const Sides sd = young_sides(in);
      e.add(sd.lhs, sd.rhs, [&] { return sample_label(n); });
    }
    return e;
  };
  const Ensemble a = ensemble(eta_points), b = ensemble(2 * eta_points);
  Labels params{{"d", d}, {"sigma", sigma}, {variant == 1 ? "nu" : "gamma", nu_or_gamma}, {"beta", beta}, {"eta", eta_points}};
  return make_report("young_variant" + std::to_string(variant), params, a, b, "eta points doubled");
}

std::vector<InequalityReport> check_moment_bounds(long samples, const MomentLabParams& p, std::uint64_t seed) {
  const int d = p.d;
  if (!(p.M > 0.5 * d)) throw HypothesisError("moment bounds need M > d/2");
  const bool with_j = p.M > 0.5 * d + 1.0;

  auto ensembles = [&](int nv) {
    std::array<Ensemble, 2> e;
    const PhaseGrid g(d, p.nx, nv, p.lv);
    Transformer tr(g);
    Rng rng(seed);
    for (long n = 0; n < samples; ++n) {
      const RandomDist gen(rng, g, 4, p.sigma + d, 0.6 * p.lv);
      const DistPhysical f = gen.sample(g);
      const double nf = gevrey_norm_f(f, p.lambda, p.sigma, p.M, p.s);
      const MomentFields m = compute_moments(f);
      const double nrho = gevrey_norm_scalar(g, tr.scalar_to_spectral(m.rho), p.lambda, p.sigma, p.s);
      e[0].add(nrho, nf, [&] { return sample_label(n); });
      if (with_j) {
        double nj2 = 0.0;
        const std::size_t nx = g.spatial_size();
        for (int c = 0; c < d; ++c) {
          std::vector<double> jc(m.j.begin() + c * nx, m.j.begin() + (c + 1) * nx);
          nj2 += std::pow(gevrey_norm_scalar(g, tr.scalar_to_spectral(jc), p.lambda, p.sigma, p.s), 2);
        }
        e[1].add(std::sqrt(nj2), nf, [&] { return sample_label(n); });
      }
    }
    return e;
  };
  const auto a = ensembles(p.nv), b = ensembles(2 * p.nv);
  Labels params{{"d", d}, {"lambda", p.lambda}, {"sigma", p.sigma}, {"M", p.M}, {"s", p.s}, {"Nv", p.nv}};
  std::vector<InequalityReport> out{make_report("moment_rho", params, a[0], b[0], "Nv doubled")};
  if (with_j) out.push_back(make_report("moment_j", params, a[1], b[1], "Nv doubled"));
  return out;
}

Sides product_commutator_sides(int which, int sigma, const PhaseGrid& grid, const std::vector<double>& u, const std::vector<double>& w) {
  if (which < 1 || which > 4) throw std::invalid_argument("product/commutator case must be 1..4");
  if (sigma < 1) throw std::invalid_argument("product/commutator: sigma must be a positive integer");
  const std::size_t expect = which <= 2 ? grid.size() : grid.spatial_size();
  if (u.size() != grid.spatial_size() || w.size() != expect) throw std::invalid_argument("product/commutator: array sizes do not match the grid");
  Transformer tr(grid);
  return product_sides(tr, which, sigma, u, w);
}

InequalityReport check_product_commutator(int which, long samples, int sigma, double c_f, std::uint64_t seed) {
  if (which < 1 || which > 4) throw std::invalid_argument("product/commutator case must be 1..4");
  if (sigma < 1 || sigma > 3) throw std::invalid_argument("product/commutator: sigma must be 1, 2 or 3");
  if (!(c_f > 0.0)) throw std::invalid_argument("product/commutator: c_f must be positive");
  const bool kinetic = which <= 2;

  // Kinetic cases refine Nv on the same data; spatial cases double both Nx and
  // the band limit of the random functions.
  auto ensemble = [&](bool refined) {
    Ensemble e;
    Rng rng(seed);
    const int K = kinetic ? 4 : (refined ? 8 : 4);
    const PhaseGrid g = kinetic ? PhaseGrid(1, 24, refined ? 128 : 64, 1.5 * c_f) : PhaseGrid(2, refined ? 48 : 24, 4, 1.0);
    Transformer tr(g);
    const PhaseGrid gsample = kinetic ? PhaseGrid(1, 24, 64, 1.5 * c_f) : g;
    for (long n = 0; n < samples; ++n) {
      std::vector<double> u = random_periodic(rng, g, K, sigma + g.d());
      std::vector<double> w;
      if (kinetic) {
        const RandomDist gen(rng, gsample, 4, sigma + 2.0, c_f);
        w = gen.sample(g).values;
      } else {
        w = random_periodic(rng, g, K, sigma + g.d());
      }
      const Sides sd = product_sides(tr, which, sigma, u, w);
      e.add(sd.lhs, sd.rhs, [&] { return sample_label(n); });
    }
    return e;
  };
  const Ensemble a = ensemble(false), b = ensemble(true);
  Labels params{{"sigma", sigma}};
  if (kinetic) params.emplace_back("Cf", c_f);
  return make_report("product_case" + std::to_string(which), params, a, b,
                     kinetic ? "Nv doubled" : "Nx and band limit doubled");
}

InequalityReport check_rho_u_bound(long samples, const RhoULabParams& p, std::uint64_t seed) {
  const int d = 1;
  if (!(p.sigma > 0.5 * d + 2.0 * p.s)) throw HypothesisError("rho u bound needs sigma > d/2 + 2s");
  if (!(p.M > 0.5 * d)) throw HypothesisError("rho u bound needs M > d/2");

  auto ensemble = [&](int nv) {
    Ensemble e;
    const PhaseGrid g(d, p.nx, nv, p.lv);
    Transformer tr(g);
    Rng rng(seed);
    for (long n = 0; n < samples; ++n) {
      const RandomDist gen(rng, g, 4, p.sigma + d, 0.6 * p.lv);
      const DistPhysical f = gen.sample(g);
      VectorField u(g);
      u.data = random_periodic(rng, g, 4, p.sigma + d);
      const MomentFields m = compute_moments(f);
      VectorField ru(g);
      for (std::size_t i = 0; i < ru.data.size(); ++i) ru.data[i] = m.rho[i] * u.data[i];
      const auto uh = tr.fluid_to_spectral(u);
      const double lhs = gevrey_norm_u(tr.fluid_to_spectral(ru), p.lambda, p.sigma, p.s);
      const double fl = gevrey_norm_f(f, p.lambda, p.sigma, p.M, p.s);
      const double f0 = sobolev_weighted_norm(f, p.sigma, p.M);
      const double ul = gevrey_norm_u(uh, p.lambda, p.sigma, p.s);
      const double u0 = sobolev_norm_u(uh, p.sigma);
      const double rhs = u0 * fl + f0 * ul + p.lambda * p.lambda * ul * fl;
      e.add(lhs, rhs, [&] { return sample_label(n); });
    }
    return e;
  };
  const Ensemble a = ensemble(p.nv), b = ensemble(2 * p.nv);
  Labels params{{"lambda", p.lambda}, {"sigma", p.sigma}, {"M", p.M}, {"s", p.s}};
  return make_report("rho_u", params, a, b, "Nv doubled");
}

std::vector<std::string> lab_suites() { return {"triangle", "young", "moments", "commutator", "rho_u", "all"}; }

std::vector<InequalityReport> run_lab_suite(const std::string& suite, std::uint64_t seed) {
  std::vector<InequalityReport> out;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "triangle") {
    known = true;
    for (int c = 1; c <= 7; ++c) out.push_back(check_triangle(c, 100000, (c == 2 || c == 6) ? 1.5 : 0.5, 2, seed));
  }
  if (all || suite == "young") {
    known = true;
    out.push_back(check_young(1, 1, 2.0, 0.0, 0.0, 8, 500, seed));
    out.push_back(check_young(2, 1, 2.0, 1.0, 0.0, 8, 500, seed));
    out.push_back(check_young(2, 1, 3.0, 2.0, 0.25, 8, 500, seed));
    out.push_back(check_young(1, 2, 2.0, 0.0, 0.0, 8, 20, seed));
  }
  if (all || suite == "moments") {
    known = true;
    for (auto& r : check_moment_bounds(200, MomentLabParams{}, seed)) out.push_back(std::move(r));
  }
  if (all || suite == "commutator") {
    known = true;
    for (int c = 1; c <= 2; ++c)
      for (double cf : {1.0, 2.0, 4.0}) out.push_back(check_product_commutator(c, 100, 2, cf, seed));
    out.push_back(check_product_commutator(3, 100, 2, 1.0, seed));
    out.push_back(check_product_commutator(4, 100, 2, 1.0, seed));
  }
  if (all || suite == "rho_u") {
    known = true;
    out.push_back(check_rho_u_bound(200, RhoULabParams{}, seed));
  }
  if (!known) throw std::invalid_argument("unknown lab suite '" + suite + "'");
  return out;
}

}  // namespace gvns
