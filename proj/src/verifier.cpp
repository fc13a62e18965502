#include "gvns/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "gvns/numerics.hpp"
#include "gvns/radius.hpp"

namespace gvns {

namespace {

using Vec = std::vector<double>;

BoundFit named_fit(const std::string& name) {
  BoundFit b;
  b.name = name;
  return b;
}

bool le(double lhs, double rhs, double slack) { return lhs <= rhs * (1.0 + slack) + 1e-300; }

Vec col(const DiagnosticsSeries& s, double DiagnosticsRow::*m) { return s.column(m); }

template <class F>
Vec map_rows(const DiagnosticsSeries& s, F f) {
  Vec out;
  out.reserve(s.rows.size());
  for (const auto& r : s.rows) out.push_back(f(r));
  return out;
}

// Worst LHS/RHS over samples with RHS > 0.
void fill_worst(BoundFit& b, const Vec& t, const Vec& lhs, const Vec& rhs) {
  b.samples = static_cast<int>(lhs.size());
  b.worst_ratio = 0.0;
  for (std::size_t n = 0; n < lhs.size(); ++n) {
    if (rhs[n] > 0.0 && lhs[n] / rhs[n] > b.worst_ratio) {
      b.worst_ratio = lhs[n] / rhs[n];
      b.worst_t = t[n];
    }
  }
}

// Exponent-type bound: lhs <= rhs(C) at every sample, rhs non-decreasing in C.
BoundFit fit_exponent_bound(const std::string& name, const Vec& t, const Vec& lhs, const std::function<Vec(double)>& rhs,
                            const VerifyOptions& o) {
  auto holds = [&](double C) {
    const Vec r = rhs(C);
    for (std::size_t n = 0; n < lhs.size(); ++n)
      if (!le(lhs[n], r[n], o.slack)) return false;
    return true;
  };
  BoundFit b = fit_monotone_constant(name, holds, o);
  fill_worst(b, t, lhs, rhs(b.constant));
  return b;
}

// Linear bound: lhs <= C * shape; the fit is the max ratio.
BoundFit fit_linear_bound(const std::string& name, const Vec& t, const Vec& lhs, const Vec& shape, const VerifyOptions& o,
                          const std::vector<bool>& use = {}) {
  BoundFit b;
  b.name = name;
  double c = 0.0;
  for (std::size_t n = 0; n < lhs.size(); ++n) {
    if (!use.empty() && !use[n]) {
      ++b.excluded;
      continue;
    }
    if (shape[n] > 0.0) {
      c = std::max(c, lhs[n] / shape[n]);
    } else if (lhs[n] > 0.0) {
      c = std::numeric_limits<double>::infinity();
    }
  }
  b.at_floor = c <= o.cap_lo;
  b.constant = std::max(c, o.cap_lo) * (1.0 + 0.5 * o.slack);
  b.finite = std::isfinite(b.constant) && b.constant < o.cap_hi;
  b.holds = b.finite;
  Vec rhs(shape.size());
  for (std::size_t n = 0; n < shape.size(); ++n) rhs[n] = b.constant * shape[n];
  Vec l = lhs;
  if (!use.empty())
    for (std::size_t n = 0; n < l.size(); ++n)
      if (!use[n]) l[n] = 0.0;
  fill_worst(b, t, l, rhs);
  b.samples -= b.excluded;
  return b;
}

nlohmann::ordered_json fit_json(const BoundFit& b) {
  nlohmann::ordered_json j;
  j["name"] = b.name;
  j["constant"] = b.constant;
  j["finite"] = b.finite;
  j["at_floor"] = b.at_floor;
  j["holds"] = b.holds;
  j["worst_ratio"] = b.worst_ratio;
  j["worst_t"] = b.worst_t;
  j["samples"] = b.samples;
  j["excluded"] = b.excluded;
  if (!b.note.empty()) j["note"] = b.note;
  return j;
}

}  // namespace

BoundFit fit_monotone_constant(const std::string& name, const std::function<bool(double)>& holds, const VerifyOptions& o) {
  BoundFit b;
  b.name = name;
  if (holds(o.cap_lo)) {
    b.constant = o.cap_lo;
    b.at_floor = b.finite = b.holds = true;
    return b;
  }
  if (!holds(o.cap_hi)) {
    b.constant = o.cap_hi;
    b.note = "no constant below the cap makes the bound hold";
    return b;
  }
  double lo = std::log(o.cap_lo), hi = std::log(o.cap_hi);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (holds(std::exp(mid)) ? hi : lo) = mid;
  }
  b.constant = std::exp(hi);
  b.finite = true;
  b.holds = holds(b.constant);
  return b;
}

Vec g_integrand(const DiagnosticsSeries& s) {
  return map_rows(s, [](const DiagnosticsRow& r) { return r.u_w1inf + r.rho_inf + r.f_inf_M * r.f_inf_M + 1.0; });
}

Vec compute_g(std::span<const double> t, std::span<const double> integrand, double C0) {
  Vec I = cumulative_trapezoid(t, integrand);
  for (double& x : I) x = std::exp(C0 * x);
  return I;
}

BoundFit verify_sobolev_bound(const DiagnosticsSeries& s, const VerifyOptions& o) {
  const Vec t = s.times();
  const Vec lhs = map_rows(s, [](const DiagnosticsRow& r) { return r.f_sob * r.f_sob + r.u_sob * r.u_sob; });
  if (lhs.empty()) return named_fit("C0");
  const Vec gi = g_integrand(s);
  const double z0 = lhs.front();
  return fit_exponent_bound("C0", t, lhs, [&](double C) {
    Vec g = compute_g(t, gi, C);
    for (double& x : g) x *= z0;
    return g;
  }, o);
}

GevreyUpperReport verify_gevrey_upper_bounds(const DiagnosticsSeries& s, double C0, const VerifyOptions& o) {
  GevreyUpperReport rep;
  const Vec t = s.times();
  if (t.empty()) return rep;
  const Vec g = compute_g(t, g_integrand(s), C0);
  Vec shape(t.size());
  for (std::size_t n = 0; n < t.size(); ++n) shape[n] = (1.0 + t[n]) * g[n];
  rep.C1 = fit_linear_bound("C1", t, col(s, &DiagnosticsRow::f_gev), shape, o);

  Vec w(t.size());
  for (std::size_t n = 0; n < t.size(); ++n) w[n] = (1.0 + t[n]) * g[n];
  const Vec J = cumulative_trapezoid(t, w);
  const Vec K = cumulative_trapezoid(t, g);
  const double u0 = s.rows.front().u_gev;
  rep.C2 = fit_exponent_bound("C2", t, col(s, &DiagnosticsRow::u_gev), [&](double C) {
    Vec r(t.size());
    for (std::size_t n = 0; n < t.size(); ++n) r[n] = (u0 + C * J[n]) * std::exp(C * K[n]);
    return r;
  }, o);
  return rep;
}

LambdaReport verify_lambda_lower_bound(const DiagnosticsSeries& s, const VerifyOptions& o) {
  LambdaReport rep;
  const Vec t = s.times();
  const Vec lam = col(s, &DiagnosticsRow::lambda);
  if (t.empty()) return rep;
  const double lambda0 = s.meta.params.lambda0;
  const Vec I = cumulative_trapezoid(t, map_rows(s, [](const DiagnosticsRow& r) { return 1.0 + r.u_sob + r.f_sob; }));
  auto bound = [&](double C) {
    Vec b(t.size());
    for (std::size_t n = 0; n < t.size(); ++n) b[n] = lambda_lower_bound(t[n], I[n], lambda0, C);
    return b;
  };
  // lambda >= bound(C) with the bound decreasing in C.
  auto holds = [&](double C) {
    const Vec b = bound(C);
    for (std::size_t n = 0; n < t.size(); ++n)
      if (!le(b[n], lam[n], o.slack)) return false;
    return true;
  };
  rep.C3 = fit_monotone_constant("C3", holds, o);
  const Vec b = bound(rep.C3.constant);
  fill_worst(rep.C3, t, b, lam);
  rep.positive = std::all_of(lam.begin(), lam.end(), [](double x) { return x > 0.0; });
  rep.non_increasing = true;
  for (std::size_t n = 1; n < lam.size(); ++n)
    if (lam[n] > lam[n - 1] * (1.0 + 1e-14)) rep.non_increasing = false;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n < t.size(); ++n) rep.min_margin = std::min(rep.min_margin, lam[n] / b[n] - 1.0);
  if (t.size() < 2) rep.min_margin = 0.0;
  return rep;
}

AnalyticReport verify_analytic_bounds(const DiagnosticsSeries& s, const VerifyOptions& o) {
  if (s.meta.params.s != 1.0) throw std::invalid_argument("verify_analytic_bounds: series was not run with s = 1");
  AnalyticReport rep;
  const Vec t = s.times();
  if (t.empty()) return rep;
  const auto& r0 = s.rows.front();

  const Vec A = cumulative_trapezoid(t, map_rows(s, [](const DiagnosticsRow& r) { return 1.0 + r.u_sob; }));
  rep.C4 = fit_exponent_bound("C4", t, col(s, &DiagnosticsRow::f_gev), [&](double C) {
    Vec r(t.size());
    for (std::size_t n = 0; n < t.size(); ++n) r[n] = r0.f_gev * std::exp(C * A[n]);
    return r;
  }, o);

  const Vec F = cumulative_trapezoid(t, col(s, &DiagnosticsRow::f_gev));
  const Vec Yi = cumulative_trapezoid(t, map_rows(s, [](const DiagnosticsRow& r) { return r.u_sob + r.f_sob; }));
  rep.C5 = fit_exponent_bound("C5", t, col(s, &DiagnosticsRow::u_gev), [&](double C) {
    Vec r(t.size());
    for (std::size_t n = 0; n < t.size(); ++n) r[n] = (r0.u_gev + C * F[n]) * std::exp(C * Yi[n]);
    return r;
  }, o);

  // Short-time Sobolev bound; admissible constants satisfy C t_end (1+Z0)^{1/2} < 1.
  const double z0 = r0.u_sob * r0.u_sob + r0.f_sob * r0.f_sob;
  const double root = std::sqrt(1.0 + z0);
  const double t_end = t.back();
  const Vec Y = map_rows(s, [](const DiagnosticsRow& r) { return r.u_sob + r.f_sob; });
  auto rhs = [&](double C) {
    Vec r(t.size());
    for (std::size_t n = 0; n < t.size(); ++n) {
      const double den = 1.0 - C * t[n] * root;
      r[n] = den > 0.0 ? std::sqrt(2.0) * root / den : std::numeric_limits<double>::infinity();
    }
    return r;
  };
  VerifyOptions os = o;
  if (t_end > 0.0) os.cap_hi = std::min(o.cap_hi, (1.0 - 1e-12) / (t_end * root));
  rep.C_short = fit_exponent_bound("C_short", t, Y, rhs, os);
  rep.T0 = 1.0 / (rep.C_short.constant * root);
  rep.horizon_ok = rep.C_short.holds && t_end < rep.T0;
  if (!rep.horizon_ok) {
    rep.note = "horizon t_end exceeds every admissible T0; run a shorter horizon";
    rep.C_short.note = rep.note;
  }
  return rep;
}

BlowupReport blowup_criterion_monitor(const DiagnosticsSeries& s) {
  BlowupReport rep;
  const Vec t = s.times();
  if (t.empty()) return rep;
  const Vec a = g_integrand(s);
  const Vec b = map_rows(s, [](const DiagnosticsRow& r) { return r.f_sob + r.u_sob; });
  rep.integral_gevrey = cumulative_trapezoid(t, a).back();
  rep.integral_analytic = cumulative_trapezoid(t, b).back();
  rep.finite = std::isfinite(rep.integral_gevrey) && std::isfinite(rep.integral_analytic);
  rep.spike_t_gevrey = t[std::max_element(a.begin(), a.end()) - a.begin()];
  rep.spike_t_analytic = t[std::max_element(b.begin(), b.end()) - b.begin()];
  return rep;
}

EnergyReport verify_energy_and_modulated_decay(const DiagnosticsSeries& s, const VerifyOptions& o) {
  EnergyReport rep;
  const Vec t = s.times();
  if (t.empty()) return rep;
  const Vec E = col(s, &DiagnosticsRow::E);
  const Vec I = cumulative_trapezoid(t, col(s, &DiagnosticsRow::D));
  const Vec tail = col(s, &DiagnosticsRow::tail_fraction);
  rep.tol = o.energy_tol_factor * (s.meta.dt * s.meta.dt + *std::max_element(tail.begin(), tail.end()));

  const double e0 = E.front();
  for (std::size_t n = 0; n < t.size(); ++n) {
    const double res = e0 > 0.0 ? (E[n] - e0 + I[n]) / e0 : 0.0;
    rep.max_identity_residual = std::max(rep.max_identity_residual, std::abs(res));
    rep.final_identity_residual = res;
  }
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b)
      if (!le(E[b] + I[b] - I[a], E[a] * (1.0 + rep.tol), 0.0)) ++rep.pair_violations;
  rep.identity_ok = rep.pair_violations == 0;

  // Least-squares fit of log Emod = a - rate t.
  const Vec em = col(s, &DiagnosticsRow::Emod);
  const bool positive = std::all_of(em.begin(), em.end(), [](double x) { return x > 0.0; });
  if (positive && t.size() >= 3) {
    double st = 0, sy = 0, stt = 0, sty = 0;
    const double n = static_cast<double>(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double y = std::log(em[k]);
      st += t[k];
      sy += y;
      stt += t[k] * t[k];
      sty += t[k] * y;
    }
    const double den = n * stt - st * st;
    if (den > 0.0) {
      rep.decay_fitted = true;
      rep.decay_rate = -(n * sty - st * sy) / den;
      for (std::size_t k = 0; k < t.size(); ++k)
        rep.decay_prefactor = std::max(rep.decay_prefactor, em[k] * std::exp(rep.decay_rate * t[k]) / em.front());
    }
  }
  rep.decay_ok = rep.decay_fitted && rep.decay_rate > 0.0;

  const Vec rho = col(s, &DiagnosticsRow::rho_inf);
  rep.sup_rho = *std::max_element(rho.begin(), rho.end());
  rep.rho0 = rho.front();
  rep.int_grad_u = cumulative_trapezoid(t, col(s, &DiagnosticsRow::grad_u_sup)).back();
  rep.grad_u0 = s.rows.front().grad_u_sup;
  return rep;
}

BoundFit verify_finf_growth(const DiagnosticsSeries& s, const VerifyOptions& o) {
  const Vec t = s.times();
  if (t.empty()) return named_fit("c_finf");
  const int d = s.meta.d;
  const int M = s.meta.params.M;
  const Vec L1 = cumulative_trapezoid(t, col(s, &DiagnosticsRow::u_sup));
  const double f0 = s.rows.front().f_inf_M;
  Vec shape(t.size());
  for (std::size_t n = 0; n < t.size(); ++n) shape[n] = std::exp(d * t[n]) * (1.0 + std::pow(L1[n], M)) * f0;
  return fit_linear_bound("c_finf", t, col(s, &DiagnosticsRow::f_inf_M), shape, o);
}

DifferentialReport monitor_gevrey_differential_inequalities(const DiagnosticsSeries& s, const VerifyOptions& o) {
  DifferentialReport rep;
  rep.f.name = "C_f_diff";
  rep.u.name = "C_u_diff";
  const std::size_t N = s.rows.size();
  if (N < 3) {
    rep.f.note = rep.u.note = "fewer than three samples";
    rep.f.holds = rep.u.holds = rep.f.finite = rep.u.finite = true;
    return rep;
  }
  const Vec t = s.times();
  Vec lf(N, 0.0), rf(N, 0.0), lu(N, 0.0), ru(N, 0.0);
  std::vector<bool> use_f(N, false), use_u(N, false);
  constexpr double kRel = 1e-13;  // relative accuracy of a norm evaluation
  for (std::size_t n = 1; n + 1 < N; ++n) {
    const auto& a = s.rows[n - 1];
    const auto& r = s.rows[n];
    const auto& b = s.rows[n + 1];
    const double h = b.t - a.t;
    const double lam = r.lambda;
    const double lam_dot = (b.lambda - a.lambda) / h;

    const double Nf_a = a.f_gev * a.f_gev, Nf_b = b.f_gev * b.f_gev;
    lf[n] = 0.5 * (Nf_b - Nf_a) / h - lam_dot * r.f_gev_half * r.f_gev_half;
    rf[n] = (r.u_w1inf + 1.0) * r.f_gev * r.f_gev + r.u_sob * r.f_sob * r.f_gev +
            (lam * (1.0 + r.u_sob) + lam * lam * r.u_gev) * r.f_gev_half * r.f_gev_half +
            (lam * r.f_sob + lam * lam * r.f_gev) * r.u_gev_half * r.f_gev_half;
    const double noise_f = kRel * (Nf_a + Nf_b) / h;
    use_f[n] = rf[n] > o.noise_factor * noise_f;

    const double Nu_a = a.u_gev * a.u_gev, Nu_b = b.u_gev * b.u_gev;
    lu[n] = 0.5 * (Nu_b - Nu_a) / h + r.u_gev_one * r.u_gev_one - lam_dot * r.u_gev_half * r.u_gev_half;
    ru[n] = (r.grad_u_sup + r.f_sob + lam * lam * r.f_gev) * r.u_gev * r.u_gev + r.u_sob * r.u_sob * r.u_gev + r.f_gev * r.u_gev +
            (lam * r.u_sob + lam * lam * (r.u_sob + r.u_gev)) * r.u_gev_half * r.u_gev_half;
    const double noise_u = kRel * (Nu_a + Nu_b) / h;
    use_u[n] = ru[n] > o.noise_factor * noise_u;
  }
  rep.f = fit_linear_bound("C_f_diff", t, lf, rf, o, use_f);
  rep.u = fit_linear_bound("C_u_diff", t, lu, ru, o, use_u);
  return rep;
}

VerifyReport verify_all(const DiagnosticsSeries& s, const VerifyOptions& o) {
  VerifyReport rep;
  rep.C0 = verify_sobolev_bound(s, o);
  rep.upper = verify_gevrey_upper_bounds(s, rep.C0.constant, o);
  rep.lambda = verify_lambda_lower_bound(s, o);
  if (s.meta.params.s == 1.0) rep.analytic = verify_analytic_bounds(s, o);
  rep.blowup = blowup_criterion_monitor(s);
  rep.energy = verify_energy_and_modulated_decay(s, o);
  rep.finf = verify_finf_growth(s, o);
  rep.differential = monitor_gevrey_differential_inequalities(s, o);

  auto need = [&](bool ok, const std::string& what) {
    if (!ok) rep.failures.push_back(what);
  };
  for (const BoundFit* b : {&rep.C0, &rep.upper.C1, &rep.upper.C2, &rep.lambda.C3, &rep.finf, &rep.differential.f, &rep.differential.u})
    need(b->finite && b->holds, b->name + " bound");
  need(rep.lambda.positive, "lambda positive");
  need(rep.lambda.non_increasing, "lambda non-increasing");
  if (rep.analytic) {
    need(rep.analytic->C4.finite && rep.analytic->C4.holds, "C4 bound");
    need(rep.analytic->C5.finite && rep.analytic->C5.holds, "C5 bound");
    need(rep.analytic->horizon_ok, "short-time Sobolev bound");
  }
  need(rep.blowup.finite, "blow-up integrals finite");
  need(rep.energy.identity_ok, "energy inequality");
  if (o.expect_decay) need(rep.energy.decay_ok, "modulated energy decay");
  rep.pass = rep.failures.empty();
  return rep;
}

double relative_change(const BoundFit& a, const BoundFit& b) {
  if (a.at_floor && b.at_floor) return 0.0;
  const double m = std::max(std::abs(a.constant), std::abs(b.constant));
  return m > 0.0 ? std::abs(a.constant - b.constant) / m : 0.0;
}

std::string to_json(const BoundFit& b) { return fit_json(b).dump(2); }

std::string to_json(const VerifyReport& r) {
  nlohmann::ordered_json j;
  j["pass"] = r.pass;
  j["failures"] = r.failures;
  j["sobolev"] = fit_json(r.C0);
  j["gevrey_upper"] = {{"C1", fit_json(r.upper.C1)}, {"C2", fit_json(r.upper.C2)}};
  j["lambda_lower"] = {{"C3", fit_json(r.lambda.C3)},
                       {"positive", r.lambda.positive},
                       {"non_increasing", r.lambda.non_increasing},
                       {"min_margin", r.lambda.min_margin}};
  if (r.analytic) {
    j["analytic"] = {{"C4", fit_json(r.analytic->C4)},
                     {"C5", fit_json(r.analytic->C5)},
                     {"C_short", fit_json(r.analytic->C_short)},
                     {"T0", r.analytic->T0},
                     {"horizon_ok", r.analytic->horizon_ok}};
  }
  j["blowup"] = {{"integral_gevrey", r.blowup.integral_gevrey},
                 {"integral_analytic", r.blowup.integral_analytic},
                 {"finite", r.blowup.finite},
                 {"spike_t_gevrey", r.blowup.spike_t_gevrey},
                 {"spike_t_analytic", r.blowup.spike_t_analytic}};
  j["energy"] = {{"tol", r.energy.tol},
                 {"max_identity_residual", r.energy.max_identity_residual},
                 {"final_identity_residual", r.energy.final_identity_residual},
                 {"pair_violations", r.energy.pair_violations},
                 {"identity_ok", r.energy.identity_ok},
                 {"decay_fitted", r.energy.decay_fitted},
                 {"decay_rate", r.energy.decay_rate},
                 {"decay_prefactor", r.energy.decay_prefactor},
                 {"sup_rho", r.energy.sup_rho},
                 {"rho0", r.energy.rho0},
                 {"int_grad_u", r.energy.int_grad_u},
                 {"grad_u0", r.energy.grad_u0}};
  j["finf"] = fit_json(r.finf);
  j["differential"] = {{"f", fit_json(r.differential.f)}, {"u", fit_json(r.differential.u)}};
  return j.dump(2);
}

}  // namespace gvns
