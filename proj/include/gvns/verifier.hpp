#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gvns/diagnostics.hpp"

namespace gvns {

struct VerifyOptions {
  double slack = 1e-9;        // relative slack of every bound check
  double cap_lo = 1e-6;       // search interval for fitted constants
  double cap_hi = 1e6;
  double energy_tol_factor = 1.0;  // tol = factor * (dt^2 + max tail fraction)
  double noise_factor = 10.0;      // differential checks need RHS > factor * noise
  bool expect_decay = false;       // require a positive modulated-energy decay rate
};

// Smallest constant, found by bisection in log C, that makes a monotone bound
// hold at every sample; `constant` is the upper bracket so the bound holds.
struct BoundFit {
  std::string name;
  double constant = 0.0;
  bool finite = false;     // a constant below cap_hi exists
  bool at_floor = false;   // the bound already holds at cap_lo
  bool holds = false;      // re-checked at the returned constant
  double worst_ratio = 0.0;  // max LHS / RHS at the fitted constant
  double worst_t = 0.0;
  int samples = 0;
  int excluded = 0;
  std::string note;
};

BoundFit fit_monotone_constant(const std::string& name, const std::function<bool(double)>& holds, const VerifyOptions& o);

// g(t) = exp(C0 int_0^t (||u||_{W1,inf} + ||rho||_inf + ||f||_{inf,M}^2 + 1)).
std::vector<double> g_integrand(const DiagnosticsSeries& s);
std::vector<double> compute_g(std::span<const double> t, std::span<const double> integrand, double C0);

// ||f||_{sigma,M}^2 + ||u||_sigma^2 <= (initial) g(t).
BoundFit verify_sobolev_bound(const DiagnosticsSeries& s, const VerifyOptions& o = {});

struct GevreyUpperReport {
  BoundFit C1;  // ||f||_lambda <= C1 (1 + t) g
  BoundFit C2;  // ||u||_lambda <= (||u0|| + C2 int (1+tau) g) exp(C2 int g)
};
GevreyUpperReport verify_gevrey_upper_bounds(const DiagnosticsSeries& s, double C0, const VerifyOptions& o = {});

struct LambdaReport {
  BoundFit C3;
  bool positive = false;
  bool non_increasing = false;
  double min_margin = 0.0;  // min over t > 0 of lambda / bound - 1
};
LambdaReport verify_lambda_lower_bound(const DiagnosticsSeries& s, const VerifyOptions& o = {});

struct AnalyticReport {
  BoundFit C4;
  BoundFit C5;
  BoundFit C_short;  // Y <= sqrt2 (1+Z0)^{1/2} / (1 - C t (1+Z0)^{1/2})
  double T0 = 0.0;   // 1 / (C_short (1+Z0)^{1/2})
  bool horizon_ok = false;
  std::string note;
};
// Requires s = 1 in the series metadata.
AnalyticReport verify_analytic_bounds(const DiagnosticsSeries& s, const VerifyOptions& o = {});

struct BlowupReport {
  double integral_gevrey = 0.0;    // int (||u||_{W1,inf} + ||rho||_inf + ||f||_{inf,M}^2 + 1)
  double integral_analytic = 0.0;  // int (||f||_{sigma,M} + ||u||_sigma)
  bool finite = false;
  double spike_t_gevrey = 0.0;  // time of the largest integrand value
  double spike_t_analytic = 0.0;
};
BlowupReport blowup_criterion_monitor(const DiagnosticsSeries& s);

struct EnergyReport {
  double tol = 0.0;
  double max_identity_residual = 0.0;  // max |E(t) - E(0) + int_0^t D| / E(0)
  double final_identity_residual = 0.0;
  int pair_violations = 0;             // E(t) + int_s^t D > E(s) (1 + tol)
  bool decay_fitted = false;
  double decay_rate = 0.0;             // Emod ~ Emod(0) C' exp(-rate t)
  double decay_prefactor = 0.0;
  double sup_rho = 0.0;
  double rho0 = 0.0;
  double int_grad_u = 0.0;
  double grad_u0 = 0.0;
  bool identity_ok = false;
  bool decay_ok = false;
};
EnergyReport verify_energy_and_modulated_decay(const DiagnosticsSeries& s, const VerifyOptions& o = {});

// ||f(t)||_{inf,M} <= c e^{d t} (1 + (int_0^t ||u||_inf)^M) ||f0||_{inf,M}.
BoundFit verify_finf_growth(const DiagnosticsSeries& s, const VerifyOptions& o = {});

struct DifferentialReport {
  BoundFit f;
  BoundFit u;
};
// Finite-difference form of the Gevrey energy inequalities for f and u, with
// the lambda-dot terms moved to the left (they carry coefficient one).
DifferentialReport monitor_gevrey_differential_inequalities(const DiagnosticsSeries& s, const VerifyOptions& o = {});

struct VerifyReport {
  BoundFit C0;
  GevreyUpperReport upper;
  LambdaReport lambda;
  std::optional<AnalyticReport> analytic;
  BlowupReport blowup;
  EnergyReport energy;
  BoundFit finf;
  DifferentialReport differential;
  bool pass = false;
  std::vector<std::string> failures;
};
VerifyReport verify_all(const DiagnosticsSeries& s, const VerifyOptions& o = {});

// |a - b| / max(|a|, |b|), with two floor constants counted as equal.
double relative_change(const BoundFit& a, const BoundFit& b);

std::string to_json(const BoundFit& b);
std::string to_json(const VerifyReport& r);

}  // namespace gvns
