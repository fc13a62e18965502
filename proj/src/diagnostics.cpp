#include "gvns/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gvns/energy.hpp"
#include "gvns/errors.hpp"
#include "gvns/moments.hpp"
#include "gvns/radius.hpp"

namespace gvns {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

const std::vector<ColumnDef>& diagnostics_columns() {
  using R = DiagnosticsRow;
  static const std::vector<ColumnDef> cols = {
      {"t", &R::t},
      {"f_sob", &R::f_sob},
      {"u_sob", &R::u_sob},
      {"f_gev", &R::f_gev},
      {"u_gev", &R::u_gev},
      {"f_gev_half", &R::f_gev_half},
      {"u_gev_half", &R::u_gev_half},
      {"u_gev_one", &R::u_gev_one},
      {"f_inf_M", &R::f_inf_M},
      {"u_sup", &R::u_sup},
      {"grad_u_sup", &R::grad_u_sup},
      {"u_w1inf", &R::u_w1inf},
      {"rho_inf", &R::rho_inf},
      {"E", &R::E},
      {"D", &R::D},
      {"Emod", &R::Emod},
      {"mean_u_1", nullptr, 1, 0},
      {"mean_u_2", nullptr, 1, 1},
      {"mean_u_3", nullptr, 1, 2},
      {"mean_j_1", nullptr, 2, 0},
      {"mean_j_2", nullptr, 2, 1},
      {"mean_j_3", nullptr, 2, 2},
      {"lambda", &R::lambda},
      {"G", &R::G},
      {"lambda_emp_f", &R::lambda_emp_f},
      {"lambda_emp_u", &R::lambda_emp_u},
      {"fit_residual_f", &R::fit_residual_f},
      {"fit_residual_u", &R::fit_residual_u},
      {"support_radius", &R::support_radius},
      {"N_q", &R::N_q},
      {"M_alpha", &R::M_alpha},
      {"mass", &R::mass},
      {"f_min", &R::f_min},
      {"boundary_mass", &R::boundary_mass},
      {"tail_fraction", &R::tail_fraction},
      {"divergence", &R::divergence},
  };
  return cols;
}

double column_value(const DiagnosticsRow& r, const ColumnDef& c) {
  if (c.member) return r.*(c.member);
  return c.array == 1 ? r.mean_u[c.index] : r.mean_j[c.index];
}

void set_column_value(DiagnosticsRow& r, const ColumnDef& c, double v) {
  if (c.member) {
    r.*(c.member) = v;
  } else if (c.array == 1) {
    r.mean_u[c.index] = v;
  } else {
    r.mean_j[c.index] = v;
  }
}

std::vector<double> DiagnosticsSeries::column(double DiagnosticsRow::*m) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.*m);
  return out;
}

double y_sob(const DiagnosticsRow& r) { return 1.0 + r.f_sob + r.u_sob; }
double y_gev(const DiagnosticsRow& r) { return r.u_sob + r.f_gev + r.u_gev; }

struct DiagnosticsEngine::Cache {
  std::optional<MomentSpectrum> spec;
  FluidSpectral uh;
  DiagnosticsRow base;  // lambda-independent columns
};

DiagnosticsEngine::DiagnosticsEngine(Transformer& t, const GevreyParams& p) : t_(t), p_(p), c_(std::make_unique<Cache>()) {
  p_.validate();
}

DiagnosticsEngine::~DiagnosticsEngine() = default;

void DiagnosticsEngine::prepare(const SimState& s) {
  const auto& g = t_.grid();
  const int d = g.d();
  const std::size_t n = g.spatial_size();
  auto& c = *c_;
  c.spec.emplace(t_, s.f, p_.M);
  c.uh = s.u;

  DiagnosticsRow& r = c.base;
  r = DiagnosticsRow{};
  r.t = s.t;
  r.f_sob = c.spec->norm(0.0, p_.sigma, p_.s);
  r.u_sob = sobolev_norm_u(s.u, p_.sigma);
  r.f_inf_M = linf_weighted_norm(s.f, p_.M);

  // Sup norms of u and grad u on the grid.
  const auto u = t_.fluid_to_physical(s.u);
  std::vector<double> u2(n, 0.0), g2(n, 0.0);
  std::vector<cplx> comp(n);
  for (int a = 0; a < d; ++a) {
    for (std::size_t ix = 0; ix < n; ++ix) u2[ix] += u.data[a * n + ix] * u.data[a * n + ix];
    for (int b = 0; b < d; ++b) {
      for (std::size_t ix = 0; ix < n; ++ix) {
        const double kb = signed_mode(g.unravel_x(ix)[b], g.nx());
        comp[ix] = cplx(0.0, kb) * s.u.coeffs[a * n + ix];
      }
      const auto dab = t_.scalar_to_physical(comp);
      for (std::size_t ix = 0; ix < n; ++ix) g2[ix] += dab[ix] * dab[ix];
    }
  }
  r.u_sup = std::sqrt(*std::max_element(u2.begin(), u2.end()));
  r.grad_u_sup = std::sqrt(*std::max_element(g2.begin(), g2.end()));
  r.u_w1inf = r.u_sup + r.grad_u_sup;

  const auto m = compute_moments(s.f);
  double rho_inf = 0.0;
  for (double x : m.rho) rho_inf = std::max(rho_inf, std::abs(x));
  r.rho_inf = rho_inf;
  r.mass = total_mass(g, m);

  const auto e = energy_and_dissipation(s.f, s.u, t_);
  r.E = e.E;
  r.D = e.D;
  r.Emod = e.Emod;
  for (int a = 0; a < kMaxDim; ++a) {
    r.mean_u[a] = e.mean_u[a];
    r.mean_j[a] = e.mean_j[a];
  }

  try {
    const auto fit = estimate_empirical_radius(c.spec->bin_bracket(), c.spec->bin_max0(), p_.sigma, p_.s, inscribed_bracket(s.f.grid));
    r.lambda_emp_f = fit.lambda_emp;
    r.fit_residual_f = fit.residual;
  } catch (const Underresolved&) {
    r.lambda_emp_f = kNaN;
    r.fit_residual_f = kNaN;
  }
  try {
    const auto fit = estimate_empirical_radius(s.u, p_.sigma, p_.s);
    r.lambda_emp_u = fit.lambda_emp;
    r.fit_residual_u = fit.residual;
  } catch (const Underresolved&) {
    r.lambda_emp_u = kNaN;
    r.fit_residual_u = kNaN;
  }

  r.support_radius = support_radius(s.f).radius;
  r.N_q = sup_weighted(s.f, kHmmQ);
  r.M_alpha = velocity_moment(s.f, kHmmAlpha);
  r.f_min = s.f.values.empty() ? 0.0 : *std::min_element(s.f.values.begin(), s.f.values.end());
  r.boundary_mass = boundary_mass_fraction(s.f);
  r.tail_fraction = c.spec->tail_fraction();
  r.divergence = divergence_residual(s.u);
}

DiagnosticsRow DiagnosticsEngine::row(double lambda) const {
  if (!c_->spec) throw std::logic_error("DiagnosticsEngine::row before prepare");
  const auto& spec = *c_->spec;
  DiagnosticsRow r = c_->base;
  const double half = p_.sigma + 0.5 * p_.s;
  r.lambda = lambda;
  r.f_gev = spec.norm(lambda, p_.sigma, p_.s);
  r.f_gev_half = spec.norm(lambda, half, p_.s);
  r.u_gev = gevrey_norm_u(c_->uh, lambda, p_.sigma, p_.s);
  r.u_gev_half = gevrey_norm_u(c_->uh, lambda, half, p_.s);
  r.u_gev_one = gevrey_norm_u(c_->uh, lambda, p_.sigma + 1.0, p_.s);
  return r;
}

double DiagnosticsEngine::y_gev_at(double lambda) const {
  if (!c_->spec) throw std::logic_error("DiagnosticsEngine::y_gev_at before prepare");
  return c_->base.u_sob + c_->spec->norm(lambda, p_.sigma, p_.s) + gevrey_norm_u(c_->uh, lambda, p_.sigma, p_.s);
}

}  // namespace gvns
