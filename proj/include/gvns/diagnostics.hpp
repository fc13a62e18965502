#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gvns/norms.hpp"
#include "gvns/solver.hpp"

namespace gvns {

// One sample of every monitored quantity. Norm columns follow the notation
//   f_sob = ||f||_{sigma,M},           u_sob = ||u||_sigma,
//   f_gev = ||f||_{lambda,sigma,M,s},  u_gev = ||u||_{lambda,sigma,s},
// with *_half evaluated at sigma + s/2 and u_gev_one at sigma + 1.
struct DiagnosticsRow {
  double t = 0.0;
  double f_sob = 0.0;
  double u_sob = 0.0;
  double f_gev = 0.0;
  double u_gev = 0.0;
  double f_gev_half = 0.0;
  double u_gev_half = 0.0;
  double u_gev_one = 0.0;
  double f_inf_M = 0.0;
  double u_sup = 0.0;
  double grad_u_sup = 0.0;
  double u_w1inf = 0.0;  // sup|u| + sup|grad u|
  double rho_inf = 0.0;
  double E = 0.0;
  double D = 0.0;
  double Emod = 0.0;
  std::array<double, 3> mean_u{};
  std::array<double, 3> mean_j{};
  double lambda = 0.0;
  double G = 1.0;
  double lambda_emp_f = 0.0;  // NaN when the spectrum is underresolved
  double lambda_emp_u = 0.0;
  double fit_residual_f = 0.0;
  double fit_residual_u = 0.0;
  double support_radius = 0.0;
  double N_q = 0.0;      // sup (1 + |v|^5) f
  double M_alpha = 0.0;  // iint |v|^4 f
  double mass = 0.0;
  double f_min = 0.0;
  double boundary_mass = 0.0;
  double tail_fraction = 0.0;
  double divergence = 0.0;
};

// Exponents of the moment hypotheses monitored in every row.
inline constexpr double kHmmQ = 5.0;
inline constexpr double kHmmAlpha = 4.0;

struct ColumnDef {
  const char* name;
  double DiagnosticsRow::*member;  // null for array entries
  int array = 0;                   // 1: mean_u, 2: mean_j
  int index = 0;
};

// Stable column order of the CSV (schema version kCsvSchemaVersion).
const std::vector<ColumnDef>& diagnostics_columns();
double column_value(const DiagnosticsRow& r, const ColumnDef& c);
void set_column_value(DiagnosticsRow& r, const ColumnDef& c, double v);

struct SeriesMeta {
  int d = 1;
  int nx = 0;
  int nv = 0;
  double lv = 0.0;
  double dt = 0.0;
  GevreyParams params;
};

struct DiagnosticsSeries {
  SeriesMeta meta;
  std::vector<DiagnosticsRow> rows;

  std::vector<double> column(double DiagnosticsRow::*m) const;
  std::vector<double> times() const { return column(&DiagnosticsRow::t); }
};

// Y_sob = 1 + ||f||_{sigma,M} + ||u||_sigma and Y_gev = ||u||_sigma + ||f||_lambda + ||u||_lambda.
double y_sob(const DiagnosticsRow& r);
double y_gev(const DiagnosticsRow& r);

// Evaluates rows for a fixed grid and Gevrey parameters. prepare() does the
// transforms once per state; row() can then be re-evaluated at several lambda.
class DiagnosticsEngine {
 public:
  DiagnosticsEngine(Transformer& t, const GevreyParams& p);
  ~DiagnosticsEngine();

  void prepare(const SimState& s);
  DiagnosticsRow row(double lambda) const;
  // Gevrey columns only, for the fixed-point radius iteration.
  double y_gev_at(double lambda) const;

  DiagnosticsRow evaluate(const SimState& s, double lambda) {
    prepare(s);
    return row(lambda);
  }

 private:
  struct Cache;
  Transformer& t_;
  GevreyParams p_;
  std::unique_ptr<Cache> c_;
};

}  // namespace gvns
