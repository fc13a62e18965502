#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gvns/grid.hpp"

namespace gvns {

// Result of checking one inequality on a random or brute-force ensemble.
// For inequalities with an explicit constant, `stated_C` is that constant and
// violations count LHS > stated_C * RHS; otherwise violations count
// LHS > fitted_C * RHS, which can only happen when RHS = 0 < LHS.
struct InequalityReport {
  std::string name;
  std::vector<std::pair<std::string, double>> params;
  long sample_count = 0;
  long skipped = 0;  // degenerate samples (RHS and LHS both zero)
  long violations = 0;
  double stated_C = 0.0;  // 0 when the inequality is written with an implied constant
  double fitted_C = 0.0;  // max LHS / RHS over samples with RHS > 0
  double refinement_ratio = 1.0;  // fitted_C on the refined ensemble / fitted_C
  std::string refinement;         // what "refined" means for this check
  std::vector<std::pair<std::string, double>> worst_case;

  bool explicit_constant() const { return stated_C > 0.0; }
  // Zero violations, and for implied constants a finite fit with a refinement
  // ratio in [0.5, 2].
  bool passed() const;
  // File stem built from the name and parameter tuple.
  std::string key() const;
};

std::string to_json(const InequalityReport& r);

// Japanese-bracket inequalities, cases 1..7, on random (k, l, eta) with
// components uniform in [-50, 50]. Refinement: a second ensemble at seed + 1.
InequalityReport check_triangle(int which, long samples, double s, int d = 2, std::uint64_t seed = 1);

struct Sides;
// Both sides of triangle case `which` at one point; k, l, eta hold d entries.
Sides triangle_sides(int which, const double* k, const double* l, const double* eta, int d, double s);
// Stated constant of a triangle case (0 for the implied-constant cases 4 and 7).
double triangle_constant(int which, double s);

// Discrete Young inequalities (variant 1 or 2) by brute-force triple sums on
// modes |k_i| <= kmax and eta_points per axis on [-4, 4); refinement doubles
// eta_points. `nu_or_gamma` is nu for variant 1 and gamma for variant 2.
InequalityReport check_young(int variant, int d, double sigma, double nu_or_gamma, double beta, int eta_points, long samples,
                             std::uint64_t seed = 1, int kmax = 4);

// One Young evaluation on explicit fields. Modes run over [-kmax, kmax]^d with
// axis 0 fastest; f and g are indexed mode * eta_points^d + eta, with eta the
// midpoint grid on [-4, 4)^d.
struct YoungInput {
  int variant = 1;
  int d = 1;
  double sigma = 2.0;
  double nu_or_gamma = 0.0;
  double beta = 0.0;
  int kmax = 4;
  int eta_points = 8;
  std::vector<std::complex<double>> f, g, r;
};
struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};
Sides young_sides(const YoungInput& in);

struct MomentLabParams {
  int d = 1;
  double lambda = 0.1;
  double sigma = 2.0;
  int M = 2;
  double s = 0.5;
  int nx = 16;
  int nv = 32;  // refinement doubles Nv
  double lv = 8.0;
};
// ||rho_f|| / ||f|| and ||j_f|| / ||f|| in the Gevrey norms (two reports).
std::vector<InequalityReport> check_moment_bounds(long samples, const MomentLabParams& p, std::uint64_t seed = 1);

// Product and commutator estimates in H^sigma for integer sigma, by spectral
// differentiation of each multi-index. Cases 1, 2 use f(x, v) supported in
// |v| <= c_f (d = 1); cases 3, 4 use two functions on T^2.
InequalityReport check_product_commutator(int which, long samples, int sigma = 2, double c_f = 1.0, std::uint64_t seed = 1);

// Both sides for explicit data: u is a spatial array on `grid`; w is f on the
// phase-space grid (cases 1, 2) or a second spatial array (cases 3, 4).
Sides product_commutator_sides(int which, int sigma, const PhaseGrid& grid, const std::vector<double>& u,
                               const std::vector<double>& w);

struct RhoULabParams {
  double lambda = 0.2;
  double sigma = 2.0;
  int M = 2;
  double s = 0.5;
  int nx = 24;
  int nv = 32;  // refinement doubles Nv
  double lv = 6.0;
};
// ||rho u||_{lambda,sigma,s} against ||u||_sigma ||f||_{lambda,sigma,M,s}
// + ||f||_{sigma,M} ||u||_{lambda,sigma,s} + lambda^2 ||u||_{lambda,sigma,s} ||f||_{lambda,sigma,M,s}, d = 1.
InequalityReport check_rho_u_bound(long samples, const RhoULabParams& p, std::uint64_t seed = 1);

// Named suites: triangle, young, moments, commutator, rho_u, all.
std::vector<std::string> lab_suites();
std::vector<InequalityReport> run_lab_suite(const std::string& suite, std::uint64_t seed = 1);

}  // namespace gvns
