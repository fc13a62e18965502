#pragma once

#include <limits>
#include <span>
#include <vector>

#include "gvns/fields.hpp"

namespace gvns {

// d(lambda)/dt = -lambda Y_sob - lambda^2 Y_gev with
// Y_sob = 1 + ||f||_{sigma,M} + ||u||_sigma and
// Y_gev = ||u||_sigma + ||f||_{lambda,sigma,M,s} + ||u||_{lambda,sigma,s}.
double lambda_rhs(double lambda, double y_sob, double y_gev);

inline constexpr double kLambdaFloor = 1e-300;

// How coefficients are read between samples t_n < t_{n+1}.
//   Hold:   the values at t_n are used on the whole interval (lagged update).
//   Linear: linear interpolation between the two samples.
enum class CoefficientModel { Hold, Linear };

struct LambdaSeries {
  std::vector<double> lambda;
  std::vector<double> G;  // exp int_0^t Y_sob
  bool collapsed = false;
};

// RK4 with `substeps` sub-steps per sample interval.
LambdaSeries integrate_lambda(std::span<const double> t, std::span<const double> y_sob, std::span<const double> y_gev, double lambda0,
                              CoefficientModel model = CoefficientModel::Hold, int substeps = 8);

// lambda(t) = G(t)^{-1} (1/lambda0 + int_0^t Y_gev / G)^{-1}, G = exp int Y_sob,
// both integrals by composite trapezoid with `refine` sub-nodes per interval
// under the same coefficient model.
LambdaSeries lambda_closed_form(std::span<const double> t, std::span<const double> y_sob, std::span<const double> y_gev, double lambda0,
                                CoefficientModel model = CoefficientModel::Hold, int refine = 64);

// (2 C3 t + 1/lambda0)^{-1} exp(-C3 * int_sob), int_sob = int_0^t (1 + ||u||_sigma + ||f||_{sigma,M}).
double lambda_lower_bound(double t, double int_sob, double lambda0, double C3);

// In-run tracker fed one sample at a time.
class RadiusTracker {
 public:
  explicit RadiusTracker(double lambda0, CoefficientModel model = CoefficientModel::Hold, int substeps = 8);

  // Advance over [t, t + dt] with coefficients (y_sob0, y_gev0) at t and
  // (y_sob1, y_gev1) at t + dt (ignored under Hold).
  void advance(double dt, double y_sob0, double y_gev0, double y_sob1 = 0.0, double y_gev1 = 0.0);
  // Value advance() would produce, without committing it.
  double predict(double dt, double y_sob0, double y_gev0, double y_sob1 = 0.0, double y_gev1 = 0.0) const;

  double lambda() const { return lambda_; }
  double G() const { return G_; }
  double log_G() const { return logG_; }
  bool collapsed() const { return collapsed_; }

 private:
  double lambda_;
  double logG_ = 0.0;
  double G_ = 1.0;
  bool collapsed_ = false;
  CoefficientModel model_;
  int substeps_;
};

struct RadiusFit {
  double lambda_emp = 0.0;
  double intercept = 0.0;
  double residual = 0.0;   // RMS residual of the log fit
  double r_squared = 0.0;
  bool poor_fit = false;   // r_squared < 0.9
  int shells = 0;
};

// Fit log(shell max of |c| <.>^{-sigma}) ~ a - lambda <.>^s over unit-width
// shells in <.>. Entries below 1e-14 of the largest amplitude, and entries
// with bracket >= max_bracket, are ignored. The grid overloads pass the radius
// of the largest ball inside the (k, eta) box: shells beyond it exist only in
// the box corners and hold roundoff. Throws Underresolved with fewer than 6 shells.
RadiusFit estimate_empirical_radius(std::span<const double> bracket, std::span<const double> amplitude, double sigma, double s,
                                    double max_bracket = std::numeric_limits<double>::infinity());
RadiusFit estimate_empirical_radius(const FluidSpectral& uh, double sigma, double s);
// Radius of the largest <k> ball (spatial) or <k, eta> ball (phase space) inside the grid.
double inscribed_bracket_x(const PhaseGrid& g);
double inscribed_bracket(const PhaseGrid& g);
RadiusFit estimate_empirical_radius(const DistSpectral& fh, double sigma, double s);

}  // namespace gvns
