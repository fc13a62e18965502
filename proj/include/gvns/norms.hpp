#pragma once

#include <span>
#include <string>
#include <vector>

#include "gvns/fields.hpp"
#include "gvns/transforms.hpp"

namespace gvns {

// <k, eta> = (1 + |k|^2 + |eta|^2)^{1/2}; an empty eta gives <k>.
double jap_bracket(std::span<const double> k, std::span<const double> eta = {});

struct MultiplierValue {
  double value = 0.0;
  double log_value = 0.0;
  bool saturated = false;  // value clamped to DBL_MAX
};

// A = <k,eta>^sigma exp(lambda <k,eta>^s).
MultiplierValue multiplier_A(std::span<const double> k, std::span<const double> eta, double lambda, double sigma, double s);

// Largest log-weight we accept before raising GevreyOverflow.
inline constexpr double kMaxLogWeight = 709.0;

struct GevreyParams {
  double s = 0.5;
  double sigma = 4.0;
  int M = 2;
  double lambda0 = 0.5;

  void validate() const;  // throws std::invalid_argument
  // Regularity hypotheses (sigma, M, s against d); violated ones are returned as text.
  std::vector<std::string> hypothesis_warnings(int d) const;
};

// Power spectra of v^alpha f for all |alpha| <= M, binned by the exact value of
// (|k|^2, |m|^2) so that many weight sets can be evaluated cheaply.
class MomentSpectrum {
 public:
  MomentSpectrum(Transformer& t, const DistPhysical& f, int M);

  // ||f||_{lambda,sigma,M,s}; lambda = 0 gives ||f||_{sigma,M}.
  double norm(double lambda, double sigma, double s) const;
  double norm_sq(double lambda, double sigma, double s) const;

  int M() const { return M_; }
  // alpha = 0 spectrum: per bin, sum of |f^|^2 deta^d, plus the per-bin max of |f^|.
  const std::vector<double>& bin_bracket() const { return bracket_; }
  const std::vector<double>& bin_power() const { return power_; }
  const std::vector<double>& bin_power0() const { return power0_; }
  const std::vector<double>& bin_max0() const { return max0_; }
  // Fraction of the alpha = 0 power outside the 2/3 band.
  double tail_fraction() const { return tail_; }

 private:
  int M_;
  std::vector<double> bracket_;
  std::vector<double> power_;
  std::vector<double> power0_;
  std::vector<double> max0_;
  double tail_ = 0.0;
};

// Weighted log-sum sum_i p_i exp(2 sigma log b_i + 2 lambda b_i^s), returned
// as a square-rooted norm; throws GevreyOverflow past kMaxLogWeight.
double weighted_norm(std::span<const double> bracket, std::span<const double> power, double lambda, double sigma, double s);

double sobolev_weighted_norm(const DistPhysical& f, double sigma, int M);
double sobolev_weighted_norm(const DistSpectral& fh, double sigma, int M);
double gevrey_norm_f(const DistPhysical& f, double lambda, double sigma, int M, double s);
double gevrey_norm_f(const DistPhysical& f, double lambda, const GevreyParams& p);

// ||u||^2_{lambda,sigma,s} = sum_k <k>^{2 sigma} e^{2 lambda <k>^s} |u^_k|^2.
double gevrey_norm_u(const FluidSpectral& uh, double lambda, double sigma, double s);
double sobolev_norm_u(const FluidSpectral& uh, double sigma);
// Same for a scalar spectral field (rho, one component of j).
double gevrey_norm_scalar(const PhaseGrid& g, std::span<const cplx> ah, double lambda, double sigma, double s);

// ||f||_{inf,M} = (sum_{|alpha|<=M} sup |v^alpha f|^2)^{1/2}.
double linf_weighted_norm(const DistPhysical& f, int M);

}  // namespace gvns
