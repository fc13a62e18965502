#pragma once

#include <memory>
#include <mutex>

#include "gvns/fields.hpp"

namespace gvns {

struct PhysicalResult {
  DistPhysical f;
  double imag_residual = 0.0;       // max |Im| / max |value| of the inverse
  double symmetry_violation = 0.0;  // max |c(k,m) - conj c(-k,-m)| / max |c|
  bool complex_residual = false;    // symmetry_violation above 1e-10
};

// Discrete form of f^_k(eta) = (2pi)^-d iint e^{-ik.x - iv.eta} f dx dv:
//   f^ = dv^d / Nx^d * (-1)^{|m|} * DFT[f],
// so that sum |f^|^2 deta^d = dx^d dv^d sum |f|^2 (Parseval, deta = pi/Lv).
//
// A Transformer owns FFTW plans for one grid. It is not thread safe; use one
// per worker.
class Transformer {
 public:
  explicit Transformer(const PhaseGrid& grid);
  ~Transformer();
  Transformer(const Transformer&) = delete;
  Transformer& operator=(const Transformer&) = delete;

  const PhaseGrid& grid() const;

  DistSpectral to_spectral(const DistPhysical& f);
  PhysicalResult to_physical(const DistSpectral& fh);

  FluidSpectral fluid_to_spectral(const VectorField& u);
  VectorField fluid_to_physical(const FluidSpectral& uh);
  std::vector<cplx> scalar_to_spectral(const std::vector<double>& a);
  std::vector<double> scalar_to_physical(const std::vector<cplx>& ah);

  // Half-spectrum power |F(w)|^2 of a real phase-space array under the
  // normalization above. Entry e carries multiplicity mult(e) in {1,2} so that
  // sum_e mult * power equals the full-spectrum sum.
  void half_power(const std::vector<double>& w, std::vector<double>& power);
  std::size_t half_size() const;

  // Spatial r2c/c2r batched over every velocity node (used by the x-shear).
  std::size_t x_half_size() const;
  void x_forward(double* in, cplx* out);
  void x_backward(cplx* in, double* out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

DistSpectral to_spectral(const DistPhysical& f);
PhysicalResult to_physical(const DistSpectral& fh);
FluidSpectral fluid_to_spectral(const VectorField& u);
VectorField fluid_to_physical(const FluidSpectral& uh);

// 2/3 rule: zero any mode with 3|k_i| > Nx or 3|m_i| > Nv.
DistSpectral dealias(const DistSpectral& fh);
FluidSpectral dealias(const FluidSpectral& uh);
bool dealias_keeps(int k, int n);

// Serializes FFTW planner calls.
std::mutex& fftw_planner_mutex();

// Throws NonFiniteInput naming the first bad index.
void require_finite(const std::vector<double>& a, const char* what);

}  // namespace gvns
