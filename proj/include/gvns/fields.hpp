#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gvns/grid.hpp"

namespace gvns {

using cplx = std::complex<double>;

struct DistPhysical {
  PhaseGrid grid;
  std::vector<double> values;

  DistPhysical() = default;
  explicit DistPhysical(const PhaseGrid& g) : grid(g), values(g.size(), 0.0) {}
  double& at(std::size_t ix, std::size_t jv) { return values[jv * grid.spatial_size() + ix]; }
  double at(std::size_t ix, std::size_t jv) const { return values[jv * grid.spatial_size() + ix]; }
};

// f^_k(eta_m) with the (2pi)^-d normalization, FFT-ordered in both k and m.
struct DistSpectral {
  PhaseGrid grid;
  std::vector<cplx> coeffs;

  DistSpectral() = default;
  explicit DistSpectral(const PhaseGrid& g) : grid(g), coeffs(g.size(), cplx{}) {}
  cplx& at(std::size_t kx, std::size_t mv) { return coeffs[mv * grid.spatial_size() + kx]; }
  cplx at(std::size_t kx, std::size_t mv) const { return coeffs[mv * grid.spatial_size() + kx]; }
};

// u^_k = (2pi)^-d int e^{-ik.x} u dx, component-major with k fastest.
struct FluidSpectral {
  PhaseGrid grid;
  std::vector<cplx> coeffs;

  FluidSpectral() = default;
  explicit FluidSpectral(const PhaseGrid& g) : grid(g), coeffs(g.d() * g.spatial_size(), cplx{}) {}
  cplx& at(int comp, std::size_t kx) { return coeffs[comp * grid.spatial_size() + kx]; }
  cplx at(int comp, std::size_t kx) const { return coeffs[comp * grid.spatial_size() + kx]; }
};

// Real spatial vector field, component-major.
struct VectorField {
  PhaseGrid grid;
  std::vector<double> data;

  VectorField() = default;
  explicit VectorField(const PhaseGrid& g) : grid(g), data(g.d() * g.spatial_size(), 0.0) {}
  double& at(int comp, std::size_t ix) { return data[comp * grid.spatial_size() + ix]; }
  double at(int comp, std::size_t ix) const { return data[comp * grid.spatial_size() + ix]; }
};

struct MomentFields {
  std::vector<double> rho;
  std::vector<double> j;  // component-major, d * Nx^d
};

}  // namespace gvns
