#pragma once

#include <array>
#include <cstddef>
#include <numbers>

namespace gvns {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr int kMaxDim = 3;

using Index3 = std::array<int, kMaxDim>;

// Phase-space grid on T^d x [-Lv, Lv)^d with T = [0, 2pi).
//
// Storage order of every phase-space array: flat = jv * Nx^d + ix, where ix and
// jv are the spatial and velocity multi-indices flattened with axis 0 fastest.
// Spectral arrays keep the same layout with FFT ordering along each axis
// (index i <-> wavenumber i for i < N/2, i - N otherwise).
class PhaseGrid {
 public:
  PhaseGrid() = default;
  PhaseGrid(int d, int nx, int nv, double lv);

  int d() const { return d_; }
  int nx() const { return nx_; }
  int nv() const { return nv_; }
  double lv() const { return lv_; }

  double dx() const { return kTwoPi / nx_; }
  double dv() const { return 2.0 * lv_ / nv_; }
  double deta() const { return std::numbers::pi / lv_; }

  std::size_t spatial_size() const { return nxd_; }
  std::size_t velocity_size() const { return nvd_; }
  std::size_t size() const { return nxd_ * nvd_; }

  double x(int i) const { return i * dx(); }
  double v(int j) const { return -lv_ + j * dv(); }
  double eta(int m) const { return m * deta(); }

  // Spatial / velocity cell measures dx^d and dv^d.
  double dxd() const;
  double dvd() const;
  double detad() const;

  Index3 unravel_x(std::size_t flat) const { return unravel(flat, nx_); }
  Index3 unravel_v(std::size_t flat) const { return unravel(flat, nv_); }
  std::size_t ravel_x(const Index3& i) const { return ravel(i, nx_); }
  std::size_t ravel_v(const Index3& i) const { return ravel(i, nv_); }

  bool operator==(const PhaseGrid& o) const {
    return d_ == o.d_ && nx_ == o.nx_ && nv_ == o.nv_ && lv_ == o.lv_;
  }

 private:
  Index3 unravel(std::size_t flat, int n) const;
  std::size_t ravel(const Index3& i, int n) const;

  int d_ = 1;
  int nx_ = 4;
  int nv_ = 4;
  double lv_ = 1.0;
  std::size_t nxd_ = 4;
  std::size_t nvd_ = 4;
};

// Signed wavenumber of FFT index i on an n-point axis.
inline int signed_mode(int i, int n) { return i < n / 2 ? i : i - n; }
inline int fft_index(int k, int n) { return k >= 0 ? k : k + n; }

}  // namespace gvns
