#include "gvns/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gvns {

PhaseGrid::PhaseGrid(int d, int nx, int nv, double lv) : d_(d), nx_(nx), nv_(nv), lv_(lv) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("grid: d must be 1, 2 or 3");
  if (nx < 4 || nx % 2 != 0) throw std::invalid_argument("grid: Nx must be even and >= 4, got " + std::to_string(nx));
  if (nv < 4 || nv % 2 != 0) throw std::invalid_argument("grid: Nv must be even and >= 4, got " + std::to_string(nv));
  if (!(lv > 0.0) || !std::isfinite(lv)) throw std::invalid_argument("grid: Lv must be positive");
  nxd_ = 1;
  nvd_ = 1;
  for (int a = 0; a < d; ++a) {
    nxd_ *= static_cast<std::size_t>(nx);
    nvd_ *= static_cast<std::size_t>(nv);
  }
}

double PhaseGrid::dxd() const { return std::pow(dx(), d_); }
double PhaseGrid::dvd() const { return std::pow(dv(), d_); }
double PhaseGrid::detad() const { return std::pow(deta(), d_); }

Index3 PhaseGrid::unravel(std::size_t flat, int n) const {
  Index3 out{0, 0, 0};
  for (int a = 0; a < d_; ++a) {
    out[a] = static_cast<int>(flat % static_cast<std::size_t>(n));
    flat /= static_cast<std::size_t>(n);
  }
  return out;
}

std::size_t PhaseGrid::ravel(const Index3& i, int n) const {
  std::size_t flat = 0;
  for (int a = d_ - 1; a >= 0; --a) flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(i[a]);
  return flat;
}

}  // namespace gvns
