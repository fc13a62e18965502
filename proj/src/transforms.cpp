#include "gvns/transforms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <string>

#include "gvns/errors.hpp"

namespace gvns {

namespace {

constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : n(n), p(static_cast<cplx*>(fftw_malloc(sizeof(cplx) * std::max<std::size_t>(n, 1)))) {}
  ~FftwBuffer() { fftw_free(p); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  std::size_t n;
  cplx* p;
};

struct RealBuffer {
  explicit RealBuffer(std::size_t n) : p(static_cast<double*>(fftw_malloc(sizeof(double) * std::max<std::size_t>(n, 1)))) {}
  ~RealBuffer() { fftw_free(p); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;
  double* p;
};

// Parity of the velocity multi-index: (-1)^{m_1 + ... + m_d}.
std::vector<double> velocity_signs(const PhaseGrid& g) {
  std::vector<double> s(g.velocity_size());
  for (std::size_t jv = 0; jv < s.size(); ++jv) {
    auto m = g.unravel_v(jv);
    int p = 0;
    for (int a = 0; a < g.d(); ++a) p += m[a];
    s[jv] = (p % 2 == 0) ? 1.0 : -1.0;
  }
  return s;
}

std::size_t negate_index(const PhaseGrid& g, std::size_t flat) {
  const std::size_t nxd = g.spatial_size();
  auto ix = g.unravel_x(flat % nxd);
  auto jv = g.unravel_v(flat / nxd);
  for (int a = 0; a < g.d(); ++a) {
    ix[a] = (g.nx() - ix[a]) % g.nx();
    jv[a] = (g.nv() - jv[a]) % g.nv();
  }
  return g.ravel_v(jv) * nxd + g.ravel_x(ix);
}

}  // namespace

// FFTW's planner is not reentrant; plan creation and destruction go through here.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct Transformer::Impl {
  explicit Impl(const PhaseGrid& g)
      : grid(g),
        signs(velocity_signs(g)),
        full(g.size()),
        half_out(g.velocity_size() * (g.spatial_size() / g.nx()) * (g.nx() / 2 + 1)),
        real_in(g.size()),
        xbuf(g.spatial_size()) {
    const int d = g.d();
    int dims[2 * kMaxDim];
    for (int a = 0; a < d; ++a) {
      dims[a] = g.nv();
      dims[d + a] = g.nx();
    }
    int xdims[kMaxDim];
    for (int a = 0; a < d; ++a) xdims[a] = g.nx();
    x_half = (g.spatial_size() / g.nx()) * (g.nx() / 2 + 1);

    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    full_fwd = fftw_plan_dft(2 * d, dims, as_fftw(full.p), as_fftw(full.p), FFTW_FORWARD, kFlags);
    full_bwd = fftw_plan_dft(2 * d, dims, as_fftw(full.p), as_fftw(full.p), FFTW_BACKWARD, kFlags);
    half_fwd = fftw_plan_dft_r2c(2 * d, dims, real_in.p, as_fftw(half_out.p), kFlags);
    x_fwd_c = fftw_plan_dft(d, xdims, as_fftw(xbuf.p), as_fftw(xbuf.p), FFTW_FORWARD, kFlags);
    x_bwd_c = fftw_plan_dft(d, xdims, as_fftw(xbuf.p), as_fftw(xbuf.p), FFTW_BACKWARD, kFlags);

    // Batched spatial r2c / c2r over all velocity nodes.
    const int howmany = static_cast<int>(g.velocity_size());
    const int rdist = static_cast<int>(g.spatial_size());
    const int cdist = static_cast<int>(x_half);
    RealBuffer rtmp(g.size());
    FftwBuffer ctmp(g.velocity_size() * x_half);
    x_r2c = fftw_plan_many_dft_r2c(d, xdims, howmany, rtmp.p, nullptr, 1, rdist, as_fftw(ctmp.p), nullptr, 1, cdist, kFlags);
    x_c2r = fftw_plan_many_dft_c2r(d, xdims, howmany, as_fftw(ctmp.p), nullptr, 1, cdist, rtmp.p, nullptr, 1, rdist, kFlags);
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    for (auto p : {full_fwd, full_bwd, half_fwd, x_fwd_c, x_bwd_c, x_r2c, x_c2r}) fftw_destroy_plan(p);
  }

  PhaseGrid grid;
  std::vector<double> signs;
  FftwBuffer full;
  FftwBuffer half_out;
  RealBuffer real_in;
  FftwBuffer xbuf;
  std::size_t x_half = 0;
  fftw_plan full_fwd{}, full_bwd{}, half_fwd{}, x_fwd_c{}, x_bwd_c{}, x_r2c{}, x_c2r{};
};

Transformer::Transformer(const PhaseGrid& grid) : impl_(std::make_unique<Impl>(grid)) {}
Transformer::~Transformer() = default;

const PhaseGrid& Transformer::grid() const { return impl_->grid; }

void require_finite(const std::vector<double>& a, const char* what) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i])) {
      throw NonFiniteInput(std::string(what) + ": non-finite value at index " + std::to_string(i), i);
    }
  }
}

DistSpectral Transformer::to_spectral(const DistPhysical& f) {
  const auto& g = impl_->grid;
  if (!(f.grid == g) || f.values.size() != g.size()) throw std::invalid_argument("to_spectral: grid mismatch");
  require_finite(f.values, "to_spectral");
  cplx* buf = impl_->full.p;
  for (std::size_t i = 0; i < g.size(); ++i) buf[i] = cplx(f.values[i], 0.0);
  fftw_execute(impl_->full_fwd);
  DistSpectral out(g);
  const double scale = g.dvd() / static_cast<double>(g.spatial_size());
  const std::size_t nxd = g.spatial_size();
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    const double s = scale * impl_->signs[jv];
    for (std::size_t ix = 0; ix < nxd; ++ix) out.coeffs[jv * nxd + ix] = s * buf[jv * nxd + ix];
  }
  return out;
}

PhysicalResult Transformer::to_physical(const DistSpectral& fh) {
  const auto& g = impl_->grid;
  if (!(fh.grid == g) || fh.coeffs.size() != g.size()) throw std::invalid_argument("to_physical: grid mismatch");
  PhysicalResult res;
  double cmax = 0.0, viol = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    cmax = std::max(cmax, std::abs(fh.coeffs[i]));
    viol = std::max(viol, std::abs(fh.coeffs[i] - std::conj(fh.coeffs[negate_index(g, i)])));
  }
  res.symmetry_violation = cmax > 0.0 ? viol / cmax : 0.0;
  res.complex_residual = res.symmetry_violation > 1e-10;

  cplx* buf = impl_->full.p;
  const std::size_t nxd = g.spatial_size();
  const double scale = 1.0 / (static_cast<double>(g.velocity_size()) * g.dvd());
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    const double s = scale * impl_->signs[jv];
    for (std::size_t ix = 0; ix < nxd; ++ix) buf[jv * nxd + ix] = s * fh.coeffs[jv * nxd + ix];
  }
  fftw_execute(impl_->full_bwd);
  res.f = DistPhysical(g);
  double vmax = 0.0, imax = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    res.f.values[i] = buf[i].real();
    vmax = std::max(vmax, std::abs(buf[i]));
    imax = std::max(imax, std::abs(buf[i].imag()));
  }
  res.imag_residual = vmax > 0.0 ? imax / vmax : 0.0;
  return res;
}

std::vector<cplx> Transformer::scalar_to_spectral(const std::vector<double>& a) {
  const std::size_t n = impl_->grid.spatial_size();
  cplx* buf = impl_->xbuf.p;
  for (std::size_t i = 0; i < n; ++i) buf[i] = cplx(a[i], 0.0);
  fftw_execute(impl_->x_fwd_c);
  std::vector<cplx> out(n);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[i] * inv;
  return out;
}

std::vector<double> Transformer::scalar_to_physical(const std::vector<cplx>& ah) {
  const std::size_t n = impl_->grid.spatial_size();
  cplx* buf = impl_->xbuf.p;
  std::copy(ah.begin(), ah.begin() + static_cast<std::ptrdiff_t>(n), buf);
  fftw_execute(impl_->x_bwd_c);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[i].real();
  return out;
}

FluidSpectral Transformer::fluid_to_spectral(const VectorField& u) {
  const auto& g = impl_->grid;
  const std::size_t n = g.spatial_size();
  require_finite(u.data, "fluid_to_spectral");
  FluidSpectral out(g);
  std::vector<double> comp(n);
  for (int c = 0; c < g.d(); ++c) {
    std::copy(u.data.begin() + c * n, u.data.begin() + (c + 1) * n, comp.begin());
    auto h = scalar_to_spectral(comp);
    std::copy(h.begin(), h.end(), out.coeffs.begin() + c * n);
  }
  return out;
}

VectorField Transformer::fluid_to_physical(const FluidSpectral& uh) {
  const auto& g = impl_->grid;
  const std::size_t n = g.spatial_size();
  VectorField out(g);
  std::vector<cplx> comp(n);
  for (int c = 0; c < g.d(); ++c) {
    std::copy(uh.coeffs.begin() + c * n, uh.coeffs.begin() + (c + 1) * n, comp.begin());
    auto r = scalar_to_physical(comp);
    std::copy(r.begin(), r.end(), out.data.begin() + c * n);
  }
  return out;
}

std::size_t Transformer::half_size() const { return impl_->half_out.n; }

void Transformer::half_power(const std::vector<double>& w, std::vector<double>& power) {
  const auto& g = impl_->grid;
  std::copy(w.begin(), w.end(), impl_->real_in.p);
  fftw_execute(impl_->half_fwd);
  const double scale = g.dvd() / static_cast<double>(g.spatial_size());
  const double s2 = scale * scale;
  power.resize(impl_->half_out.n);
  const cplx* out = impl_->half_out.p;
  for (std::size_t e = 0; e < power.size(); ++e) power[e] = std::norm(out[e]) * s2;
}

std::size_t Transformer::x_half_size() const { return impl_->x_half; }

void Transformer::x_forward(double* in, cplx* out) { fftw_execute_dft_r2c(impl_->x_r2c, in, as_fftw(out)); }

void Transformer::x_backward(cplx* in, double* out) { fftw_execute_dft_c2r(impl_->x_c2r, as_fftw(in), out); }

DistSpectral to_spectral(const DistPhysical& f) {
  Transformer t(f.grid);
  return t.to_spectral(f);
}

PhysicalResult to_physical(const DistSpectral& fh) {
  Transformer t(fh.grid);
  return t.to_physical(fh);
}

FluidSpectral fluid_to_spectral(const VectorField& u) {
  Transformer t(u.grid);
  return t.fluid_to_spectral(u);
}

VectorField fluid_to_physical(const FluidSpectral& uh) {
  Transformer t(uh.grid);
  return t.fluid_to_physical(uh);
}

bool dealias_keeps(int k, int n) { return 3 * std::abs(k) <= n; }

DistSpectral dealias(const DistSpectral& fh) {
  const auto& g = fh.grid;
  DistSpectral out = fh;
  const std::size_t nxd = g.spatial_size();
  for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
    auto m = g.unravel_v(jv);
    bool vkeep = true;
    for (int a = 0; a < g.d(); ++a) vkeep = vkeep && dealias_keeps(signed_mode(m[a], g.nv()), g.nv());
    for (std::size_t ix = 0; ix < nxd; ++ix) {
      auto k = g.unravel_x(ix);
      bool keep = vkeep;
      for (int a = 0; a < g.d(); ++a) keep = keep && dealias_keeps(signed_mode(k[a], g.nx()), g.nx());
      if (!keep) out.coeffs[jv * nxd + ix] = cplx{};
    }
  }
  return out;
}

FluidSpectral dealias(const FluidSpectral& uh) {
  const auto& g = uh.grid;
  FluidSpectral out = uh;
  const std::size_t nxd = g.spatial_size();
  for (std::size_t ix = 0; ix < nxd; ++ix) {
    auto k = g.unravel_x(ix);
    bool keep = true;
    for (int a = 0; a < g.d(); ++a) keep = keep && dealias_keeps(signed_mode(k[a], g.nx()), g.nx());
    if (!keep) {
      for (int c = 0; c < g.d(); ++c) out.coeffs[c * nxd + ix] = cplx{};
    }
  }
  return out;
}

}  // namespace gvns
