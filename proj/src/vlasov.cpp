#include <fftw3.h>

#include <Eigen/Dense>
#include <cmath>
#include <mutex>

#include "gvns/solver.hpp"

namespace gvns {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

}  // namespace

struct VlasovStep::Impl {
  Impl(Transformer& tr, const SolverOptions& o) : t(tr), opt(o), g(tr.grid()) {
    const int d = g.d();
    const int nv = g.nv();
    nh = nv / 2 + 1;
    xspec.resize(g.velocity_size() * t.x_half_size());
    std::size_t inner = g.spatial_size();
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    for (int a = 0; a < d; ++a) {
      inner_[a] = inner;
      outer_[a] = g.velocity_size() / (inner / g.spatial_size()) / static_cast<std::size_t>(nv);
      std::vector<cplx> cin(nh * inner);
      std::vector<double> rout(static_cast<std::size_t>(nv) * inner);
      const int n[1] = {nv};
      c2r_[a] = fftw_plan_many_dft_c2r(1, n, static_cast<int>(inner), reinterpret_cast<fftw_complex*>(cin.data()), nullptr,
                                       static_cast<int>(inner), 1, rout.data(), nullptr, static_cast<int>(inner), 1, kFlags);
      inner *= static_cast<std::size_t>(nv);
    }
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    for (int a = 0; a < g.d(); ++a) fftw_destroy_plan(c2r_[a]);
  }

  void shear(std::vector<double>& f, double tau) {
    const int d = g.d();
    const int nx = g.nx(), nv = g.nv();
    const int nh0 = nx / 2 + 1;
    const std::size_t xh = t.x_half_size();
    t.x_forward(f.data(), xspec.data());
    // Per-axis phase tables e^{-i k v tau}, indexed [k index][v index].
    std::vector<cplx> table(static_cast<std::size_t>(nx) * nv);
    for (int ki = 0; ki < nx; ++ki) {
      const double k = signed_mode(ki, nx);
      for (int j = 0; j < nv; ++j) table[ki * nv + j] = std::polar(1.0, -k * g.v(j) * tau);
    }
    const double inv = 1.0 / static_cast<double>(g.spatial_size());
    for (std::size_t jv = 0; jv < g.velocity_size(); ++jv) {
      const auto j = g.unravel_v(jv);
      cplx* block = xspec.data() + jv * xh;
      for (std::size_t h = 0; h < xh; ++h) {
        const int k0 = static_cast<int>(h % nh0);
        std::size_t rest = h / nh0;
        // Nyquist modes have no real-valued shift; they are dropped.
        bool nyq = (k0 == nx / 2);
        cplx ph = table[k0 * nv + j[0]];
        for (int a = 1; a < d; ++a) {
          const int ka = static_cast<int>(rest % nx);
          rest /= nx;
          nyq = nyq || ka == nx / 2;
          ph *= table[ka * nv + j[a]];
        }
        block[h] = nyq ? cplx{} : block[h] * ph * inv;
      }
    }
    t.x_backward(xspec.data(), f.data());
  }

  void velocity_step_spectral(std::vector<double>& f, const std::vector<double>& u, double tau) {
    const int d = g.d();
    const int nv = g.nv();
    const std::size_t nxd = g.spatial_size();
    const double contraction = std::exp(-tau);
    const double drift = 1.0 - contraction;
    // W(m, j) = (-1)^m / Nv * exp(-i eta_m e^{-tau} v_j), m = 0 .. Nv/2.
    RowMat wr(nh, nv), wi(nh, nv);
    for (int m = 0; m < nh; ++m) {
      const double sgn = (m % 2 == 0 ? 1.0 : -1.0) / nv;
      for (int j = 0; j < nv; ++j) {
        const double ph = -g.eta(m) * contraction * g.v(j);
        wr(m, j) = sgn * std::cos(ph);
        wi(m, j) = sgn * std::sin(ph);
      }
    }
    for (int a = 0; a < d; ++a) {
      const std::size_t inner = inner_[a];
      // Fluid phase e^{-i eta_m u_a(x) (1 - e^{-tau})}, per (m, x).
      std::vector<cplx> phase(static_cast<std::size_t>(nh) * nxd);
      for (int m = 0; m < nh; ++m) {
        for (std::size_t ix = 0; ix < nxd; ++ix) {
          const double ua = u.empty() ? 0.0 : u[a * nxd + ix];
          phase[m * nxd + ix] = std::polar(1.0, -g.eta(m) * ua * drift);
        }
      }
      RowMat gr(nh, inner), gi(nh, inner);
      std::vector<cplx> h(static_cast<std::size_t>(nh) * inner);
      for (std::size_t o = 0; o < outer_[a]; ++o) {
        double* base = f.data() + o * static_cast<std::size_t>(nv) * inner;
        Eigen::Map<const RowMat> block(base, nv, static_cast<Eigen::Index>(inner));
        gr.noalias() = wr * block;
        gi.noalias() = wi * block;
        for (int m = 0; m < nh; ++m) {
          for (std::size_t c = 0; c < inner; ++c) {
            cplx z = cplx(gr(m, c), gi(m, c)) * phase[m * nxd + c % nxd];
            if (m == nv / 2) z = cplx(z.real(), 0.0);
            h[m * inner + c] = z;
          }
        }
        fftw_execute_dft_c2r(c2r_[a], reinterpret_cast<fftw_complex*>(h.data()), base);
      }
    }
  }

  // Cubic Lagrange interpolation of e^{tau} f(u + (v - u) e^{tau}) per axis.
  void velocity_step_cubic(std::vector<double>& f, const std::vector<double>& u, double tau) {
    const int d = g.d();
    const int nv = g.nv();
    const std::size_t nxd = g.spatial_size();
    const double grow = std::exp(tau);
    std::vector<double> line(nv), out(nv);
    for (int a = 0; a < d; ++a) {
      const std::size_t inner = inner_[a];
      for (std::size_t o = 0; o < outer_[a]; ++o) {
        double* base = f.data() + o * static_cast<std::size_t>(nv) * inner;
        for (std::size_t c = 0; c < inner; ++c) {
          const double ua = u.empty() ? 0.0 : u[a * nxd + c % nxd];
          for (int j = 0; j < nv; ++j) line[j] = base[j * inner + c];
          for (int j = 0; j < nv; ++j) {
            const double v0 = ua + (g.v(j) - ua) * grow;
            const double p = (v0 + g.lv()) / g.dv();
            const int i0 = static_cast<int>(std::floor(p));
            const double r = p - i0;
            const double w[4] = {-r * (r - 1) * (r - 2) / 6.0, (r + 1) * (r - 1) * (r - 2) / 2.0, -(r + 1) * r * (r - 2) / 2.0,
                                 (r + 1) * r * (r - 1) / 6.0};
            double s = 0.0;
            for (int q = 0; q < 4; ++q) {
              const int idx = i0 - 1 + q;
              if (idx >= 0 && idx < nv) s += w[q] * line[idx];
            }
            out[j] = grow * s;
          }
          for (int j = 0; j < nv; ++j) base[j * inner + c] = out[j];
        }
      }
    }
  }

  Transformer& t;
  SolverOptions opt;
  PhaseGrid g;
  int nh = 0;
  std::vector<cplx> xspec;
  std::size_t inner_[kMaxDim] = {0, 0, 0};
  std::size_t outer_[kMaxDim] = {0, 0, 0};
  fftw_plan c2r_[kMaxDim] = {};
};

VlasovStep::VlasovStep(Transformer& t, const SolverOptions& opt) : impl_(std::make_unique<Impl>(t, opt)) {}
VlasovStep::~VlasovStep() = default;

void VlasovStep::shear(std::vector<double>& f, double tau) { impl_->shear(f, tau); }

void VlasovStep::velocity_step(std::vector<double>& f, const std::vector<double>& u, double tau) {
  if (impl_->opt.interpolation == VelocityInterpolation::Cubic) {
    impl_->velocity_step_cubic(f, u, tau);
  } else {
    impl_->velocity_step_spectral(f, u, tau);
  }
}

void VlasovStep::substep(DistPhysical& f, const VectorField& u, double tau) {
  static const std::vector<double> kNoFluid;
  const auto& uu = impl_->opt.coupling.vlasov_force ? u.data : kNoFluid;
  shear(f.values, 0.5 * tau);
  velocity_step(f.values, uu, tau);
  shear(f.values, 0.5 * tau);
}

}  // namespace gvns
