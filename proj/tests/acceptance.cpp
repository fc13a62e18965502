// Runs every acceptance criterion on the shipped configs and prints one
// PASS/FAIL line per criterion, followed by the measured numbers.
//
//   acceptance [work_dir]
//
// Exit status 0 when all criteria pass, 2 otherwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gvns/config.hpp"
#include "gvns/diagnostics.hpp"
#include "gvns/errors.hpp"
#include "gvns/initial.hpp"
#include "gvns/lab.hpp"
#include "gvns/numerics.hpp"
#include "gvns/radius.hpp"
#include "gvns/run.hpp"
#include "gvns/snapshot.hpp"
#include "gvns/verifier.hpp"

using namespace gvns;
namespace fs = std::filesystem;

namespace {

fs::path g_work;
int g_failed = 0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void need(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "  FAILED: " << what << "\n";
    }
  }
};

void report(int n, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.need(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %2d: %s  %s (%.1f s)\n", n, o.pass ? "PASS" : "FAIL", title.c_str(), secs);
  std::fputs(o.detail.str().c_str(), stdout);
  std::fflush(stdout);
  if (!o.pass) ++g_failed;
}

RunConfig config(const std::string& name) { return load_config(std::string(GVNS_SOURCE_DIR) + "/configs/" + name); }

RunConfig halved(RunConfig c) {
  c.dt *= 0.5;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Cached coupled runs; several criteria share them.
struct Runs {
  RunResult sd, sd_half, s1, s1_half;
  bool have_sd = false, have_s1 = false;
} g_runs;

const Runs& small_data_runs() {
  if (!g_runs.have_sd) {
    g_runs.sd = simulate(config("small_data.cfg"));
    g_runs.sd_half = simulate(halved(config("small_data.cfg")));
    g_runs.have_sd = true;
  }
  return g_runs;
}

const Runs& analytic_runs() {
  if (!g_runs.have_s1) {
    g_runs.s1 = simulate(config("small_data_s1.cfg"));
    g_runs.s1_half = simulate(halved(config("small_data_s1.cfg")));
    g_runs.have_s1 = true;
  }
  return g_runs;
}

void note_run(Outcome& o, const char* label, const RunResult& r) {
  o.detail << "  " << label << ": " << (r.completed ? "completed" : "stopped: " + r.abort_reason) << ", t = " << r.final_state.t
           << ", steps = " << r.steps << "\n";
  o.need(r.completed, std::string(label) + " did not reach t_end");
}

double energy_residual(const DiagnosticsSeries& s) {
  const auto t = s.times();
  const auto E = s.column(&DiagnosticsRow::E);
  const auto I = cumulative_trapezoid(t, s.column(&DiagnosticsRow::D));
  return std::abs(E.back() - E.front() + I.back()) / E.front();
}

void criterion1(Outcome& o) {
  const auto c = config("taylor_green.cfg");
  const auto s0 = make_initial_state(c);
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = simulate(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  note_run(o, "run", r);
  const double decay = std::exp(-2.0 * r.final_state.t);
  double e2 = 0.0;
  for (std::size_t i = 0; i < s0.u.coeffs.size(); ++i) e2 += std::norm(r.final_state.u.coeffs[i] - decay * s0.u.coeffs[i]);
  const double err = std::sqrt(std::pow(2.0 * std::numbers::pi, c.d) * e2);
  o.detail << "  L2 error at t = " << r.final_state.t << ": " << err << ", runtime " << secs << " s\n";
  o.need(std::abs(r.final_state.t - 0.5) < 1e-12, "final time is 0.5");
  o.need(err <= 1e-6, "L2 error <= 1e-6");
  o.need(secs < 30.0, "runtime < 30 s");
}

void criterion2(Outcome& o) {
  const auto c = config("free_streaming.cfg");
  const auto r = simulate(c);
  note_run(o, "run", r);
  const auto ex = free_streaming_exact(r.final_state.f.grid, c.preset, r.final_state.t);
  double err = 0.0;
  for (std::size_t i = 0; i < ex.values.size(); ++i) err = std::max(err, std::abs(ex.values[i] - r.final_state.f.values[i]));
  o.detail << "  Linf error at t = " << r.final_state.t << ": " << err << "\n";
  o.need(err <= 1e-3, "Linf error <= 1e-3");
}

void criterion3(Outcome& o) {
  const auto& R = small_data_runs();
  double worst_mass = 0.0, worst_div = 0.0;
  for (const RunResult* r : {&R.sd, &R.sd_half}) {
    const auto m = r->series.column(&DiagnosticsRow::mass);
    for (std::size_t n = 1; n < m.size(); ++n) worst_mass = std::max(worst_mass, std::abs(m[n] - m[n - 1]) / m.front());
    for (double d : r->series.column(&DiagnosticsRow::divergence)) worst_div = std::max(worst_div, d);
  }
  note_run(o, "dt = 0.02", R.sd);
  note_run(o, "dt = 0.01", R.sd_half);
  const double a = energy_residual(R.sd.series), b = energy_residual(R.sd_half.series);
  o.detail << "  per-step mass drift " << worst_mass << ", divergence " << worst_div << "\n";
  o.detail << "  energy residual " << a << " (dt = 0.02), " << b << " (dt = 0.01), ratio " << a / b << "\n";
  o.need(worst_mass <= 1e-12, "per-step mass drift <= 1e-12");
  o.need(worst_div <= 1e-12, "divergence residual <= 1e-12");
  o.need(a <= 1e-4, "energy residual <= 1e-4 E(0)");
  o.need(a / b >= 4.0, "energy residual drops >= 4x when dt halves");
}

void criterion4(Outcome& o) {
  auto bernoulli = [](double t, double a, double b, double l0) {
    const double e = std::exp(-a * t);
    return a * e / (a / l0 + b * (1.0 - e));
  };
  std::vector<double> t;
  for (int n = 0; n <= 50; ++n) t.push_back(0.04 * n);
  const std::vector<double> ys(t.size(), 1.7), yg(t.size(), 0.6);
  const auto rk = integrate_lambda(t, ys, yg, 1.0);
  double e1 = 0.0;
  for (std::size_t n = 0; n < t.size(); ++n) e1 = std::max(e1, std::abs(rk.lambda[n] - bernoulli(t[n], 1.7, 0.6, 1.0)));
  RadiusTracker tr(1.0);
  for (int n = 0; n < 10; ++n) tr.advance(std::log(2.0) / 10, 1.0, 1.0);
  const double e2 = std::abs(tr.lambda() - 1.0 / 3.0);

  const auto& s = small_data_runs().sd.series;
  std::vector<double> ts, ysob, ygev;
  for (const auto& r : s.rows) {
    ts.push_back(r.t);
    ysob.push_back(y_sob(r));
    ygev.push_back(y_gev(r));
  }
  double e3 = 0.0;
  for (auto model : {CoefficientModel::Hold, CoefficientModel::Linear}) {
    const auto a = integrate_lambda(ts, ysob, ygev, s.meta.params.lambda0, model);
    const auto b = lambda_closed_form(ts, ysob, ygev, s.meta.params.lambda0, model);
    for (std::size_t n = 0; n < ts.size(); ++n) e3 = std::max(e3, std::abs(a.lambda[n] - b.lambda[n]) / b.lambda[n]);
  }
  o.detail << "  Bernoulli error " << e1 << ", lambda(ln 2) error " << e2 << ", closed form on run data " << e3 << " ("
           << ts.size() << " rows)\n";
  o.need(e1 <= 1e-8, "RK4 vs Bernoulli <= 1e-8");
  o.need(e2 <= 1e-8, "lambda(ln 2) = 1/3 to 1e-8");
  o.need(e3 <= 1e-6, "closed form vs RK4 on run data <= 1e-6");
}

void criterion5(Outcome& o) {
  const auto reports = run_lab_suite("all");
  for (const auto& r : reports) {
    if (!r.passed()) {
      o.need(false, r.key() + ": violations " + std::to_string(r.violations) + ", refinement ratio " + std::to_string(r.refinement_ratio));
    }
  }
  o.detail << "  " << reports.size() << " reports\n";
}

void criterion6(Outcome& o) {
  const auto& R = small_data_runs();
  note_run(o, "dt = 0.02", R.sd);
  note_run(o, "dt = 0.01", R.sd_half);
  const auto a = verify_all(R.sd.series), b = verify_all(R.sd_half.series);
  const std::pair<const BoundFit*, const BoundFit*> fits[] = {
      {&a.C0, &b.C0}, {&a.upper.C1, &b.upper.C1}, {&a.upper.C2, &b.upper.C2}, {&a.lambda.C3, &b.lambda.C3}};
  for (const auto& [x, y] : fits) {
    const double ch = relative_change(*x, *y);
    o.detail << "  " << x->name << " = " << x->constant << " / " << y->constant << ", change " << ch << "\n";
    o.need(x->finite && y->finite && x->constant < 1e6 && y->constant < 1e6, x->name + " finite");
    o.need(ch < 0.1, x->name + " changes < 10% when dt halves");
  }
  for (const auto* v : {&a, &b}) {
    o.need(v->lambda.positive, "lambda positive");
    o.need(v->lambda.non_increasing, "lambda non-increasing");
    o.need(v->lambda.C3.holds && v->lambda.min_margin >= -1e-9, "lambda above the fitted lower bound");
  }
}

void criterion7(Outcome& o) {
  const auto& R = analytic_runs();
  note_run(o, "dt = 0.02", R.s1);
  note_run(o, "dt = 0.01", R.s1_half);
  const auto a = verify_analytic_bounds(R.s1.series), b = verify_analytic_bounds(R.s1_half.series);
  for (const auto& [x, y] : {std::pair{&a.C4, &b.C4}, std::pair{&a.C5, &b.C5}}) {
    const double ch = relative_change(*x, *y);
    o.detail << "  " << x->name << " = " << x->constant << " / " << y->constant << ", change " << ch << "\n";
    o.need(x->finite && x->holds && y->finite && y->holds, x->name + " finite");
    o.need(ch < 0.1, x->name + " changes < 10% when dt halves");
  }
  o.detail << "  C_short = " << a.C_short.constant << ", T0 = " << a.T0 << "\n";
  o.need(a.horizon_ok && b.horizon_ok, "short-time Sobolev bound holds with t_end < T0");
}

void criterion8(Outcome& o) {
  double worst = 0.0;
  for (double lambda : {0.1, 0.3, 0.5}) {
    for (double s : {0.5, 1.0}) {
      const double sigma = 2.0;
      const PhaseGrid g(2, 96, 4, 1.0);
      FluidSpectral uh(g);
      for (std::size_t ix = 0; ix < g.spatial_size(); ++ix) {
        const auto k = g.unravel_x(ix);
        const double k0 = signed_mode(k[0], 96), k1 = signed_mode(k[1], 96);
        const double b = std::sqrt(1.0 + k0 * k0 + k1 * k1);
        uh.at(0, ix) = std::pow(b, sigma) * std::exp(-lambda * std::pow(b, s));
      }
      const PhaseGrid gp(1, 64, 128, 4.0);
      DistSpectral fh(gp);
      for (std::size_t mv = 0; mv < gp.velocity_size(); ++mv)
        for (std::size_t kx = 0; kx < gp.spatial_size(); ++kx) {
          const double k = signed_mode(kx, 64), e = signed_mode(mv, 128) * gp.deta();
          const double b = std::sqrt(1.0 + k * k + e * e);
          fh.at(kx, mv) = std::pow(b, sigma) * std::exp(-lambda * std::pow(b, s));
        }
      for (double est : {estimate_empirical_radius(uh, sigma, s).lambda_emp, estimate_empirical_radius(fh, sigma, s).lambda_emp})
        worst = std::max(worst, std::abs(est - lambda) / lambda);
    }
  }
  o.detail << "  worst relative error on synthetic spectra " << worst << "\n";
  o.need(worst <= 0.1, "synthetic radius within 10%");

  const auto r = simulate(config("free_streaming.cfg"));
  note_run(o, "free streaming", r);
  const auto lam = r.series.column(&DiagnosticsRow::lambda_emp_f);
  bool finite = true, monotone = true;
  for (std::size_t n = 0; n < lam.size(); ++n) {
    if (!std::isfinite(lam[n])) finite = false;
    if (n > 0 && lam[n] > lam[n - 1] * (1.0 + 1e-9)) monotone = false;
  }
  o.detail << "  lambda_emp " << lam.front() << " -> " << lam.back() << " over " << lam.size() << " rows\n";
  o.need(finite, "lambda_emp finite along the run");
  o.need(monotone, "lambda_emp non-increasing");
}

void criterion9(Outcome& o) {
  const auto& R = small_data_runs();
  note_run(o, "run", R.sd);
  const auto e = verify_energy_and_modulated_decay(R.sd.series);
  o.detail << "  decay rate " << e.decay_rate << ", sup rho " << e.sup_rho << " (initial " << e.rho0 << "), int |grad u| "
           << e.int_grad_u << " (initial |grad u| " << e.grad_u0 << ")\n";
  o.need(e.decay_fitted && e.decay_rate > 0.0, "positive modulated-energy decay rate");
  o.need(e.sup_rho < 10.0 * e.rho0, "sup rho below 10x initial");
  o.need(e.int_grad_u < 10.0 * e.grad_u0, "int |grad u| below 10x initial");
}

void criterion10(Outcome& o) {
  auto c = config("quick.cfg");
  const fs::path a = g_work / "det_a", b = g_work / "det_b";
  fs::remove_all(a);
  fs::remove_all(b);
  c.output = a.string();
  const auto ra = run_to_directory(c);
  c.output = b.string();
  const auto rb = run_to_directory(c);
  note_run(o, "first run", ra);
  note_run(o, "second run", rb);
  o.need(slurp(a / "diagnostics.csv") == slurp(b / "diagnostics.csv"), "identical diagnostics.csv");
  o.need(ra.snapshots == rb.snapshots && !ra.snapshots.empty(), "same snapshot list");
  for (const auto& s : ra.snapshots) o.need(slurp(a / s) == slurp(b / s), "identical " + s);

  const std::string bytes = slurp(a / ra.snapshots.back());
  std::vector<std::uint8_t> raw(bytes.begin(), bytes.end());
  o.need(encode_snapshot(decode_snapshot(raw)) == raw, "snapshot round trip is byte identical");
  int detected = 0, tried = 0;
  for (std::size_t pos : {std::size_t{10}, std::size_t{90}, raw.size() / 2, raw.size() - 30}) {
    auto bad = raw;
    bad[pos] ^= 0x04;
    ++tried;
    try {
      decode_snapshot(bad);
    } catch (const SnapshotError&) {
      ++detected;
    }
  }
  o.detail << "  " << ra.snapshots.size() << " snapshots compared, corruption detected " << detected << "/" << tried << "\n";
  o.need(detected == tried, "every corrupted byte detected");
}

}  // namespace

int main(int argc, char** argv) {
  g_work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "gvns_acceptance";
  fs::create_directories(g_work);
  apply_thread_env();
  report(1, "Taylor-Green fluid oracle", criterion1);
  report(2, "free-streaming Vlasov oracle", criterion2);
  report(3, "conservation and energy identity on the coupled run", criterion3);
  report(4, "lambda tracker", criterion4);
  report(5, "inequality lab", criterion5);
  report(6, "bounds verifier on the small-data run", criterion6);
  report(7, "analytic mode", criterion7);
  report(8, "empirical radius", criterion8);
  report(9, "small-data decay", criterion9);
  report(10, "determinism and persistence", criterion10);
  std::printf("%d of 10 criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 2;
}
