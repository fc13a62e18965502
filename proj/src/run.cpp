#include "gvns/run.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#ifdef GVNS_HAVE_OPENMP
#include <omp.h>
#endif

#include "gvns/csv.hpp"
#include "gvns/errors.hpp"
#include "gvns/snapshot.hpp"

namespace gvns {

namespace fs = std::filesystem;

void apply_thread_env() {
  const char* env = std::getenv("GVNS_THREADS");
  if (!env) return;
  const int n = std::atoi(env);
  if (n <= 0) return;
#ifdef GVNS_HAVE_OPENMP
  omp_set_num_threads(n);
#endif
}

namespace {

// Divergence-free random perturbation on modes with 1 <= |k|_inf <= 2.
void add_noise(SimState& s, double amp, std::uint64_t seed) {
  const auto& g = s.u.grid;
  const int d = g.d();
  const std::size_t n = g.spatial_size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  VectorField du(g);
  const int K = 2;
  Index3 k{0, 0, 0};
  const int ky_max = d > 1 ? K : 0;
  for (k[1] = -ky_max; k[1] <= ky_max; ++k[1]) {
    for (k[0] = -K; k[0] <= K; ++k[0]) {
      // One representative of each +-k pair.
      if (k[1] < 0 || (k[1] == 0 && k[0] <= 0)) continue;
      for (int c = 0; c < d; ++c) {
        const double a = amp * U(rng), b = amp * U(rng);
        for (std::size_t ix = 0; ix < n; ++ix) {
          const auto i = g.unravel_x(ix);
          double phase = 0.0;
          for (int q = 0; q < d; ++q) phase += k[q] * g.x(i[q]);
          du.at(c, ix) += a * std::cos(phase) + b * std::sin(phase);
        }
      }
    }
  }
  auto dh = fluid_to_spectral(du);
  for (std::size_t i = 0; i < dh.coeffs.size(); ++i) s.u.coeffs[i] += dh.coeffs[i];
  leray_project(s.u);
  s.u = dealias(s.u);
}

}  // namespace

SimState make_initial_state(const RunConfig& c) {
  const PhaseGrid g(c.d, c.nx, c.nv, c.lv);
  SimState s;
  if (c.initial.rfind("file:", 0) == 0) {
    const auto snap = read_snapshot(c.initial.substr(5));
    if (!(snap.f.grid == g)) throw ConfigError("initial snapshot grid differs from the configured grid", "initial", 0);
    s.t = 0.0;
    s.f = snap.f;
    s.u = snap.u;
  } else if (c.initial == "zero") {
    s = zero_state(g);
  } else if (c.initial == "taylor_green") {
    s = taylor_green(g, c.preset.amplitude);
  } else if (c.initial == "heat_mode") {
    s = heat_mode(g, c.preset.amplitude);
  } else if (c.initial == "free_streaming") {
    s = free_streaming(g, c.preset);
  } else if (c.initial == "small_data") {
    s = small_data(g, c.preset);
  } else {
    throw ConfigError("unknown initial preset '" + c.initial + "'", "initial", 0);
  }
  if (c.noise > 0.0) add_noise(s, c.noise, c.seed);
  require_finite(s.f.values, "initial f");
  return s;
}

RunResult simulate(const RunConfig& c, const RowCallback& on_row, const StateCallback& on_state) {
  RunResult res;
  res.warnings = c.warnings;
  SimState s = make_initial_state(c);
  const PhaseGrid& g = s.f.grid;

  res.series.meta = SeriesMeta{c.d, c.nx, c.nv, c.lv, c.dt, c.gevrey};
  Stepper stepper(g, c.solver);
  DiagnosticsEngine eng(stepper.transformer(), c.gevrey);
  RadiusTracker tracker(c.gevrey.lambda0, c.lambda_model);

  auto emit = [&](const DiagnosticsRow& r) {
    res.series.rows.push_back(r);
    if (on_row) on_row(r);
  };

  eng.prepare(s);
  DiagnosticsRow row = eng.row(tracker.lambda());
  row.G = tracker.G();
  emit(row);
  if (on_state) on_state(0, s, tracker.lambda());

  const long nsteps = c.t_end > 0.0 ? std::lround(std::ceil(c.t_end / c.dt - 1e-9)) : 0;
  try {
    for (long n = 0; n < nsteps; ++n) {
      if (row.boundary_mass > c.solver.boundary_mass_limit) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "boundary mass fraction %.3e exceeds %.1e at t = %.6g", row.boundary_mass,
                      c.solver.boundary_mass_limit, s.t);
        throw BoundaryMassError(buf, row.boundary_mass);
      }
      const double dt = std::min(c.dt, c.t_end - s.t);
      const double ys0 = y_sob(row), yg0 = y_gev(row);
      s = stepper.step(s, dt);
      eng.prepare(s);
      if (c.lambda_model == CoefficientModel::Hold) {
        tracker.advance(dt, ys0, yg0);
      } else {
        // Fixed-point iteration on the Gevrey norms at the new radius.
        const double ys1 = 1.0 + eng.row(0.0).f_sob + eng.row(0.0).u_sob;
        double lam = tracker.predict(dt, ys0, yg0, ys0, yg0);
        for (int it = 0; it < 4; ++it) lam = tracker.predict(dt, ys0, yg0, ys1, eng.y_gev_at(lam));
        tracker.advance(dt, ys0, yg0, ys1, eng.y_gev_at(lam));
      }
      row = eng.row(tracker.lambda());
      row.G = tracker.G();
      emit(row);
      ++res.steps;
      if (on_state) on_state(static_cast<int>(n + 1), s, tracker.lambda());
    }
    res.completed = true;
  } catch (const InstabilityError& e) {
    res.abort_reason = e.what();
    res.exit_code = 4;
  } catch (const BoundaryMassError& e) {
    res.abort_reason = e.what();
    res.exit_code = 4;
  }
  res.lambda_collapsed = tracker.collapsed();
  res.final_lambda = tracker.lambda();
  res.final_state = std::move(s);
  return res;
}

RunResult run_to_directory(const RunConfig& c) {
  const fs::path dir(c.output);
  fs::create_directories(dir / "snapshots");
  {
    std::ofstream cfg(dir / "config.txt", std::ios::trunc);
    cfg << to_text(c);
  }
  std::ofstream csv(dir / "diagnostics.csv", std::ios::trunc);
  write_csv_header(csv, SeriesMeta{c.d, c.nx, c.nv, c.lv, c.dt, c.gevrey});

  std::vector<std::string> snaps;
  auto save = [&](int step, const SimState& s, double lambda) {
    char name[64];
    std::snprintf(name, sizeof name, "step_%06d.gvns", step);
    Snapshot snap{s.t, c.gevrey.s, c.gevrey.sigma, c.gevrey.M, lambda, s.f, s.u};
    write_snapshot((dir / "snapshots" / name).string(), snap);
    const std::string rel = std::string("snapshots/") + name;
    if (snaps.empty() || snaps.back() != rel) snaps.push_back(rel);
  };
  const long nsteps = c.t_end > 0.0 ? std::lround(std::ceil(c.t_end / c.dt - 1e-9)) : 0;
  auto on_state = [&](int step, const SimState& s, double lambda) {
    const bool cadence = c.snapshot_every > 0 && step % c.snapshot_every == 0;
    if (step == 0 || cadence || step == nsteps) save(step, s, lambda);
  };
  auto on_row = [&](const DiagnosticsRow& r) {
    write_csv_row(csv, r);
    csv.flush();
  };

  RunResult res = simulate(c, on_row, on_state);
  if (!res.completed) save(res.steps, res.final_state, res.final_lambda);
  res.snapshots = snaps;

  nlohmann::ordered_json j;
  j["schema"] = kCsvSchemaVersion;
  j["completed"] = res.completed;
  j["abort_reason"] = res.abort_reason;
  j["exit_code"] = res.exit_code;
  j["steps"] = res.steps;
  j["t_final"] = res.final_state.t;
  j["lambda_final"] = res.final_lambda;
  j["lambda_collapsed"] = res.lambda_collapsed;
  j["warnings"] = res.warnings;
  j["diagnostics"] = "diagnostics.csv";
  j["snapshots"] = res.snapshots;
  std::ofstream out(dir / "run.json", std::ios::trunc);
  out << j.dump(2) << "\n";
  return res;
}

}  // namespace gvns
