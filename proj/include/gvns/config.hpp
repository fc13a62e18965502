#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gvns/initial.hpp"
#include "gvns/norms.hpp"
#include "gvns/radius.hpp"
#include "gvns/solver.hpp"

namespace gvns {

// Plain "key = value" text, one pair per line, '#' starts a comment.
// Required: d, Nx, Nv, Lv, dt, t_end. Everything else has a default.
struct RunConfig {
  int d = 1;
  int nx = 0;
  int nv = 0;
  double lv = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  GevreyParams gevrey;

  // Preset name (zero, taylor_green, heat_mode, free_streaming, small_data)
  // or "file:<path>" to start from a snapshot.
  std::string initial = "small_data";
  InitialParams preset;
  double noise = 0.0;  // amplitude of a seeded random low-mode fluid perturbation
  std::uint64_t seed = 1;

  SolverOptions solver;
  CoefficientModel lambda_model = CoefficientModel::Hold;  // Linear = fixed-point update

  int snapshot_every = 0;  // steps between snapshots; 0 writes the final state only
  std::string output = "run";

  std::vector<std::string> warnings;  // hypothesis notes, never fatal
};

// Throws ConfigError naming the key and line (line 0 for a missing key).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const RunConfig& c);

}  // namespace gvns
