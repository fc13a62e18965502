#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gvns/config.hpp"
#include "gvns/diagnostics.hpp"

namespace gvns {

struct RunResult {
  DiagnosticsSeries series;
  SimState final_state;
  double final_lambda = 0.0;
  int steps = 0;
  bool completed = false;
  bool lambda_collapsed = false;
  std::string abort_reason;  // empty when completed
  int exit_code = 0;         // 0 ok, 4 runtime instability or support escape
  std::vector<std::string> warnings;
  std::vector<std::string> snapshots;  // files written by run_to_directory
};

// Initial (f, u) for a config: a named preset, optionally with the seeded
// random fluid perturbation, or a snapshot for "file:<path>".
SimState make_initial_state(const RunConfig& c);

using RowCallback = std::function<void(const DiagnosticsRow&)>;
using StateCallback = std::function<void(int step, const SimState&, double lambda)>;

// Steps the system to t_end, evaluating a diagnostics row after every step and
// advancing lambda(t). Instability and boundary-mass escape stop the run and
// are reported in the result rather than thrown.
RunResult simulate(const RunConfig& c, const RowCallback& on_row = {}, const StateCallback& on_state = {});

// simulate() plus files in c.output: diagnostics.csv (streamed), config.txt,
// snapshots/step_NNNNNN.gvns and run.json.
RunResult run_to_directory(const RunConfig& c);

// Reads GVNS_THREADS and applies it to the thread pool, if any.
void apply_thread_env();

}  // namespace gvns
