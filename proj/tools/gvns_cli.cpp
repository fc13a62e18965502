// gvns: run, verify, lab and report subcommands.
//
// Exit codes: 0 pass, 2 verification failure, 3 configuration or input error,
// 4 runtime instability.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gvns/config.hpp"
#include "gvns/csv.hpp"
#include "gvns/errors.hpp"
#include "gvns/lab.hpp"
#include "gvns/run.hpp"
#include "gvns/verifier.hpp"

namespace fs = std::filesystem;
using namespace gvns;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 2;
constexpr int kInput = 3;

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << s << "\n";
}

int cmd_run(const std::string& config, const std::string& output) {
  RunConfig c = load_config(config);
  if (!output.empty()) c.output = output;
  for (const auto& w : c.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  const RunResult r = run_to_directory(c);
  std::ifstream in(fs::path(c.output) / "run.json");
  std::cout << in.rdbuf();
  if (!r.completed) std::fprintf(stderr, "run stopped: %s\n", r.abort_reason.c_str());
  return r.exit_code;
}

nlohmann::ordered_json stability(const VerifyReport& a, const VerifyReport& b, double limit, bool& ok) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  auto add = [&](const BoundFit& x, const BoundFit& y) {
    const double c = relative_change(x, y);
    j[x.name] = c;
    if (!(c < limit)) ok = false;
  };
  add(a.C0, b.C0);
  add(a.upper.C1, b.upper.C1);
  add(a.upper.C2, b.upper.C2);
  add(a.lambda.C3, b.lambda.C3);
  if (a.analytic && b.analytic) {
    add(a.analytic->C4, b.analytic->C4);
    add(a.analytic->C5, b.analytic->C5);
  }
  return j;
}

int cmd_verify(const std::string& run, const std::string& compare, bool expect_decay, double limit) {
  VerifyOptions o;
  o.expect_decay = expect_decay;
  const auto s = read_csv((fs::path(run) / "diagnostics.csv").string());
  const VerifyReport rep = verify_all(s, o);
  auto j = nlohmann::ordered_json::parse(to_json(rep));
  bool ok = rep.pass;
  if (!compare.empty()) {
    const auto s2 = read_csv((fs::path(compare) / "diagnostics.csv").string());
    const VerifyReport rep2 = verify_all(s2, o);
    bool stable = true;
    j["compare"] = {{"run", compare}, {"pass", rep2.pass}, {"limit", limit}, {"relative_change", stability(rep, rep2, limit, stable)},
                    {"stable", stable}};
    ok = ok && rep2.pass && stable;
  }
  j["verdict"] = ok ? "pass" : "fail";
  write_text(fs::path(run) / "verify.json", j.dump(2));
  std::cout << j.dump(2) << "\n";
  return ok ? kPass : kFail;
}

int cmd_lab(const std::string& suite, const std::string& out, std::uint64_t seed) {
  const auto reports = run_lab_suite(suite, seed);
  fs::create_directories(out);
  nlohmann::ordered_json summary;
  summary["suite"] = suite;
  summary["seed"] = seed;
  bool ok = true;
  for (const auto& r : reports) {
    write_text(fs::path(out) / (r.key() + ".json"), to_json(r));
    summary["reports"].push_back({{"file", r.key() + ".json"},
                                  {"violations", r.violations},
                                  {"fitted_C", r.fitted_C},
                                  {"refinement_ratio", r.refinement_ratio},
                                  {"passed", r.passed()}});
    ok = ok && r.passed();
    std::printf("%-6s %-40s violations=%ld fitted_C=%.6g refinement=%.4f\n", r.passed() ? "PASS" : "FAIL", r.key().c_str(),
                r.violations, r.fitted_C, r.refinement_ratio);
  }
  summary["verdict"] = ok ? "pass" : "fail";
  write_text(fs::path(out) / "summary.json", summary.dump(2));
  return ok ? kPass : kFail;
}

int cmd_report(const std::string& run) {
  const fs::path dir(run);
  const auto csv = dir / "diagnostics.csv";
  const auto s = read_csv(csv.string());
  std::ostringstream o;
  o << "run directory   " << fs::absolute(dir).string() << "\n";
  o << "grid            d=" << s.meta.d << " Nx=" << s.meta.nx << " Nv=" << s.meta.nv << " Lv=" << s.meta.lv << " dt=" << s.meta.dt << "\n";
  o << "gevrey          s=" << s.meta.params.s << " sigma=" << s.meta.params.sigma << " M=" << s.meta.params.M
    << " lambda0=" << s.meta.params.lambda0 << "\n";
  if (fs::exists(dir / "run.json")) {
    std::ifstream in(dir / "run.json");
    const auto j = nlohmann::json::parse(in);
    o << "completed       " << (j.value("completed", false) ? "yes" : "no") << "\n";
    if (!j.value("abort_reason", std::string()).empty()) o << "abort reason    " << j["abort_reason"].get<std::string>() << "\n";
    o << "steps           " << j.value("steps", 0) << "\n";
  }
  if (!s.rows.empty()) {
    const auto& a = s.rows.front();
    const auto& b = s.rows.back();
    char buf[256];
    o << "\n              " << "         t=0      t=final\n";
    auto line = [&](const char* name, double x, double y) {
      std::snprintf(buf, sizeof buf, "%-14s %12.6g %12.6g\n", name, x, y);
      o << buf;
    };
    line("t", a.t, b.t);
    line("lambda", a.lambda, b.lambda);
    line("E", a.E, b.E);
    line("Emod", a.Emod, b.Emod);
    line("mass", a.mass, b.mass);
    line("|f|_sob", a.f_sob, b.f_sob);
    line("|u|_sob", a.u_sob, b.u_sob);
    line("|f|_gev", a.f_gev, b.f_gev);
    line("|u|_gev", a.u_gev, b.u_gev);
    line("lambda_emp_f", a.lambda_emp_f, b.lambda_emp_f);
    line("lambda_emp_u", a.lambda_emp_u, b.lambda_emp_u);
    line("boundary_mass", a.boundary_mass, b.boundary_mass);
  }
  o << "\ncsv             " << fs::absolute(csv).string() << "\n";
  if (fs::exists(dir / "verify.json")) o << "verify          " << fs::absolute(dir / "verify.json").string() << "\n";
  if (fs::exists(dir / "snapshots")) {
    std::vector<fs::path> snaps;
    for (const auto& e : fs::directory_iterator(dir / "snapshots")) snaps.push_back(e.path());
    std::sort(snaps.begin(), snaps.end());
    for (const auto& p : snaps) o << "snapshot        " << fs::absolute(p).string() << "\n";
  }
  std::cout << o.str();
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();
  CLI::App app{"Vlasov-Navier-Stokes pseudo-spectral simulator with Gevrey diagnostics"};
  app.require_subcommand(1);

  std::string config, output, run_dir, compare, suite = "all", out_dir = "lab";
  bool expect_decay = false;
  double limit = 0.1;
  std::uint64_t seed = 1;

  auto* run = app.add_subcommand("run", "simulate a configuration");
  run->add_option("--config", config, "config file")->required();
  run->add_option("--output", output, "output directory (overrides the config)");

  auto* verify = app.add_subcommand("verify", "check the a-priori bounds on a run");
  verify->add_option("--run", run_dir, "run directory")->required();
  verify->add_option("--compare", compare, "second run (e.g. halved dt) for constant stability");
  verify->add_option("--limit", limit, "allowed relative change of fitted constants");
  verify->add_flag("--expect-decay", expect_decay, "require modulated-energy decay");

  auto* lab = app.add_subcommand("lab", "run inequality-lab suites");
  lab->add_option("--suite", suite, "triangle, young, moments, commutator, rho_u or all");
  lab->add_option("--out", out_dir, "report directory");
  lab->add_option("--seed", seed, "ensemble seed");

  auto* report = app.add_subcommand("report", "summarize a run");
  report->add_option("--run", run_dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*run) return cmd_run(config, output);
    if (*verify) return cmd_verify(run_dir, compare, expect_decay, limit);
    if (*lab) return cmd_lab(suite, out_dir, seed);
    if (*report) return cmd_report(run_dir);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kInput;
  } catch (const SnapshotError& e) {
    std::fprintf(stderr, "snapshot error at offset %zu: %s\n", e.offset, e.what());
    return kInput;
  } catch (const HypothesisError& e) {
    std::fprintf(stderr, "hypothesis error: %s\n", e.what());
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInput;
  }
  return kInput;
}
