#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "gvns/config.hpp"
#include "gvns/csv.hpp"
#include "gvns/errors.hpp"
#include "gvns/lab.hpp"
#include "gvns/norms.hpp"
#include "gvns/radius.hpp"
#include "gvns/run.hpp"
#include "gvns/snapshot.hpp"
#include "gvns/verifier.hpp"

namespace py = pybind11;
using namespace gvns;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vec(const Array& a) { return {a.data(), a.data() + a.size()}; }

Array to_array(const std::vector<double>& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::memcpy(out.mutable_data(), v.data(), v.size() * sizeof(double));
  return out;
}

// Column name -> array, in CSV column order.
py::dict columns(const DiagnosticsSeries& s) {
  py::dict out;
  for (const auto& c : diagnostics_columns()) {
    std::vector<double> v;
    v.reserve(s.rows.size());
    for (const auto& r : s.rows) v.push_back(column_value(r, c));
    out[c.name] = to_array(v);
  }
  return out;
}

py::dict run_result(const RunResult& r) {
  py::dict d;
  d["completed"] = r.completed;
  d["exit_code"] = r.exit_code;
  d["abort_reason"] = r.abort_reason;
  d["steps"] = r.steps;
  d["t"] = r.final_state.t;
  d["lambda"] = r.final_lambda;
  d["warnings"] = r.warnings;
  d["snapshots"] = r.snapshots;
  d["columns"] = columns(r.series);
  return d;
}

}  // namespace

PYBIND11_MODULE(_gvns, m) {
  m.doc() = "Vlasov-Navier-Stokes simulator with Gevrey-regularity diagnostics.";

  auto base = py::register_exception<Error>(m, "GvnsError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<SnapshotError>(m, "SnapshotError", base.ptr());
  py::register_exception<HypothesisError>(m, "HypothesisError", base.ptr());
  py::register_exception<Underresolved>(m, "Underresolved", base.ptr());
  py::register_exception<GevreyOverflow>(m, "GevreyOverflow", base.ptr());

  m.def("canonical_config", [](const std::string& text) { return to_text(parse_config(text)); }, py::arg("text"),
        "Parse config text and return its canonical form.");

  m.def(
      "simulate",
      [](const std::string& text) {
        const RunConfig c = parse_config(text);
        RunResult r;
        {
          py::gil_scoped_release nogil;
          r = simulate(c);
        }
        return run_result(r);
      },
      py::arg("config_text"), "Run a config in memory; returns the diagnostics columns and the run status.");

  m.def(
      "run",
      [](const std::string& text, const std::string& output) {
        RunConfig c = parse_config(text);
        c.output = output;
        RunResult r;
        {
          py::gil_scoped_release nogil;
          r = run_to_directory(c);
        }
        return run_result(r);
      },
      py::arg("config_text"), py::arg("output"), "Run a config and write its output directory.");

  m.def("read_diagnostics", [](const std::string& path) { return columns(read_csv(path)); }, py::arg("path"));

  m.def(
      "verify_json",
      [](const std::string& csv_path, bool expect_decay) {
        VerifyOptions o;
        o.expect_decay = expect_decay;
        return to_json(verify_all(read_csv(csv_path), o));
      },
      py::arg("csv_path"), py::arg("expect_decay") = false);

  m.def(
      "lab_json",
      [](const std::string& suite, std::uint64_t seed) {
        std::vector<std::string> out;
        for (const auto& r : run_lab_suite(suite, seed)) out.push_back(to_json(r));
        return out;
      },
      py::arg("suite"), py::arg("seed") = 1);
  m.def("lab_suites", &lab_suites);

  m.def(
      "estimate_empirical_radius",
      [](const Array& bracket, const Array& amplitude, double sigma, double s) {
        const auto f = estimate_empirical_radius(to_vec(bracket), to_vec(amplitude), sigma, s);
        py::dict d;
        d["lambda_emp"] = f.lambda_emp;
        d["intercept"] = f.intercept;
        d["residual"] = f.residual;
        d["r_squared"] = f.r_squared;
        d["shells"] = f.shells;
        d["poor_fit"] = f.poor_fit;
        return d;
      },
      py::arg("bracket"), py::arg("amplitude"), py::arg("sigma"), py::arg("s"));

  m.def(
      "integrate_lambda",
      [](const Array& t, const Array& y_sob, const Array& y_gev, double lambda0) {
        const auto r = integrate_lambda(to_vec(t), to_vec(y_sob), to_vec(y_gev), lambda0);
        return py::make_tuple(to_array(r.lambda), to_array(r.G), r.collapsed);
      },
      py::arg("t"), py::arg("y_sob"), py::arg("y_gev"), py::arg("lambda0"));
  m.def("lambda_lower_bound", &lambda_lower_bound, py::arg("t"), py::arg("int_sob"), py::arg("lambda0"), py::arg("C3"));

  m.def(
      "gevrey_norm_f",
      [](const Array& f, int d, int nx, int nv, double lv, double lambda, double sigma, int M, double s) {
        DistPhysical df(PhaseGrid(d, nx, nv, lv));
        if (static_cast<std::size_t>(f.size()) != df.values.size()) throw std::invalid_argument("f has the wrong number of samples");
        df.values = to_vec(f);
        return gevrey_norm_f(df, lambda, sigma, M, s);
      },
      py::arg("f"), py::arg("d"), py::arg("nx"), py::arg("nv"), py::arg("lv"), py::arg("lam"), py::arg("sigma"), py::arg("M"),
      py::arg("s"), "Phase-space Gevrey norm of samples f (velocity-major, axis 0 fastest).");

  m.def(
      "read_snapshot",
      [](const std::string& path) {
        const Snapshot s = read_snapshot(path);
        py::dict d;
        d["t"] = s.t;
        d["s"] = s.s;
        d["sigma"] = s.sigma;
        d["M"] = s.M;
        d["lambda"] = s.lambda;
        d["d"] = s.f.grid.d();
        d["nx"] = s.f.grid.nx();
        d["nv"] = s.f.grid.nv();
        d["lv"] = s.f.grid.lv();
        d["f"] = to_array(s.f.values);
        py::array_t<std::complex<double>> u(static_cast<py::ssize_t>(s.u.coeffs.size()));
        std::memcpy(u.mutable_data(), s.u.coeffs.data(), s.u.coeffs.size() * sizeof(std::complex<double>));
        d["u_hat"] = u;
        return d;
      },
      py::arg("path"));

  m.def(
      "crc32",
      [](const py::bytes& b) {
        const std::string s = b;
        return crc32_bytes({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
      },
      py::arg("data"));
}
