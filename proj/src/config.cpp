#include "gvns/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gvns/errors.hpp"

namespace gvns {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line;
};

double as_double(const std::string& key, const Entry& e) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(e.value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != e.value.size() || !std::isfinite(v)) {
    throw ConfigError(key + ": expected a finite number, got '" + e.value + "' (line " + std::to_string(e.line) + ")", key, e.line);
  }
  return v;
}

long long as_int(const std::string& key, const Entry& e) {
  long long v = 0;
  const auto* first = e.value.data();
  const auto* last = first + e.value.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last) {
    throw ConfigError(key + ": expected an integer, got '" + e.value + "' (line " + std::to_string(e.line) + ")", key, e.line);
  }
  return v;
}

bool as_bool(const std::string& key, const Entry& e) {
  if (e.value == "true" || e.value == "1" || e.value == "on") return true;
  if (e.value == "false" || e.value == "0" || e.value == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + e.value + "' (line " + std::to_string(e.line) + ")", key, e.line);
}

[[noreturn]] void out_of_range(const std::string& key, const Entry& e, const std::string& why) {
  throw ConfigError(key + ": " + why + " (line " + std::to_string(e.line) + ")", key, e.line);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> kv;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": expected key = value", "", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line) + ": empty key", "", line);
    auto [it, fresh] = kv.emplace(key, Entry{value, line});
    if (!fresh) {
      throw ConfigError("duplicate key '" + key + "' on lines " + std::to_string(it->second.line) + " and " + std::to_string(line), key,
                        line);
    }
  }

  RunConfig c;
  std::map<std::string, std::function<void(const std::string&, const Entry&)>> setters = {
      {"d", [&](auto& k, auto& e) { c.d = static_cast<int>(as_int(k, e)); if (c.d < 1 || c.d > 2) out_of_range(k, e, "d must be 1 or 2"); }},
      {"Nx", [&](auto& k, auto& e) { c.nx = static_cast<int>(as_int(k, e)); if (c.nx < 4 || c.nx % 2) out_of_range(k, e, "Nx must be even and >= 4"); }},
      {"Nv", [&](auto& k, auto& e) { c.nv = static_cast<int>(as_int(k, e)); if (c.nv < 4 || c.nv % 2) out_of_range(k, e, "Nv must be even and >= 4"); }},
      {"Lv", [&](auto& k, auto& e) { c.lv = as_double(k, e); if (c.lv <= 0) out_of_range(k, e, "Lv must be positive"); }},
      {"dt", [&](auto& k, auto& e) { c.dt = as_double(k, e); if (c.dt <= 0) out_of_range(k, e, "dt must be positive"); }},
      {"t_end", [&](auto& k, auto& e) { c.t_end = as_double(k, e); if (c.t_end < 0) out_of_range(k, e, "t_end must be non-negative"); }},
      {"s", [&](auto& k, auto& e) { c.gevrey.s = as_double(k, e); if (!(c.gevrey.s > 0 && c.gevrey.s <= 1)) out_of_range(k, e, "s must lie in (0,1]"); }},
      {"sigma", [&](auto& k, auto& e) { c.gevrey.sigma = as_double(k, e); if (c.gevrey.sigma <= 0) out_of_range(k, e, "sigma must be positive"); }},
      {"M", [&](auto& k, auto& e) { c.gevrey.M = static_cast<int>(as_int(k, e)); if (c.gevrey.M < 0) out_of_range(k, e, "M must be non-negative"); }},
      {"lambda0", [&](auto& k, auto& e) { c.gevrey.lambda0 = as_double(k, e); if (c.gevrey.lambda0 <= 0) out_of_range(k, e, "lambda0 must be positive"); }},
      {"initial", [&](auto&, auto& e) { c.initial = e.value; }},
      {"amplitude", [&](auto& k, auto& e) { c.preset.amplitude = as_double(k, e); }},
      {"density", [&](auto& k, auto& e) { c.preset.density = as_double(k, e); if (c.preset.density < 0) out_of_range(k, e, "density must be non-negative"); }},
      {"perturbation", [&](auto& k, auto& e) { c.preset.perturbation = as_double(k, e); }},
      {"tail_width", [&](auto& k, auto& e) { c.preset.tail_width = as_double(k, e); if (c.preset.tail_width < 0) out_of_range(k, e, "tail_width must be non-negative"); }},
      {"thermal", [&](auto& k, auto& e) { c.preset.thermal = as_double(k, e); if (c.preset.thermal <= 0) out_of_range(k, e, "thermal must be positive"); }},
      {"drift", [&](auto& k, auto& e) { c.preset.drift = as_double(k, e); }},
      {"flow", [&](auto& k, auto& e) { c.preset.flow = as_double(k, e); }},
      {"mean_flow", [&](auto& k, auto& e) { c.preset.mean_flow = as_double(k, e); }},
      {"noise", [&](auto& k, auto& e) { c.noise = as_double(k, e); if (c.noise < 0) out_of_range(k, e, "noise must be non-negative"); }},
      {"seed", [&](auto& k, auto& e) { const auto v = as_int(k, e); if (v < 0) out_of_range(k, e, "seed must be non-negative"); c.seed = static_cast<std::uint64_t>(v); }},
      {"vlasov_force", [&](auto& k, auto& e) { c.solver.coupling.vlasov_force = as_bool(k, e); }},
      {"brinkman", [&](auto& k, auto& e) { c.solver.coupling.brinkman = as_bool(k, e); }},
      {"ns_nonlinearity", [&](auto& k, auto& e) { c.solver.coupling.ns_nonlinearity = as_bool(k, e); }},
      {"interpolation", [&](auto& k, auto& e) {
         if (e.value == "spectral") c.solver.interpolation = VelocityInterpolation::Spectral;
         else if (e.value == "cubic") c.solver.interpolation = VelocityInterpolation::Cubic;
         else out_of_range(k, e, "interpolation must be spectral or cubic");
       }},
      {"ns_integrator", [&](auto& k, auto& e) {
         if (e.value == "rk4") c.solver.ns_integrator = NsIntegrator::RK4;
         else if (e.value == "rk2") c.solver.ns_integrator = NsIntegrator::RK2;
         else out_of_range(k, e, "ns_integrator must be rk2 or rk4");
       }},
      {"instability_factor", [&](auto& k, auto& e) { c.solver.instability_factor = as_double(k, e); if (c.solver.instability_factor <= 1) out_of_range(k, e, "instability_factor must exceed 1"); }},
      {"boundary_mass_limit", [&](auto& k, auto& e) { c.solver.boundary_mass_limit = as_double(k, e); if (c.solver.boundary_mass_limit <= 0) out_of_range(k, e, "boundary_mass_limit must be positive"); }},
      {"lambda_fixed_point", [&](auto& k, auto& e) { c.lambda_model = as_bool(k, e) ? CoefficientModel::Linear : CoefficientModel::Hold; }},
      {"snapshot_every", [&](auto& k, auto& e) { c.snapshot_every = static_cast<int>(as_int(k, e)); if (c.snapshot_every < 0) out_of_range(k, e, "snapshot_every must be >= 0"); }},
      {"output", [&](auto&, auto& e) { c.output = e.value; }},
  };

  for (const auto& [key, entry] : kv) {
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("unknown key '" + key + "' (line " + std::to_string(entry.line) + ")", key, entry.line);
    }
    it->second(key, entry);
  }
  for (const char* req : {"d", "Nx", "Nv", "Lv", "dt", "t_end"}) {
    if (!kv.count(req)) throw ConfigError(std::string("missing required key '") + req + "'", req, 0);
  }

  const bool preset_ok = c.initial == "zero" || c.initial == "taylor_green" || c.initial == "heat_mode" ||
                         c.initial == "free_streaming" || c.initial == "small_data" || c.initial.rfind("file:", 0) == 0;
  if (!preset_ok) {
    const auto& e = kv.at("initial");
    out_of_range("initial", e, "unknown preset '" + e.value + "'");
  }
  if (c.initial == "taylor_green" && c.d != 2) {
    const auto& e = kv.at("initial");
    out_of_range("initial", e, "taylor_green needs d = 2");
  }
  c.warnings = c.gevrey.hypothesis_warnings(c.d);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", "", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_text(const RunConfig& c) {
  std::ostringstream o;
  auto b = [](bool v) { return v ? "true" : "false"; };
  o << "d = " << c.d << "\n"
    << "Nx = " << c.nx << "\n"
    << "Nv = " << c.nv << "\n"
    << "Lv = " << fmt(c.lv) << "\n"
    << "dt = " << fmt(c.dt) << "\n"
    << "t_end = " << fmt(c.t_end) << "\n"
    << "s = " << fmt(c.gevrey.s) << "\n"
    << "sigma = " << fmt(c.gevrey.sigma) << "\n"
    << "M = " << c.gevrey.M << "\n"
    << "lambda0 = " << fmt(c.gevrey.lambda0) << "\n"
    << "initial = " << c.initial << "\n"
    << "amplitude = " << fmt(c.preset.amplitude) << "\n"
    << "density = " << fmt(c.preset.density) << "\n"
    << "perturbation = " << fmt(c.preset.perturbation) << "\n"
    << "thermal = " << fmt(c.preset.thermal) << "\n"
    << "tail_width = " << fmt(c.preset.tail_width) << "\n"
    << "drift = " << fmt(c.preset.drift) << "\n"
    << "flow = " << fmt(c.preset.flow) << "\n"
    << "mean_flow = " << fmt(c.preset.mean_flow) << "\n"
    << "noise = " << fmt(c.noise) << "\n"
    << "seed = " << c.seed << "\n"
    << "vlasov_force = " << b(c.solver.coupling.vlasov_force) << "\n"
    << "brinkman = " << b(c.solver.coupling.brinkman) << "\n"
    << "ns_nonlinearity = " << b(c.solver.coupling.ns_nonlinearity) << "\n"
    << "interpolation = " << (c.solver.interpolation == VelocityInterpolation::Spectral ? "spectral" : "cubic") << "\n"
    << "ns_integrator = " << (c.solver.ns_integrator == NsIntegrator::RK4 ? "rk4" : "rk2") << "\n"
    << "instability_factor = " << fmt(c.solver.instability_factor) << "\n"
    << "boundary_mass_limit = " << fmt(c.solver.boundary_mass_limit) << "\n"
    << "lambda_fixed_point = " << b(c.lambda_model == CoefficientModel::Linear) << "\n"
    << "snapshot_every = " << c.snapshot_every << "\n"
    << "output = " << c.output << "\n";
  return o.str();
}

}  // namespace gvns
