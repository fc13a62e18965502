#include "gvns/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gvns {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_num(const std::string& s, int line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::runtime_error("diagnostics csv line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

void write_csv_header(std::ostream& out, const SeriesMeta& m) {
  out << "# gvns-diagnostics schema=" << kCsvSchemaVersion << " d=" << m.d << " Nx=" << m.nx << " Nv=" << m.nv << " Lv=" << num(m.lv)
      << " dt=" << num(m.dt) << " s=" << num(m.params.s) << " sigma=" << num(m.params.sigma) << " M=" << m.params.M
      << " lambda0=" << num(m.params.lambda0) << "\n";
  const auto& cols = diagnostics_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].name;
  out << "\n";
}

void write_csv_row(std::ostream& out, const DiagnosticsRow& r) {
  const auto& cols = diagnostics_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << num(column_value(r, cols[i]));
  out << "\n";
}

void write_csv(const std::string& path, const DiagnosticsSeries& s) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv_header(out, s.meta);
  for (const auto& r : s.rows) write_csv_row(out, r);
}

DiagnosticsSeries parse_csv(std::istream& in) {
  DiagnosticsSeries s;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# gvns-diagnostics", 0) != 0) throw std::runtime_error("diagnostics csv: missing metadata line");
  std::map<std::string, std::string> kv;
  for (const auto& tok : split(line.substr(2), ' ')) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  auto get = [&](const char* k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw std::runtime_error(std::string("diagnostics csv: metadata lacks '") + k + "'");
    return it->second;
  };
  if (std::stoi(get("schema")) != kCsvSchemaVersion) throw std::runtime_error("diagnostics csv: unsupported schema " + get("schema"));
  s.meta.d = std::stoi(get("d"));
  s.meta.nx = std::stoi(get("Nx"));
  s.meta.nv = std::stoi(get("Nv"));
  s.meta.lv = parse_num(get("Lv"), 1);
  s.meta.dt = parse_num(get("dt"), 1);
  s.meta.params.s = parse_num(get("s"), 1);
  s.meta.params.sigma = parse_num(get("sigma"), 1);
  s.meta.params.M = std::stoi(get("M"));
  s.meta.params.lambda0 = parse_num(get("lambda0"), 1);

  const auto& cols = diagnostics_columns();
  if (!std::getline(in, line)) throw std::runtime_error("diagnostics csv: missing header");
  const auto names = split(line, ',');
  if (names.size() != cols.size()) throw std::runtime_error("diagnostics csv: column count differs from schema");
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (names[i] != cols[i].name) throw std::runtime_error("diagnostics csv: column " + std::to_string(i) + " is '" + names[i] + "'");
  }
  int ln = 2;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != cols.size()) throw std::runtime_error("diagnostics csv line " + std::to_string(ln) + ": wrong number of cells");
    DiagnosticsRow r;
    for (std::size_t i = 0; i < cols.size(); ++i) set_column_value(r, cols[i], parse_num(cells[i], ln));
    s.rows.push_back(r);
  }
  return s;
}

DiagnosticsSeries read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_csv(in);
}

}  // namespace gvns
