// Configuration parsing, snapshot and CSV persistence, and run determinism.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "gvns/config.hpp"
#include "gvns/csv.hpp"
#include "gvns/errors.hpp"
#include "gvns/initial.hpp"
#include "gvns/run.hpp"
#include "gvns/snapshot.hpp"

using namespace gvns;
namespace fs = std::filesystem;

namespace {

const char* kBase = "d = 1\nNx = 8\nNv = 16\nLv = 4\ndt = 0.05\nt_end = 0.2\n";

fs::path tmp_dir(const std::string& name) {
  const char* env = std::getenv("GVNS_TEST_TMP");
  fs::path p = fs::path(env ? env : fs::temp_directory_path().string()) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

template <class F>
ConfigError config_error(F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("no ConfigError");
  return ConfigError("", "", -1);
}

template <class F>
SnapshotError snapshot_error(F&& f) {
  try {
    f();
  } catch (const SnapshotError& e) {
    return e;
  }
  FAIL("no SnapshotError");
  return SnapshotError("", 0);
}

Snapshot sample_snapshot() {
  const PhaseGrid g(2, 4, 6, 3.0);
  const auto s = small_data(g);
  Snapshot snap{0.25, 0.5, 4.0, 2, 0.4, s.f, s.u};
  return snap;
}

}  // namespace

TEST_CASE("config errors name the key and line") {
  auto e = config_error([] { parse_config(std::string(kBase) + "Nx = 16\n"); });
  CHECK(e.key == "Nx");
  CHECK(e.line == 7);

  e = config_error([] { parse_config(std::string(kBase) + "# note\nwobble = 3\n"); });
  CHECK(e.key == "wobble");
  CHECK(e.line == 8);

  e = config_error([] { parse_config("d = 1\nNx = 8\nNv = 16\nLv = 4\ndt = 0.05\n"); });
  CHECK(e.key == "t_end");
  CHECK(e.line == 0);

  e = config_error([] { parse_config(std::string(kBase) + "s = 1.5\n"); });
  CHECK(e.key == "s");

  e = config_error([] { parse_config(std::string(kBase) + "sigma = abc\n"); });
  CHECK(e.key == "sigma");

  e = config_error([] { parse_config(std::string(kBase) + "no equals sign\n"); });
  CHECK(e.line == 7);

  CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("canonical text round trip") {
  const auto c = parse_config(std::string(kBase) + "sigma = 3.5\nM = 3\ns = 1\nnoise = 0.01\nseed = 42\ninitial = heat_mode\n");
  const auto text = to_text(c);
  const auto back = parse_config(text);
  CHECK(to_text(back) == text);
  CHECK(back.gevrey.sigma == 3.5);
  CHECK(back.gevrey.M == 3);
  CHECK(back.seed == 42);
  CHECK(back.initial == "heat_mode");
}

TEST_CASE("CRC-32 check value") {
  const std::string s = "123456789";
  CHECK(crc32_bytes({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}) == 0xCBF43926u);
}

TEST_CASE("snapshot round trip is bit exact") {
  const auto snap = sample_snapshot();
  const auto bytes = encode_snapshot(snap);
  const std::size_t n = snap.f.values.size(), m = snap.u.coeffs.size();
  CHECK(bytes.size() == 84 + 8 * n + 4 + 16 * m + 4 + 4);
  const auto back = decode_snapshot(bytes);
  CHECK(back.t == snap.t);
  CHECK(back.lambda == snap.lambda);
  CHECK(back.M == 2);
  CHECK(back.f.values == snap.f.values);
  CHECK(back.u.coeffs == snap.u.coeffs);
  CHECK(encode_snapshot(back) == bytes);

  const auto p = tmp_dir("snap") / "a.gvns";
  write_snapshot(p.string(), snap);
  CHECK(encode_snapshot(read_snapshot(p.string())) == bytes);
}

TEST_CASE("snapshot corruption is located") {
  const auto bytes = encode_snapshot(sample_snapshot());

  auto bad = bytes;
  bad[100] ^= 0x01;  // inside the f section
  auto e = snapshot_error([&] { decode_snapshot(bad); });
  CHECK(e.offset == 84);
  CHECK(std::string(e.what()).find("CRC") != std::string::npos);

  bad = bytes;
  bad[30] ^= 0x10;  // header
  e = snapshot_error([&] { decode_snapshot(bad); });
  CHECK(e.offset == 0);

  bad = bytes;
  bad[4] += 1;  // version
  e = snapshot_error([&] { decode_snapshot(bad); });
  CHECK(std::string(e.what()).find("unsupported version") != std::string::npos);

  bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(decode_snapshot(bad), SnapshotError);

  bad.assign(bytes.begin(), bytes.end() - 10);
  e = snapshot_error([&] { decode_snapshot(bad); });
  CHECK(std::string(e.what()).find("truncated") != std::string::npos);

  bad = bytes;
  bad.push_back(0);
  CHECK_THROWS_AS(decode_snapshot(bad), SnapshotError);
}

TEST_CASE("diagnostics CSV round trip") {
  DiagnosticsSeries s;
  s.meta.d = 2;
  s.meta.nx = 16;
  s.meta.nv = 8;
  s.meta.lv = 5.7;
  s.meta.dt = 0.02;
  s.meta.params.sigma = 4.0;
  for (int i = 0; i < 3; ++i) {
    DiagnosticsRow r;
    r.t = 0.02 * i;
    r.f_gev = 1.0 / 3.0 + i;
    r.lambda = 0.1 * (3 - i);
    r.mean_u = {0.1, -0.2, 0.0};
    r.lambda_emp_f = i == 1 ? std::nan("") : 0.3;
    s.rows.push_back(r);
  }
  std::ostringstream out;
  write_csv_header(out, s.meta);
  for (const auto& r : s.rows) write_csv_row(out, r);
  std::istringstream in(out.str());
  const auto back = parse_csv(in);
  CHECK(back.meta.nx == 16);
  CHECK(back.meta.lv == 5.7);
  CHECK(back.meta.params.sigma == 4.0);
  REQUIRE(back.rows.size() == 3);
  CHECK(back.rows[2].f_gev == s.rows[2].f_gev);
  CHECK(back.rows[0].mean_u[1] == -0.2);
  CHECK(std::isnan(back.rows[1].lambda_emp_f));

  std::string text = out.str();
  const auto pos = text.find("schema=1");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 8, "schema=9");
  std::istringstream bad(text);
  CHECK_THROWS_AS(parse_csv(bad), std::runtime_error);
}

TEST_CASE("two runs of one config write identical files") {
  auto c = parse_config("d = 1\nNx = 8\nNv = 32\nLv = 6\ndt = 0.05\nt_end = 0.2\nnoise = 0.02\nseed = 5\nsnapshot_every = 2\n");
  const auto da = tmp_dir("det_a"), db = tmp_dir("det_b");
  c.output = da.string();
  const auto a = run_to_directory(c);
  c.output = db.string();
  const auto b = run_to_directory(c);
  REQUIRE(a.completed);
  REQUIRE(b.completed);
  CHECK(a.exit_code == 0);
  const auto csv = slurp(da / "diagnostics.csv");
  CHECK_FALSE(csv.empty());
  CHECK(csv == slurp(db / "diagnostics.csv"));
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  CHECK(a.snapshots.size() >= 2);
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    CHECK(fs::path(a.snapshots[i]).filename() == fs::path(b.snapshots[i]).filename());
    CHECK(slurp(da / a.snapshots[i]) == slurp(db / b.snapshots[i]));
  }
}

TEST_CASE("a distribution escaping the velocity box stops the run") {
  auto c = parse_config("d = 1\nNx = 8\nNv = 16\nLv = 2\ndt = 0.05\nt_end = 0.5\nthermal = 1.0\n");
  const auto r = simulate(c);
  CHECK_FALSE(r.completed);
  CHECK(r.exit_code == 4);
  CHECK_FALSE(r.abort_reason.empty());

  c.output = tmp_dir("escape").string();
  const auto rd = run_to_directory(c);
  CHECK(rd.exit_code == 4);
  CHECK(rd.snapshots.size() == 1);  // stopped at step 0: one file, listed once
}
