#include "gvns/snapshot.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "gvns/errors.hpp"

namespace gvns {

static_assert(std::endian::native == std::endian::little, "snapshot codec assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'G', 'V', 'N', 'S'};
constexpr std::size_t kHeaderEnd = 80;

class Writer {
 public:
  template <class T>
  void put(T v) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(&v);
    buf.insert(buf.end(), p, p + sizeof(T));
  }
  void crc_from(std::size_t start) { put(crc32_bytes(std::span(buf).subspan(start))); }
  std::vector<std::uint8_t> buf;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : bytes(b) {}
  template <class T>
  T get() {
    if (pos + sizeof(T) > bytes.size()) throw SnapshotError("snapshot truncated at byte " + std::to_string(pos), pos);
    T v;
    std::memcpy(&v, bytes.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
  }
  void need(std::size_t n) const {
    if (pos + n > bytes.size()) throw SnapshotError("snapshot truncated at byte " + std::to_string(bytes.size()), bytes.size());
  }
  void check_crc(std::size_t start, const char* section) {
    const std::uint32_t want = crc32_bytes(bytes.subspan(start, pos - start));
    if (get<std::uint32_t>() != want) {
      throw SnapshotError(std::string("CRC mismatch in ") + section + " section starting at byte " + std::to_string(start), start);
    }
  }
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
};

}  // namespace

std::uint32_t crc32_bytes(std::span<const std::uint8_t> bytes) {
  uLong c = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large spans in pieces.
  std::size_t off = 0;
  while (off < bytes.size()) {
    const std::size_t n = std::min<std::size_t>(bytes.size() - off, 1u << 30);
    c = crc32(c, bytes.data() + off, static_cast<uInt>(n));
    off += n;
  }
  return static_cast<std::uint32_t>(c);
}

std::vector<std::uint8_t> encode_snapshot(const Snapshot& snap) {
  const auto& g = snap.f.grid;
  if (!(snap.u.grid == g)) throw std::invalid_argument("encode_snapshot: f and u grids differ");
  Writer w;
  w.buf.reserve(kHeaderEnd + 16 + 8 * snap.f.values.size() + 16 * snap.u.coeffs.size());
  w.buf.insert(w.buf.end(), kMagic, kMagic + 4);
  w.put<std::uint32_t>(kSnapshotVersion);
  w.put<std::int64_t>(g.d());
  w.put<std::int64_t>(g.nx());
  w.put<std::int64_t>(g.nv());
  w.put<double>(g.lv());
  w.put<double>(snap.t);
  w.put<double>(snap.s);
  w.put<double>(snap.sigma);
  w.put<std::int64_t>(snap.M);
  w.put<double>(snap.lambda);
  w.crc_from(0);

  std::size_t start = w.buf.size();
  for (double v : snap.f.values) w.put(v);
  w.crc_from(start);

  start = w.buf.size();
  for (const auto& z : snap.u.coeffs) {
    w.put(z.real());
    w.put(z.imag());
  }
  w.crc_from(start);
  w.crc_from(0);
  return std::move(w.buf);
}

Snapshot decode_snapshot(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.need(4);
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw SnapshotError("not a GVNS snapshot (bad magic)", 0);
  r.pos = 4;
  const auto version = r.get<std::uint32_t>();
  if (version != kSnapshotVersion) {
    throw SnapshotError("unsupported version " + std::to_string(version) + " (expected " + std::to_string(kSnapshotVersion) + ")", 4);
  }
  const auto d = r.get<std::int64_t>();
  const auto nx = r.get<std::int64_t>();
  const auto nv = r.get<std::int64_t>();
  const double lv = r.get<double>();
  Snapshot s;
  s.t = r.get<double>();
  s.s = r.get<double>();
  s.sigma = r.get<double>();
  s.M = static_cast<int>(r.get<std::int64_t>());
  s.lambda = r.get<double>();
  r.check_crc(0, "header");

  PhaseGrid g;
  try {
    g = PhaseGrid(static_cast<int>(d), static_cast<int>(nx), static_cast<int>(nv), lv);
  } catch (const std::invalid_argument& e) {
    throw SnapshotError(std::string("invalid grid in header: ") + e.what(), 8);
  }
  s.f = DistPhysical(g);
  s.u = FluidSpectral(g);

  std::size_t start = r.pos;
  r.need(8 * s.f.values.size());
  std::memcpy(s.f.values.data(), bytes.data() + r.pos, 8 * s.f.values.size());
  r.pos += 8 * s.f.values.size();
  r.check_crc(start, "f");

  start = r.pos;
  r.need(16 * s.u.coeffs.size());
  for (auto& z : s.u.coeffs) {
    const double re = r.get<double>();
    const double im = r.get<double>();
    z = cplx(re, im);
  }
  r.check_crc(start, "u");
  r.check_crc(0, "file");
  if (r.pos != bytes.size()) throw SnapshotError("trailing bytes after snapshot at byte " + std::to_string(r.pos), r.pos);
  return s;
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
  const auto bytes = encode_snapshot(snap);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError("cannot open '" + path + "' for writing", 0);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw SnapshotError("write failed for '" + path + "'", 0);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open '" + path + "'", 0);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

}  // namespace gvns
