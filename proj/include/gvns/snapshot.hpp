#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gvns/fields.hpp"

namespace gvns {

// Binary layout, all little-endian:
//
//   offset  size  field
//   0       4     magic "GVNS"
//   4       4     u32 version (kSnapshotVersion)
//   8       72    header: i64 d, i64 Nx, i64 Nv, f64 Lv, f64 t, f64 s,
//                 f64 sigma, i64 M, f64 lambda
//   80      4     u32 CRC32 of bytes [0, 80)
//   84      8 n   f64 f(x_i, v_j), n = Nx^d Nv^d, flat index j * Nx^d + i
//                 with axis 0 fastest inside each multi-index
//           4     u32 CRC32 of the f section
//           16 m  (re, im) f64 pairs of u^, m = d Nx^d, component-major,
//                 FFT-ordered wavenumbers with axis 0 fastest
//           4     u32 CRC32 of the u section
//           4     u32 CRC32 of every preceding byte
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct Snapshot {
  double t = 0.0;
  double s = 0.0;
  double sigma = 0.0;
  int M = 0;
  double lambda = 0.0;
  DistPhysical f;
  FluidSpectral u;
};

std::vector<std::uint8_t> encode_snapshot(const Snapshot& snap);
// Throws SnapshotError with the byte offset of the failing section.
Snapshot decode_snapshot(std::span<const std::uint8_t> bytes);

void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path);

std::uint32_t crc32_bytes(std::span<const std::uint8_t> bytes);

}  // namespace gvns
