#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gvns {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input array contained a NaN or infinity.
struct NonFiniteInput : Error {
  std::size_t index;
  NonFiniteInput(const std::string& what, std::size_t idx) : Error(what), index(idx) {}
};

// exp(lambda <k,eta>^s) left the double range.
struct GevreyOverflow : Error {
  double log_weight;
  GevreyOverflow(const std::string& what, double lw) : Error(what), log_weight(lw) {}
};

struct ConfigError : Error {
  std::string key;
  int line;
  ConfigError(const std::string& what, std::string k, int ln) : Error(what), key(std::move(k)), line(ln) {}
};

struct SnapshotError : Error {
  std::size_t offset;
  SnapshotError(const std::string& what, std::size_t off) : Error(what), offset(off) {}
};

struct InstabilityError : Error {
  double t;
  InstabilityError(const std::string& what, double time) : Error(what), t(time) {}
};

// Support left the truncated velocity box.
struct BoundaryMassError : Error {
  double fraction;
  BoundaryMassError(const std::string& what, double frac) : Error(what), fraction(frac) {}
};

struct HypothesisError : Error {
  using Error::Error;
};

struct Underresolved : Error {
  int shells;
  Underresolved(const std::string& what, int n) : Error(what), shells(n) {}
};

}  // namespace gvns
