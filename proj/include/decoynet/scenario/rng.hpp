#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace decoynet {

/// Seeded generator with a draw counter. The counter is part of the event log
/// contract: replay must consume exactly the same number of raw draws.
///
/// Distributions are implemented here rather than through <random>'s
/// distribution templates, whose output is implementation-defined. Logs stay
/// replayable across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() {
    ++draws_;
    return engine_();
  }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  /// Uniform on [lo, hi], inclusive.
  int uniform_int(int lo, int hi);

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

/// Deterministic child seed for a named stream. Used to give placement,
/// per-machine content, and per-round layout independent generators.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0);

}  // namespace decoynet
