#pragma once

#include <cstdint>

namespace quantchar {

struct Seed {
  std::uint64_t value = 0;

  friend bool operator==(Seed, Seed) = default;
};

/// Derives an independent seed for a sub-task (restart, batch, stream).
Seed derive_seed(Seed seed, std::uint64_t tag);

/// Counter-based generator: the stream is a pure function of (seed, index),
/// so sample i can be regenerated without touching samples 0..i-1.
class CounterRng {
 public:
  CounterRng(Seed seed, std::uint64_t index);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace quantchar
