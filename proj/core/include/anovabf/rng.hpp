#pragma once

#include <array>
#include <cstdint>

namespace anovabf {

/// Philox 4x64 counter-based generator, 10 rounds. Stateless apart from the
/// (key, counter) pair, so any stream position can be computed directly:
/// ideal for replicable parallel simulation. Raw output matches the widely
/// used reference implementation (the one numpy exposes), verified against
/// frozen vectors in the test suite.
class Philox4x64 {
 public:
  using Key = std::array<std::uint64_t, 2>;
  using Counter = std::array<std::uint64_t, 4>;

  explicit Philox4x64(Key key, Counter counter = {0, 0, 0, 0})
      : key_(key), counter_(counter) {}

  /// One 64-bit word; four per block, counter advances between blocks.
  std::uint64_t next_u64();

  /// Uniform double in (0, 1] from the top 53 bits (never 0, safe for log).
  double next_uniform_pos();

  /// Uniform double in [0, 1).
  double next_uniform();

  /// The block function itself, exposed for known-answer tests.
  static std::array<std::uint64_t, 4> block(Counter counter, Key key);

 private:
  void refill();

  Key key_;
  Counter counter_;
  std::array<std::uint64_t, 4> buffer_{};
  int buffered_ = 0;  // unread words remaining in buffer_
};

/// splitmix64 finalizer; full-avalanche 64-bit mix.
std::uint64_t splitmix64(std::uint64_t z);

/// Absorbs one value into a running seed. Chaining seed_mix over the master
/// seed and the condition parameters yields independent Philox keys per
/// stream, so replicate draws never depend on scheduling or loop order.
std::uint64_t seed_mix(std::uint64_t seed, std::uint64_t value);

/// Standard normal deviates via Box-Muller on top of Philox. Caches the
/// second deviate of each pair.
class NormalStream {
 public:
  explicit NormalStream(Philox4x64 gen) : gen_(gen) {}

  double next();

 private:
  Philox4x64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace anovabf
