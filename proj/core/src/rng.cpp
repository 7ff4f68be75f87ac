#include "anovabf/rng.hpp"

#include <cmath>
#include <numbers>

namespace anovabf {
namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  const unsigned __int128 product =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  hi = static_cast<std::uint64_t>(product >> 64);
  lo = static_cast<std::uint64_t>(product);
}

inline std::array<std::uint64_t, 4> philox_round(
    const std::array<std::uint64_t, 4>& ctr,
    const std::array<std::uint64_t, 2>& key) {
  std::uint64_t hi0, lo0, hi1, lo1;
  mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
  mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
  return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<std::uint64_t, 4> Philox4x64::block(Counter counter, Key key) {
  auto state = counter;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    state = philox_round(state, key);
  }
  return state;
}

void Philox4x64::refill() {
  // The counter advances before each block, matching the reference
  // implementation's output sequence. Little-endian 256-bit increment.
  for (auto& word : counter_) {
    if (++word != 0) break;
  }
  buffer_ = block(counter_, key_);
  buffered_ = 4;
}

std::uint64_t Philox4x64::next_u64() {
  if (buffered_ == 0) refill();
  return buffer_[static_cast<std::size_t>(4 - buffered_--)];
}

double Philox4x64::next_uniform_pos() {
  const std::uint64_t bits = next_u64() >> 11;
  return static_cast<double>(bits + 1) * 0x1.0p-53;
}

double Philox4x64::next_uniform() {
  const std::uint64_t bits = next_u64() >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t seed_mix(std::uint64_t seed, std::uint64_t value) {
  return splitmix64(seed ^ (splitmix64(value) + 0x9E3779B97F4A7C15ULL +
                            (seed << 6) + (seed >> 2)));
}

double NormalStream::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = gen_.next_uniform_pos();
  const double u2 = gen_.next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

}  // namespace anovabf
