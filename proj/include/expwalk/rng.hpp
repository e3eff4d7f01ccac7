#pragma once

#include <cstdint>
#include <string_view>

namespace expwalk {

/// Counter-based 64-bit generator: output i is splitmix64(key + i * golden).
/// The whole state is (key, counter), so streams are trivially reproducible
/// and can be derived per (seed, role, index) without sharing state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next() { return mix(key_ + kGolden * ++counter_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Stable 64-bit FNV-1a of a role label.
constexpr std::uint64_t role_hash(std::string_view role) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : role) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed for stream `index` of `role` under a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view role,
                                 std::uint64_t index = 0) {
  std::uint64_t z = CounterRng::mix(seed ^ role_hash(role));
  return CounterRng::mix(z + CounterRng::kGolden * (index + 1));
}

}  // namespace expwalk
