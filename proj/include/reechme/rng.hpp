#pragma once

#include <concepts>
#include <cstdint>
#include <random>

namespace reechme {

/// Anything that yields uniform doubles in [0, 1).
template <class G>
concept UniformSource = requires(G& g) {
  { g.uniform() } -> std::convertible_to<double>;
};

/// Per-run random stream: 64-bit Mersenne Twister seeded directly with the
/// run seed. Doubles are built from the top 53 bits of each output, so the
/// sequence does not depend on the standard library's distribution classes.
class RunRng {
 public:
  static constexpr const char* kGeneratorName = "mt19937_64";

  explicit RunRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Uniform index in [0, n) from a single draw. n must be > 0.
template <UniformSource G>
std::size_t uniform_index(G& rng, std::size_t n) {
  auto i = static_cast<std::size_t>(static_cast<double>(rng.uniform()) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

}  // namespace reechme
