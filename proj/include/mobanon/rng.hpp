#ifndef MOBANON_RNG_HPP
#define MOBANON_RNG_HPP

#include <cstdint>
#include <string_view>

namespace mobanon {

/// Small deterministic PRNG (splitmix64). Each substream is derived from a
/// (seed, key...) tuple so parallel and sequential generation agree.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double nextUnit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

std::uint64_t hashBytes(std::string_view bytes);
std::uint64_t mixKeys(std::uint64_t a, std::uint64_t b);

/// Substream for one user of a seeded run.
SplitMix64 userStream(std::uint64_t seed, std::string_view userId);

/// Substream for one record of a seeded run.
SplitMix64 recordStream(std::uint64_t seed, std::string_view userId,
                        std::uint64_t recordIndex);

}  // namespace mobanon

#endif  // MOBANON_RNG_HPP
