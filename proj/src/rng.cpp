#include "mobanon/rng.hpp"

namespace mobanon {

namespace {

std::uint64_t scramble(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

// FNV-1a.
std::uint64_t hashBytes(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t mixKeys(std::uint64_t a, std::uint64_t b) {
  return scramble(scramble(a) ^ b);
}

SplitMix64 userStream(std::uint64_t seed, std::string_view userId) {
  return SplitMix64(mixKeys(seed, hashBytes(userId)));
}

SplitMix64 recordStream(std::uint64_t seed, std::string_view userId,
                        std::uint64_t recordIndex) {
  return SplitMix64(mixKeys(mixKeys(seed, hashBytes(userId)), recordIndex));
}

}  // namespace mobanon
