#include "dponline/noise.hpp"

namespace dponline {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t tag) {
  return mix64(seed ^ (tag + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2)));
}

std::uint64_t hash_bytes(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t NoiseSource::next_u64() {
  return mix64(seed_ + (counter_++) * 0x9E3779B97F4A7C15ULL);
}

double NoiseSource::next_uniform() {
  // 53 random bits; lies in [0, 1).
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t NoiseSource::uniform_below(std::uint64_t n) {
  // Fixed-point multiply keeps the draw count deterministic.
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

bool NoiseSource::bernoulli(double p) { return next_uniform() < p; }

NoiseSource NoiseSource::derive(std::string_view tag) const {
  return derive(hash_bytes(tag));
}

NoiseSource NoiseSource::derive(std::uint64_t tag) const {
  return NoiseSource(hash_combine(seed_, tag), zero_noise_);
}

}  // namespace dponline
