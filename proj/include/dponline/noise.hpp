#pragma once

#include <cstdint>
#include <string_view>

namespace dponline {

/// Counter-based deterministic random stream (SplitMix64 over a seed/counter
/// pair). Identical (seed, counter) sequences produce identical draws, so
/// every mechanism built on top is replayable bit-exactly. Child streams are
/// derived by hashing a tag into the seed; derivation never perturbs the
/// parent's counter.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed, bool zero_noise = false)
      : seed_(seed), counter_(0), zero_noise_(zero_noise) {}

  /// Next raw 64-bit draw; advances the counter.
  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double next_uniform();

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_below(std::uint64_t n);

  /// True with probability p.
  bool bernoulli(double p);

  /// Independent child stream. zero_noise propagates.
  NoiseSource derive(std::string_view tag) const;
  NoiseSource derive(std::uint64_t tag) const;

  bool zero_noise() const { return zero_noise_; }
  void set_zero_noise(bool on) { zero_noise_ = on; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
  bool zero_noise_;
};

/// SplitMix64 finalizer; also used for seed derivation hashes.
std::uint64_t mix64(std::uint64_t z);

/// Order-sensitive combine of a seed with a tag (FNV over the tag bytes for
/// strings). Stable across platforms, unlike std::hash.
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t tag);
std::uint64_t hash_bytes(std::string_view bytes);

}  // namespace dponline
