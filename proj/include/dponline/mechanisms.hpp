#pragma once

#include <cstdint>
#include <span>

#include "dponline/noise.hpp"

namespace dponline {

/// One Lap(scale) draw via the inverse CDF: with u uniform on (-1/2, 1/2),
/// x = -scale * sgn(u) * ln(1 - 2|u|). Returns exactly 0 in zero-noise mode.
double sample_laplace(double scale, NoiseSource& rng);

/// value + Lap(sensitivity / epsilon).
double laplace_mechanism(double value, double sensitivity, double epsilon, NoiseSource& rng);

/// AboveThreshold (sparse vector technique). An instance with parameter eps
/// draws a noisy threshold L + Lap(2/eps) once and answers adaptively chosen
/// sensitivity-1 queries with value + Lap(4/eps) >= Lhat, halting on the first
/// "above". The whole instance is eps-DP.
class SvtInstance {
 public:
  enum class Answer { Below, AboveAndHalt };

  SvtInstance(double threshold, double epsilon, NoiseSource& rng);

  /// Throws std::logic_error if the instance already halted.
  Answer query(double value, NoiseSource& rng);

  bool halted() const { return halted_; }
  double noisy_threshold() const { return noisy_threshold_; }
  double epsilon() const { return epsilon_; }

 private:
  double noisy_threshold_;
  double epsilon_;
  bool halted_ = false;
};

/// Argmax of values + i.i.d. Lap(2/eps), ties broken by lowest index.
/// eps-DP over sensitivity-1 queries.
std::size_t report_noisy_max(std::span<const double> values, double epsilon,
                             NoiseSource& rng);

}  // namespace dponline
