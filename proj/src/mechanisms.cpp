#include "dponline/mechanisms.hpp"

#include <cmath>
#include <stdexcept>

namespace dponline {

double sample_laplace(double scale, NoiseSource& rng) {
  if (!(scale > 0.0)) throw std::invalid_argument("sample_laplace: scale must be positive");
  if (rng.zero_noise()) {
    rng.next_u64();  // keep draw counts identical with noisy runs
    return 0.0;
  }
  double v = rng.next_uniform();
  if (v <= 0.0) v = 0x1.0p-53;  // keep 1 - 2|u| away from 0
  const double u = v - 0.5;
  const double sgn = u < 0.0 ? -1.0 : 1.0;
  return -scale * sgn * std::log(1.0 - 2.0 * std::fabs(u));
}

double laplace_mechanism(double value, double sensitivity, double epsilon, NoiseSource& rng) {
  if (!(sensitivity > 0.0))
    throw std::invalid_argument("laplace_mechanism: sensitivity must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("laplace_mechanism: epsilon must be positive");
  return value + sample_laplace(sensitivity / epsilon, rng);
}

SvtInstance::SvtInstance(double threshold, double epsilon, NoiseSource& rng)
    : epsilon_(epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("SvtInstance: epsilon must be positive");
  noisy_threshold_ = threshold + sample_laplace(2.0 / epsilon, rng);
}

SvtInstance::Answer SvtInstance::query(double value, NoiseSource& rng) {
  if (halted_) throw std::logic_error("SvtInstance: query after halt");
  const double noisy = value + sample_laplace(4.0 / epsilon_, rng);
  if (noisy >= noisy_threshold_) {
    halted_ = true;
    return Answer::AboveAndHalt;
  }
  return Answer::Below;
}

std::size_t report_noisy_max(std::span<const double> values, double epsilon,
                             NoiseSource& rng) {
  if (values.empty()) throw std::invalid_argument("report_noisy_max: empty list");
  if (!(epsilon > 0.0)) throw std::invalid_argument("report_noisy_max: epsilon must be positive");
  std::size_t best = 0;
  double best_value = values[0] + sample_laplace(2.0 / epsilon, rng);
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double noisy = values[i] + sample_laplace(2.0 / epsilon, rng);
    if (noisy > best_value) {
      best = i;
      best_value = noisy;
    }
  }
  return best;
}

}  // namespace dponline
