#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace dponline {

/// Aggregates for one sweep cell.
struct SummaryStats {
  std::string learner;
  std::string adversary;
  double epsilon = 0.0;
  double delta = 0.0;
  std::uint64_t rounds = 0;   // T
  std::uint64_t dimension = 0;  // d, 0 when not applicable
  std::uint64_t replications = 0;
  double mean = 0.0;            // mean mistakes (or OPE loss)
  double stderr_mean = 0.0;     // sample standard error of the mean
  double hoeffding_halfwidth = 0.0;
  double mean_regret = 0.0;
};

double mean_of(std::span<const double> values);
/// Sample standard error of the mean (0 for fewer than 2 values).
double stderr_of(std::span<const double> values);

/// Smallest t with exp(-2 n t^2 / range^2) <= (1 - confidence) / 2, the
/// two-sided Hoeffding confidence half-width for n bounded samples.
double hoeffding_halfwidth(std::uint64_t n, double range, double confidence);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of mean against ln T. Needs >= 3 points with distinct T.
LineFit fit_log_slope(std::span<const std::pair<double, double>> points);

}  // namespace dponline
