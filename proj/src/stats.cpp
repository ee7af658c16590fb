#include "dponline/stats.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace dponline {

double mean_of(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double stderr_of(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double m = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  const double variance = ss / static_cast<double>(n - 1);
  return std::sqrt(variance / static_cast<double>(n));
}

double hoeffding_halfwidth(std::uint64_t n, double range, double confidence) {
  if (n < 1) throw std::invalid_argument("hoeffding_halfwidth: n must be >= 1");
  if (!(range > 0.0)) throw std::invalid_argument("hoeffding_halfwidth: range must be positive");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("hoeffding_halfwidth: confidence must be in (0, 1)");
  const double beta = (1.0 - confidence) / 2.0;
  return range * std::sqrt(std::log(1.0 / beta) / (2.0 * static_cast<double>(n)));
}

LineFit fit_log_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw std::invalid_argument("fit_log_slope: need >= 3 points");
  std::set<double> distinct;
  for (const auto& [T, y] : points) {
    if (!(T > 0.0)) throw std::invalid_argument("fit_log_slope: T must be positive");
    distinct.insert(T);
  }
  if (distinct.size() != points.size())
    throw std::invalid_argument("fit_log_slope: duplicate T values");

  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [T, y] : points) {
    sx += std::log(T);
    sy += y;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [T, y] : points) {
    const double dx = std::log(T) - mx;
    const double dy = y - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace dponline
