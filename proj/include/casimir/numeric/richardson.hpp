#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "casimir/errors.hpp"

// Richardson extrapolation on a geometric ladder h_k = h_0 / ratio^k.
// The leading remainder order is estimated from successive differences
// rather than assumed; each elimination stage re-estimates the next order.

namespace casimir::numeric {

struct ExtrapolationResult {
  double value = 0.0;
  double error = 0.0;          // heuristic error estimate
  double observed_order = 0.0; // leading order seen on the raw ladder
  std::vector<double> diagonal;
};

namespace detail {

// Estimated convergence order from three consecutive ladder values.
inline double order_estimate(double f0, double f1, double f2, double ratio) {
  const double d0 = f1 - f0;
  const double d1 = f2 - f1;
  if (d1 == 0.0 || d0 == 0.0 || d0 * d1 <= 0.0) return 0.0;
  return std::log(std::abs(d0 / d1)) / std::log(ratio);
}

}  // namespace detail

// values[k] corresponds to step h_0 / ratio^k, finest last.
inline ExtrapolationResult richardson_extrapolate(std::vector<double> values,
                                                  double ratio = 2.0) {
  const std::size_t n = values.size();
  if (n == 0) throw convergence_error("richardson: empty ladder");
  ExtrapolationResult out;
  out.diagonal.push_back(values.back());
  if (n == 1) {
    out.value = values[0];
    out.error = std::abs(values[0]);
    return out;
  }
  if (n == 2) {
    out.value = values[1];
    out.error = std::abs(values[1] - values[0]);
    out.diagonal.push_back(values[1]);
    return out;
  }

  out.observed_order =
      detail::order_estimate(values[n - 3], values[n - 2], values[n - 1], ratio);

  std::vector<double> column = std::move(values);
  double last_change = std::abs(column[column.size() - 1] - column[column.size() - 2]);
  while (column.size() >= 3) {
    double p = detail::order_estimate(column[column.size() - 3],
                                      column[column.size() - 2],
                                      column[column.size() - 1], ratio);
    if (p <= 0.1 || !std::isfinite(p)) break;  // differences no longer power-like
    // Snap to the nearest integer order when the estimate is close to one.
    const double rounded = std::round(p);
    if (rounded >= 1.0 && std::abs(p - rounded) < 0.35) p = rounded;
    const double factor = std::pow(ratio, p);
    std::vector<double> next(column.size() - 1);
    for (std::size_t k = 0; k + 1 < column.size(); ++k) {
      next[k] = (factor * column[k + 1] - column[k]) / (factor - 1.0);
    }
    column = std::move(next);
    out.diagonal.push_back(column.back());
    if (column.size() >= 2) {
      last_change = std::abs(column[column.size() - 1] - column[column.size() - 2]);
    }
  }
  out.value = column.back();
  double diag_change = out.diagonal.size() >= 2
                           ? std::abs(out.diagonal[out.diagonal.size() - 1] -
                                      out.diagonal[out.diagonal.size() - 2])
                           : last_change;
  out.error = std::max(diag_change, 1e-16 * std::abs(out.value)) ;
  return out;
}

}  // namespace casimir::numeric
