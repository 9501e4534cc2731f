#pragma once

#include <cmath>
#include <functional>

// Central finite differences with one Richardson halving.  The step is a
// fixed fraction of the differentiated length; the error estimate is the
// difference between the refined and unrefined derivative.

namespace casimir::numeric {

struct DerivativeResult {
  double value = 0.0;
  double error = 0.0;
};

inline DerivativeResult central_derivative(const std::function<double(double)>& f,
                                           double x, double relative_step = 1e-3) {
  const double h = std::abs(x) * relative_step;
  const double d_h = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d_h2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  // Central differences are O(h^2); one halving eliminates that term.
  const double refined = (4.0 * d_h2 - d_h) / 3.0;
  return {refined, std::abs(refined - d_h2)};
}

}  // namespace casimir::numeric
