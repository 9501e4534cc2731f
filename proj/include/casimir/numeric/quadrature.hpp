#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "casimir/errors.hpp"

// Adaptive Gauss-Kronrod (G7, K15) quadrature with interval bisection.
// Semi-infinite integrals go through the rational map x = a + t/(1-t).

namespace casimir::numeric {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;       // absolute error estimate
  int intervals = 0;        // intervals in the final partition
};

namespace detail {

// K15 abscissae (positive half) and weights; rows 1,3,5,7 carry the G7 rule.
inline constexpr double kGkNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kGkWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
  double a, b, value, error;
};

inline Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = kGkWeights[7] * f(mid);
  double gauss = kGaussWeights[3] * f(mid);
  for (int i = 0; i < 7; ++i) {
    const double fa = f(mid - half * kGkNodes[i]);
    const double fb = f(mid + half * kGkNodes[i]);
    kronrod += kGkWeights[i] * (fa + fb);
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (fa + fb);
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

inline QuadratureResult integrate(const std::function<double(double)>& f, double a,
                                  double b, double rel_tol = 1e-10,
                                  double abs_tol = 0.0, int max_intervals = 4000) {
  if (a == b) return {0.0, 0.0, 0};
  std::vector<detail::Panel> panels;
  panels.push_back(detail::evaluate_panel(f, a, b));
  double total = panels[0].value;
  double total_err = panels[0].error;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) &&
         static_cast<int>(panels.size()) < max_intervals) {
    // Split the panel with the largest error estimate.
    auto worst = std::max_element(
        panels.begin(), panels.end(),
        [](const detail::Panel& p, const detail::Panel& q) { return p.error < q.error; });
    detail::Panel bad = *worst;
    panels.erase(worst);
    const double mid = 0.5 * (bad.a + bad.b);
    if (mid <= bad.a || mid >= bad.b) {
      panels.push_back(bad);  // interval at rounding resolution
      break;
    }
    panels.push_back(detail::evaluate_panel(f, bad.a, mid));
    panels.push_back(detail::evaluate_panel(f, mid, bad.b));
    total = 0.0;
    total_err = 0.0;
    for (const auto& p : panels) {
      total += p.value;
      total_err += p.error;
    }
  }
  if (total_err > std::max(abs_tol, rel_tol * std::abs(total)) &&
      total_err > 1e3 * std::numeric_limits<double>::epsilon() * std::abs(total)) {
    throw convergence_error("adaptive quadrature did not reach tolerance");
  }
  return {total, total_err, static_cast<int>(panels.size())};
}

// Integral over [a, infinity) via x = a + t/(1-t).
inline QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                                double a, double rel_tol = 1e-10,
                                                double abs_tol = 0.0,
                                                int max_intervals = 4000) {
  auto g = [&](double t) {
    const double om = 1.0 - t;
    const double x = a + t / om;
    return f(x) / (om * om);
  };
  return integrate(g, 0.0, 1.0, rel_tol, abs_tol, max_intervals);
}

}  // namespace casimir::numeric
