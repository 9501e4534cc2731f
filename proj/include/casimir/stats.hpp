#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "casimir/errors.hpp"

// Experimental error combination and the two experiment-vs-theory comparison
// methods: overlap of measurement crosses with a theory band, and the
// confidence interval for the pointwise theory-minus-experiment difference.
// Separations in nm; values and errors in the measurement's own units.

namespace casimir::stats {

struct MeasurementPoint {
  double separation_nm = 0.0;
  double mean = 0.0;
  double random_error = 0.0;      // >= 0
  double systematic_error = 0.0;  // >= 0
  double mean_variance = 0.0;     // s_Pbar, >= 0
  double separation_error_nm = 0.0;  // optional cross arm along the abscissa

  void validate() const {
    if (!(separation_nm > 0.0)) throw ingest_error("separation must be > 0");
    if (random_error < 0.0 || systematic_error < 0.0 || mean_variance < 0.0 ||
        separation_error_nm < 0.0) {
      throw ingest_error("errors must be nonnegative");
    }
  }
};

using MeasurementSeries = std::vector<MeasurementPoint>;

// Combination rule Delta_tot = q_beta(r) (Delta_rand + Delta_syst) with
// r = Delta_syst / s_mean.  At beta = 0.95 the factor runs from 0.71
// (r -> 0) to 0.81 (r -> infinity); the default is the monotone
// interpolation q = 0.71 + 0.10 r/(1+r), and an explicit (r, q) table can
// be supplied instead.
struct ErrorCombinationPolicy {
  double confidence = 0.95;
  std::vector<std::pair<double, double>> q_table;  // optional, ascending in r

  double q_of(double r) const {
    if (r < 0.0) throw domain_error("q_beta(r) needs r >= 0");
    if (q_table.empty()) {
      const double frac = std::isinf(r) ? 1.0 : r / (1.0 + r);
      return 0.71 + 0.10 * frac;
    }
    if (std::isinf(r) || r >= q_table.back().first) return q_table.back().second;
    if (r <= q_table.front().first) return q_table.front().second;
    auto hi = std::lower_bound(
        q_table.begin(), q_table.end(), r,
        [](const std::pair<double, double>& e, double v) { return e.first < v; });
    auto lo = hi - 1;
    const double t = (r - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
  }
};

inline double total_experimental_error(const MeasurementPoint& point,
                                       const ErrorCombinationPolicy& policy = {}) {
  point.validate();
  const double r = point.mean_variance > 0.0
                       ? point.systematic_error / point.mean_variance
                       : std::numeric_limits<double>::infinity();
  return policy.q_of(r) * (point.random_error + point.systematic_error);
}

struct ProfilePoint {
  double separation_nm = 0.0;
  double value = 0.0;
};

// Relative total error delta_tot(a) = Delta_tot(a) / |mean(a)|.
inline std::vector<ProfilePoint> relative_error_profile(
    const MeasurementSeries& series, const ErrorCombinationPolicy& policy = {}) {
  if (series.empty()) throw ingest_error("empty measurement series");
  std::vector<ProfilePoint> out;
  out.reserve(series.size());
  for (const auto& p : series) {
    if (p.mean == 0.0) throw ingest_error("relative error undefined at zero mean");
    out.push_back({p.separation_nm, total_experimental_error(p, policy) / std::abs(p.mean)});
  }
  return out;
}

// Theoretical band: lower/upper values on a separation grid, linearly
// interpolated.  The half-width is the total theoretical error at the
// band's confidence level.
struct TheoryBand {
  std::vector<double> separation_nm;
  std::vector<double> lower;
  std::vector<double> upper;

  void validate() const {
    if (separation_nm.size() < 2 || lower.size() != separation_nm.size() ||
        upper.size() != separation_nm.size()) {
      throw ingest_error("theory band needs matching grids with >= 2 points");
    }
    for (std::size_t i = 0; i < separation_nm.size(); ++i) {
      if (i > 0 && !(separation_nm[i] > separation_nm[i - 1])) {
        throw ingest_error("band grid must be strictly increasing");
      }
      if (lower[i] > upper[i]) throw ingest_error("band lower must be <= upper");
    }
  }
  bool covers(double a_nm) const {
    return a_nm >= separation_nm.front() && a_nm <= separation_nm.back();
  }
  double interpolate(const std::vector<double>& v, double a_nm) const {
    auto hi = std::lower_bound(separation_nm.begin(), separation_nm.end(), a_nm);
    if (hi == separation_nm.begin()) return v.front();
    if (hi == separation_nm.end()) return v.back();
    auto i = static_cast<std::size_t>(hi - separation_nm.begin());
    const double t = (a_nm - separation_nm[i - 1]) / (separation_nm[i] - separation_nm[i - 1]);
    return v[i - 1] + t * (v[i] - v[i - 1]);
  }
  double lo(double a_nm) const { return interpolate(lower, a_nm); }
  double hi(double a_nm) const { return interpolate(upper, a_nm); }
};

enum class ComparisonMethod { BandOverlap, DifferenceInterval };
enum class VerdictKind { Consistent, ExcludedAt, Inconclusive };

struct RangeVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  double level = 0.0;
  double inside_fraction = 0.0;
};

struct WindowVerdict {
  double from_nm = 0.0;
  double to_nm = 0.0;
  RangeVerdict verdict;
};

struct ComparisonVerdict {
  ComparisonMethod method = ComparisonMethod::DifferenceInterval;
  double level = 0.95;
  std::vector<double> separations_nm;
  std::vector<bool> point_consistent;
  RangeVerdict range;
  std::vector<WindowVerdict> windows;
  std::vector<ProfilePoint> agreement;  // Xi / |mean| where available
};

namespace detail {

// Decision rule shared by both methods: consistent when at least `level` of
// the points agree; excluded when at least the exclusion threshold of the
// points disagree ("almost all the dots are outside"), where the threshold
// fraction equals the level itself, so that 0.999 on a desk-size series
// means every dot in the range.
inline RangeVerdict decide(const std::vector<bool>& consistent, double level) {
  RangeVerdict out;
  out.level = level;
  if (consistent.empty()) return out;
  const auto n = static_cast<double>(consistent.size());
  const double inside = static_cast<double>(
      std::count(consistent.begin(), consistent.end(), true));
  out.inside_fraction = inside / n;
  const double eps = 1e-12;
  if (out.inside_fraction >= level - eps) {
    out.kind = VerdictKind::Consistent;
  } else if ((n - inside) / n >= level - eps) {
    out.kind = VerdictKind::ExcludedAt;
  } else {
    out.kind = VerdictKind::Inconclusive;
  }
  return out;
}

// Verdicts on sliding 100 nm windows (50 nm stride) plus the full range.
inline std::vector<WindowVerdict> window_verdicts(const std::vector<double>& a,
                                                  const std::vector<bool>& consistent,
                                                  double level) {
  std::vector<WindowVerdict> out;
  if (a.empty()) return out;
  const double width = 100.0;
  const double stride = 50.0;
  const double lo = *std::min_element(a.begin(), a.end());
  const double hi = *std::max_element(a.begin(), a.end());
  for (double from = lo; from < hi; from += stride) {
    const double to = from + width;
    std::vector<bool> in_window;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] >= from && a[i] <= to) in_window.push_back(consistent[i]);
    }
    if (in_window.empty()) continue;
    out.push_back({from, to, decide(in_window, level)});
    if (to >= hi) break;
  }
  return out;
}

}  // namespace detail

// First comparison method: experimental crosses against the theory band.
// A point is consistent when its cross rectangle
// [a - da, a + da] x [mean - Delta_tot, mean + Delta_tot] meets the band
// region over the same separation interval.
inline ComparisonVerdict band_overlap_method(const MeasurementSeries& series,
                                             const TheoryBand& band,
                                             const ErrorCombinationPolicy& policy = {},
                                             double level = 0.95) {
  if (series.empty()) throw ingest_error("empty measurement series");
  band.validate();
  ComparisonVerdict out;
  out.method = ComparisonMethod::BandOverlap;
  out.level = level;
  for (const auto& p : series) {
    p.validate();
    if (!band.covers(p.separation_nm - p.separation_error_nm) ||
        !band.covers(p.separation_nm + p.separation_error_nm)) {
      throw ingest_error("theory band does not cover separation " +
                         std::to_string(p.separation_nm) + " nm");
    }
    const double dtot = total_experimental_error(p, policy);
    const double ylo = p.mean - dtot;
    const double yhi = p.mean + dtot;
    // Probe the interval endpoints and every band knot inside it.
    std::vector<double> xs = {p.separation_nm - p.separation_error_nm,
                              p.separation_nm + p.separation_error_nm};
    for (double knot : band.separation_nm) {
      if (knot > xs.front() && knot < xs.back()) xs.push_back(knot);
    }
    bool overlap = false;
    for (double x : xs) {
      if (band.lo(x) <= yhi && band.hi(x) >= ylo) {
        overlap = true;
        break;
      }
    }
    out.separations_nm.push_back(p.separation_nm);
    out.point_consistent.push_back(overlap);
  }
  out.range = detail::decide(out.point_consistent, level);
  out.windows = detail::window_verdicts(out.separations_nm, out.point_consistent, level);
  return out;
}

struct DifferencePoint {
  double separation_nm = 0.0;
  double difference = 0.0;  // theory minus experiment
};

// Second comparison method: theory-minus-experiment dots against the
// confidence interval [-Xi(a), Xi(a)].
inline ComparisonVerdict difference_interval_method(
    const std::vector<DifferencePoint>& diffs, const std::function<double(double)>& xi,
    double level = 0.95) {
  if (diffs.empty()) throw ingest_error("empty difference series");
  ComparisonVerdict out;
  out.method = ComparisonMethod::DifferenceInterval;
  out.level = level;
  for (const auto& d : diffs) {
    const double half_width = xi(d.separation_nm);
    if (!(half_width > 0.0)) throw domain_error("Xi must be positive over the range");
    out.separations_nm.push_back(d.separation_nm);
    out.point_consistent.push_back(std::abs(d.difference) <= half_width);
  }
  out.range = detail::decide(out.point_consistent, level);
  out.windows = detail::window_verdicts(out.separations_nm, out.point_consistent, level);
  return out;
}

// Quantitative agreement measure Xi(a) / |mean(a)|, reported alongside the
// relative experimental error.
inline std::vector<ProfilePoint> agreement_measure(const std::function<double(double)>& xi,
                                                   const MeasurementSeries& series) {
  if (series.empty()) throw ingest_error("empty measurement series");
  std::vector<ProfilePoint> out;
  for (const auto& p : series) {
    if (p.mean == 0.0) throw ingest_error("agreement measure undefined at zero mean");
    out.push_back({p.separation_nm, xi(p.separation_nm) / std::abs(p.mean)});
  }
  return out;
}

// ---- construction of Xi from experimental and theoretical errors ----------

enum class XiPolicy { Quadrature, LinearQ };

namespace detail {

// Inverse standard normal CDF via bisection on erf; plenty for level scaling.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw domain_error("quantile needs 0 < p < 1");
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double cdf = 0.5 * (1.0 + std::erf(mid / std::numbers::sqrt2));
    (cdf < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

// Widening factor from the 0.95 base level to the requested one, using
// two-sided normal quantiles; keeps interval constructions nested in level.
inline double level_scale(double level, double base_level = 0.95) {
  return detail::normal_quantile(0.5 * (1.0 + level)) /
         detail::normal_quantile(0.5 * (1.0 + base_level));
}

// Builds Xi(a) from the series' total experimental errors (linearly
// interpolated between points) and a theoretical error function, either in
// quadrature or with the q-style linear combination.
inline std::function<double(double)> make_xi(const MeasurementSeries& series,
                                             const std::function<double(double)>& theor_error,
                                             XiPolicy policy = XiPolicy::Quadrature,
                                             double level = 0.95,
                                             const ErrorCombinationPolicy& comb = {}) {
  if (series.empty()) throw ingest_error("empty measurement series");
  std::vector<double> grid, dtot;
  for (const auto& p : series) {
    grid.push_back(p.separation_nm);
    dtot.push_back(total_experimental_error(p, comb));
  }
  const double scale = level_scale(level);
  return [grid, dtot, theor_error, policy, scale, comb](double a_nm) {
    auto hi = std::lower_bound(grid.begin(), grid.end(), a_nm);
    double de;
    if (hi == grid.begin()) {
      de = dtot.front();
    } else if (hi == grid.end()) {
      de = dtot.back();
    } else {
      auto i = static_cast<std::size_t>(hi - grid.begin());
      const double t = (a_nm - grid[i - 1]) / (grid[i] - grid[i - 1]);
      de = dtot[i - 1] + t * (dtot[i] - dtot[i - 1]);
    }
    const double dt = theor_error(a_nm);
    if (dt < 0.0) throw domain_error("theoretical error must be nonnegative");
    if (policy == XiPolicy::Quadrature) {
      return scale * std::sqrt(de * de + dt * dt);
    }
    return scale * comb.q_of(1.0) * (de + dt);
  };
}

}  // namespace casimir::stats
