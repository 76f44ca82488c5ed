#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qfract/config.hpp"

namespace qfract::fracdim {

// Correlation integral C(r) = 2/(M(M-1)) #{i<j : |x_i - x_j| < r} sampled at
// a ladder of radii, with the log-log fit attached once computed.
struct CorrelationCurve {
  std::vector<double> radii;  // ascending
  std::vector<double> c;      // C(r), in [0,1], nondecreasing
  std::size_t point_count = 0;
  std::uint64_t pairs_counted = 0;  // exact: M(M-1)/2; sampled: sample size
  bool sampled = false;
};

struct CorrelationOptions {
  // 0 = choose automatically: exact counting (spatial hash) up to
  // defaults::correlation_exact_cap points, pair sampling beyond.
  std::uint64_t pair_samples = 0;
  bool force_exact = false;
  std::uint64_t seed = 1;
};

// Points are row-major with the given dimension; radii must be ascending.
CorrelationCurve correlation_integral(const std::vector<double>& points, int dim,
                                      std::vector<double> radii,
                                      const CorrelationOptions& opts = {});

// Log-spaced ladder of `bins` radii covering [rmin, rmax].
std::vector<double> log_radii(double rmin, double rmax, std::size_t bins);

// Largest pairwise distance, estimated from the bounding box diagonal.
double diameter_upper_bound(const std::vector<double>& points, int dim);

struct DimensionFit {
  double dimension = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;  // in log10 C units over the fit window
  bool staircase = false;     // residual above defaults::staircase_residual
  double rmin_used = 0.0;
  double rmax_used = 0.0;
  std::size_t radii_used = 0;
};

// Least-squares slope of log C vs log r over [rmin, rmax]; needs at least
// five radii with nonzero counts inside the window.
DimensionFit fit_dimension(const CorrelationCurve& curve, double rmin, double rmax);

// Value of the ternary address with digits in {0,2}, most significant first.
double cantor_value(const std::vector<int>& digits);

// Random middle-thirds samples: 40 random ternary digits from {0,2} each.
std::vector<double> cantor_points(std::size_t count, std::uint64_t seed);

}  // namespace qfract::fracdim
