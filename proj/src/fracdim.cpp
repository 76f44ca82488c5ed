#include "qfract/fracdim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "qfract/linalg.hpp"
#include "qfract/rng.hpp"

namespace qfract::fracdim {

namespace {

double dist(const double* a, const double* b, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) {
    double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

// Distances histogrammed against the radius ladder: counts[j] accumulates
// pairs with radii[j-1] <= d < radii[j] (counts[0]: d < radii[0]); the
// cumulative sums then give #{d < r_j}.
void bin_distance(double d, const std::vector<double>& radii,
                  std::vector<std::uint64_t>& counts) {
  auto it = std::upper_bound(radii.begin(), radii.end(), d);
  // d >= all radii contributes to no C(r); otherwise it lands in the slot of
  // the smallest radius strictly above it.
  std::size_t slot = static_cast<std::size_t>(it - radii.begin());
  if (slot >= radii.size()) return;
  counts[slot] += 1;
}

CorrelationCurve finish_curve(std::vector<double> radii,
                              std::vector<std::uint64_t> counts,
                              std::uint64_t total_pairs, std::size_t m,
                              bool sampled) {
  CorrelationCurve curve;
  curve.radii = std::move(radii);
  curve.c.resize(curve.radii.size());
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < curve.radii.size(); ++j) {
    acc += counts[j];
    curve.c[j] = static_cast<double>(acc) / static_cast<double>(total_pairs);
  }
  curve.point_count = m;
  curve.pairs_counted = total_pairs;
  curve.sampled = sampled;
  return curve;
}

// i<j pair enumeration restricted to neighboring cells of a uniform grid
// with cell edge rmax.
CorrelationCurve exact_count(const std::vector<double>& points, int dim,
                             std::vector<double> radii) {
  const std::size_t m = points.size() / dim;
  const double rmax = radii.back();
  auto cell_of = [&](std::size_t i, int k) {
    return static_cast<long>(std::floor(points[i * dim + k] / rmax));
  };
  auto pack = [&](std::size_t i) {
    std::uint64_t h = 1469598103934665603ULL;
    for (int k = 0; k < dim; ++k) {
      std::uint64_t v = static_cast<std::uint64_t>(cell_of(i, k) + (1L << 30));
      h = (h ^ v) * 1099511628211ULL;
    }
    return h;
  };
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
  grid.reserve(m / 4 + 16);
  for (std::size_t i = 0; i < m; ++i) grid[pack(i)].push_back(static_cast<std::uint32_t>(i));

  std::vector<std::uint64_t> counts(radii.size(), 0);
  std::vector<long> base(dim);
  std::vector<std::uint64_t> probes;
  for (std::size_t i = 0; i < m; ++i) {
    for (int k = 0; k < dim; ++k) base[k] = cell_of(i, k);
    // Enumerate the 3^dim neighborhood; dedupe the bucket keys so a hash
    // collision between two probed cells cannot double-count a pair. Pairs
    // pulled in from non-adjacent colliding cells fail the rmax cut.
    int cells = 1;
    for (int k = 0; k < dim; ++k) cells *= 3;
    probes.clear();
    for (int c = 0; c < cells; ++c) {
      int rem = c;
      std::uint64_t h = 1469598103934665603ULL;
      for (int k = 0; k < dim; ++k) {
        long coord = base[k] + (rem % 3) - 1;
        rem /= 3;
        std::uint64_t v = static_cast<std::uint64_t>(coord + (1L << 30));
        h = (h ^ v) * 1099511628211ULL;
      }
      probes.push_back(h);
    }
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    for (std::uint64_t h : probes) {
      auto it = grid.find(h);
      if (it == grid.end()) continue;
      for (std::uint32_t j : it->second) {
        if (j <= i) continue;
        double d = dist(&points[i * dim], &points[j * dim], dim);
        if (d < rmax) bin_distance(d, radii, counts);
      }
    }
  }
  std::uint64_t total = static_cast<std::uint64_t>(m) * (m - 1) / 2;
  return finish_curve(std::move(radii), std::move(counts), total, m, false);
}

CorrelationCurve sampled_count(const std::vector<double>& points, int dim,
                               std::vector<double> radii, std::uint64_t samples,
                               std::uint64_t seed) {
  const std::size_t m = points.size() / dim;
  std::vector<std::uint64_t> counts(radii.size(), 0);
  Rng rng(seed, 0x70617273ULL);
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::uint64_t i = rng.next_below(m);
    std::uint64_t j = rng.next_below(m);
    if (i == j) {
      --s;  // resample; self-pairs are excluded
      continue;
    }
    double d = dist(&points[i * dim], &points[j * dim], dim);
    bin_distance(d, radii, counts);
  }
  return finish_curve(std::move(radii), std::move(counts), samples, m, true);
}

}  // namespace

CorrelationCurve correlation_integral(const std::vector<double>& points, int dim,
                                      std::vector<double> radii,
                                      const CorrelationOptions& opts) {
  if (dim < 1 || points.size() % dim != 0)
    throw std::invalid_argument("correlation_integral: bad point array");
  const std::size_t m = points.size() / dim;
  if (m < 2) throw std::invalid_argument("correlation_integral: need >= 2 points");
  if (radii.empty() || !std::is_sorted(radii.begin(), radii.end()))
    throw std::invalid_argument("correlation_integral: radii must be ascending");

  if (opts.force_exact || (opts.pair_samples == 0 &&
                           m <= defaults::correlation_exact_cap))
    return exact_count(points, dim, std::move(radii));
  std::uint64_t samples = opts.pair_samples
                              ? opts.pair_samples
                              : defaults::correlation_pair_samples;
  return sampled_count(points, dim, std::move(radii), samples, opts.seed);
}

std::vector<double> log_radii(double rmin, double rmax, std::size_t bins) {
  if (!(rmin > 0.0) || !(rmax > rmin) || bins < 2)
    throw std::invalid_argument("log_radii: need 0 < rmin < rmax, bins >= 2");
  std::vector<double> r(bins);
  double lmin = std::log(rmin), lmax = std::log(rmax);
  for (std::size_t i = 0; i < bins; ++i)
    r[i] = std::exp(lmin + (lmax - lmin) * static_cast<double>(i) /
                               static_cast<double>(bins - 1));
  return r;
}

double diameter_upper_bound(const std::vector<double>& points, int dim) {
  if (points.empty()) return 0.0;
  double d2 = 0.0;
  for (int k = 0; k < dim; ++k) {
    double lo = points[k], hi = points[k];
    for (std::size_t i = 0; i < points.size() / dim; ++i) {
      lo = std::min(lo, points[i * dim + k]);
      hi = std::max(hi, points[i * dim + k]);
    }
    d2 += (hi - lo) * (hi - lo);
  }
  return std::sqrt(d2);
}

DimensionFit fit_dimension(const CorrelationCurve& curve, double rmin, double rmax) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < curve.radii.size(); ++i) {
    double r = curve.radii[i];
    if (r < rmin || r > rmax || curve.c[i] <= 0.0) continue;
    lx.push_back(std::log10(r));
    ly.push_back(std::log10(curve.c[i]));
  }
  if (lx.size() < 5)
    throw std::invalid_argument(
        "fit_dimension: fewer than 5 usable radii in the fit window");
  LineFit f = fit_line(lx, ly);
  DimensionFit out;
  out.dimension = f.slope;
  out.intercept = f.intercept;
  out.rms_residual = f.rms_residual;
  out.staircase = f.rms_residual > defaults::staircase_residual;
  out.rmin_used = std::pow(10.0, lx.front());
  out.rmax_used = std::pow(10.0, lx.back());
  out.radii_used = lx.size();
  return out;
}

double cantor_value(const std::vector<int>& digits) {
  double v = 0.0;
  double scale = 1.0;
  for (int d : digits) {
    if (d != 0 && d != 2)
      throw std::invalid_argument("cantor_value: digits must be 0 or 2");
    scale /= 3.0;
    v += d * scale;
  }
  return v;
}

std::vector<double> cantor_points(std::size_t count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("cantor_points: count must be >= 1");
  std::vector<double> out(count);
  Rng rng(seed, 0x63616e74ULL);
  for (std::size_t i = 0; i < count; ++i) {
    double v = 0.0;
    double scale = 1.0;
    std::uint64_t bits = 0;
    for (int d = 0; d < 40; ++d) {
      if (d % 64 == 0) bits = rng.next_u64();
      scale /= 3.0;
      v += ((bits >> (d % 64)) & 1) ? 2.0 * scale : 0.0;
    }
    out[i] = v;
  }
  return out;
}

}  // namespace qfract::fracdim
