#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfract/config.hpp"
#include "qfract/ifs.hpp"
#include "qfract/linalg.hpp"

namespace qfract::markov {

// Evaluation surface for density iterates f_k. Full-sphere charts carry
// quadrature weights and support interpolation (so the recurrence can be
// iterated on the grid); point-list surfaces (slices, tori) only hold values.
enum class ChartKind { s1, s2, s3, points };

struct DensitySurface {
  ChartKind kind = ChartKind::points;
  int ambient_dim = 0;
  // Chart resolution: s1 {M}, s2 {n_theta, n_phi}, s3 {n_chi, n_theta, n_phi}.
  std::vector<std::size_t> shape;
  std::vector<double> points;   // flattened, row-major in the chart order
  std::vector<double> weights;  // empty for point-list surfaces
  std::vector<double> values;   // f_k per point
  int level = 0;
  std::string config_name;
  double alpha = 0.0;
  // Image layout (rows x cols) when the surface renders to a bitmap.
  std::size_t rows = 0, cols = 0;

  std::size_t count() const { return points.size() / ambient_dim; }
  std::span<const double> point(std::size_t i) const {
    return {points.data() + i * ambient_dim, static_cast<std::size_t>(ambient_dim)};
  }
};

// Uniform full-sphere charts: S^1 by angle, S^2 by colatitude x longitude
// (cell centers in the polar angle, so poles are never nodes), S^3 by the
// hyperspherical angles (chi, theta, phi). Weights sum to the sphere area.
DensitySurface make_sphere_surface(int sphere_dim,
                                   const std::vector<std::size_t>& shape);

// f_0 = 1 everywhere.
void reset_to_uniform(DensitySurface& s);

// Exact recursive evaluation of f_k at r. Cost is N^k map applications;
// refuses when N^k * batch exceeds defaults::density_cost_cap.
double density_exact(const ifs::IFSSystem& s, std::span<const double> r, int k);
std::vector<double> density_exact_batch(const ifs::IFSSystem& s,
                                        const DensitySurface& surface, int k,
                                        unsigned threads = 1);

// One application of the recurrence on a full-sphere chart, with f_k at the
// pulled-back points obtained by (bi/tri)linear chart interpolation.
DensitySurface density_grid_iterate(const ifs::IFSSystem& s,
                                    const DensitySurface& surface,
                                    unsigned threads = 1);

// Chart interpolation of the stored values at an arbitrary sphere point.
double interpolate(const DensitySurface& s, std::span<const double> x);

// Weighted quadrature sum; requires weights.
double integrate_density(const DensitySurface& s);

// Monte-Carlo integral of f_k over the sphere: area * mean(f(X_i)) with X_i
// uniform. Returns the estimate; *sigma_out (if given) gets the standard
// error of the estimate.
double integrate_density_mc(const ifs::IFSSystem& s, int k, std::size_t samples,
                            std::uint64_t seed, double* sigma_out = nullptr,
                            unsigned threads = 1);

// Area of S^n for the ambient conventions used here.
double sphere_area(int sphere_dim);

// Matrix of V(a) = (1/(N(1+a^2))) sum_i P(a n_i) a P(a n_i) restricted to
// span{1, e_1, ..., e_{n+1}}, basis index 0 = scalar.
struct TraceOperator {
  int ambient_dim = 0;
  Matrix m;
};
TraceOperator trace_operator(const ifs::IFSSystem& s);

// Eigenvalues of the vector-part block (symmetric for balanced configs).
std::vector<double> vector_block_eigenvalues(const TraceOperator& op);

struct FixedPointResult {
  std::vector<double> element;  // coefficients over {1, e_1, ..., e_{n+1}}
  std::size_t iterations = 0;
  double fitted_rate = 0.0;  // geometric decay rate of the vector part
};

// Power iteration a <- V(a) from a0 (Phi(a0) must be 1; default 1 itself).
// Throws on non-convergence after defaults::max_power_iterations.
FixedPointResult trace_fixed_point(const TraceOperator& op,
                                   std::span<const double> a0 = {},
                                   double tol = tol::fixed_point);

}  // namespace qfract::markov
