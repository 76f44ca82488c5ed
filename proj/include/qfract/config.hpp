#pragma once

#include <cstddef>
#include <cstdint>

// Central home for the numeric defaults used across the library. Every
// tolerance that a check depends on lives here rather than as a literal at
// the call site, so a consumer can see (and a test can reference) the exact
// contract a routine promises.
namespace qfract {

namespace tol {

// Unit vectors (sphere points, boost axes) must satisfy ||v| - 1| below this.
inline constexpr double unit_norm = 1e-12;

// Balancing residual |sum of detector directions| accepted as zero.
inline constexpr double balance = 1e-10;

// Components outside grades {0,1} accepted as zero when testing whether a
// conjugation a w a^tau stays inside the paravector subspace.
inline constexpr double paravector_membership = 1e-10;

// Smallest Gram-matrix eigenvalue accepted as nonnegative in positivity tests.
inline constexpr double positivity = 1e-10;

// Lorentz matrix invariants: |L^T eta L - eta|, |det L - 1|.
inline constexpr double lorentz = 1e-10;

// Non-scalar residue accepted when a norm or a conjugation result is
// required to be scalar / paravector (relative to its magnitude).
inline constexpr double scalar_residue = 1e-9;

// Fixed-point power iteration stopping threshold (sup norm of the update).
inline constexpr double fixed_point = 1e-12;

// Set comparisons between vertex configurations (Coxeter tori vs vertex table).
inline constexpr double vertex_match = 1e-6;

// Deduplication radius for quaternion group closures. Distinct elements of
// the groups we generate are separated by chordal distance >= 0.618.
inline constexpr double quat_dedup = 1e-9;

// Chaos-game points are renormalized every step; this is the allowed drift.
inline constexpr double sample_norm = 1e-9;

}  // namespace tol

namespace defaults {

// Signature cap: 2^(p+q) coefficients must stay addressable and cheap.
inline constexpr int max_clifford_dim = 12;

// Chaos-game transient discarded before points are recorded.
inline constexpr std::size_t burn_in = 100;

// Exact density recursion refuses when N^k * batch exceeds this.
inline constexpr double density_cost_cap = 1e8;

// Power iteration gives up after this many applications of the operator.
inline constexpr std::size_t max_power_iterations = 100000;

// Full-sphere grid resolutions used when the caller does not specify one.
inline constexpr std::size_t grid_s1 = 8192;
inline constexpr std::size_t grid_s2_lon = 1024;
inline constexpr std::size_t grid_s2_lat = 512;
inline constexpr std::size_t grid_s3 = 128;

// Correlation-dimension fit window as fractions of the point-set diameter.
inline constexpr double fit_rmin_frac = 1e-3;
inline constexpr double fit_rmax_frac = 1e-1;

// RMS residual of the log-log fit (in log10 units) above which the
// correlation curve is flagged as a staircase rather than a power law.
inline constexpr double staircase_residual = 0.05;

// Pair-sampled correlation estimator: pairs drawn when subsampling.
inline constexpr std::size_t correlation_pair_samples = 20000000;

// Point count above which correlation counting switches from the exact
// spatial-hash count to the pair-sampled estimator.
inline constexpr std::size_t correlation_exact_cap = 20000;

}  // namespace defaults

inline constexpr const char* tool_version = "0.1.0";

}  // namespace qfract
