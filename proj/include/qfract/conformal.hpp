#pragma once

#include <span>
#include <vector>

#include "qfract/clifford.hpp"
#include "qfract/config.hpp"
#include "qfract/linalg.hpp"

namespace qfract::conformal {

// One conformal map of S^n (and of the closed ball it bounds): the boost
// with strength alpha in [0,1) along a unit axis in R^(n+1). Fixed points
// are +-axis; rapidity eta = 2 artanh(alpha).
struct SpinBoost {
  double alpha = 0.0;
  std::vector<double> axis;

  SpinBoost(double alpha_, std::vector<double> axis_);
  int sphere_dim() const { return static_cast<int>(axis.size()) - 1; }
  double eta() const;
  SpinBoost inverse() const;  // same alpha, negated axis
  clifford::Multivector to_multivector() const;
};

// x' = [(1-a^2) x + 2a(1 + a(n.x)) n] / (1 + a^2 + 2a(n.x)).
// Works for sphere and ball points; output written to out (same size as x).
void moebius_apply(const SpinBoost& b, std::span<const double> x,
                   std::span<double> out);
std::vector<double> moebius_apply(const SpinBoost& b, std::span<const double> x);

// Inverse map; equals moebius_apply with the axis negated.
std::vector<double> moebius_inverse(const SpinBoost& b, std::span<const double> r);

// rho = (1-a^2)/(1 + a^2 + 2a(n.x)).
double conformal_factor(const SpinBoost& b, std::span<const double> x);

// Pullback of the ambient Euclidean metric by the map, full (n+1)x(n+1):
// rho^2 (delta_ij + 4a^2(x^2-1)/f^2 n_i n_j - (2a/f)(n_i x_j + n_j x_i)).
Matrix pullback_metric(const SpinBoost& b, std::span<const double> x);

// Surface-measure derivative rho^n and volume derivative rho^(n+2).
double rn_surface(const SpinBoost& b, std::span<const double> x);
double rn_volume(const SpinBoost& b, std::span<const double> x);

// Stereographic projection from the pole onto the hyperplane through the
// origin orthogonal to it: s(x) = (x - (n.x) n)/(1 - (n.x)). x = pole is a
// domain error (the image is at infinity).
std::vector<double> stereo_project(std::span<const double> pole,
                                   std::span<const double> x);

// Matrix of the induced SO+(1,n+1) transformation; row/column 0 is the
// scalar (time-like) paravector direction.
struct LorentzMatrix {
  int n = 0;  // sphere dimension; matrix is (n+2)x(n+2)
  Matrix m;

  double at(int mu, int nu) const { return m(mu, nu); }
  static LorentzMatrix identity(int sphere_dim);
};

// Columns are the conjugates g e_mu tau(g) expanded over {1, e_1 .. e_{n+1}}.
// Throws if g is not in the transformer group (conjugation leaves the
// paravector space).
LorentzMatrix boost_to_lorentz(const clifford::Multivector& g);
LorentzMatrix boost_to_lorentz(const SpinBoost& b);

// Residuals of the defining invariants: L^T eta L = eta, det L = 1, L00 >= 1.
bool lorentz_invariants_ok(const LorentzMatrix& L, double tol = tol::lorentz);

// phi_L(x)^i = (L^i_0 + L^i_j x^j)/(L^0_0 + L^0_j x^j).
std::vector<double> lorentz_apply(const LorentzMatrix& L, std::span<const double> x);

// f_r(L, x) = (L^0_0 + L^0_i x^i)^r. Satisfies the cocycle identity
// f_r(L L', x) = f_r(L, phi_{L'}(x)) f_r(L', x); r = -n gives the
// surface-measure derivative of phi_L.
double cocycle(const LorentzMatrix& L, std::span<const double> x, double r);

// Moebius action computed through the algebra: normalize g P(x) tau(g).
// Slow path kept as an independent route for cross-checks.
std::vector<double> moebius_apply_conjugation(const clifford::Multivector& g,
                                              std::span<const double> x);

// Helpers shared with the samplers; no SpinBoost construction or allocation.
namespace detail {
inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
void moebius_apply_raw(double alpha, std::span<const double> axis,
                       std::span<const double> x, std::span<double> out);
void moebius_inverse_raw(double alpha, std::span<const double> axis,
                         std::span<const double> r, std::span<double> out);
}  // namespace detail

}  // namespace qfract::conformal
