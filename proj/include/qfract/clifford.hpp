#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfract/config.hpp"

namespace qfract::clifford {

// Signature (p,q): p generators squaring to +1, then q squaring to -1.
struct Signature {
  int p = 0;
  int q = 0;

  int dim() const { return p + q; }
  std::size_t size() const { return std::size_t{1} << dim(); }
  // +1 or -1 square of generator i (0-based, canonical order e1 < e2 < ...).
  int metric(int i) const { return i < p ? 1 : -1; }
  bool operator==(const Signature&) const = default;
};

Signature euclidean(int n);           // Cl(n,0)
Signature paravector_ambient(int n);  // Cl(1,n), the algebra of V^1 for Cl(n,0)

// Element of Cl(p,q): dense coefficients indexed by blade bitmask, bit i set
// when generator e_{i+1} is a factor. Blade 0 is the scalar unit.
class Multivector {
 public:
  explicit Multivector(Signature sig);

  static Multivector scalar(Signature sig, double value);
  static Multivector basis_vector(Signature sig, int i);  // e_{i+1}
  static Multivector blade(Signature sig, std::uint32_t mask, double coeff = 1.0);
  // 1 + x with x a vector; x.size() must equal sig.dim().
  static Multivector paravector(Signature sig, double x0, std::span<const double> x);

  const Signature& sig() const { return sig_; }
  std::size_t size() const { return c_.size(); }
  double operator[](std::size_t mask) const { return c_[mask]; }
  double& operator[](std::size_t mask) { return c_[mask]; }
  const std::vector<double>& coeffs() const { return c_; }

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator*(const Multivector& a, const Multivector& b);

  double norm_inf() const;
  // Max |coefficient| over blades of grade >= 2.
  double norm_inf_above_grade1() const;

 private:
  Signature sig_;
  std::vector<double> c_;
};

// Sign picked up when multiplying basis blades a*b (reordering swaps plus
// the metric of the annihilated common generators). Result blade is a^b.
int blade_product_sign(Signature sig, std::uint32_t a, std::uint32_t b);

Multivector geometric_product(const Multivector& a, const Multivector& b);

enum class Involution { pi, tau, nu };

// pi: grade k -> (-1)^k; tau: (-1)^(k(k-1)/2); nu = pi o tau: (-1)^(k(k+1)/2).
Multivector involution(const Multivector& a, Involution kind);

// Scalar part a_0; a trace up to normalization.
double trace_phi(const Multivector& a);

// Delta(a) = nu(a) a.
Multivector norm_delta(const Multivector& a);
// Scalar part of Delta(a); fails (returns false) if Delta has a non-scalar
// part above `tol` relative to its magnitude.
bool norm_delta_scalar(const Multivector& a, double& out,
                       double tol = tol::scalar_residue);

// (a,b) = Phi(tau(a) b) = sum_I a_I b_I (e_I, e_I).
double inner(const Multivector& a, const Multivector& b);

Multivector grade_project(const Multivector& a, int k);

// a >= 0: a = tau(a) and the Gram matrix (e_I, a e_J) is PSD.
bool is_positive(const Multivector& a, double tol = tol::positivity);

// Whether a has a scalar norm and a w tau(a) stays in R + V for every basis
// paravector w (enough by linearity); the membership test for the
// transformer semigroup.
bool is_paravector_preserving(const Multivector& a,
                              double tol = tol::paravector_membership);

// Paravector x0 + x over the Euclidean algebra Cl(n,0).
struct Paravector {
  double x0 = 0.0;
  std::vector<double> x;

  int dim() const { return static_cast<int>(x.size()); }
  double delta() const;  // x0^2 - |x|^2
  Multivector to_multivector() const;
  static Paravector from_multivector(const Multivector& a,
                                     double tol = tol::scalar_residue);
};

// Positive square root of a = 1 + alpha n, 0 <= alpha <= 1:
// sqrt(a) = (1 + eps n)/sqrt(1 + eps^2) with eps = alpha/(1 + sqrt(1-alpha^2)).
Paravector paravector_sqrt(const Paravector& a);

// cosh(eta/2) + sinh(eta/2) n in Cl(dim(axis), 0); axis must be unit.
Multivector exp_boost(double eta, std::span<const double> axis);

// Boost as (1 + alpha n)/sqrt(1 - alpha^2), 0 <= alpha < 1.
Multivector boost_from_alpha(double alpha, std::span<const double> axis);

// g = m u with m a positive boost (m^2 = g tau(g)) and u tau(u) = 1.
// Requires an even g with Delta(g) = 1 that preserves the paravector space.
std::pair<Multivector, Multivector> polar_decompose(const Multivector& g);

}  // namespace qfract::clifford
