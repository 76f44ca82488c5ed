#include "qfract/conformal.hpp"

#include <cmath>
#include <stdexcept>

namespace qfract::conformal {

using clifford::Multivector;

namespace {

void require_dim(const SpinBoost& b, std::span<const double> x) {
  if (x.size() != b.axis.size())
    throw std::invalid_argument("conformal: point/axis dimension mismatch");
}

}  // namespace

SpinBoost::SpinBoost(double alpha_, std::vector<double> axis_)
    : alpha(alpha_), axis(std::move(axis_)) {
  if (alpha < 0.0 || alpha >= 1.0)
    throw std::invalid_argument("SpinBoost: alpha must be in [0,1)");
  double n2 = 0.0;
  for (double v : axis) n2 += v * v;
  if (std::fabs(std::sqrt(n2) - 1.0) > tol::unit_norm)
    throw std::invalid_argument("SpinBoost: axis must be a unit vector");
}

double SpinBoost::eta() const { return 2.0 * std::atanh(alpha); }

SpinBoost SpinBoost::inverse() const {
  std::vector<double> neg(axis.size());
  for (std::size_t i = 0; i < axis.size(); ++i) neg[i] = -axis[i];
  return SpinBoost(alpha, std::move(neg));
}

Multivector SpinBoost::to_multivector() const {
  return clifford::boost_from_alpha(alpha, axis);
}

namespace detail {

void moebius_apply_raw(double alpha, std::span<const double> axis,
                       std::span<const double> x, std::span<double> out) {
  double nx = dot(axis, x);
  double denom = 1.0 + alpha * alpha + 2.0 * alpha * nx;
  double cx = (1.0 - alpha * alpha) / denom;
  double cn = 2.0 * alpha * (1.0 + alpha * nx) / denom;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = cx * x[i] + cn * axis[i];
}

void moebius_inverse_raw(double alpha, std::span<const double> axis,
                         std::span<const double> r, std::span<double> out) {
  double nr = dot(axis, r);
  double denom = 1.0 + alpha * alpha - 2.0 * alpha * nr;
  double cr = (1.0 - alpha * alpha) / denom;
  double cn = -2.0 * alpha * (1.0 - alpha * nr) / denom;
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = cr * r[i] + cn * axis[i];
}

}  // namespace detail

void moebius_apply(const SpinBoost& b, std::span<const double> x,
                   std::span<double> out) {
  require_dim(b, x);
  detail::moebius_apply_raw(b.alpha, b.axis, x, out);
}

std::vector<double> moebius_apply(const SpinBoost& b, std::span<const double> x) {
  std::vector<double> out(x.size());
  moebius_apply(b, x, out);
  return out;
}

std::vector<double> moebius_inverse(const SpinBoost& b, std::span<const double> r) {
  require_dim(b, r);
  std::vector<double> out(r.size());
  detail::moebius_inverse_raw(b.alpha, b.axis, r, out);
  return out;
}

double conformal_factor(const SpinBoost& b, std::span<const double> x) {
  require_dim(b, x);
  double nx = detail::dot(b.axis, x);
  return (1.0 - b.alpha * b.alpha) / (1.0 + b.alpha * b.alpha + 2.0 * b.alpha * nx);
}

Matrix pullback_metric(const SpinBoost& b, std::span<const double> x) {
  require_dim(b, x);
  const std::size_t d = x.size();
  double a = b.alpha;
  double nx = detail::dot(b.axis, x);
  double x2 = detail::dot(x, x);
  double f = 1.0 + a * a + 2.0 * a * nx;
  double rho = (1.0 - a * a) / f;
  double cnn = 4.0 * a * a * (x2 - 1.0) / (f * f);
  double cmix = 2.0 * a / f;
  Matrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double v = (i == j ? 1.0 : 0.0);
      v += cnn * b.axis[i] * b.axis[j];
      v -= cmix * (b.axis[i] * x[j] + b.axis[j] * x[i]);
      g(i, j) = rho * rho * v;
    }
  return g;
}

double rn_surface(const SpinBoost& b, std::span<const double> x) {
  return std::pow(conformal_factor(b, x), b.sphere_dim());
}

double rn_volume(const SpinBoost& b, std::span<const double> x) {
  return std::pow(conformal_factor(b, x), b.sphere_dim() + 2);
}

std::vector<double> stereo_project(std::span<const double> pole,
                                   std::span<const double> x) {
  if (pole.size() != x.size())
    throw std::invalid_argument("stereo_project: dimension mismatch");
  double nx = conformal::detail::dot(pole, x);
  double denom = 1.0 - nx;
  if (denom < 1e-14)
    throw std::domain_error("stereo_project: x is the projection pole");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = (x[i] - nx * pole[i]) / denom;
  return out;
}

LorentzMatrix LorentzMatrix::identity(int sphere_dim) {
  LorentzMatrix L;
  L.n = sphere_dim;
  L.m = Matrix::identity(static_cast<std::size_t>(sphere_dim) + 2);
  return L;
}

LorentzMatrix boost_to_lorentz(const Multivector& g) {
  double delta;
  if (!clifford::norm_delta_scalar(g, delta) || std::fabs(delta - 1.0) > 1e-9)
    throw std::invalid_argument("boost_to_lorentz: Delta(g) != 1");
  if (!clifford::is_paravector_preserving(g))
    throw std::invalid_argument("boost_to_lorentz: g is not in the transformer group");

  const int d = g.sig().dim();  // ambient n+1
  Multivector gt = clifford::involution(g, clifford::Involution::tau);
  LorentzMatrix L;
  L.n = d - 1;
  L.m = Matrix(d + 1, d + 1);
  for (int mu = 0; mu <= d; ++mu) {
    Multivector basis = mu == 0 ? Multivector::scalar(g.sig(), 1.0)
                                : Multivector::basis_vector(g.sig(), mu - 1);
    Multivector col = geometric_product(geometric_product(g, basis), gt);
    L.m(0, mu) = col[0];
    for (int i = 1; i <= d; ++i) L.m(i, mu) = col[std::size_t{1} << (i - 1)];
  }
  return L;
}

LorentzMatrix boost_to_lorentz(const SpinBoost& b) {
  return boost_to_lorentz(b.to_multivector());
}

bool lorentz_invariants_ok(const LorentzMatrix& L, double tol) {
  const std::size_t d = L.m.rows;
  Matrix eta = Matrix::identity(d);
  for (std::size_t i = 1; i < d; ++i) eta(i, i) = -1.0;
  Matrix g = matmul(matmul(transpose(L.m), eta), L.m);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (std::fabs(g(i, j) - eta(i, j)) > tol) return false;
  if (L.m(0, 0) < 1.0 - tol) return false;
  return std::fabs(determinant(L.m) - 1.0) <= tol;
}

std::vector<double> lorentz_apply(const LorentzMatrix& L, std::span<const double> x) {
  const int d = L.n + 1;
  if (static_cast<int>(x.size()) != d)
    throw std::invalid_argument("lorentz_apply: dimension mismatch");
  double denom = L.m(0, 0);
  for (int j = 0; j < d; ++j) denom += L.m(0, j + 1) * x[j];
  std::vector<double> out(d);
  for (int i = 0; i < d; ++i) {
    double num = L.m(i + 1, 0);
    for (int j = 0; j < d; ++j) num += L.m(i + 1, j + 1) * x[j];
    out[i] = num / denom;
  }
  return out;
}

double cocycle(const LorentzMatrix& L, std::span<const double> x, double r) {
  const int d = L.n + 1;
  if (static_cast<int>(x.size()) != d)
    throw std::invalid_argument("cocycle: dimension mismatch");
  double base = L.m(0, 0);
  for (int j = 0; j < d; ++j) base += L.m(0, j + 1) * x[j];
  return std::pow(base, r);
}

std::vector<double> moebius_apply_conjugation(const Multivector& g,
                                              std::span<const double> x) {
  const int d = g.sig().dim();
  if (static_cast<int>(x.size()) != d)
    throw std::invalid_argument("moebius_apply_conjugation: dimension mismatch");
  Multivector px = Multivector::paravector(g.sig(), 1.0, x);
  Multivector r = geometric_product(
      geometric_product(g, px), clifford::involution(g, clifford::Involution::tau));
  double y0 = r[0];
  if (y0 <= 0.0)
    throw std::domain_error("moebius_apply_conjugation: nonpositive scalar part");
  std::vector<double> out(d);
  for (int i = 0; i < d; ++i) out[i] = r[std::size_t{1} << i] / y0;
  return out;
}

}  // namespace qfract::conformal
