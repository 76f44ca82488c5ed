#include "qfract/clifford.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qfract/linalg.hpp"

namespace qfract::clifford {

namespace {

void require_same_sig(const Multivector& a, const Multivector& b) {
  if (!(a.sig() == b.sig()))
    throw std::invalid_argument("clifford: signature mismatch");
}

void require_valid(Signature sig) {
  if (sig.p < 0 || sig.q < 0 || sig.dim() > defaults::max_clifford_dim)
    throw std::invalid_argument("clifford: signature out of range");
}

int grade_of(std::uint32_t mask) { return std::popcount(mask); }

// (e_I, e_I) = product of generator squares in I.
int self_inner_sign(Signature sig, std::uint32_t mask) {
  int s = 1;
  while (mask) {
    int i = std::countr_zero(mask);
    s *= sig.metric(i);
    mask &= mask - 1;
  }
  return s;
}

}  // namespace

Signature euclidean(int n) {
  Signature s{n, 0};
  require_valid(s);
  return s;
}

Signature paravector_ambient(int n) {
  Signature s{1, n};
  require_valid(s);
  return s;
}

Multivector::Multivector(Signature sig) : sig_(sig), c_(sig.size(), 0.0) {
  require_valid(sig);
}

Multivector Multivector::scalar(Signature sig, double value) {
  Multivector m(sig);
  m.c_[0] = value;
  return m;
}

Multivector Multivector::basis_vector(Signature sig, int i) {
  if (i < 0 || i >= sig.dim())
    throw std::invalid_argument("basis_vector: index out of range");
  Multivector m(sig);
  m.c_[std::uint32_t{1} << i] = 1.0;
  return m;
}

Multivector Multivector::blade(Signature sig, std::uint32_t mask, double coeff) {
  Multivector m(sig);
  if (mask >= m.size()) throw std::invalid_argument("blade: mask out of range");
  m.c_[mask] = coeff;
  return m;
}

Multivector Multivector::paravector(Signature sig, double x0,
                                    std::span<const double> x) {
  if (static_cast<int>(x.size()) != sig.dim())
    throw std::invalid_argument("paravector: dimension mismatch");
  Multivector m(sig);
  m.c_[0] = x0;
  for (std::size_t i = 0; i < x.size(); ++i) m.c_[std::size_t{1} << i] = x[i];
  return m;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  require_same_sig(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  require_same_sig(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

double Multivector::norm_inf() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::fabs(v));
  return m;
}

double Multivector::norm_inf_above_grade1() const {
  double m = 0.0;
  for (std::size_t mask = 0; mask < c_.size(); ++mask)
    if (grade_of(static_cast<std::uint32_t>(mask)) >= 2)
      m = std::max(m, std::fabs(c_[mask]));
  return m;
}

int blade_product_sign(Signature sig, std::uint32_t a, std::uint32_t b) {
  // Count transpositions needed to move each generator of b past the higher
  // generators of a, then fold in the metric of the common generators.
  int swaps = 0;
  std::uint32_t rest = a >> 1;
  while (rest) {
    swaps += std::popcount(rest & b);
    rest >>= 1;
  }
  int sign = (swaps & 1) ? -1 : 1;
  std::uint32_t common = a & b;
  while (common) {
    int i = std::countr_zero(common);
    sign *= sig.metric(i);
    common &= common - 1;
  }
  return sign;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  require_same_sig(a, b);
  Multivector r(a.sig());
  const std::size_t n = a.size();
  for (std::uint32_t i = 0; i < n; ++i) {
    double ai = a[i];
    if (ai == 0.0) continue;
    for (std::uint32_t j = 0; j < n; ++j) {
      double bj = b[j];
      if (bj == 0.0) continue;
      int s = blade_product_sign(a.sig(), i, j);
      r[i ^ j] += s * ai * bj;
    }
  }
  return r;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}

Multivector involution(const Multivector& a, Involution kind) {
  Multivector r = a;
  for (std::uint32_t mask = 0; mask < r.size(); ++mask) {
    int k = grade_of(mask);
    int e;
    switch (kind) {
      case Involution::pi: e = k; break;
      case Involution::tau: e = k * (k - 1) / 2; break;
      default: e = k * (k + 1) / 2; break;
    }
    if (e & 1) r[mask] = -r[mask];
  }
  return r;
}

double trace_phi(const Multivector& a) { return a[0]; }

Multivector norm_delta(const Multivector& a) {
  return geometric_product(involution(a, Involution::nu), a);
}

bool norm_delta_scalar(const Multivector& a, double& out, double tol) {
  Multivector d = norm_delta(a);
  out = d[0];
  double scale = std::max(1.0, d.norm_inf());
  d[0] = 0.0;
  return d.norm_inf() <= tol * scale;
}

double inner(const Multivector& a, const Multivector& b) {
  require_same_sig(a, b);
  double s = 0.0;
  for (std::uint32_t mask = 0; mask < a.size(); ++mask)
    if (a[mask] != 0.0 && b[mask] != 0.0)
      s += self_inner_sign(a.sig(), mask) * a[mask] * b[mask];
  return s;
}

Multivector grade_project(const Multivector& a, int k) {
  if (k < 0 || k > a.sig().dim())
    throw std::invalid_argument("grade_project: grade out of range");
  Multivector r(a.sig());
  for (std::uint32_t mask = 0; mask < a.size(); ++mask)
    if (grade_of(mask) == k) r[mask] = a[mask];
  return r;
}

bool is_positive(const Multivector& a, double tol) {
  Multivector at = involution(a, Involution::tau);
  double scale = std::max(1.0, a.norm_inf());
  for (std::uint32_t mask = 0; mask < a.size(); ++mask)
    if (std::fabs(at[mask] - a[mask]) > tol * scale) return false;

  // Gram matrix M_IJ = (e_I, a e_J); PSD iff (v, a v) >= 0 for all v.
  const std::size_t n = a.size();
  Matrix m(n, n);
  for (std::uint32_t j = 0; j < n; ++j) {
    Multivector col = geometric_product(a, Multivector::blade(a.sig(), j));
    for (std::uint32_t i = 0; i < n; ++i)
      m(i, j) = self_inner_sign(a.sig(), i) * col[i];
  }
  std::vector<double> ev = symmetric_eigenvalues(std::move(m));
  double ev_scale = std::max(1.0, std::max(std::fabs(ev.front()), std::fabs(ev.back())));
  return ev.front() >= -tol * ev_scale;
}

bool is_paravector_preserving(const Multivector& a, double tol) {
  // Transformers have a scalar norm; requiring it here rules out elements
  // like 1 + e1e2e3 whose two-sided conjugation happens to stay in R + V
  // even though they are not transformers.
  double delta;
  if (!norm_delta_scalar(a, delta, tol)) return false;
  Multivector at = involution(a, Involution::tau);
  const int d = a.sig().dim();
  for (int w = -1; w < d; ++w) {
    Multivector basis = w < 0 ? Multivector::scalar(a.sig(), 1.0)
                              : Multivector::basis_vector(a.sig(), w);
    Multivector r = geometric_product(geometric_product(a, basis), at);
    double scale = std::max(1.0, r.norm_inf());
    if (r.norm_inf_above_grade1() > tol * scale) return false;
  }
  return true;
}

double Paravector::delta() const {
  double n2 = 0.0;
  for (double v : x) n2 += v * v;
  return x0 * x0 - n2;
}

Multivector Paravector::to_multivector() const {
  return Multivector::paravector(euclidean(dim()), x0, x);
}

Paravector Paravector::from_multivector(const Multivector& a, double tol) {
  double scale = std::max(1.0, a.norm_inf());
  if (a.norm_inf_above_grade1() > tol * scale)
    throw std::invalid_argument("from_multivector: not a paravector");
  Paravector p;
  p.x0 = a[0];
  p.x.resize(a.sig().dim());
  for (int i = 0; i < a.sig().dim(); ++i) p.x[i] = a[std::size_t{1} << i];
  return p;
}

Paravector paravector_sqrt(const Paravector& a) {
  if (std::fabs(a.x0 - 1.0) > tol::scalar_residue)
    throw std::invalid_argument("paravector_sqrt: scalar part must be 1");
  double alpha2 = 0.0;
  for (double v : a.x) alpha2 += v * v;
  double alpha = std::sqrt(alpha2);
  if (alpha > 1.0) {
    if (alpha > 1.0 + tol::scalar_residue)
      throw std::invalid_argument("paravector_sqrt: Delta(a) < 0");
    alpha = 1.0;
  }
  Paravector b;
  b.x.assign(a.x.size(), 0.0);
  if (alpha == 0.0) {
    b.x0 = 1.0;
    return b;
  }
  // eps = (1 - sqrt(1 - alpha^2))/alpha in cancellation-free form; the
  // boundary alpha = 1 lands on sqrt(a) = a/sqrt(2) automatically.
  double eps = alpha / (1.0 + std::sqrt(std::max(0.0, 1.0 - alpha * alpha)));
  double inv = 1.0 / std::sqrt(1.0 + eps * eps);
  b.x0 = inv;
  for (std::size_t i = 0; i < a.x.size(); ++i) b.x[i] = inv * eps * a.x[i] / alpha;
  return b;
}

Multivector exp_boost(double eta, std::span<const double> axis) {
  if (eta < 0.0) throw std::invalid_argument("exp_boost: eta must be >= 0");
  double n2 = 0.0;
  for (double v : axis) n2 += v * v;
  if (std::fabs(std::sqrt(n2) - 1.0) > tol::unit_norm)
    throw std::invalid_argument("exp_boost: axis must be a unit vector");
  Signature sig = euclidean(static_cast<int>(axis.size()));
  Multivector m(sig);
  m[0] = std::cosh(eta / 2.0);
  double s = std::sinh(eta / 2.0);
  for (std::size_t i = 0; i < axis.size(); ++i) m[std::size_t{1} << i] = s * axis[i];
  return m;
}

Multivector boost_from_alpha(double alpha, std::span<const double> axis) {
  if (alpha < 0.0 || alpha >= 1.0)
    throw std::invalid_argument("boost_from_alpha: alpha must be in [0,1)");
  double n2 = 0.0;
  for (double v : axis) n2 += v * v;
  if (std::fabs(std::sqrt(n2) - 1.0) > tol::unit_norm)
    throw std::invalid_argument("boost_from_alpha: axis must be a unit vector");
  Signature sig = euclidean(static_cast<int>(axis.size()));
  double inv = 1.0 / std::sqrt(1.0 - alpha * alpha);
  Multivector m(sig);
  m[0] = inv;
  for (std::size_t i = 0; i < axis.size(); ++i)
    m[std::size_t{1} << i] = inv * alpha * axis[i];
  return m;
}

std::pair<Multivector, Multivector> polar_decompose(const Multivector& g) {
  double delta;
  if (!norm_delta_scalar(g, delta) || std::fabs(delta - 1.0) > tol::scalar_residue)
    throw std::invalid_argument("polar_decompose: Delta(g) != 1");
  if (!is_paravector_preserving(g))
    throw std::invalid_argument("polar_decompose: g does not preserve paravectors");

  Multivector m2 = geometric_product(g, involution(g, Involution::tau));
  Paravector p2;
  try {
    p2 = Paravector::from_multivector(m2);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("polar_decompose: g tau(g) is not a paravector");
  }
  if (p2.x0 <= 0.0 || p2.delta() < -tol::scalar_residue)
    throw std::invalid_argument("polar_decompose: g tau(g) is not positive");

  // m2 = y0 (1 + alpha n); sqrt scales by sqrt(y0).
  Paravector unitized = p2;
  unitized.x0 = 1.0;
  for (double& v : unitized.x) v /= p2.x0;
  Paravector root = paravector_sqrt(unitized);
  double scale = std::sqrt(p2.x0);
  Paravector mp;
  mp.x0 = scale * root.x0;
  mp.x.resize(root.x.size());
  for (std::size_t i = 0; i < root.x.size(); ++i) mp.x[i] = scale * root.x[i];

  Multivector m = mp.to_multivector();
  // Delta(m) = 1, so m^{-1} = nu(m) = x0 - x.
  Paravector minv = mp;
  for (double& v : minv.x) v = -v;
  Multivector u = geometric_product(minv.to_multivector(), g);
  return {m, u};
}

}  // namespace qfract::clifford
