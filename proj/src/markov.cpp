#include "qfract/markov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "qfract/clifford.hpp"
#include "qfract/conformal.hpp"

namespace qfract::markov {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (threads <= 1 || n < 2) {
    body(0, n);
    return;
  }
  unsigned active = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  std::size_t chunk = (n + active - 1) / active;
  for (unsigned t = 0; t < active; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

}  // namespace

double sphere_area(int sphere_dim) {
  switch (sphere_dim) {
    case 1: return kTwoPi;
    case 2: return 4.0 * kPi;
    case 3: return 2.0 * kPi * kPi;
    default: throw std::invalid_argument("sphere_area: supported n are 1, 2, 3");
  }
}

DensitySurface make_sphere_surface(int sphere_dim,
                                   const std::vector<std::size_t>& shape) {
  DensitySurface s;
  s.kind = sphere_dim == 1 ? ChartKind::s1
           : sphere_dim == 2 ? ChartKind::s2
                             : ChartKind::s3;
  if (sphere_dim < 1 || sphere_dim > 3)
    throw std::invalid_argument("make_sphere_surface: supported n are 1, 2, 3");
  s.ambient_dim = sphere_dim + 1;
  s.shape = shape;
  if (shape.size() != static_cast<std::size_t>(sphere_dim))
    throw std::invalid_argument("make_sphere_surface: shape rank mismatch");

  if (s.kind == ChartKind::s1) {
    std::size_t m = shape[0];
    s.points.reserve(2 * m);
    s.weights.assign(m, kTwoPi / static_cast<double>(m));
    for (std::size_t j = 0; j < m; ++j) {
      double t = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
      s.points.push_back(std::cos(t));
      s.points.push_back(std::sin(t));
    }
    s.rows = 1;
    s.cols = m;
  } else if (s.kind == ChartKind::s2) {
    std::size_t nth = shape[0], nph = shape[1];
    s.points.reserve(3 * nth * nph);
    s.weights.reserve(nth * nph);
    for (std::size_t i = 0; i < nth; ++i) {
      double th_lo = kPi * static_cast<double>(i) / static_cast<double>(nth);
      double th_hi = kPi * static_cast<double>(i + 1) / static_cast<double>(nth);
      double th = 0.5 * (th_lo + th_hi);
      double band = std::cos(th_lo) - std::cos(th_hi);
      for (std::size_t j = 0; j < nph; ++j) {
        double ph = kTwoPi * static_cast<double>(j) / static_cast<double>(nph);
        s.points.push_back(std::sin(th) * std::cos(ph));
        s.points.push_back(std::sin(th) * std::sin(ph));
        s.points.push_back(std::cos(th));
        s.weights.push_back(band * kTwoPi / static_cast<double>(nph));
      }
    }
    s.rows = nth;
    s.cols = nph;
  } else {
    std::size_t nch = shape[0], nth = shape[1], nph = shape[2];
    s.points.reserve(4 * nch * nth * nph);
    s.weights.reserve(nch * nth * nph);
    for (std::size_t i = 0; i < nch; ++i) {
      double ch_lo = kPi * static_cast<double>(i) / static_cast<double>(nch);
      double ch_hi = kPi * static_cast<double>(i + 1) / static_cast<double>(nch);
      double ch = 0.5 * (ch_lo + ch_hi);
      // integral of sin^2 over the cell
      double wch = 0.5 * (ch_hi - ch_lo) -
                   0.25 * (std::sin(2.0 * ch_hi) - std::sin(2.0 * ch_lo));
      for (std::size_t j = 0; j < nth; ++j) {
        double th_lo = kPi * static_cast<double>(j) / static_cast<double>(nth);
        double th_hi = kPi * static_cast<double>(j + 1) / static_cast<double>(nth);
        double th = 0.5 * (th_lo + th_hi);
        double wth = std::cos(th_lo) - std::cos(th_hi);
        for (std::size_t l = 0; l < nph; ++l) {
          double ph = kTwoPi * static_cast<double>(l) / static_cast<double>(nph);
          s.points.push_back(std::cos(ch));
          s.points.push_back(std::sin(ch) * std::cos(th));
          s.points.push_back(std::sin(ch) * std::sin(th) * std::cos(ph));
          s.points.push_back(std::sin(ch) * std::sin(th) * std::sin(ph));
          s.weights.push_back(wch * wth * kTwoPi / static_cast<double>(nph));
        }
      }
    }
    s.rows = nch * nth;
    s.cols = nph;
  }
  s.values.assign(s.count(), 1.0);
  s.level = 0;
  return s;
}

void reset_to_uniform(DensitySurface& s) {
  s.values.assign(s.count(), 1.0);
  s.level = 0;
}

namespace {

double interp_s1(const DensitySurface& s, std::span<const double> x) {
  const std::size_t m = s.shape[0];
  double t = wrap_angle(std::atan2(x[1], x[0]));
  double pos = t / kTwoPi * static_cast<double>(m);
  std::size_t j0 = static_cast<std::size_t>(pos) % m;
  double frac = pos - std::floor(pos);
  std::size_t j1 = (j0 + 1) % m;
  return s.values[j0] * (1.0 - frac) + s.values[j1] * frac;
}

double interp_s2(const DensitySurface& s, std::span<const double> x) {
  const std::size_t nth = s.shape[0], nph = s.shape[1];
  double th = std::acos(std::clamp(x[2], -1.0, 1.0));
  double ph = wrap_angle(std::atan2(x[1], x[0]));

  double tp = th / kPi * static_cast<double>(nth) - 0.5;  // cell-center index
  double pp = ph / kTwoPi * static_cast<double>(nph);
  double tfloor = std::floor(tp);
  double pfloor = std::floor(pp);
  double tf = tp - tfloor, pf = pp - pfloor;
  long ti = static_cast<long>(tfloor);
  std::size_t pi0 = (static_cast<std::size_t>(pfloor)) % nph;
  std::size_t pi1 = (pi0 + 1) % nph;
  // Clamp the polar rows; the first/last band covers the pole caps.
  std::size_t ti0, ti1;
  if (ti < 0) {
    ti0 = ti1 = 0;
    tf = 0.0;
  } else if (ti + 1 >= static_cast<long>(nth)) {
    ti0 = ti1 = nth - 1;
    tf = 0.0;
  } else {
    ti0 = static_cast<std::size_t>(ti);
    ti1 = ti0 + 1;
  }
  auto at = [&](std::size_t a, std::size_t b) { return s.values[a * nph + b]; };
  double v0 = at(ti0, pi0) * (1.0 - pf) + at(ti0, pi1) * pf;
  double v1 = at(ti1, pi0) * (1.0 - pf) + at(ti1, pi1) * pf;
  return v0 * (1.0 - tf) + v1 * tf;
}

double interp_s3(const DensitySurface& s, std::span<const double> x) {
  const std::size_t nch = s.shape[0], nth = s.shape[1], nph = s.shape[2];
  double ch = std::acos(std::clamp(x[0], -1.0, 1.0));
  double rs = std::sqrt(std::max(0.0, 1.0 - x[0] * x[0]));
  double th = rs > 0.0 ? std::acos(std::clamp(x[1] / rs, -1.0, 1.0)) : 0.0;
  double ph = wrap_angle(std::atan2(x[3], x[2]));

  auto cell = [](double angle, double span, std::size_t n, std::size_t& i0,
                 std::size_t& i1, double& f) {
    double p = angle / span * static_cast<double>(n) - 0.5;
    double fl = std::floor(p);
    f = p - fl;
    long i = static_cast<long>(fl);
    if (i < 0) {
      i0 = i1 = 0;
      f = 0.0;
    } else if (i + 1 >= static_cast<long>(n)) {
      i0 = i1 = n - 1;
      f = 0.0;
    } else {
      i0 = static_cast<std::size_t>(i);
      i1 = i0 + 1;
    }
  };
  std::size_t c0, c1, t0, t1;
  double cf, tf;
  cell(ch, kPi, nch, c0, c1, cf);
  cell(th, kPi, nth, t0, t1, tf);
  double pp = ph / kTwoPi * static_cast<double>(nph);
  double pfloor = std::floor(pp);
  double pf = pp - pfloor;
  std::size_t p0 = static_cast<std::size_t>(pfloor) % nph;
  std::size_t p1 = (p0 + 1) % nph;

  auto at = [&](std::size_t a, std::size_t b, std::size_t c) {
    return s.values[(a * nth + b) * nph + c];
  };
  auto lerp = [](double u, double v, double f) { return u * (1.0 - f) + v * f; };
  double v00 = lerp(at(c0, t0, p0), at(c0, t0, p1), pf);
  double v01 = lerp(at(c0, t1, p0), at(c0, t1, p1), pf);
  double v10 = lerp(at(c1, t0, p0), at(c1, t0, p1), pf);
  double v11 = lerp(at(c1, t1, p0), at(c1, t1, p1), pf);
  return lerp(lerp(v00, v01, tf), lerp(v10, v11, tf), cf);
}

}  // namespace

double interpolate(const DensitySurface& s, std::span<const double> x) {
  switch (s.kind) {
    case ChartKind::s1: return interp_s1(s, x);
    case ChartKind::s2: return interp_s2(s, x);
    case ChartKind::s3: return interp_s3(s, x);
    default:
      throw std::invalid_argument("interpolate: surface has no chart");
  }
}

namespace {

void require_cost(const ifs::IFSSystem& s, int k, std::size_t batch) {
  double cost = std::pow(static_cast<double>(s.map_count()), k) *
                static_cast<double>(std::max<std::size_t>(batch, 1));
  if (cost > defaults::density_cost_cap)
    throw std::invalid_argument(
        "density_exact: N^k over the cost cap for this batch; use the grid path");
}

double density_exact_rec(const ifs::IFSSystem& s, std::span<const double> r,
                         int k, double prefactor, int exponent,
                         std::vector<double>& scratch) {
  if (k == 0) return 1.0;
  const double a = s.alpha();
  const std::size_t d = r.size();
  double* child = scratch.data() + (k - 1) * d;
  double sum = 0.0;
  for (std::size_t i = 0; i < s.map_count(); ++i) {
    std::span<const double> axis = s.axis(i);
    double nr = conformal::detail::dot(axis, r);
    double denom = 1.0 + a * a - 2.0 * a * nr;
    double cr = (1.0 - a * a) / denom;
    double cn = -2.0 * a * (1.0 - a * nr) / denom;
    for (std::size_t j = 0; j < d; ++j) child[j] = cr * r[j] + cn * axis[j];
    double fk = density_exact_rec(s, {child, d}, k - 1, prefactor, exponent, scratch);
    sum += fk / std::pow(denom, exponent);
  }
  return prefactor * sum;
}

double density_prefactor(const ifs::IFSSystem& s) {
  const double a = s.alpha();
  int n = s.sphere_dim();
  return std::pow(1.0 - a * a, n + 2) /
         (static_cast<double>(s.map_count()) * (1.0 + a * a));
}

}  // namespace

double density_exact(const ifs::IFSSystem& s, std::span<const double> r, int k) {
  if (k < 0) throw std::invalid_argument("density_exact: k must be >= 0");
  require_cost(s, k, 1);
  std::vector<double> scratch(static_cast<std::size_t>(std::max(k, 1)) * r.size());
  return density_exact_rec(s, r, k, density_prefactor(s), s.sphere_dim() + 1,
                           scratch);
}

std::vector<double> density_exact_batch(const ifs::IFSSystem& s,
                                        const DensitySurface& surface, int k,
                                        unsigned threads) {
  if (k < 0) throw std::invalid_argument("density_exact: k must be >= 0");
  require_cost(s, k, surface.count());
  std::vector<double> out(surface.count());
  const double pre = density_prefactor(s);
  const int expnt = s.sphere_dim() + 1;
  parallel_for(surface.count(), threads, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> scratch(static_cast<std::size_t>(std::max(k, 1)) *
                                surface.ambient_dim);
    for (std::size_t i = lo; i < hi; ++i)
      out[i] = density_exact_rec(s, surface.point(i), k, pre, expnt, scratch);
  });
  return out;
}

DensitySurface density_grid_iterate(const ifs::IFSSystem& s,
                                    const DensitySurface& surface,
                                    unsigned threads) {
  if (surface.kind == ChartKind::points)
    throw std::invalid_argument(
        "density_grid_iterate: needs a full-sphere chart, not a point list");
  if (surface.ambient_dim != s.ambient_dim())
    throw std::invalid_argument("density_grid_iterate: dimension mismatch");

  DensitySurface next = surface;
  next.level = surface.level + 1;
  next.config_name = s.config().name;
  next.alpha = s.alpha();
  const double a = s.alpha();
  const double pre = density_prefactor(s);
  const int expnt = s.sphere_dim() + 1;
  const std::size_t d = surface.ambient_dim;

  parallel_for(surface.count(), threads, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> pulled(d);
    for (std::size_t idx = lo; idx < hi; ++idx) {
      std::span<const double> r = surface.point(idx);
      double sum = 0.0;
      for (std::size_t i = 0; i < s.map_count(); ++i) {
        std::span<const double> axis = s.axis(i);
        double nr = conformal::detail::dot(axis, r);
        double denom = 1.0 + a * a - 2.0 * a * nr;
        double cr = (1.0 - a * a) / denom;
        double cn = -2.0 * a * (1.0 - a * nr) / denom;
        for (std::size_t j = 0; j < d; ++j) pulled[j] = cr * r[j] + cn * axis[j];
        sum += interpolate(surface, pulled) / std::pow(denom, expnt);
      }
      next.values[idx] = pre * sum;
    }
  });
  return next;
}

double integrate_density(const DensitySurface& s) {
  if (s.weights.empty())
    throw std::invalid_argument("integrate_density: surface has no weights");
  double sum = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i)
    sum += s.weights[i] * s.values[i];
  return sum;
}

double integrate_density_mc(const ifs::IFSSystem& s, int k, std::size_t samples,
                            std::uint64_t seed, double* sigma_out,
                            unsigned threads) {
  if (samples == 0) throw std::invalid_argument("integrate_density_mc: no samples");
  require_cost(s, k, samples);
  const int d = s.ambient_dim();
  const double pre = density_prefactor(s);
  const int expnt = s.sphere_dim() + 1;
  const double area = sphere_area(s.sphere_dim());

  // Fixed shard count: totals are independent of the worker count.
  const unsigned shards = 64;
  std::vector<double> sums(shards, 0.0), sums2(shards, 0.0);
  parallel_for(shards, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t shard = lo; shard < hi; ++shard) {
      Rng rng(seed, shard);
      std::vector<double> x(d);
      std::vector<double> scratch(static_cast<std::size_t>(std::max(k, 1)) * d);
      std::size_t n = samples / shards + (shard < samples % shards ? 1 : 0);
      double acc = 0.0, acc2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double n2 = 0.0;
        for (int j = 0; j < d; ++j) {
          x[j] = rng.next_normal();
          n2 += x[j] * x[j];
        }
        double inv = 1.0 / std::sqrt(n2);
        for (int j = 0; j < d; ++j) x[j] *= inv;
        double f = density_exact_rec(s, x, k, pre, expnt, scratch);
        acc += f;
        acc2 += f * f;
      }
      sums[shard] = acc;
      sums2[shard] = acc2;
    }
  });
  double total = 0.0, total2 = 0.0;
  for (unsigned i = 0; i < shards; ++i) {
    total += sums[i];
    total2 += sums2[i];
  }
  double mean = total / static_cast<double>(samples);
  double var = total2 / static_cast<double>(samples) - mean * mean;
  if (sigma_out)
    *sigma_out = area * std::sqrt(std::max(0.0, var) / static_cast<double>(samples));
  return area * mean;
}

TraceOperator trace_operator(const ifs::IFSSystem& s) {
  using clifford::Multivector;
  const int d = s.ambient_dim();
  clifford::Signature sig = clifford::euclidean(d);
  const double a = s.alpha();
  const double norm = 1.0 / (static_cast<double>(s.map_count()) * (1.0 + a * a));

  TraceOperator op;
  op.ambient_dim = d;
  op.m = Matrix(d + 1, d + 1);
  for (int col = 0; col <= d; ++col) {
    Multivector basis = col == 0 ? Multivector::scalar(sig, 1.0)
                                 : Multivector::basis_vector(sig, col - 1);
    Multivector acc(sig);
    for (std::size_t i = 0; i < s.map_count(); ++i) {
      std::vector<double> scaled(s.axis(i).begin(), s.axis(i).end());
      for (double& v : scaled) v *= a;
      Multivector p = Multivector::paravector(sig, 1.0, scaled);
      acc += geometric_product(geometric_product(p, basis), p);
    }
    acc *= norm;
    if (acc.norm_inf_above_grade1() > 1e-12 * std::max(1.0, acc.norm_inf()))
      throw std::logic_error("trace_operator: V left the paravector space");
    op.m(0, col) = acc[0];
    for (int row = 1; row <= d; ++row)
      op.m(row, col) = acc[std::size_t{1} << (row - 1)];
  }
  return op;
}

std::vector<double> vector_block_eigenvalues(const TraceOperator& op) {
  const int d = op.ambient_dim;
  Matrix block(d, d);
  double asym = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      block(i, j) = op.m(i + 1, j + 1);
      asym = std::max(asym, std::fabs(op.m(i + 1, j + 1) - op.m(j + 1, i + 1)));
    }
  if (asym > 1e-10)
    throw std::logic_error("vector_block_eigenvalues: block is not symmetric");
  // Symmetrize the rounding noise away before the Jacobi sweep.
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      double v = 0.5 * (block(i, j) + block(j, i));
      block(i, j) = block(j, i) = v;
    }
  return symmetric_eigenvalues(std::move(block));
}

FixedPointResult trace_fixed_point(const TraceOperator& op,
                                   std::span<const double> a0, double tol) {
  const std::size_t n = op.m.rows;
  std::vector<double> a(n, 0.0);
  if (a0.empty()) {
    a[0] = 1.0;
  } else {
    if (a0.size() != n)
      throw std::invalid_argument("trace_fixed_point: a0 dimension mismatch");
    if (std::fabs(a0[0] - 1.0) > 1e-12)
      throw std::invalid_argument("trace_fixed_point: Phi(a0) must be 1");
    for (std::size_t i = 0; i < n; ++i) a[i] = a0[i];
  }

  auto vec_norm = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 1; i < n; ++i) s += v[i] * v[i];
    return std::sqrt(s);
  };

  FixedPointResult res;
  std::vector<double> next(n);
  double rate_acc = 0.0;
  std::size_t rate_count = 0;
  for (std::size_t it = 0; it < defaults::max_power_iterations; ++it) {
    double before = vec_norm(a);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += op.m(i, j) * a[j];
      next[i] = s;
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::fabs(next[i] - a[i]));
    double after = vec_norm(next);
    if (before > 1e-10 && after > 0.0) {
      rate_acc += after / before;
      ++rate_count;
    }
    a.swap(next);
    if (diff < tol) {
      res.element = a;
      res.iterations = it + 1;
      res.fitted_rate = rate_count ? rate_acc / static_cast<double>(rate_count) : 0.0;
      return res;
    }
  }
  throw std::runtime_error("trace_fixed_point: no convergence within the iteration cap");
}

}  // namespace qfract::markov
