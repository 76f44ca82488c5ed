#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qfract/clifford.hpp"
#include "qfract/conformal.hpp"
#include "qfract/markov.hpp"
#include "qfract/rng.hpp"

using namespace qfract;
using namespace qfract::markov;
namespace poly = qfract::polytopes;
namespace ca = qfract::clifford;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("exact density basics") {
  ifs::IFSSystem pentagon(poly::polygon(5), 0.58);
  double r[2] = {1.0, 0.0};
  CHECK(density_exact(pentagon, r, 0) == 1.0);

  // Antipodal pair, alpha = 1/2, point orthogonal to the axis: (3/5)^3.
  ifs::IFSSystem pair(poly::polygon(2), 0.5);
  double q[2] = {0.0, 1.0};
  CHECK(density_exact(pair, q, 1) == doctest::Approx(0.216).epsilon(1e-14));

  CHECK_THROWS_AS(density_exact(pentagon, r, 30), std::invalid_argument);
}

TEST_CASE("recursion composes associatively") {
  // f_k evaluated directly equals one more recurrence step applied to f_{k-1}
  // evaluated at the pulled-back points; spot-check via full recomputation at
  // staggered depths.
  ifs::IFSSystem pentagon(poly::polygon(5), 0.58);
  Rng rng(61, 0);
  for (int t = 0; t < 25; ++t) {
    double th = 2.0 * kPi * rng.next_double();
    double r[2] = {std::cos(th), std::sin(th)};
    double f3 = density_exact(pentagon, r, 3);

    const double a = 0.58;
    double sum = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      std::span<const double> axis = pentagon.axis(i);
      double nr = axis[0] * r[0] + axis[1] * r[1];
      double denom = 1.0 + a * a - 2.0 * a * nr;
      double pulled[2] = {((1 - a * a) * r[0] - 2 * a * (1 - a * nr) * axis[0]) / denom,
                          ((1 - a * a) * r[1] - 2 * a * (1 - a * nr) * axis[1]) / denom};
      sum += density_exact(pentagon, pulled, 2) / (denom * denom);
    }
    double pre = std::pow(1.0 - a * a, 3) / (5.0 * (1.0 + a * a));
    CHECK(f3 == doctest::Approx(pre * sum).epsilon(1e-12));
  }
}

TEST_CASE("sphere surfaces carry exact quadrature") {
  DensitySurface s1 = make_sphere_surface(1, {512});
  CHECK(integrate_density(s1) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  DensitySurface s2 = make_sphere_surface(2, {64, 128});
  CHECK(integrate_density(s2) == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  DensitySurface s3 = make_sphere_surface(3, {24, 24, 48});
  CHECK(integrate_density(s3) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-12));
}

TEST_CASE("grid iterate approaches the exact recursion on the pentagon") {
  ifs::IFSSystem pentagon(poly::polygon(5), 0.58);
  DensitySurface grid = make_sphere_surface(1, {4096});
  double worst = 0.0;
  for (int k = 1; k <= 4; ++k) {
    grid = density_grid_iterate(pentagon, grid, 2);
    CHECK(grid.level == k);
    std::vector<double> exact = density_exact_batch(pentagon, grid, k, 2);
    for (std::size_t i = 0; i < exact.size(); ++i)
      worst = std::max(worst, std::fabs(grid.values[i] - exact[i]) / exact[i]);
  }
  CHECK(worst < 1e-3);

  // Doubling the grid at least halves the error at k = 3.
  auto error_at = [&](std::size_t m) {
    DensitySurface g = make_sphere_surface(1, {m});
    for (int k = 0; k < 3; ++k) g = density_grid_iterate(pentagon, g, 2);
    std::vector<double> exact = density_exact_batch(pentagon, g, 3, 2);
    double w = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i)
      w = std::max(w, std::fabs(g.values[i] - exact[i]) / exact[i]);
    return w;
  };
  double e1 = error_at(1024);
  double e2 = error_at(2048);
  CHECK(e2 < 0.5 * e1);
}

TEST_CASE("level 0 copies the input and values stay nonnegative") {
  ifs::IFSSystem octa(poly::platonic("octahedron"), 0.6);
  DensitySurface g = make_sphere_surface(2, {96, 192});
  for (double v : g.values) CHECK(v == 1.0);
  for (int k = 0; k < 3; ++k) {
    g = density_grid_iterate(octa, g, 2);
    for (double v : g.values) CHECK(v >= 0.0);
  }
  DensitySurface pts;
  pts.kind = ChartKind::points;
  pts.ambient_dim = 3;
  pts.points = {1.0, 0.0, 0.0};
  pts.values = {1.0};
  CHECK_THROWS_AS(density_grid_iterate(octa, pts, 1), std::invalid_argument);
}

TEST_CASE("density conservation at moderate depth") {
  ifs::IFSSystem pentagon(poly::polygon(5), 0.58);
  DensitySurface g = make_sphere_surface(1, {8192});
  for (int k = 1; k <= 5; ++k) {
    g = density_grid_iterate(pentagon, g, 2);
    CHECK(integrate_density(g) == doctest::Approx(2.0 * kPi).epsilon(0.01));
  }
}

TEST_CASE("Monte-Carlo integration of f_k") {
  ifs::IFSSystem cell16(poly::polytope4("cell16"), 0.5);
  double sigma = 0.0;
  double est = integrate_density_mc(cell16, 1, 200000, 7, &sigma, 2);
  CHECK(std::fabs(est - 2.0 * kPi * kPi) < 3.0 * sigma);
  CHECK(sigma < 0.05 * 2.0 * kPi * kPi);
  // Worker count does not change the estimate.
  double sigma1 = 0.0;
  double est1 = integrate_density_mc(cell16, 1, 200000, 7, &sigma1, 1);
  CHECK(est1 == est);
  CHECK(sigma1 == sigma);
}

TEST_CASE("Markov operator maps the trace family into itself") {
  // T*(f_a)(x) = sum_i p_i(x) f_a(w_i(x)) equals f_{V(a)}(x) with
  // f_a(x) = (P(x), a).
  ifs::IFSSystem octa(poly::platonic("octahedron"), 0.5);
  TraceOperator op = trace_operator(octa);
  ca::Signature sig = ca::euclidean(3);
  Rng rng(62, 0);
  for (int t = 0; t < 50; ++t) {
    // Random element of L = span{1, e_i}.
    std::vector<double> coeff(4);
    for (auto& c : coeff) c = 2.0 * rng.next_double() - 1.0;
    std::vector<double> vec{coeff[1], coeff[2], coeff[3]};
    ca::Multivector a = ca::Multivector::paravector(sig, coeff[0], vec);

    std::vector<double> x(3);
    double n2 = 0;
    for (auto& c : x) c = rng.next_normal();
    n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    for (auto& c : x) c /= std::sqrt(n2);

    auto p = ifs::probabilities(octa, x);
    double lhs = 0.0;
    for (std::size_t i = 0; i < octa.map_count(); ++i) {
      conformal::SpinBoost b(0.5, std::vector<double>(octa.axis(i).begin(),
                                                      octa.axis(i).end()));
      auto wx = conformal::moebius_apply(b, x);
      ca::Multivector pwx = ca::Multivector::paravector(sig, 1.0, wx);
      lhs += p[i] * ca::inner(pwx, a);
    }

    std::vector<double> va(4, 0.0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) va[i] += op.m(i, j) * coeff[j];
    ca::Multivector vam = ca::Multivector::paravector(
        sig, va[0], std::vector<double>{va[1], va[2], va[3]});
    ca::Multivector px = ca::Multivector::paravector(sig, 1.0, x);
    double rhs = ca::inner(px, vam);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("trace operator spectrum and fixed point") {
  ifs::IFSSystem octa(poly::platonic("octahedron"), 0.5);
  TraceOperator op = trace_operator(octa);

  // V(1) = 1 exactly by balancing.
  CHECK(op.m(0, 0) == 1.0);
  for (int i = 1; i < 4; ++i) CHECK(op.m(i, 0) == 0.0);
  // Phi(V(a)) = Phi(a) exactly: top row is (1, 0, 0, 0).
  for (int j = 1; j < 4; ++j) CHECK(std::fabs(op.m(0, j)) < 1e-15);

  auto ev = vector_block_eigenvalues(op);
  for (double e : ev) CHECK(e == doctest::Approx(11.0 / 15.0).epsilon(1e-13));

  std::vector<double> a0{1.0, 0.9, 0.0, 0.0};
  FixedPointResult fp = trace_fixed_point(op, a0);
  CHECK(fp.element[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) CHECK(std::fabs(fp.element[i]) < 1e-11);
  CHECK(fp.fitted_rate == doctest::Approx(11.0 / 15.0).epsilon(1e-6));

  // Starting at the fixed point converges immediately.
  std::vector<double> one{1.0, 0.0, 0.0, 0.0};
  FixedPointResult fp1 = trace_fixed_point(op, one);
  CHECK(fp1.iterations == 1);

  // Pentagon on S^1: eigenvalues (1 - a^2 + 2 a^2 (N/2)/N...) via the frame
  // condition: (1 - a^2 + a^2) / (1 + a^2) = 1/(1 + a^2) for n = 1.
  ifs::IFSSystem pentagon(poly::polygon(5), 0.58);
  auto ev2 = vector_block_eigenvalues(trace_operator(pentagon));
  for (double e : ev2)
    CHECK(e == doctest::Approx(1.0 / (1.0 + 0.58 * 0.58)).epsilon(1e-12));
}

TEST_CASE("grid iterate tracks the exact recursion on the higher charts") {
  // k = 1 interpolates the constant f_0 and is exact; k = 2 exercises the
  // chart interpolation proper.
  {
    ifs::IFSSystem octa(poly::platonic("octahedron"), 0.5);
    auto g = make_sphere_surface(2, {96, 192});
    double worst = 0.0;
    for (int k = 1; k <= 2; ++k) {
      g = density_grid_iterate(octa, g, 2);
      auto exact = density_exact_batch(octa, g, k, 2);
      for (std::size_t i = 0; i < exact.size(); ++i)
        worst = std::max(worst, std::fabs(g.values[i] - exact[i]) / exact[i]);
    }
    CHECK(worst < 0.005);
  }
  {
    ifs::IFSSystem c16(poly::polytope4("cell16"), 0.5);
    auto g = make_sphere_surface(3, {48, 48, 96});
    double worst = 0.0;
    for (int k = 1; k <= 2; ++k) {
      g = density_grid_iterate(c16, g, 2);
      auto exact = density_exact_batch(c16, g, k, 2);
      for (std::size_t i = 0; i < exact.size(); ++i)
        worst = std::max(worst, std::fabs(g.values[i] - exact[i]) / exact[i]);
    }
    CHECK(worst < 0.03);
  }
}

TEST_CASE("torus-surface density concentrates at the ring vertices") {
  ifs::IFSSystem sys(poly::polytope4("cell600"), 0.6);
  auto ring = poly::coxeter_tori(poly::TorusFamily::aa, true);
  double at_vertices = 0.0;
  for (const auto& v : ring) {
    double x[4] = {v[0], v[1], v[2], v[3]};
    at_vertices += density_exact(sys, x, 2);
  }
  at_vertices /= static_cast<double>(ring.size());

  auto radii = poly::torus_radii(poly::TorusFamily::aa);
  Matrix rot = poly::coxeter_alignment();
  double grid_avg = 0.0;
  const int m = 32;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double u = 2.0 * kPi * i / m, w = 2.0 * kPi * j / m;
      double raw[4] = {radii[0] * std::cos(u), radii[0] * std::sin(u),
                       radii[1] * std::cos(w), radii[1] * std::sin(w)};
      double x[4] = {0, 0, 0, 0};
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) x[r] += rot(r, c) * raw[c];
      grid_avg += density_exact(sys, x, 2);
    }
  grid_avg /= static_cast<double>(m * m);
  CHECK(at_vertices > 1.5 * grid_avg);
}

TEST_CASE("interpolation reproduces stored chart values") {
  ifs::IFSSystem octa(poly::platonic("octahedron"), 0.5);
  DensitySurface g = make_sphere_surface(2, {128, 256});
  g = density_grid_iterate(octa, g, 2);
  Rng rng(63, 0);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    std::size_t i = static_cast<std::size_t>(rng.next_below(g.count()));
    worst = std::max(worst, std::fabs(interpolate(g, g.point(i)) - g.values[i]));
  }
  CHECK(worst < 1e-9);
}
