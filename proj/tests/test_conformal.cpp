#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qfract/clifford.hpp"
#include "qfract/conformal.hpp"
#include "qfract/rng.hpp"

using namespace qfract;
using namespace qfract::conformal;
namespace ca = qfract::clifford;

namespace {

std::vector<double> random_unit(int dim, Rng& rng) {
  std::vector<double> v(dim);
  double n2 = 0.0;
  for (auto& c : v) c = rng.next_normal();
  for (double c : v) n2 += c * c;
  double inv = 1.0 / std::sqrt(n2);
  for (auto& c : v) c *= inv;
  return v;
}

double norm(std::span<const double> v) {
  double s = 0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("moebius closed form anchors") {
  SpinBoost b(0.5, {1.0, 0.0});
  SUBCASE("fixed points are the poles") {
    std::vector<double> axis{1.0, 0.0};
    auto y = moebius_apply(b, axis);
    CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(0.0).epsilon(1e-15));
    std::vector<double> anti{-1.0, 0.0};
    auto z = moebius_apply(b, anti);
    CHECK(z[0] == doctest::Approx(-1.0).epsilon(1e-15));
  }
  SUBCASE("hand-evaluated image") {
    std::vector<double> x{0.0, 1.0};
    auto y = moebius_apply(b, x);
    CHECK(y[0] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(norm(y) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("alpha = 0 is the identity") {
    SpinBoost id(0.0, {0.0, 1.0});
    std::vector<double> x{0.6, -0.8};
    auto y = moebius_apply(id, x);
    CHECK(y[0] == x[0]);
    CHECK(y[1] == x[1]);
  }
}

TEST_CASE("moebius inverse round trip and axis negation") {
  Rng rng(31, 0);
  for (int n : {1, 2, 3}) {
    SpinBoost b(0.7, random_unit(n + 1, rng));
    SpinBoost binv = b.inverse();
    for (int t = 0; t < 300; ++t) {
      std::vector<double> x = random_unit(n + 1, rng);
      auto y = moebius_apply(b, x);
      auto back = moebius_inverse(b, y);
      for (int i = 0; i <= n; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));
      auto via_neg = moebius_apply(binv, y);
      for (int i = 0; i <= n; ++i)
        CHECK(via_neg[i] == doctest::Approx(back[i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("sphere and ball stay invariant") {
  Rng rng(32, 0);
  SpinBoost b(0.85, random_unit(3, rng));
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x = random_unit(3, rng);
    CHECK(norm(moebius_apply(b, x)) == doctest::Approx(1.0).epsilon(1e-12));
    for (double& c : x) c *= 0.99 * rng.next_double();
    CHECK(norm(moebius_apply(b, x)) < 1.0);
  }
}

TEST_CASE("conformal factor and inverse-pair identity") {
  SpinBoost b(0.5, {1.0, 0.0});
  std::vector<double> x{0.0, 1.0};
  CHECK(conformal_factor(b, x) == doctest::Approx(0.6).epsilon(1e-15));

  Rng rng(33, 0);
  for (int t = 0; t < 200; ++t) {
    double a = 0.95 * rng.next_double();
    SpinBoost boost(a, random_unit(3, rng));
    std::vector<double> r = random_unit(3, rng);
    auto w_inv = moebius_inverse(boost, r);
    double lhs = (1.0 + a * a + 2.0 * a * detail::dot(boost.axis, w_inv)) *
                 (1.0 + a * a - 2.0 * a * detail::dot(boost.axis, r));
    CHECK(lhs == doctest::Approx((1.0 - a * a) * (1.0 - a * a)).epsilon(1e-12));
    // rho(x) * rho_inv(phi(x)) = 1.
    std::vector<double> y = moebius_apply(boost, r);
    CHECK(conformal_factor(boost, r) * conformal_factor(boost.inverse(), y) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("pullback metric restricted to the tangent plane is rho^2 G") {
  Rng rng(34, 0);
  for (int t = 0; t < 100; ++t) {
    SpinBoost b(0.05 + 0.9 * rng.next_double(), random_unit(3, rng));
    std::vector<double> x = random_unit(3, rng);
    Matrix g = pullback_metric(b, x);
    double rho = conformal_factor(b, x);
    // Two random tangent vectors.
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<double> v = random_unit(3, rng), w = random_unit(3, rng);
      double vx = detail::dot(v, x), wx = detail::dot(w, x);
      for (int i = 0; i < 3; ++i) {
        v[i] -= vx * x[i];
        w[i] -= wx * x[i];
      }
      double vgw = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) vgw += v[i] * g(i, j) * w[j];
      CHECK(vgw == doctest::Approx(rho * rho * detail::dot(v, w)).epsilon(1e-10));
    }
  }
  SUBCASE("alpha = 0 gives the identity matrix") {
    SpinBoost id(0.0, {0.0, 0.0, 1.0});
    std::vector<double> x{1.0, 0.0, 0.0};
    Matrix g = pullback_metric(id, x);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(g(i, j) == (i == j ? 1.0 : 0.0));
  }
}

TEST_CASE("pullback metric matches the finite-difference Jacobian") {
  Rng rng(35, 0);
  const double h = 1e-5;
  for (int t = 0; t < 25; ++t) {
    SpinBoost b(0.1 + 0.8 * rng.next_double(), random_unit(3, rng));
    // Interior point: the closed form covers the ball as well.
    std::vector<double> x = random_unit(3, rng);
    for (double& c : x) c *= 0.95 * rng.next_double();
    Matrix jac(3, 3);
    for (int c = 0; c < 3; ++c) {
      std::vector<double> xp = x, xm = x;
      xp[c] += h;
      xm[c] -= h;
      auto fp = moebius_apply(b, xp);
      auto fm = moebius_apply(b, xm);
      for (int i = 0; i < 3; ++i) jac(i, c) = (fp[i] - fm[i]) / (2 * h);
    }
    Matrix jtj = matmul(transpose(jac), jac);
    Matrix g = pullback_metric(b, x);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(g(i, j) == doctest::Approx(jtj(i, j)).epsilon(1e-6));
  }
}

TEST_CASE("surface and volume derivatives") {
  SpinBoost b(0.5, {1.0, 0.0, 0.0});
  std::vector<double> x{0.0, 0.0, 1.0};
  CHECK(rn_surface(b, x) == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(rn_volume(b, x) == doctest::Approx(0.1296).epsilon(1e-15));

  // Quadrature oracle: the pushed-forward S^1 measure keeps total length 2 pi.
  SpinBoost c(0.73, {1.0, 0.0});
  const int steps = 20000;
  double integral = 0.0;
  for (int i = 0; i < steps; ++i) {
    double th = 2.0 * kPi * (i + 0.5) / steps;
    std::vector<double> p{std::cos(th), std::sin(th)};
    integral += rn_surface(c, p) * (2.0 * kPi / steps);
  }
  CHECK(integral == doctest::Approx(2.0 * kPi).epsilon(1e-9));
}

TEST_CASE("stereographic projection") {
  std::vector<double> pole{0.0, 0.0, 1.0};
  SUBCASE("equator is fixed") {
    std::vector<double> x{1.0, 0.0, 0.0};
    auto s = stereo_project(pole, x);
    CHECK(s[0] == 1.0);
    CHECK(s[1] == 0.0);
    CHECK(s[2] == 0.0);
  }
  SUBCASE("antipode maps to the origin") {
    std::vector<double> x{0.0, 0.0, -1.0};
    auto s = stereo_project(pole, x);
    CHECK(norm(s) == 0.0);
  }
  SUBCASE("pole is a domain error") {
    CHECK_THROWS_AS(stereo_project(pole, pole), std::domain_error);
  }
  SUBCASE("boost along the pole dilates by e^eta") {
    Rng rng(36, 0);
    for (double alpha : {0.3, 0.5, 0.9}) {
      SpinBoost b(alpha, pole);
      double factor = (1.0 + alpha) / (1.0 - alpha);
      CHECK(factor == doctest::Approx(std::exp(b.eta())).epsilon(1e-14));
      for (int t = 0; t < 100; ++t) {
        std::vector<double> x = random_unit(3, rng);
        if (detail::dot(pole, x) > 0.8) continue;
        auto s0 = stereo_project(pole, x);
        auto s1 = stereo_project(pole, moebius_apply(b, x));
        // Vector-level check: s1 = factor * s0 to 1e-12 relative.
        double err = 0.0, scale = 1.0;
        for (int i = 0; i < 3; ++i) {
          err = std::max(err, std::fabs(s1[i] - factor * s0[i]));
          scale = std::max(scale, std::fabs(factor * s0[i]));
        }
        CHECK(err < 1e-12 * scale);
      }
    }
  }
  SUBCASE("composing boosts along one axis adds rapidities") {
    SpinBoost b1(0.3, pole), b2(0.6, pole);
    Rng rng(37, 0);
    std::vector<double> x = random_unit(3, rng);
    auto s0 = stereo_project(pole, x);
    auto s2 = stereo_project(pole, moebius_apply(b2, moebius_apply(b1, x)));
    double factor = std::exp(b1.eta() + b2.eta());
    double err = 0.0, scale = 1.0;
    for (int i = 0; i < 3; ++i) {
      err = std::max(err, std::fabs(s2[i] - factor * s0[i]));
      scale = std::max(scale, std::fabs(factor * s0[i]));
    }
    CHECK(err < 1e-11 * scale);
  }
}

TEST_CASE("Lorentz matrix of a boost") {
  SpinBoost b(0.5, {1.0, 0.0, 0.0});
  LorentzMatrix lam = boost_to_lorentz(b);
  CHECK(lam.at(0, 0) == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(lam.at(0, 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(lam.at(1, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(lam.at(0, 0) * lam.at(0, 0) - lam.at(0, 1) * lam.at(0, 1) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(lorentz_invariants_ok(lam));

  LorentzMatrix id = boost_to_lorentz(
      ca::Multivector::scalar(ca::euclidean(4), 1.0));
  REQUIRE(id.m.rows == 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(id.m(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("lorentz_apply matches moebius_apply; rotations have unit cocycle") {
  Rng rng(38, 0);
  for (int t = 0; t < 300; ++t) {
    SpinBoost b(0.9 * rng.next_double(), random_unit(4, rng));
    std::vector<double> x = random_unit(4, rng);
    auto direct = moebius_apply(b, x);
    auto via = lorentz_apply(boost_to_lorentz(b), x);
    for (int i = 0; i < 4; ++i)
      CHECK(via[i] == doctest::Approx(direct[i]).epsilon(1e-10));
  }

  // Rotation block: image is the rotated point, measure derivative is 1.
  ca::Signature sig = ca::euclidean(3);
  std::vector<double> u1 = random_unit(3, rng), u2 = random_unit(3, rng);
  ca::Multivector rot = ca::Multivector::paravector(sig, 0.0, u1) *
                        ca::Multivector::paravector(sig, 0.0, u2);
  LorentzMatrix lam = boost_to_lorentz(rot);
  CHECK(lam.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> x = random_unit(3, rng);
  CHECK(cocycle(lam, x, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm(lorentz_apply(lam, x)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed multivector identity for the conjugated paravector") {
  // P(an)(1+x)P(an) = (1 + a^2 + 2a(n.x)) (1 + x') with x' the map image.
  Rng rng(39, 0);
  ca::Signature sig = ca::euclidean(3);
  for (int t = 0; t < 100; ++t) {
    double a = 0.95 * rng.next_double();
    std::vector<double> n = random_unit(3, rng);
    std::vector<double> x = random_unit(3, rng);
    std::vector<double> an(3);
    for (int i = 0; i < 3; ++i) an[i] = a * n[i];
    ca::Multivector p = ca::Multivector::paravector(sig, 1.0, an);
    ca::Multivector px = ca::Multivector::paravector(sig, 1.0, x);
    ca::Multivector lhs = p * px * p;
    double f = 1.0 + a * a + 2.0 * a * detail::dot(n, x);
    SpinBoost b(a, n);
    auto xp = moebius_apply(b, x);
    CHECK(lhs[0] == doctest::Approx(f).epsilon(1e-12));
    for (int i = 0; i < 3; ++i)
      CHECK(lhs[std::size_t{1} << i] == doctest::Approx(f * xp[i]).epsilon(1e-12));
    CHECK(lhs.norm_inf_above_grade1() < 1e-12);
  }
}

TEST_CASE("conjugation action: group law and covering kernel") {
  Rng rng(40, 0);
  ca::Signature sig = ca::euclidean(3);
  for (int t = 0; t < 50; ++t) {
    ca::Multivector g1 =
        ca::boost_from_alpha(0.8 * rng.next_double(), random_unit(3, rng)) *
        (ca::Multivector::paravector(sig, 0.0, random_unit(3, rng)) *
         ca::Multivector::paravector(sig, 0.0, random_unit(3, rng)));
    ca::Multivector g2 =
        ca::boost_from_alpha(0.8 * rng.next_double(), random_unit(3, rng));
    std::vector<double> x = random_unit(3, rng);
    auto composed = moebius_apply_conjugation(g1 * g2, x);
    auto chained = moebius_apply_conjugation(g1, moebius_apply_conjugation(g2, x));
    for (int i = 0; i < 3; ++i)
      CHECK(composed[i] == doctest::Approx(chained[i]).epsilon(1e-10));
    auto flipped = moebius_apply_conjugation(g1 * -1.0, x);
    auto straight = moebius_apply_conjugation(g1, x);
    for (int i = 0; i < 3; ++i) CHECK(flipped[i] == straight[i]);
  }
}

TEST_CASE("fixed points are exactly the two poles") {
  // Scan fine 1D grids: displacement vanishes only near +-axis.
  SUBCASE("circle") {
    SpinBoost b(0.6, {std::cos(0.3), std::sin(0.3)});
    const int m = 20000;
    for (int i = 0; i < m; ++i) {
      double th = 2.0 * kPi * i / m;
      std::vector<double> x{std::cos(th), std::sin(th)};
      auto y = moebius_apply(b, x);
      double disp = std::hypot(y[0] - x[0], y[1] - x[1]);
      double to_pole = std::min(std::hypot(x[0] - b.axis[0], x[1] - b.axis[1]),
                                std::hypot(x[0] + b.axis[0], x[1] + b.axis[1]));
      if (to_pole > 1e-3) CHECK(disp > 1e-4);
    }
  }
  SUBCASE("2-sphere, geodesics through the poles") {
    Rng rng(41, 0);
    SpinBoost b(0.4, random_unit(3, rng));
    // Orthonormal vector to span a geodesic through +-axis.
    for (int rep = 0; rep < 8; ++rep) {
      std::vector<double> v = random_unit(3, rng);
      double vn = detail::dot(v, b.axis);
      for (int i = 0; i < 3; ++i) v[i] -= vn * b.axis[i];
      double n2 = std::sqrt(detail::dot(v, v));
      for (double& c : v) c /= n2;
      const int m = 5000;
      for (int i = 0; i < m; ++i) {
        double th = 2.0 * kPi * i / m;
        std::vector<double> x(3);
        for (int c = 0; c < 3; ++c)
          x[c] = std::cos(th) * b.axis[c] + std::sin(th) * v[c];
        auto y = moebius_apply(b, x);
        double disp = 0, to_pole = std::min(std::fabs(th), std::fabs(2.0 * kPi - th));
        to_pole = std::min(to_pole, std::fabs(th - kPi));
        for (int c = 0; c < 3; ++c) disp += (y[c] - x[c]) * (y[c] - x[c]);
        disp = std::sqrt(disp);
        if (to_pole > 1e-3) CHECK(disp > 1e-4);
      }
    }
  }
}

TEST_CASE("Lorentz invariants hold for boost-rotation products") {
  Rng rng(42, 0);
  ca::Signature sig = ca::euclidean(3);
  for (int t = 0; t < 30; ++t) {
    ca::Multivector g =
        ca::boost_from_alpha(0.9 * rng.next_double(), random_unit(3, rng)) *
        (ca::Multivector::paravector(sig, 0.0, random_unit(3, rng)) *
         ca::Multivector::paravector(sig, 0.0, random_unit(3, rng)));
    LorentzMatrix lam = boost_to_lorentz(g);
    CHECK(lorentz_invariants_ok(lam));
    CHECK(lam.at(0, 0) >= 1.0 - 1e-12);
  }
}

TEST_CASE("boost parameter validation") {
  CHECK_THROWS_AS(SpinBoost(1.0, std::vector<double>{1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(SpinBoost(-0.1, std::vector<double>{1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(SpinBoost(0.5, std::vector<double>{0.7, 0.0}), std::invalid_argument);
}
