#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qfract/fracdim.hpp"
#include "qfract/ifs.hpp"
#include "qfract/polytopes.hpp"
#include "qfract/rng.hpp"

using namespace qfract;
using namespace qfract::fracdim;

TEST_CASE("correlation integral on two points") {
  std::vector<double> pts{0.0, 0.0, 0.5, 0.0};  // distance 0.5 in R^2
  auto curve = correlation_integral(pts, 2, {0.4, 0.6});
  CHECK(curve.c[0] == 0.0);
  CHECK(curve.c[1] == 1.0);
  CHECK_THROWS_AS(correlation_integral({0.0}, 1, {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(correlation_integral(pts, 2, {0.6, 0.4}), std::invalid_argument);
}

TEST_CASE("curve is monotone and bounded") {
  Rng rng(71, 0);
  std::vector<double> pts;
  for (int i = 0; i < 3000; ++i) {
    double th = 6.283185307179586 * rng.next_double();
    pts.push_back(std::cos(th));
    pts.push_back(std::sin(th));
  }
  auto curve = correlation_integral(pts, 2, log_radii(1e-3, 1.0, 30));
  for (std::size_t i = 0; i < curve.c.size(); ++i) {
    CHECK(curve.c[i] >= 0.0);
    CHECK(curve.c[i] <= 1.0);
    if (i) CHECK(curve.c[i] >= curve.c[i - 1]);
  }
}

TEST_CASE("exact counting matches a brute-force scan") {
  Rng rng(72, 0);
  std::vector<double> pts;
  const int m = 500;
  for (int i = 0; i < m; ++i) {
    pts.push_back(rng.next_double());
    pts.push_back(rng.next_double());
  }
  std::vector<double> radii = log_radii(1e-2, 0.5, 12);
  auto curve = correlation_integral(pts, 2, radii, {0, true, 1});
  for (std::size_t j = 0; j < radii.size(); ++j) {
    std::uint64_t count = 0;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        double dx = pts[2 * a] - pts[2 * b];
        double dy = pts[2 * a + 1] - pts[2 * b + 1];
        if (std::sqrt(dx * dx + dy * dy) < radii[j]) ++count;
      }
    double expect = 2.0 * count / (static_cast<double>(m) * (m - 1));
    CHECK(curve.c[j] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("pair-sampled estimator agrees with exact counting") {
  Rng rng(73, 0);
  std::vector<double> pts;
  const int m = 4000;
  for (int i = 0; i < m; ++i) {
    double th = 6.283185307179586 * rng.next_double();
    pts.push_back(std::cos(th));
    pts.push_back(std::sin(th));
  }
  std::vector<double> radii = log_radii(0.02, 1.0, 10);
  auto exact = correlation_integral(pts, 2, radii, {0, true, 1});
  auto sampled = correlation_integral(pts, 2, radii, {2000000, false, 9});
  for (std::size_t j = 0; j < radii.size(); ++j) {
    double sigma = std::sqrt(exact.c[j] * (1 - exact.c[j]) / 2000000.0);
    CHECK(std::fabs(sampled.c[j] - exact.c[j]) < 5.0 * sigma + 1e-9);
  }
}

TEST_CASE("uniform circle has dimension 1") {
  Rng rng(74, 0);
  std::vector<double> pts;
  for (int i = 0; i < 20000; ++i) {
    double th = 6.283185307179586 * rng.next_double();
    pts.push_back(std::cos(th));
    pts.push_back(std::sin(th));
  }
  double diam = diameter_upper_bound(pts, 2);
  auto curve = correlation_integral(pts, 2, log_radii(1e-3 * diam, 0.1 * diam, 24));
  auto fit = fit_dimension(curve, 1e-3 * diam, 0.1 * diam);
  CHECK(fit.dimension == doctest::Approx(1.0).epsilon(0.05));
  CHECK_FALSE(fit.staircase);
}

TEST_CASE("exact power law fits exactly") {
  std::vector<double> radii = log_radii(1e-3, 1e-1, 12);
  CorrelationCurve curve;
  curve.radii = radii;
  for (double r : radii) curve.c.push_back(r * r);
  curve.point_count = 2;
  auto fit = fit_dimension(curve, 1e-3, 1e-1);
  CHECK(fit.dimension == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.rms_residual < 1e-12);
  CHECK_THROWS_AS(fit_dimension(curve, 0.09, 0.1), std::invalid_argument);
}

TEST_CASE("cantor addresses") {
  CHECK(cantor_value({}) == 0.0);
  CHECK(cantor_value({0, 0, 0, 0}) == 0.0);
  std::vector<int> all2(40, 2);
  CHECK(cantor_value(all2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cantor_value({2}) == doctest::Approx(2.0 / 3.0).epsilon(1e-16));
  CHECK_THROWS_AS(cantor_value({1}), std::invalid_argument);

  auto pts = cantor_points(5000, 8);
  for (double p : pts) {
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    // No point lands in the open middle third.
    CHECK((p <= 1.0 / 3.0 + 1e-12 || p >= 2.0 / 3.0 - 1e-12));
  }
}

TEST_CASE("cantor dimension estimate") {
  auto pts = cantor_points(20000, 5);
  double diam = diameter_upper_bound(pts, 1);
  auto curve = correlation_integral(pts, 1, log_radii(1e-3 * diam, 0.1 * diam, 24));
  auto fit = fit_dimension(curve, 1e-3 * diam, 0.1 * diam);
  CHECK(std::fabs(fit.dimension - std::log(2.0) / std::log(3.0)) < 0.03);
}

TEST_CASE("estimator consistency under halving") {
  ifs::IFSSystem pentagon(polytopes::polygon(5), 0.58);
  auto sample = [&](std::size_t n, std::uint64_t seed) {
    std::vector<double> pts;
    ifs::run_stream(
        pentagon, n, seed,
        [&](const ifs::SamplePoint&, std::span<const double> x) {
          pts.push_back(x[0]);
          pts.push_back(x[1]);
        },
        100);
    return pts;
  };
  auto fit_for = [&](const std::vector<double>& pts) {
    double diam = diameter_upper_bound(pts, 2);
    auto curve = correlation_integral(
        pts, 2, log_radii(1e-3 * diam, 0.1 * diam, 24), {4000000, false, 5});
    return fit_dimension(curve, 1e-3 * diam, 0.1 * diam);
  };
  auto full = fit_for(sample(200000, 17));
  auto half = fit_for(sample(100000, 18));
  CHECK(std::fabs(full.dimension - half.dimension) < 0.05);
}
