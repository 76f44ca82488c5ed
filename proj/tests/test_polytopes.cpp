#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <set>

#include "qfract/polytopes.hpp"

using namespace qfract;
using namespace qfract::polytopes;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("polygons") {
  VertexConfiguration pent = polygon(5);
  CHECK(pent.count() == 5);
  CHECK(check_balanced(pent).residual < 1e-14);

  VertexConfiguration pair = polygon(2);
  CHECK(pair.count() == 2);
  std::set<std::pair<double, double>> pts;
  for (const auto& v : pair.vertices) pts.insert({v[0], v[1]});
  CHECK(pts.count({1.0, 0.0}) == 1);
  CHECK(pts.count({-1.0, 0.0}) == 1);

  VertexConfiguration sq = polygon(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      double d = sq.vertices[i][0] * sq.vertices[j][0] +
                 sq.vertices[i][1] * sq.vertices[j][1];
      CHECK((std::fabs(d) < 1e-15 || std::fabs(d + 1.0) < 1e-15));
    }

  CHECK_THROWS_AS(polygon(1), std::invalid_argument);
}

TEST_CASE("platonic solids") {
  CHECK(platonic("tetrahedron").count() == 4);
  CHECK(platonic("cube").count() == 8);
  CHECK(platonic("icosahedron").count() == 12);
  CHECK(platonic("dodecahedron").count() == 20);
  VertexConfiguration octa = platonic("octahedron");
  CHECK(octa.count() == 6);
  // Nearest-neighbor angle of the octahedron is 90 degrees.
  double d = min_pairwise_distance(octa);
  CHECK(d == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  for (const char* name : {"tetrahedron", "octahedron", "cube", "icosahedron",
                           "dodecahedron"}) {
    VertexConfiguration c = platonic(name);
    CHECK(check_balanced(c).balanced);
    for (const auto& v : c.vertices) {
      double n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
      CHECK(n2 == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(platonic("simplex"), std::invalid_argument);
}

TEST_CASE("cell16 vertices are the signed coordinate axes") {
  VertexConfiguration c = polytope4("cell16");
  REQUIRE(c.count() == 8);
  for (int i = 0; i < 4; ++i)
    for (double s : {1.0, -1.0}) {
      std::vector<double> want(4, 0.0);
      want[i] = s;
      bool found = false;
      for (const auto& v : c.vertices) found = found || v == want;
      CHECK(found);
    }
}

TEST_CASE("4-polytope vertex and edge counts") {
  const struct {
    const char* name;
    std::size_t vertices;
    std::size_t edges;
  } cases[] = {{"cell5", 5, 10},     {"cell16", 8, 24},     {"cell8", 16, 32},
               {"cell24", 24, 96},   {"cell600", 120, 720}, {"cell120", 600, 1200}};
  for (const auto& c : cases) {
    VertexConfiguration conf = polytope4(c.name);
    CAPTURE(c.name);
    CHECK(conf.count() == c.vertices);
    CHECK(edge_count_min_distance(conf) == c.edges);
    CHECK(check_balanced(conf).balanced);
  }
  CHECK_THROWS_AS(polytope4("cell7"), std::invalid_argument);
}

TEST_CASE("600-cell specifics") {
  VertexConfiguration c = polytope4("cell600");
  // Composition of the coordinate table: 8 axis vectors, 16 half-grids,
  // 96 golden-ratio vertices.
  int axis = 0, half = 0, golden = 0;
  for (const auto& v : c.vertices) {
    int zeros = 0, halves = 0;
    for (double x : v) {
      if (std::fabs(x) < 1e-12) ++zeros;
      if (std::fabs(std::fabs(x) - 0.5) < 1e-12) ++halves;
    }
    if (zeros == 3) ++axis;
    else if (halves == 4) ++half;
    else ++golden;
  }
  CHECK(axis == 8);
  CHECK(half == 16);
  CHECK(golden == 96);

  // Minimal chordal distance is 1/phi.
  CHECK(min_pairwise_distance(c) == doctest::Approx(golden_ratio_inv()).epsilon(1e-12));

  // Closed under the quaternion product (it is a group).
  std::vector<std::array<double, 4>> set4;
  for (const auto& v : c.vertices) set4.push_back({v[0], v[1], v[2], v[3]});
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < c.count(); ++j) {
      Quaternion p = Quaternion::from_r4(set4[i * 12]);
      Quaternion q = Quaternion::from_r4(set4[j]);
      std::array<double, 4> prod = (p * q).to_r4();
      bool found = false;
      for (const auto& w : set4) {
        double d2 = 0;
        for (int k = 0; k < 4; ++k) d2 += (w[k] - prod[k]) * (w[k] - prod[k]);
        if (d2 < 1e-16) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
}

TEST_CASE("symmetric frame condition") {
  // Sum of n_i n_i^T = (N / ambient) I for every symmetric configuration.
  auto check_frame = [](const VertexConfiguration& c) {
    Matrix g = gram_sum(c);
    double expect = static_cast<double>(c.count()) / c.ambient_dim();
    for (int i = 0; i < c.ambient_dim(); ++i)
      for (int j = 0; j < c.ambient_dim(); ++j) {
        CAPTURE(c.name);
        CHECK(g(i, j) == doctest::Approx(i == j ? expect : 0.0).epsilon(1e-10));
      }
  };
  for (int n : {3, 4, 5, 6, 8}) check_frame(polygon(n));
  for (const char* p : {"tetrahedron", "octahedron", "cube", "icosahedron",
                        "dodecahedron"})
    check_frame(platonic(p));
  for (const char* p : {"cell5", "cell16", "cell8", "cell24", "cell600", "cell120"})
    check_frame(polytope4(p));
}

TEST_CASE("icosian group closure") {
  auto closure = quaternion_closure({icosian_s1(), icosian_t1()});
  CHECK(closure.size() == 120);

  auto power = [](Quaternion q, int k) {
    Quaternion r{1, 0, 0, 0};
    for (int i = 0; i < k; ++i) r = r * q;
    return r;
  };
  Quaternion s3 = power(icosian_s1(), 3);
  Quaternion t5 = power(icosian_t1(), 5);
  Quaternion st2 = power(icosian_s1() * icosian_t1(), 2);
  for (const Quaternion& q : {s3, t5, st2}) {
    CHECK(q.w == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::fabs(q.x) < 1e-14);
    CHECK(std::fabs(q.y) < 1e-14);
    CHECK(std::fabs(q.z) < 1e-14);
  }

  // Second generator pair: same group, geometrically inequivalent. One pair
  // sits at angle 3 pi/5 on S^3, the other at pi/5.
  auto closure2 = quaternion_closure({icosian_s2(), icosian_t2()});
  CHECK(closure2.size() == 120);
  double angle1 = std::acos(icosian_s1().dot(icosian_t1()));
  double angle2 = std::acos(icosian_s2().dot(icosian_t2()));
  CHECK(angle1 == doctest::Approx(3.0 * kPi / 5.0).epsilon(1e-13));
  CHECK(angle2 == doctest::Approx(kPi / 5.0).epsilon(1e-13));
  CHECK(std::fabs(angle1 - angle2) > 1.0);

  // {i, j} generates the order-8 binary dihedral group.
  auto dihedral = quaternion_closure({Quaternion{0, 1, 0, 0}, Quaternion{0, 0, 1, 0}});
  CHECK(dihedral.size() == 8);

  // A generator pair of infinite order blows the bound.
  double c = std::cos(0.5), s = std::sin(0.5);
  CHECK_THROWS_AS(quaternion_closure({Quaternion{c, s, 0, 0}, Quaternion{0, 0, 1, 0}},
                                     2000),
                  std::runtime_error);
}

TEST_CASE("Coxeter torus rings") {
  CHECK(coxeter_constant('a') == doctest::Approx(0.947274).epsilon(5e-7));
  CHECK(coxeter_constant('b') == doctest::Approx(0.770582).epsilon(5e-7));
  CHECK(coxeter_constant('c') == doctest::Approx(0.637341).epsilon(5e-7));
  CHECK(coxeter_constant('d') == doctest::Approx(0.320426).epsilon(5e-7));

  std::vector<std::array<double, 4>> all;
  for (TorusFamily f : {TorusFamily::aa, TorusFamily::ab, TorusFamily::ba,
                        TorusFamily::bb}) {
    auto ring = coxeter_tori(f, false);
    REQUIRE(ring.size() == 30);
    for (const auto& p : ring) {
      double n2 = 0;
      for (double x : p) n2 += x * x;
      CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    auto aligned = coxeter_tori(f, true);
    for (const auto& p : aligned) all.push_back(p);
  }
  VertexConfiguration c600 = polytope4("cell600");
  std::vector<std::array<double, 4>> table;
  for (const auto& v : c600.vertices) table.push_back({v[0], v[1], v[2], v[3]});
  CHECK(same_vertex_set(all, table));
}

TEST_CASE("check_balanced reports the residual") {
  VertexConfiguration single;
  single.dim = 1;
  single.name = "single";
  single.vertices = {{1.0, 0.0}};
  BalanceReport rep = check_balanced(single);
  CHECK_FALSE(rep.balanced);
  CHECK(rep.residual == doctest::Approx(1.0));
}

TEST_CASE("name resolution") {
  CHECK(by_name("pentagon").count() == 5);
  CHECK(by_name("polygon7").count() == 7);
  CHECK(by_name("cell24").count() == 24);
  CHECK_THROWS_AS(by_name("enneacontahedron"), std::invalid_argument);
}
