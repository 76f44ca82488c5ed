#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qfract/config.hpp"
#include "qfract/linalg.hpp"

namespace qfract::polytopes {

struct Quaternion {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  Quaternion conjugate() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  double dot(const Quaternion& o) const {
    return w * o.w + x * o.x + y * o.y + z * o.z;
  }
  // Identification with R^4 coordinates: (w,x,y,z) <-> (x1,x2,x3,x4).
  std::array<double, 4> to_r4() const { return {w, x, y, z}; }
  static Quaternion from_r4(const std::array<double, 4>& v) {
    return {v[0], v[1], v[2], v[3]};
  }
};

double golden_ratio();      // (1+sqrt 5)/2
double golden_ratio_inv();  // golden_ratio() - 1

// Detector configuration: N unit vectors on S^dim summing to zero.
struct VertexConfiguration {
  int dim = 0;  // n of S^n; vertices live in R^(n+1)
  std::string name;
  std::vector<std::vector<double>> vertices;

  int ambient_dim() const { return dim + 1; }
  std::size_t count() const { return vertices.size(); }
};

struct BalanceReport {
  bool balanced = false;
  double residual = 0.0;
};
BalanceReport check_balanced(const VertexConfiguration& c,
                             double tol = tol::balance);

// Regular N-gon on S^1, vertices at angles 2 pi k / N.
VertexConfiguration polygon(int n);

// tetrahedron | octahedron | cube | icosahedron | dodecahedron on S^2.
VertexConfiguration platonic(const std::string& name);

// cell5 | cell16 | cell8 | cell24 | cell600 | cell120 on S^3. cell600 uses
// the standard icosian coordinate table; cell120 takes the normalized
// centroids of the 600 tetrahedral cells of cell600.
VertexConfiguration polytope4(const std::string& name);

// Resolves any shipped configuration name, plus the aliases
// triangle/square/pentagon/... and polygonN.
VertexConfiguration by_name(const std::string& name);
std::vector<std::string> shipped_names();

// Group closure of the given unit quaternions under the Hamilton product.
// Throws if the closure exceeds `bound` elements.
std::vector<Quaternion> quaternion_closure(const std::vector<Quaternion>& generators,
                                           std::size_t bound = 10000);

// The two shipped generator pairs for the order-120 icosian group.
Quaternion icosian_s1();
Quaternion icosian_t1();
Quaternion icosian_s2();
Quaternion icosian_t2();

// Torus radii of the four 30-vertex rings of the 600-cell and the ring
// coordinates themselves.
enum class TorusFamily { aa, ab, ba, bb };
TorusFamily torus_family_from_string(const std::string& s);
std::string to_string(TorusFamily f);
double coxeter_constant(char which);  // 'a', 'b', 'c', 'd'
// Radius pair (r1, r2) of the family's torus: points (r1 cos u, r1 sin u,
// r2 cos v, r2 sin v) after the frame alignment below.
std::array<double, 2> torus_radii(TorusFamily f);

// 30 ring vertices of the family. With aligned = false these follow the
// double-rotation formulas verbatim; with aligned = true (default) they are
// carried into the frame of polytope4("cell600") by a fixed rotation so the
// rings coincide with actual vertices.
std::vector<std::array<double, 4>> coxeter_tori(TorusFamily f, bool aligned = true);

// The rotation used above (4x4, orthogonal, det 1).
Matrix coxeter_alignment();

// Pairs of vertices at the minimal pairwise distance (tolerance-fattened).
std::size_t edge_count_min_distance(const VertexConfiguration& c,
                                    double tol = tol::vertex_match);
double min_pairwise_distance(const VertexConfiguration& c);

// Sum of outer products n_i n_i^T; (N/(n+1)) I for the symmetric configs.
Matrix gram_sum(const VertexConfiguration& c);

// Set equality of two vertex lists up to reordering.
bool same_vertex_set(const std::vector<std::array<double, 4>>& u,
                     const std::vector<std::array<double, 4>>& v,
                     double tol = tol::vertex_match);

}  // namespace qfract::polytopes
