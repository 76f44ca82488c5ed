#include "qfract/polytopes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace qfract::polytopes {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

std::vector<double> normalized(std::vector<double> v) {
  double n2 = 0.0;
  for (double c : v) n2 += c * c;
  double inv = 1.0 / std::sqrt(n2);
  for (double& c : v) c *= inv;
  return v;
}

double dist2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void canonicalize(VertexConfiguration& c) {
  std::sort(c.vertices.begin(), c.vertices.end());
}

VertexConfiguration finish(int dim, std::string name,
                           std::vector<std::vector<double>> raw) {
  VertexConfiguration c;
  c.dim = dim;
  c.name = std::move(name);
  c.vertices.reserve(raw.size());
  for (auto& v : raw) c.vertices.push_back(normalized(std::move(v)));
  canonicalize(c);
  // Shipped configurations are balanced and duplicate-free by construction;
  // keep that honest.
  BalanceReport rep = check_balanced(c);
  if (!rep.balanced)
    throw std::logic_error("polytopes: generated configuration is unbalanced");
  for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i)
    if (dist2(c.vertices[i], c.vertices[i + 1]) < 1e-18)
      throw std::logic_error("polytopes: duplicate vertex generated");
  return c;
}

}  // namespace

double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }
double golden_ratio_inv() { return golden_ratio() - 1.0; }

BalanceReport check_balanced(const VertexConfiguration& c, double tol) {
  std::vector<double> sum(c.ambient_dim(), 0.0);
  for (const auto& v : c.vertices)
    for (int i = 0; i < c.ambient_dim(); ++i) sum[i] += v[i];
  double r2 = 0.0;
  for (double s : sum) r2 += s * s;
  BalanceReport rep;
  rep.residual = std::sqrt(r2);
  rep.balanced = rep.residual < tol;
  return rep;
}

VertexConfiguration polygon(int n) {
  if (n < 2) throw std::invalid_argument("polygon: need at least 2 vertices");
  // Snap values that are exact on the axes so the square and the antipodal
  // pair come out with clean coordinates.
  auto snap = [](double v) {
    if (std::fabs(v) < 4e-16) return 0.0;
    if (std::fabs(v - 1.0) < 4e-16) return 1.0;
    if (std::fabs(v + 1.0) < 4e-16) return -1.0;
    return v;
  };
  std::vector<std::vector<double>> raw;
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * kPi * k / n;
    raw.push_back({snap(std::cos(t)), snap(std::sin(t))});
  }
  return finish(1, "polygon" + std::to_string(n), std::move(raw));
}

VertexConfiguration platonic(const std::string& name) {
  std::vector<std::vector<double>> raw;
  if (name == "tetrahedron") {
    raw = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  } else if (name == "octahedron") {
    for (int i = 0; i < 3; ++i)
      for (double s : {1.0, -1.0}) {
        std::vector<double> v(3, 0.0);
        v[i] = s;
        raw.push_back(v);
      }
  } else if (name == "cube") {
    for (double sx : {-1.0, 1.0})
      for (double sy : {-1.0, 1.0})
        for (double sz : {-1.0, 1.0}) raw.push_back({sx, sy, sz});
  } else if (name == "icosahedron") {
    double p = golden_ratio();
    for (double s1 : {-1.0, 1.0})
      for (double s2 : {-1.0, 1.0}) {
        raw.push_back({0.0, s1, s2 * p});
        raw.push_back({s1, s2 * p, 0.0});
        raw.push_back({s2 * p, 0.0, s1});
      }
  } else if (name == "dodecahedron") {
    double p = golden_ratio();
    double ip = 1.0 / p;
    for (double sx : {-1.0, 1.0})
      for (double sy : {-1.0, 1.0})
        for (double sz : {-1.0, 1.0}) raw.push_back({sx, sy, sz});
    for (double s1 : {-1.0, 1.0})
      for (double s2 : {-1.0, 1.0}) {
        raw.push_back({0.0, s1 * ip, s2 * p});
        raw.push_back({s1 * ip, s2 * p, 0.0});
        raw.push_back({s2 * p, 0.0, s1 * ip});
      }
  } else {
    throw std::invalid_argument("platonic: unknown name '" + name + "'");
  }
  return finish(2, name, std::move(raw));
}

namespace {

std::vector<std::vector<double>> cell600_raw() {
  std::vector<std::vector<double>> raw;
  // 8 unit coordinate vectors.
  for (int i = 0; i < 4; ++i)
    for (double s : {1.0, -1.0}) {
      std::vector<double> v(4, 0.0);
      v[i] = s;
      raw.push_back(v);
    }
  // 16 half-integer vectors.
  for (double s0 : {-0.5, 0.5})
    for (double s1 : {-0.5, 0.5})
      for (double s2 : {-0.5, 0.5})
        for (double s3 : {-0.5, 0.5}) raw.push_back({s0, s1, s2, s3});
  // 96 golden-ratio vertices: one parity class of the arrangements of
  // (1, phi, 1/phi, 0)/2 with free signs on the nonzero slots. This is the
  // class that is closed under the quaternion product and contains the
  // shipped icosian generators.
  const double p = golden_ratio() / 2.0;
  const double ip = golden_ratio_inv() / 2.0;
  const int even_perm[12][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2},
                                {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 3, 2, 0},
                                {2, 0, 1, 3}, {2, 1, 3, 0}, {2, 3, 0, 1},
                                {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 2, 1, 0}};
  for (const auto& perm : even_perm)
    for (double s0 : {-1.0, 1.0})
      for (double sp : {-1.0, 1.0})
        for (double si : {-1.0, 1.0}) {
          double base[4] = {s0 * 0.5, sp * p, si * ip, 0.0};
          std::vector<double> v(4);
          for (int i = 0; i < 4; ++i) v[perm[i]] = base[i];
          raw.push_back(std::move(v));
        }
  return raw;
}

// 4-simplex: orthogonal projection of the centered R^5 basis onto sum = 0.
std::vector<std::vector<double>> cell5_raw() {
  double basis[4][5];
  // Gram-Schmidt on e_i - e_5 within the hyperplane sum = 0.
  std::vector<std::vector<double>> seed;
  for (int i = 0; i < 4; ++i) {
    std::vector<double> v(5, 0.0);
    v[i] = 1.0;
    v[4] = -1.0;
    seed.push_back(std::move(v));
  }
  for (int i = 0; i < 4; ++i) {
    std::vector<double> v = seed[i];
    for (int j = 0; j < i; ++j) {
      double d = 0.0;
      for (int k = 0; k < 5; ++k) d += v[k] * basis[j][k];
      for (int k = 0; k < 5; ++k) v[k] -= d * basis[j][k];
    }
    double n2 = 0.0;
    for (double c : v) n2 += c * c;
    double inv = 1.0 / std::sqrt(n2);
    for (int k = 0; k < 5; ++k) basis[i][k] = v[k] * inv;
  }
  std::vector<std::vector<double>> raw;
  for (int i = 0; i < 5; ++i) {
    std::vector<double> centered(5, -0.2);
    centered[i] += 1.0;
    std::vector<double> v(4, 0.0);
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 5; ++k) v[j] += basis[j][k] * centered[k];
    raw.push_back(std::move(v));
  }
  return raw;
}

std::vector<std::vector<double>> cell120_raw() {
  VertexConfiguration c600 = polytope4("cell600");
  const auto& vs = c600.vertices;
  const std::size_t n = vs.size();
  double dmin = min_pairwise_distance(c600);
  double cut2 = (dmin + tol::vertex_match) * (dmin + tol::vertex_match);

  std::vector<std::vector<int>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dist2(vs[i], vs[j]) < cut2) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }

  // Tetrahedral cells are exactly the 4-cliques of the edge graph.
  std::set<std::array<int, 4>> cells;
  for (int i = 0; i < static_cast<int>(n); ++i)
    for (int j : adj[i]) {
      if (j <= i) continue;
      std::vector<int> common;
      for (int k : adj[i])
        if (k > j && std::binary_search(adj[j].begin(), adj[j].end(), k))
          common.push_back(k);
      for (std::size_t a = 0; a < common.size(); ++a)
        for (std::size_t b = a + 1; b < common.size(); ++b) {
          int k = common[a], l = common[b];
          if (std::binary_search(adj[k].begin(), adj[k].end(), l))
            cells.insert({i, j, k, l});
        }
    }
  if (cells.size() != 600)
    throw std::logic_error("cell120: expected 600 tetrahedral cells");

  std::vector<std::vector<double>> raw;
  for (const auto& cell : cells) {
    std::vector<double> centroid(4, 0.0);
    for (int idx : cell)
      for (int k = 0; k < 4; ++k) centroid[k] += vs[idx][k];
    raw.push_back(std::move(centroid));
  }
  return raw;
}

}  // namespace

VertexConfiguration polytope4(const std::string& name) {
  std::vector<std::vector<double>> raw;
  if (name == "cell5") {
    raw = cell5_raw();
  } else if (name == "cell16") {
    for (int i = 0; i < 4; ++i)
      for (double s : {1.0, -1.0}) {
        std::vector<double> v(4, 0.0);
        v[i] = s;
        raw.push_back(v);
      }
  } else if (name == "cell8") {
    for (double s0 : {-0.5, 0.5})
      for (double s1 : {-0.5, 0.5})
        for (double s2 : {-0.5, 0.5})
          for (double s3 : {-0.5, 0.5}) raw.push_back({s0, s1, s2, s3});
  } else if (name == "cell24") {
    for (int i = 0; i < 4; ++i)
      for (double s : {1.0, -1.0}) {
        std::vector<double> v(4, 0.0);
        v[i] = s;
        raw.push_back(v);
      }
    for (double s0 : {-0.5, 0.5})
      for (double s1 : {-0.5, 0.5})
        for (double s2 : {-0.5, 0.5})
          for (double s3 : {-0.5, 0.5}) raw.push_back({s0, s1, s2, s3});
  } else if (name == "cell600") {
    raw = cell600_raw();
  } else if (name == "cell120") {
    raw = cell120_raw();
  } else {
    throw std::invalid_argument("polytope4: unknown name '" + name + "'");
  }
  return finish(3, name, std::move(raw));
}

VertexConfiguration by_name(const std::string& name) {
  static const std::map<std::string, std::string> alias = {
      {"pentagon", "polygon5"}, {"triangle", "polygon3"}, {"square", "polygon4"},
      {"hexagon", "polygon6"},  {"digon", "polygon2"}};
  std::string n = name;
  auto it = alias.find(n);
  if (it != alias.end()) n = it->second;
  if (n.rfind("polygon", 0) == 0) {
    int count = std::stoi(n.substr(7));
    return polygon(count);
  }
  for (const char* p : {"tetrahedron", "octahedron", "cube", "icosahedron",
                        "dodecahedron"})
    if (n == p) return platonic(n);
  for (const char* p : {"cell5", "cell16", "cell8", "cell24", "cell600", "cell120"})
    if (n == p) return polytope4(n);
  throw std::invalid_argument("unknown configuration '" + name + "'");
}

std::vector<std::string> shipped_names() {
  return {"polygon<N>",  "triangle",     "square",  "pentagon", "hexagon",
          "tetrahedron", "octahedron",   "cube",    "icosahedron",
          "dodecahedron", "cell5",       "cell16",  "cell8",    "cell24",
          "cell600",     "cell120"};
}

namespace {

std::int64_t quant(double v) { return std::llround(v / tol::quat_dedup); }

struct QuatKey {
  std::int64_t a, b, c, d;
  bool operator<(const QuatKey& o) const {
    return std::tie(a, b, c, d) < std::tie(o.a, o.b, o.c, o.d);
  }
};

QuatKey key_of(const Quaternion& q) {
  return {quant(q.w), quant(q.x), quant(q.y), quant(q.z)};
}

}  // namespace

std::vector<Quaternion> quaternion_closure(const std::vector<Quaternion>& generators,
                                           std::size_t bound) {
  for (const auto& g : generators)
    if (std::fabs(g.norm2() - 1.0) > 1e-9)
      throw std::invalid_argument("quaternion_closure: generators must be unit");
  std::map<QuatKey, Quaternion> seen;
  std::vector<Quaternion> work{Quaternion{1, 0, 0, 0}};
  seen[key_of(work[0])] = work[0];
  while (!work.empty()) {
    Quaternion q = work.back();
    work.pop_back();
    for (const auto& g : generators) {
      Quaternion r = q * g;
      if (seen.emplace(key_of(r), r).second) {
        if (seen.size() > bound)
          throw std::runtime_error("quaternion_closure: bound exceeded");
        work.push_back(r);
      }
    }
  }
  // The quantized key can split one element across two cells when a
  // coordinate sits near a cell boundary; merge by true distance.
  std::vector<Quaternion> out;
  out.reserve(seen.size());
  for (const auto& [k, q] : seen) {
    bool dup = false;
    for (const auto& kept : out) {
      Quaternion d{q.w - kept.w, q.x - kept.x, q.y - kept.y, q.z - kept.z};
      if (d.norm2() < tol::quat_dedup * tol::quat_dedup * 16.0) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(q);
  }
  return out;
}

// Generator pairs for the order-120 icosian group. The S generators are the
// order-6 lifts (1 -+ gr^-1 i ... )/2; T is taken as the order-10 lift of the
// five-fold rotation, the sign for which S^3 = T^5 = (S T)^2 = -1 all hold.
Quaternion icosian_s1() {
  return {0.5, -golden_ratio_inv() / 2.0, 0.0, -golden_ratio() / 2.0};
}
Quaternion icosian_t1() {
  return {-golden_ratio_inv() / 2.0, 0.5, golden_ratio() / 2.0, 0.0};
}
Quaternion icosian_s2() {
  return {0.5, golden_ratio() / 2.0, golden_ratio_inv() / 2.0, 0.0};
}
Quaternion icosian_t2() {
  return {golden_ratio() / 2.0, 0.5, 0.0, golden_ratio_inv() / 2.0};
}

TorusFamily torus_family_from_string(const std::string& s) {
  if (s == "aa") return TorusFamily::aa;
  if (s == "ab") return TorusFamily::ab;
  if (s == "ba") return TorusFamily::ba;
  if (s == "bb") return TorusFamily::bb;
  throw std::invalid_argument("unknown torus family '" + s + "'");
}

std::string to_string(TorusFamily f) {
  switch (f) {
    case TorusFamily::aa: return "aa";
    case TorusFamily::ab: return "ab";
    case TorusFamily::ba: return "ba";
    default: return "bb";
  }
}

double coxeter_constant(char which) {
  double p = golden_ratio();
  double core = std::pow(3.0, -0.5) * std::pow(5.0, -0.25);
  switch (which) {
    case 'a': return std::sqrt((1.0 + core * std::pow(p, 1.5)) / 2.0);
    case 'b': return std::sqrt((1.0 + core * std::pow(p, -1.5)) / 2.0);
    case 'c': return std::sqrt((1.0 - core * std::pow(p, -1.5)) / 2.0);
    case 'd': return std::sqrt((1.0 - core * std::pow(p, 1.5)) / 2.0);
    default: throw std::invalid_argument("coxeter_constant: a, b, c or d");
  }
}

std::array<double, 2> torus_radii(TorusFamily f) {
  double a = coxeter_constant('a'), b = coxeter_constant('b');
  double c = coxeter_constant('c'), d = coxeter_constant('d');
  switch (f) {
    case TorusFamily::aa: return {a, d};
    case TorusFamily::ab: return {d, a};
    case TorusFamily::ba: return {b, c};
    default: return {c, b};
  }
}

namespace {

std::vector<std::array<double, 4>> coxeter_raw(TorusFamily f) {
  const double theta = kPi / 30.0;
  double a = coxeter_constant('a'), b = coxeter_constant('b');
  double c = coxeter_constant('c'), d = coxeter_constant('d');
  std::vector<std::array<double, 4>> pts;
  auto push = [&](double r1, double r2, int k, double sign) {
    pts.push_back({r1 * std::cos(k * theta), r1 * std::sin(k * theta),
                   sign * r2 * std::cos(11 * k * theta),
                   sign * r2 * std::sin(11 * k * theta)});
  };
  switch (f) {
    case TorusFamily::aa:
      for (int k = 0; k < 60; k += 2) push(a, d, k, 1.0);
      break;
    case TorusFamily::ab:
      for (int k = 0; k < 60; k += 2) push(d, a, k, -1.0);
      break;
    case TorusFamily::ba:
      for (int k = 1; k <= 60; k += 2) push(b, c, k, 1.0);
      break;
    default:
      for (int k = 1; k <= 60; k += 2) push(c, b, k, -1.0);
      break;
  }
  return pts;
}

std::vector<std::array<double, 4>> as_array4(const VertexConfiguration& c) {
  std::vector<std::array<double, 4>> out;
  out.reserve(c.vertices.size());
  for (const auto& v : c.vertices) out.push_back({v[0], v[1], v[2], v[3]});
  return out;
}

std::array<double, 4> apply4(const Matrix& r, const std::array<double, 4>& v) {
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i] += r(i, j) * v[j];
  return out;
}

// Orthogonal map carrying the raw torus frame onto the coordinate frame of
// the shipped cell600. Built by matching an adjacent vertex triple and
// completing the frames; the first candidate that maps the whole set wins.
Matrix find_alignment(const std::vector<std::array<double, 4>>& u,
                      const std::vector<std::array<double, 4>>& v) {
  auto dot4 = [](const std::array<double, 4>& p, const std::array<double, 4>& q) {
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2] + p[3] * q[3];
  };
  const double edge_dot = golden_ratio() / 2.0;  // cos 36 deg
  auto neighbors = [&](const std::vector<std::array<double, 4>>& set, int i) {
    std::vector<int> out;
    for (int j = 0; j < static_cast<int>(set.size()); ++j)
      if (j != i && std::fabs(dot4(set[i], set[j]) - edge_dot) < 1e-6)
        out.push_back(j);
    return out;
  };

  // Gram-Schmidt a 4-frame from three unit vectors plus orientation sign.
  auto frame = [&](const std::array<double, 4>& p0, const std::array<double, 4>& p1,
                   const std::array<double, 4>& p2, double orient, Matrix& f) {
    std::array<std::array<double, 4>, 3> basis = {p0, p1, p2};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < i; ++j) {
        double d = dot4(basis[i], basis[j]);
        for (int k = 0; k < 4; ++k) basis[i][k] -= d * basis[j][k];
      }
      double n = std::sqrt(dot4(basis[i], basis[i]));
      if (n < 1e-9) return false;
      for (int k = 0; k < 4; ++k) basis[i][k] /= n;
    }
    // Fourth direction: generalized cross product via cofactors.
    std::array<double, 4> w{};
    for (int k = 0; k < 4; ++k) {
      Matrix minor(3, 3);
      int cc = 0;
      for (int col = 0; col < 4; ++col) {
        if (col == k) continue;
        for (int row = 0; row < 3; ++row) minor(row, cc) = basis[row][col];
        ++cc;
      }
      w[k] = ((k % 2) ? -1.0 : 1.0) * determinant(minor);
    }
    double n = std::sqrt(dot4(w, w));
    for (int k = 0; k < 4; ++k) w[k] = orient * w[k] / n;
    f = Matrix(4, 4);
    for (int k = 0; k < 4; ++k) {
      f(k, 0) = basis[0][k];
      f(k, 1) = basis[1][k];
      f(k, 2) = basis[2][k];
      f(k, 3) = w[k];
    }
    return true;
  };

  auto matches = [&](const Matrix& r) {
    for (const auto& p : u) {
      std::array<double, 4> q = apply4(r, p);
      bool found = false;
      for (const auto& t : v) {
        double d2 = 0.0;
        for (int k = 0; k < 4; ++k) d2 += (q[k] - t[k]) * (q[k] - t[k]);
        if (d2 < tol::vertex_match * tol::vertex_match) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };

  std::vector<int> un = neighbors(u, 0);
  std::array<double, 4> u0 = u[0], u1 = u[un.at(0)];
  int u2i = -1;
  for (int j : un)
    if (j != un[0] && std::fabs(dot4(u[j], u1) - edge_dot) < 1e-6) {
      u2i = j;
      break;
    }
  std::array<double, 4> u2 = u[u2i];
  Matrix fu;
  frame(u0, u1, u2, 1.0, fu);

  std::vector<int> vn = neighbors(v, 0);
  for (int j1 : vn)
    for (int j2 : vn) {
      if (j2 == j1 || std::fabs(dot4(v[j1], v[j2]) - edge_dot) > 1e-6) continue;
      for (double orient : {1.0, -1.0}) {
        Matrix fv;
        if (!frame(v[0], v[j1], v[j2], orient, fv)) continue;
        Matrix r = matmul(fv, transpose(fu));
        if (matches(r)) return r;
      }
    }
  throw std::logic_error("coxeter alignment: no congruence found");
}

}  // namespace

Matrix coxeter_alignment() {
  static Matrix cached;
  static std::once_flag once;
  std::call_once(once, [] {
    std::vector<std::array<double, 4>> raw;
    for (TorusFamily f : {TorusFamily::aa, TorusFamily::ab, TorusFamily::ba,
                          TorusFamily::bb})
      for (const auto& p : coxeter_raw(f)) raw.push_back(p);
    cached = find_alignment(raw, as_array4(polytope4("cell600")));
  });
  return cached;
}

std::vector<std::array<double, 4>> coxeter_tori(TorusFamily f, bool aligned) {
  std::vector<std::array<double, 4>> pts = coxeter_raw(f);
  if (!aligned) return pts;
  Matrix r = coxeter_alignment();
  for (auto& p : pts) p = apply4(r, p);
  return pts;
}

double min_pairwise_distance(const VertexConfiguration& c) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < c.vertices.size(); ++j)
      best = std::min(best, dist2(c.vertices[i], c.vertices[j]));
  return std::sqrt(best);
}

std::size_t edge_count_min_distance(const VertexConfiguration& c, double tol) {
  double cut = min_pairwise_distance(c) + tol;
  double cut2 = cut * cut;
  std::size_t count = 0;
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < c.vertices.size(); ++j)
      if (dist2(c.vertices[i], c.vertices[j]) < cut2) ++count;
  return count;
}

Matrix gram_sum(const VertexConfiguration& c) {
  Matrix g(c.ambient_dim(), c.ambient_dim());
  for (const auto& v : c.vertices)
    for (int i = 0; i < c.ambient_dim(); ++i)
      for (int j = 0; j < c.ambient_dim(); ++j) g(i, j) += v[i] * v[j];
  return g;
}

bool same_vertex_set(const std::vector<std::array<double, 4>>& u,
                     const std::vector<std::array<double, 4>>& v, double tol) {
  if (u.size() != v.size()) return false;
  std::vector<bool> used(v.size(), false);
  for (const auto& p : u) {
    bool found = false;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (used[j]) continue;
      double d2 = 0.0;
      for (int k = 0; k < 4; ++k) d2 += (p[k] - v[j][k]) * (p[k] - v[j][k]);
      if (d2 < tol * tol) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace qfract::polytopes
