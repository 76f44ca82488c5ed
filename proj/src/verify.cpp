#include "qfract/verify.hpp"

#include <unistd.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <thread>

#include "qfract/clifford.hpp"
#include "qfract/commands.hpp"
#include "qfract/conformal.hpp"
#include "qfract/fracdim.hpp"
#include "qfract/ifs.hpp"
#include "qfract/io.hpp"
#include "qfract/markov.hpp"
#include "qfract/pair_rep.hpp"
#include "qfract/polytopes.hpp"
#include "qfract/rng.hpp"

namespace qfract::verify {

namespace ca = qfract::clifford;
namespace cf = qfract::conformal;
namespace poly = qfract::polytopes;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

struct Worst {
  double value = 0.0;
  void track(double v) { value = std::max(value, std::fabs(v)); }
};

ca::Multivector random_mv(ca::Signature sig, Rng& rng) {
  ca::Multivector m(sig);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = 2.0 * rng.next_double() - 1.0;
  return m;
}

ca::Multivector random_even_mv(ca::Signature sig, Rng& rng) {
  ca::Multivector m(sig);
  for (std::uint32_t i = 0; i < m.size(); ++i)
    if (std::popcount(i) % 2 == 0) m[i] = 2.0 * rng.next_double() - 1.0;
  return m;
}

std::vector<double> random_unit(int dim, Rng& rng) {
  std::vector<double> v(dim);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      v[i] = rng.next_normal();
      n2 += v[i] * v[i];
    }
  } while (n2 < 1e-12);
  double inv = 1.0 / std::sqrt(n2);
  for (double& c : v) c *= inv;
  return v;
}

// Product of a positive boost and a spin rotation: a generic element of the
// transformer group with Delta = 1.
ca::Multivector random_group_element(int ambient, Rng& rng) {
  ca::Multivector m = ca::boost_from_alpha(0.8 * rng.next_double(),
                                           random_unit(ambient, rng));
  ca::Signature sig = ca::euclidean(ambient);
  ca::Multivector v1 =
      ca::Multivector::paravector(sig, 0.0, random_unit(ambient, rng));
  ca::Multivector v2 =
      ca::Multivector::paravector(sig, 0.0, random_unit(ambient, rng));
  return geometric_product(m, geometric_product(v1, v2));
}

double diff_inf(const ca::Multivector& a, const ca::Multivector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double diff_inf(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

// ---------------------------------------------------------------------------
// Criterion 1: Clifford kernel identity suite.
// ---------------------------------------------------------------------------
CheckResult criterion_clifford(unsigned) {
  CheckResult res;
  res.id = 1;
  res.name = "clifford kernel identities (trace, inner, involutions, Delta)";
  Worst worst;
  Rng rng(20240501, 0);
  std::vector<ca::Signature> sigs = {{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0},
                                     {0, 2}, {1, 1}, {2, 1}, {1, 3}};
  for (ca::Signature sig : sigs) {
    // Basis-level: blade orthonormality (e_I, e_J) = delta_IJ (-1)^{s(I)}.
    for (std::uint32_t i = 0; i < sig.size(); ++i)
      for (std::uint32_t j = 0; j < sig.size(); ++j) {
        double expect = 0.0;
        if (i == j) {
          int s = 1;
          for (int b = 0; b < sig.dim(); ++b)
            if (i & (1u << b)) s *= sig.metric(b);
          expect = s;
        }
        worst.track(inner(ca::Multivector::blade(sig, i),
                          ca::Multivector::blade(sig, j)) -
                    expect);
      }
    worst.track(ca::trace_phi(ca::Multivector::scalar(sig, 1.0)) - 1.0);

    for (int trial = 0; trial < 100; ++trial) {
      ca::Multivector a = random_mv(sig, rng);
      ca::Multivector b = random_mv(sig, rng);
      ca::Multivector c = random_mv(sig, rng);
      ca::Multivector at = involution(a, ca::Involution::tau);
      ca::Multivector bt = involution(b, ca::Involution::tau);

      worst.track(trace_phi(at) - trace_phi(a));
      worst.track(trace_phi(geometric_product(a, b)) -
                  trace_phi(geometric_product(b, a)));
      worst.track(inner(a, b) - inner(b, a));
      worst.track(inner(a, b) - trace_phi(geometric_product(at, b)));
      worst.track(inner(geometric_product(a, b), c) -
                  inner(b, geometric_product(at, c)));
      worst.track(inner(geometric_product(a, b), c) -
                  inner(a, geometric_product(c, bt)));
      if (sig.q == 0 && a.norm_inf() > 0.0 && inner(a, a) <= 0.0)
        worst.track(1.0);  // positive definiteness failure

      // nu = pi o tau = tau o pi.
      worst.track(diff_inf(involution(a, ca::Involution::nu),
                           involution(involution(a, ca::Involution::tau),
                                      ca::Involution::pi)));
      worst.track(diff_inf(involution(a, ca::Involution::nu),
                           involution(involution(a, ca::Involution::pi),
                                      ca::Involution::tau)));

      // Grade projections resolve the identity.
      ca::Multivector sum(sig);
      for (int k = 0; k <= sig.dim(); ++k) sum += grade_project(a, k);
      worst.track(diff_inf(sum, a));
    }

    // Delta multiplicativity on paravectors (Delta scalar there).
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> xa(sig.dim()), xb(sig.dim());
      for (auto& v : xa) v = 2.0 * rng.next_double() - 1.0;
      for (auto& v : xb) v = 2.0 * rng.next_double() - 1.0;
      ca::Multivector a =
          ca::Multivector::paravector(sig, 2.0 * rng.next_double() - 1.0, xa);
      ca::Multivector b =
          ca::Multivector::paravector(sig, 2.0 * rng.next_double() - 1.0, xb);
      double da, db, dab;
      if (!ca::norm_delta_scalar(a, da) || !ca::norm_delta_scalar(b, db) ||
          !ca::norm_delta_scalar(geometric_product(a, b), dab))
        worst.track(1.0);
      worst.track(dab - da * db);
    }
  }

  // Delta(P(x)) = 1 - |x|^2 on the Euclidean ball.
  ca::Signature e3 = ca::euclidean(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x = random_unit(3, rng);
    double scale = rng.next_double();
    for (double& v : x) v *= scale;
    ca::Multivector p = ca::Multivector::paravector(e3, 1.0, x);
    double d;
    ca::norm_delta_scalar(p, d);
    worst.track(d - (1.0 - scale * scale));
  }

  res.pass = worst.value < 1e-12;
  res.detail = fmt("max |error| = %.3g (tolerance 1e-12)", worst.value);
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 2: pair representation and psi+ isomorphism.
// ---------------------------------------------------------------------------
CheckResult criterion_isomorphism(unsigned) {
  CheckResult res;
  res.id = 2;
  res.name = "pair representation and even isomorphism";
  Worst worst;
  Rng rng(20240502, 0);
  for (int n : {2, 3, 4}) {  // small algebra Cl(n,0), big algebra Cl(1,n)
    ca::Signature small = ca::euclidean(n);
    ca::Signature big = ca::paravector_ambient(n);

    for (int trial = 0; trial < 100; ++trial) {
      ca::PairElement x{random_mv(small, rng), random_mv(small, rng)};
      ca::PairElement y{random_mv(small, rng), random_mv(small, rng)};
      ca::PairElement z{random_mv(small, rng), random_mv(small, rng)};

      // Associativity and the unit.
      ca::PairElement lhs = pair_product(pair_product(x, y), z);
      ca::PairElement rhs = pair_product(x, pair_product(y, z));
      worst.track((lhs - rhs).norm_inf());
      worst.track((pair_product(ca::PairElement::one(small), x) - x).norm_inf());

      // tau is an anti-automorphism, pi an automorphism.
      worst.track((pair_tau(pair_product(x, y)) -
                   pair_product(pair_tau(y), pair_tau(x)))
                      .norm_inf());
      worst.track((pair_pi(pair_product(x, y)) -
                   pair_product(pair_pi(x), pair_pi(y)))
                      .norm_inf());

      // The pair picture reproduces the big algebra's product and involutions.
      ca::Multivector bx = random_mv(big, rng);
      ca::Multivector by = random_mv(big, rng);
      worst.track((pair_from_big(geometric_product(bx, by)) -
                   pair_product(pair_from_big(bx), pair_from_big(by)))
                      .norm_inf());
      worst.track((pair_from_big(involution(bx, ca::Involution::pi)) -
                   pair_pi(pair_from_big(bx)))
                      .norm_inf());
      worst.track((pair_from_big(involution(bx, ca::Involution::tau)) -
                   pair_tau(pair_from_big(bx)))
                      .norm_inf());

      // psi+ is multiplicative on the even part and intertwines the traces.
      ca::Multivector ex = random_even_mv(big, rng);
      ca::Multivector ey = random_even_mv(big, rng);
      worst.track(diff_inf(ca::psi_plus_even(geometric_product(ex, ey)),
                           geometric_product(ca::psi_plus_even(ex),
                                             ca::psi_plus_even(ey))));
      worst.track(trace_phi(ex) - trace_phi(ca::psi_plus_even(ex)));
      // Delta commutes with the isomorphism (compare full multivectors).
      worst.track(diff_inf(ca::psi_plus_even(norm_delta(ex)),
                           norm_delta(ca::psi_plus_even(ex))));

      // psi_plus on the pair form agrees with the blade form.
      worst.track(diff_inf(ca::psi_plus(ca::PairElement{
                               pair_from_big(ex).a, ca::Multivector(small)}),
                           ca::psi_plus_even(ex)));

      // Defining Clifford relation in pair form.
      std::vector<double> v(n);
      for (double& c : v) c = 2.0 * rng.next_double() - 1.0;
      ca::Paravector w{2.0 * rng.next_double() - 1.0, v};
      ca::PairElement emb = ca::embed_paravector(w);
      ca::PairElement sq = pair_product(emb, emb);
      worst.track(sq.b.norm_inf());
      ca::Multivector expect = ca::Multivector::scalar(small, w.delta());
      worst.track(diff_inf(sq.a, expect));
    }

    // Basis anchors of the even isomorphism.
    // e0 e1 -> e1 and e1 e2 -> -e1 e2.
    ca::Multivector e0e1 = ca::Multivector::blade(big, 0b11);
    worst.track(diff_inf(ca::psi_plus_even(e0e1),
                         ca::Multivector::basis_vector(small, 0)));
    ca::Multivector e1e2 = ca::Multivector::blade(big, 0b110);
    worst.track(diff_inf(ca::psi_plus_even(e1e2),
                         ca::Multivector::blade(small, 0b11, -1.0)));
  }
  res.pass = worst.value < 1e-12;
  res.detail = fmt("max |error| = %.3g (tolerance 1e-12)", worst.value);
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 3: Moebius action cross-representation agreement.
// ---------------------------------------------------------------------------
CheckResult criterion_cross_representation(unsigned) {
  CheckResult res;
  res.id = 3;
  res.name = "moebius closed form vs conjugation vs Lorentz action";
  Worst worst;
  Rng rng(20240503, 0);
  for (int n : {1, 2, 3}) {
    const int ambient = n + 1;
    for (int trial = 0; trial < 334; ++trial) {
      cf::SpinBoost boost(0.95 * rng.next_double(), random_unit(ambient, rng));
      std::vector<double> x = random_unit(ambient, rng);

      std::vector<double> closed = cf::moebius_apply(boost, x);
      std::vector<double> conj =
          cf::moebius_apply_conjugation(boost.to_multivector(), x);
      cf::LorentzMatrix lam = cf::boost_to_lorentz(boost);
      std::vector<double> lor = cf::lorentz_apply(lam, x);
      worst.track(diff_inf(closed, conj));
      worst.track(diff_inf(closed, lor));

      // Two-fold covering: g and -g act identically.
      ca::Multivector g = random_group_element(ambient, rng);
      std::vector<double> plus = cf::moebius_apply_conjugation(g, x);
      std::vector<double> minus = cf::moebius_apply_conjugation(g * -1.0, x);
      worst.track(diff_inf(plus, minus));

      // Homomorphism: phi_{g1 g2} = phi_{g1} o phi_{g2}.
      ca::Multivector g2 = random_group_element(ambient, rng);
      std::vector<double> composed =
          cf::moebius_apply_conjugation(geometric_product(g, g2), x);
      std::vector<double> chained =
          cf::moebius_apply_conjugation(g, cf::moebius_apply_conjugation(g2, x));
      worst.track(diff_inf(composed, chained));
    }
  }
  res.pass = worst.value < 1e-10;
  res.detail = fmt("max |error| = %.3g (tolerance 1e-10)", worst.value);
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 4: Radon-Nikodym derivatives vs finite differences; cocycle.
// ---------------------------------------------------------------------------
struct TangentFrame {
  std::vector<std::vector<double>> basis;
};

TangentFrame tangent_frame(std::span<const double> x, std::span<const double> axis) {
  const int d = static_cast<int>(x.size());
  TangentFrame f;
  std::vector<std::vector<double>> candidates;
  candidates.emplace_back(axis.begin(), axis.end());
  for (int i = 0; i < d; ++i) {
    std::vector<double> e(d, 0.0);
    e[i] = 1.0;
    candidates.push_back(std::move(e));
  }
  for (auto& c : candidates) {
    // Project out x and the accepted frame vectors.
    double cx = cf::detail::dot(c, x);
    for (int i = 0; i < d; ++i) c[i] -= cx * x[i];
    for (const auto& b : f.basis) {
      double cb = cf::detail::dot(c, b);
      for (int i = 0; i < d; ++i) c[i] -= cb * b[i];
    }
    double n2 = cf::detail::dot(c, c);
    if (n2 < 1e-12) continue;
    double inv = 1.0 / std::sqrt(n2);
    for (double& v : c) v *= inv;
    f.basis.push_back(std::move(c));
    if (static_cast<int>(f.basis.size()) == d - 1) break;
  }
  return f;
}

CheckResult criterion_radon_nikodym(unsigned) {
  CheckResult res;
  res.id = 4;
  res.name = "surface/volume measure derivatives and the cocycle law";
  Worst worst_rel;
  Worst worst_coc;
  Rng rng(20240504, 0);
  const double h = 1e-5;

  for (int n : {1, 2, 3}) {
    const int ambient = n + 1;
    for (int trial = 0; trial < 334; ++trial) {
      cf::SpinBoost boost(0.05 + 0.85 * rng.next_double(), random_unit(ambient, rng));
      std::vector<double> x = random_unit(ambient, rng);

      // Surface factor against sqrt(det J^T J) on a tangent frame.
      TangentFrame frame = tangent_frame(x, boost.axis);
      Matrix jac(ambient, n);
      for (int c = 0; c < n; ++c) {
        std::vector<double> xp(ambient), xm(ambient);
        for (int i = 0; i < ambient; ++i) {
          xp[i] = x[i] + h * frame.basis[c][i];
          xm[i] = x[i] - h * frame.basis[c][i];
        }
        double np = 0, nm = 0;
        for (int i = 0; i < ambient; ++i) {
          np += xp[i] * xp[i];
          nm += xm[i] * xm[i];
        }
        np = std::sqrt(np);
        nm = std::sqrt(nm);
        for (int i = 0; i < ambient; ++i) {
          xp[i] /= np;
          xm[i] /= nm;
        }
        std::vector<double> fp = cf::moebius_apply(boost, xp);
        std::vector<double> fm = cf::moebius_apply(boost, xm);
        for (int i = 0; i < ambient; ++i) jac(i, c) = (fp[i] - fm[i]) / (2.0 * h);
      }
      Matrix jtj = matmul(transpose(jac), jac);
      double fd_area = std::sqrt(std::max(0.0, determinant(jtj)));
      double rn = cf::rn_surface(boost, x);
      worst_rel.track((fd_area - rn) / rn);

      // Volume factor at an interior point.
      std::vector<double> y = random_unit(ambient, rng);
      double scale = 0.9 * rng.next_double();
      for (double& v : y) v *= scale;
      Matrix jv(ambient, ambient);
      for (int c = 0; c < ambient; ++c) {
        std::vector<double> yp = y, ym = y;
        yp[c] += h;
        ym[c] -= h;
        std::vector<double> fp = cf::moebius_apply(boost, yp);
        std::vector<double> fm = cf::moebius_apply(boost, ym);
        for (int i = 0; i < ambient; ++i) jv(i, c) = (fp[i] - fm[i]) / (2.0 * h);
      }
      double fd_vol = std::fabs(determinant(jv));
      double rnv = cf::rn_volume(boost, y);
      worst_rel.track((fd_vol - rnv) / rnv);
    }

    // Cocycle identity for products of generic group elements.
    for (int trial = 0; trial < 100; ++trial) {
      ca::Multivector g1 = random_group_element(ambient, rng);
      ca::Multivector g2 = random_group_element(ambient, rng);
      cf::LorentzMatrix l1 = cf::boost_to_lorentz(g1);
      cf::LorentzMatrix l2 = cf::boost_to_lorentz(g2);
      cf::LorentzMatrix l12;
      l12.n = n;
      l12.m = matmul(l1.m, l2.m);
      std::vector<double> x = random_unit(ambient, rng);
      for (double r : {1.0, static_cast<double>(n), -static_cast<double>(n)}) {
        double lhs = cf::cocycle(l12, x, r);
        double rhs = cf::cocycle(l1, cf::lorentz_apply(l2, x), r) *
                     cf::cocycle(l2, x, r);
        worst_coc.track((lhs - rhs) / std::fabs(lhs));
      }

      // Pure boosts: the -n cocycle is the surface derivative.
      cf::SpinBoost boost(0.9 * rng.next_double(), random_unit(ambient, rng));
      cf::LorentzMatrix lb = cf::boost_to_lorentz(boost);
      worst_coc.track(cf::cocycle(lb, x, -static_cast<double>(n)) -
                      cf::rn_surface(boost, x));
    }
  }
  res.pass = worst_rel.value < 1e-6 && worst_coc.value < 1e-10;
  res.detail = fmt("max FD relative error = %.3g (tol 1e-6), cocycle error = %.3g (tol 1e-10)",
                   worst_rel.value, worst_coc.value);
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 5: stereographic dilation factor.
// ---------------------------------------------------------------------------
CheckResult criterion_stereo(unsigned) {
  CheckResult res;
  res.id = 5;
  res.name = "stereographic projection dilates by (1+a)/(1-a) = e^eta";
  Worst worst;
  Rng rng(20240505, 0);
  for (double alpha : {0.3, 0.5, 0.9}) {
    for (int n : {1, 2, 3}) {
      const int ambient = n + 1;
      std::vector<double> pole = random_unit(ambient, rng);
      cf::SpinBoost boost(alpha, pole);
      double expected = (1.0 + alpha) / (1.0 - alpha);
      worst.track((expected - std::exp(boost.eta())) / expected);
      int done = 0;
      while (done < 100) {
        std::vector<double> x = random_unit(ambient, rng);
        if (cf::detail::dot(pole, x) > 0.8) continue;  // stay off the polar cap
        ++done;
        std::vector<double> sx = cf::stereo_project(pole, x);
        std::vector<double> sy =
            cf::stereo_project(pole, cf::moebius_apply(boost, x));
        // s(phi(x)) = factor * s(x), compared at vector level.
        double err = 0.0, scale = 1.0;
        for (int i = 0; i < ambient; ++i) {
          err = std::max(err, std::fabs(sy[i] - expected * sx[i]));
          scale = std::max(scale, std::fabs(expected * sx[i]));
        }
        worst.track(err / scale);
      }
    }
  }
  res.pass = worst.value < 1e-12;
  res.detail = fmt("max relative error = %.3g (tolerance 1e-12)", worst.value);
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 6: polytope constructions.
// ---------------------------------------------------------------------------
CheckResult criterion_polytopes(unsigned) {
  CheckResult res;
  res.id = 6;
  res.name = "polytope counts, edges, balance, icosians, Coxeter tori";
  std::string fail;
  double worst_balance = 0.0;

  auto expect = [&](bool ok, const std::string& what) {
    if (!ok && fail.empty()) fail = what;
  };

  const struct {
    const char* name;
    std::size_t vertices;
    std::size_t edges;  // 0 = not checked
  } cases[] = {{"cell5", 5, 0},     {"cell16", 8, 24},    {"cell8", 16, 32},
               {"cell24", 24, 96},  {"cell600", 120, 720}, {"cell120", 600, 1200}};
  for (const auto& c : cases) {
    poly::VertexConfiguration conf = poly::polytope4(c.name);
    expect(conf.count() == c.vertices,
           std::string(c.name) + ": vertex count " + std::to_string(conf.count()));
    if (c.edges) {
      std::size_t e = poly::edge_count_min_distance(conf);
      expect(e == c.edges, std::string(c.name) + ": edge count " + std::to_string(e));
    }
    worst_balance = std::max(worst_balance, poly::check_balanced(conf).residual);
  }
  for (const char* name : {"tetrahedron", "octahedron", "cube", "icosahedron",
                           "dodecahedron"})
    worst_balance =
        std::max(worst_balance, poly::check_balanced(poly::platonic(name)).residual);
  for (int n : {2, 3, 4, 5, 6, 7})
    worst_balance =
        std::max(worst_balance, poly::check_balanced(poly::polygon(n)).residual);
  expect(worst_balance < 1e-10, fmt("balance residual %.3g", worst_balance));

  // Icosian generators close onto the 120 vertices with the stated powers.
  poly::Quaternion s1 = poly::icosian_s1(), t1 = poly::icosian_t1();
  auto closure = poly::quaternion_closure({s1, t1});
  expect(closure.size() == 120, "icosian closure size " + std::to_string(closure.size()));
  auto power = [](poly::Quaternion q, int k) {
    poly::Quaternion r{1, 0, 0, 0};
    for (int i = 0; i < k; ++i) r = r * q;
    return r;
  };
  auto is_minus_one = [](const poly::Quaternion& q) {
    return std::fabs(q.w + 1.0) < 1e-12 && std::fabs(q.x) < 1e-12 &&
           std::fabs(q.y) < 1e-12 && std::fabs(q.z) < 1e-12;
  };
  expect(is_minus_one(power(s1, 3)), "S1^3 != -1");
  expect(is_minus_one(power(t1, 5)), "T1^5 != -1");
  expect(is_minus_one(power(s1 * t1, 2)), "(S1 T1)^2 != -1");

  poly::VertexConfiguration c600 = poly::polytope4("cell600");
  std::vector<std::array<double, 4>> table;
  for (const auto& v : c600.vertices) table.push_back({v[0], v[1], v[2], v[3]});
  std::vector<std::array<double, 4>> closure4;
  for (const auto& q : closure) closure4.push_back(q.to_r4());
  expect(poly::same_vertex_set(closure4, table), "icosian closure != vertex table");

  // Coxeter torus rings reproduce the same 120 vertices.
  std::vector<std::array<double, 4>> tori;
  for (poly::TorusFamily f : {poly::TorusFamily::aa, poly::TorusFamily::ab,
                              poly::TorusFamily::ba, poly::TorusFamily::bb}) {
    auto ring = poly::coxeter_tori(f);
    expect(ring.size() == 30, "torus ring size");
    for (const auto& p : ring) tori.push_back(p);
  }
  expect(poly::same_vertex_set(tori, table), "Coxeter tori != vertex table");

  res.pass = fail.empty();
  res.detail = fail.empty()
                   ? fmt("all counts exact; worst balance residual %.3g", worst_balance)
                   : fail;
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 7: Markov conservation of the density integral.
// ---------------------------------------------------------------------------
CheckResult criterion_conservation(unsigned threads) {
  CheckResult res;
  res.id = 7;
  res.name = "density integral conservation under iteration";
  Worst worst_rel;
  std::string detail;

  {
    ifs::IFSSystem pentagon(poly::polygon(5), 0.58);
    markov::DensitySurface s =
        markov::make_sphere_surface(1, {defaults::grid_s1});
    double target = markov::sphere_area(1);
    for (int k = 1; k <= 7; ++k) {
      s = markov::density_grid_iterate(pentagon, s, threads);
      worst_rel.track((markov::integrate_density(s) - target) / target);
    }
    detail += fmt("pentagon k<=7: %.3g; ", worst_rel.value);
  }

  {
    ifs::IFSSystem octa(poly::platonic("octahedron"), 0.5);
    markov::DensitySurface s = markov::make_sphere_surface(
        2, {defaults::grid_s2_lat, defaults::grid_s2_lon});
    double target = markov::sphere_area(2);
    Worst w2;
    for (int k = 1; k <= 4; ++k) {
      s = markov::density_grid_iterate(octa, s, threads);
      w2.track((markov::integrate_density(s) - target) / target);
    }
    worst_rel.track(w2.value);
    detail += fmt("octahedron k<=4: %.3g; ", w2.value);
  }

  bool mc_ok = true;
  {
    ifs::IFSSystem cell16(poly::polytope4("cell16"), 0.5);
    double target = markov::sphere_area(3);
    for (int k = 1; k <= 2; ++k) {
      double sigma = 0.0;
      double est = markov::integrate_density_mc(cell16, k, 1000000, 97, &sigma, threads);
      if (std::fabs(est - target) > 3.0 * sigma) mc_ok = false;
      detail += fmt("cell16 k=%.0f: |err|/sigma = %.2f; ", static_cast<double>(k),
                    std::fabs(est - target) / sigma);
    }
  }

  res.pass = worst_rel.value < 0.01 && mc_ok;
  res.detail = detail + (mc_ok ? "(MC within 3 sigma)" : "(MC outside 3 sigma)");
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 8: density oracles (exact recursion, histogram, closed value).
// ---------------------------------------------------------------------------
CheckResult criterion_density_oracles(unsigned threads) {
  CheckResult res;
  res.id = 8;
  res.name = "density recursion vs grid, MC pushforward, closed value";
  std::string detail;
  bool pass = true;

  // Exact recursion vs grid interpolation, pentagon k <= 4 on M = 4096.
  {
    ifs::IFSSystem pentagon(poly::polygon(5), 0.58);
    markov::DensitySurface grid = markov::make_sphere_surface(1, {4096});
    double worst = 0.0;
    for (int k = 1; k <= 4; ++k) {
      grid = markov::density_grid_iterate(pentagon, grid, threads);
      std::vector<double> exact =
          markov::density_exact_batch(pentagon, grid, k, threads);
      for (std::size_t i = 0; i < exact.size(); ++i)
        worst = std::max(worst, std::fabs(grid.values[i] - exact[i]) / exact[i]);
    }
    pass = pass && worst < 1e-3;
    detail += fmt("grid vs exact rel err %.3g (tol 1e-3); ", worst);
  }

  // One pushforward step vs f_1, histogrammed on 200 bins.
  {
    ifs::IFSSystem pentagon(poly::polygon(5), 0.58);
    const std::size_t samples = 10000000;
    const std::size_t bins = 200;
    std::vector<std::uint64_t> counts(bins, 0);
    Rng rng(1, 0);
    std::vector<double> x(2), p(5);
    for (std::size_t s = 0; s < samples; ++s) {
      double th = 2.0 * kPi * rng.next_double();
      x[0] = std::cos(th);
      x[1] = std::sin(th);
      ifs::probabilities(pentagon, x, p);
      double u = rng.next_double();
      std::size_t i = 0;
      double acc = 0.0;
      for (; i < 5; ++i) {
        acc += p[i];
        if (u < acc) break;
      }
      if (i == 5) i = 4;
      cf::detail::moebius_apply_raw(0.58, pentagon.axis(i), x, x);
      double ty = std::atan2(x[1], x[0]);
      if (ty < 0) ty += 2.0 * kPi;
      std::size_t b = std::min(bins - 1, static_cast<std::size_t>(ty / (2.0 * kPi) * bins));
      ++counts[b];
    }
    // Expected bin mass: 8-point midpoint average of f_1 over each bin.
    double worst_sigma = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
      double mass = 0.0;
      for (int j = 0; j < 8; ++j) {
        double th = 2.0 * kPi * (b + (j + 0.5) / 8.0) / bins;
        double pt[2] = {std::cos(th), std::sin(th)};
        mass += markov::density_exact(pentagon, pt, 1);
      }
      double prob = mass / 8.0 / bins;  // f averages to 1 over the circle
      double expected = static_cast<double>(samples) * prob;
      double sigma = std::sqrt(expected * (1.0 - prob));
      worst_sigma = std::max(worst_sigma,
                             std::fabs(static_cast<double>(counts[b]) - expected) / sigma);
    }
    pass = pass && worst_sigma < 3.0;
    detail += fmt("pushforward worst bin %.2f sigma (tol 3); ", worst_sigma);
  }

  // Antipodal pair on S^1, alpha = 1/2, r orthogonal to the axis.
  {
    ifs::IFSSystem pair(poly::polygon(2), 0.5);
    double r[2] = {0.0, 1.0};
    double f1 = markov::density_exact(pair, r, 1);
    pass = pass && std::fabs(f1 - 0.216) < 1e-12;
    detail += fmt("antipodal f1 = %.15f (expect 0.216)", f1);
  }

  res.pass = pass;
  res.detail = detail;
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 9: trace operator V.
// ---------------------------------------------------------------------------
CheckResult criterion_trace_operator(unsigned threads) {
  CheckResult res;
  res.id = 9;
  res.name = "trace operator: V(1)=1, trace preservation, spectrum, fixed point";
  std::string detail;
  bool pass = true;

  ifs::IFSSystem octa(poly::platonic("octahedron"), 0.5);
  markov::TraceOperator op = markov::trace_operator(octa);

  // V(1) = 1 exactly: first column is the first basis vector.
  bool v1_exact = op.m(0, 0) == 1.0;
  for (int i = 1; i <= op.ambient_dim; ++i) v1_exact = v1_exact && op.m(i, 0) == 0.0;
  pass = pass && v1_exact;
  detail += v1_exact ? "V(1)=1 exact; " : "V(1) != 1; ";

  // Phi(V(a)) = Phi(a): the top row is (1, 0, ..., 0).
  double row_err = std::fabs(op.m(0, 0) - 1.0);
  for (int j = 1; j <= op.ambient_dim; ++j)
    row_err = std::max(row_err, std::fabs(op.m(0, j)));
  pass = pass && row_err < 1e-13;
  detail += fmt("trace row error %.3g (tol 1e-13); ", row_err);

  // Vector block spectrum: all eigenvalues 11/15.
  std::vector<double> ev = markov::vector_block_eigenvalues(op);
  double ev_err = 0.0;
  for (double e : ev) ev_err = std::max(ev_err, std::fabs(e - 11.0 / 15.0));
  pass = pass && ev_err < 1e-12;
  detail += fmt("eigenvalue error %.3g (tol 1e-12); ", ev_err);

  // Power iteration from 1 + 0.9 e1 converges to 1 at the spectral rate.
  std::vector<double> a0(op.ambient_dim + 1, 0.0);
  a0[0] = 1.0;
  a0[1] = 0.9;
  markov::FixedPointResult fp = markov::trace_fixed_point(op, a0);
  double fp_err = std::fabs(fp.element[0] - 1.0);
  for (int i = 1; i <= op.ambient_dim; ++i)
    fp_err = std::max(fp_err, std::fabs(fp.element[i]));
  double rate_rel = std::fabs(fp.fitted_rate - 11.0 / 15.0) / (11.0 / 15.0);
  pass = pass && fp_err < 1e-10 && rate_rel < 0.01;
  detail += fmt("fixed point err %.3g, rate off by %.3g%%; ", fp_err, 100.0 * rate_rel);

  // Chaos-game mean of P(x_k) agrees with the fixed point (mean -> 0).
  {
    const std::size_t n_pts = 1000000;
    std::vector<double> mean(3, 0.0);
    const std::size_t batches = 100;
    std::vector<std::vector<double>> batch_mean(batches, std::vector<double>(3, 0.0));
    std::size_t per_batch = n_pts / batches;
    std::size_t index = 0;
    ifs::run_stream(
        octa, n_pts, 31337,
        [&](const ifs::SamplePoint&, std::span<const double> x) {
          std::size_t b = std::min(batches - 1, index / per_batch);
          for (int c = 0; c < 3; ++c) {
            mean[c] += x[c];
            batch_mean[b][c] += x[c];
          }
          ++index;
        },
        defaults::burn_in, {}, 1, threads);
    double norm2 = 0.0, sigma2 = 0.0;
    for (int c = 0; c < 3; ++c) {
      mean[c] /= static_cast<double>(n_pts);
      double var_c = 0.0;
      for (std::size_t b = 0; b < batches; ++b) {
        double bm = batch_mean[b][c] / static_cast<double>(per_batch);
        var_c += (bm - mean[c]) * (bm - mean[c]);
      }
      var_c /= static_cast<double>(batches - 1) * static_cast<double>(batches);
      norm2 += mean[c] * mean[c];
      sigma2 += var_c;
    }
    double dev = std::sqrt(norm2);
    double bound = 4.0 * std::sqrt(sigma2);
    pass = pass && dev < bound;
    detail += fmt("sample mean |m| = %.4g vs 4 sigma = %.4g", dev, bound);
  }

  res.pass = pass;
  res.detail = detail;
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 10: correlation dimension.
// ---------------------------------------------------------------------------
std::vector<double> chaos_points_flat(const ifs::IFSSystem& system, std::size_t n,
                                      std::uint64_t seed, unsigned threads) {
  std::vector<double> pts;
  pts.reserve(n * system.ambient_dim());
  ifs::run_stream(
      system, n, seed,
      [&](const ifs::SamplePoint&, std::span<const double> x) {
        pts.insert(pts.end(), x.begin(), x.end());
      },
      defaults::burn_in, {}, 1, threads);
  return pts;
}

CheckResult criterion_fracdim(unsigned threads) {
  CheckResult res;
  res.id = 10;
  res.name = "correlation dimension: Cantor oracle, pentagon, staircase";
  std::string detail;
  bool pass = true;

  const fracdim::CorrelationOptions sampled{defaults::correlation_pair_samples,
                                            false, 11};
  {
    std::vector<double> pts = fracdim::cantor_points(100000, 5);
    double diam = fracdim::diameter_upper_bound(pts, 1);
    double rmin = defaults::fit_rmin_frac * diam;
    double rmax = defaults::fit_rmax_frac * diam;
    auto curve = fracdim::correlation_integral(pts, 1, fracdim::log_radii(rmin, rmax, 24),
                                               sampled);
    auto fit = fracdim::fit_dimension(curve, rmin, rmax);
    pass = pass && std::fabs(fit.dimension - 0.63) < 0.03;
    detail += fmt("Cantor D = %.4f (expect 0.63 +- 0.03); ", fit.dimension);
  }

  {
    ifs::IFSSystem pentagon(poly::polygon(5), 0.58);
    std::vector<double> pts = chaos_points_flat(pentagon, 1000000, 99, threads);
    double diam = fracdim::diameter_upper_bound(pts, 2);
    double rmin = defaults::fit_rmin_frac * diam;
    double rmax = defaults::fit_rmax_frac * diam;
    auto curve = fracdim::correlation_integral(pts, 2, fracdim::log_radii(rmin, rmax, 24),
                                               sampled);
    auto fit = fracdim::fit_dimension(curve, rmin, rmax);
    pass = pass && std::fabs(fit.dimension - 0.9) < 0.1 && !fit.staircase;
    detail += fmt("pentagon(0.58) D = %.4f, residual %.4f; ", fit.dimension,
                  fit.rms_residual);
  }

  {
    ifs::IFSSystem pentagon(poly::polygon(5), 0.925);
    std::vector<double> pts = chaos_points_flat(pentagon, 1000000, 99, threads);
    double diam = fracdim::diameter_upper_bound(pts, 2);
    double rmin = defaults::fit_rmin_frac * diam;
    double rmax = defaults::fit_rmax_frac * diam;
    auto curve = fracdim::correlation_integral(pts, 2, fracdim::log_radii(rmin, rmax, 24),
                                               sampled);
    auto fit = fracdim::fit_dimension(curve, rmin, rmax);
    pass = pass && fit.staircase;
    detail += fmt("pentagon(0.925) residual %.4f -> staircase ", fit.rms_residual);
    detail += fit.staircase ? "raised" : "NOT raised";
  }

  res.pass = pass;
  res.detail = detail;
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 11: chaos-game slice count anchor.
// ---------------------------------------------------------------------------
CheckResult criterion_slice_anchor(unsigned threads) {
  CheckResult res;
  res.id = 11;
  res.name = "16-cell slice population matches the published count";
  const double expected = 16742.0;
  const double lo = expected * 0.95, hi = expected * 1.05;
  bool pass = true;
  std::string detail;

  ifs::IFSSystem cell16(poly::polytope4("cell16"), 0.5);
  std::uint64_t seeds[5] = {1, 2, 3, 4, 5};
  std::vector<std::uint64_t> counts(5, 0), halves(5, 0);

  // Seeds are independent runs; spread them over the workers.
  std::vector<std::thread> pool;
  unsigned active = std::max(1u, std::min(threads, 5u));
  for (unsigned t = 0; t < active; ++t)
    pool.emplace_back([&, t] {
      for (unsigned s = t; s < 5; s += active) {
        std::uint64_t count = 0, half = 0;
        ifs::run_stream(
            cell16, 10000000, seeds[s],
            [&](const ifs::SamplePoint&, std::span<const double> x) {
              if (x[3] > 0.5 && x[3] < 0.51) ++count;
              if (x[3] > 0.5 && x[3] < 0.505) ++half;
            },
            defaults::burn_in, {}, 1, 1);
        counts[s] = count;
        halves[s] = half;
      }
    });
  for (auto& th : pool) th.join();

  for (int s = 0; s < 5; ++s) {
    pass = pass && counts[s] > lo && counts[s] < hi;
    detail += fmt("seed %.0f: %.0f; ", static_cast<double>(seeds[s]),
                  static_cast<double>(counts[s]));
  }
  detail += fmt("(accept %.0f..%.0f)", lo, hi);
  if (!pass) {
    // Diagnostic context: band mass of the sampler agrees with the exact
    // transfer-operator recursion (~3.3e-3 of points in the stated band),
    // while the published count is reproduced by half the stated width.
    detail += " | half-width band (0.5,0.505):";
    for (int s = 0; s < 5; ++s)
      detail += fmt(" %.0f", static_cast<double>(halves[s]));
  }
  res.pass = pass;
  res.detail = detail;
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 12: reproducibility of command outputs.
// ---------------------------------------------------------------------------
CheckResult criterion_reproducibility(unsigned) {
  CheckResult res;
  res.id = 12;
  res.name = "seeded outputs reproduce bit-for-bit";
  bool pass = true;
  std::string detail;

  fs::path base = fs::temp_directory_path() /
                  ("qfract-verify-" + std::to_string(::getpid()));
  fs::create_directories(base);
  auto path = [&](const std::string& n) { return (base / n).string(); };

  try {
    // Single-threaded sample, written twice.
    cli::SampleParams sp;
    sp.polytope = "pentagon";
    sp.alpha = 0.58;
    sp.points = 20000;
    sp.seed = 7;
    sp.out = path("a.csv");
    cli::cmd_sample(sp);
    sp.out = path("b.csv");
    cli::cmd_sample(sp);
    bool same = io::read_file(path("a.csv")) == io::read_file(path("b.csv"));
    pass = pass && same;
    detail += same ? "single-thread identical; " : "single-thread MISMATCH; ";

    // Multi-chain run: worker count must not change the bytes.
    cli::SampleParams mp = sp;
    mp.chains = 4;
    mp.threads = 1;
    mp.out = path("m1.csv");
    cli::cmd_sample(mp);
    mp.threads = 2;
    mp.out = path("m2.csv");
    cli::cmd_sample(mp);
    mp.threads = 4;
    mp.out = path("m4.csv");
    cli::cmd_sample(mp);
    bool same_mt = io::read_file(path("m1.csv")) == io::read_file(path("m2.csv")) &&
                   io::read_file(path("m1.csv")) == io::read_file(path("m4.csv"));
    pass = pass && same_mt;
    detail += same_mt ? "order-stable across 1/2/4 workers; " : "multi-thread MISMATCH; ";

    // Manifest replay: sample and a small density (CSV + PGM).
    auto mismatch = cli::replay_manifest(path("a.csv") + ".manifest.json",
                                         (base / "replay1").string());
    pass = pass && mismatch.empty();
    detail += mismatch.empty() ? "sample replay identical; " : "sample replay differs; ";

    cli::DensityParams dp;
    dp.polytope = "pentagon";
    dp.alpha = 0.58;
    dp.depth = 3;
    dp.grid = {512};
    dp.out = path("d.csv");
    dp.image = path("d.pgm");
    cli::cmd_density(dp);
    auto mismatch2 = cli::replay_manifest(path("d.csv") + ".manifest.json",
                                          (base / "replay2").string());
    pass = pass && mismatch2.empty();
    detail += mismatch2.empty() ? "density replay identical" : "density replay differs";
  } catch (const std::exception& e) {
    pass = false;
    detail += std::string("exception: ") + e.what();
  }

  std::error_code ec;
  fs::remove_all(base, ec);
  res.pass = pass;
  res.detail = detail;
  return res;
}

}  // namespace

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "clifford") return {1, 2};
  if (suite == "conformal") return {3, 4, 5};
  if (suite == "polytopes") return {6};
  if (suite == "markov") return {7, 8, 9};
  if (suite == "fracdim") return {10};
  if (suite == "ifs") return {11};
  if (suite == "cli") return {12};
  if (suite == "all" || suite == "acceptance")
    return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

std::vector<CheckResult> run_acceptance(unsigned threads, const std::vector<int>& only) {
  using Fn = CheckResult (*)(unsigned);
  const Fn criteria[12] = {
      criterion_clifford,       criterion_isomorphism,
      criterion_cross_representation, criterion_radon_nikodym,
      criterion_stereo,         criterion_polytopes,
      criterion_conservation,   criterion_density_oracles,
      criterion_trace_operator, criterion_fracdim,
      criterion_slice_anchor,   criterion_reproducibility};
  std::vector<CheckResult> out;
  for (int id = 1; id <= 12; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end())
      continue;
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r = criteria[id - 1](threads);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qfract::verify
