#include <doctest.h>

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qfract/pair_rep.hpp"
#include "qfract/rng.hpp"

using namespace qfract;
using namespace qfract::clifford;

namespace {

Multivector random_mv(Signature sig, Rng& rng) {
  Multivector m(sig);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = 2.0 * rng.next_double() - 1.0;
  return m;
}

Multivector random_even(Signature sig, Rng& rng) {
  Multivector m(sig);
  for (std::uint32_t i = 0; i < m.size(); ++i)
    if (std::popcount(i) % 2 == 0) m[i] = 2.0 * rng.next_double() - 1.0;
  return m;
}

double diff_inf(const Multivector& a, const Multivector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("pair product unit and embedding square") {
  Signature small = euclidean(3);
  Rng rng(21, 0);
  PairElement one = PairElement::one(small);
  for (int t = 0; t < 20; ++t) {
    PairElement x{random_mv(small, rng), random_mv(small, rng)};
    CHECK((pair_product(one, x) - x).norm_inf() == 0.0);
    CHECK((pair_product(x, one) - x).norm_inf() == 0.0);
  }

  // gamma(w)^2 = Q1(w) (1,0) for paravectors w = x0 + x.
  for (int t = 0; t < 50; ++t) {
    Paravector w{2.0 * rng.next_double() - 1.0,
                 {2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0,
                  2.0 * rng.next_double() - 1.0}};
    PairElement sq = pair_product(embed_paravector(w), embed_paravector(w));
    CHECK(sq.b.norm_inf() < 1e-14);
    CHECK(sq.a[0] == doctest::Approx(w.delta()).epsilon(1e-13));
    Multivector rest = sq.a;
    rest[0] = 0.0;
    CHECK(rest.norm_inf() < 1e-14);
  }
}

TEST_CASE("pair involutions mirror the big algebra") {
  Signature big = paravector_ambient(4);
  Rng rng(22, 0);
  for (int t = 0; t < 50; ++t) {
    Multivector x = random_mv(big, rng);
    Multivector y = random_mv(big, rng);
    PairElement px = pair_from_big(x), py = pair_from_big(y);
    CHECK((pair_from_big(x * y) - pair_product(px, py)).norm_inf() < 1e-12);
    CHECK((pair_from_big(involution(x, Involution::pi)) - pair_pi(px)).norm_inf() <
          1e-13);
    CHECK((pair_from_big(involution(x, Involution::tau)) - pair_tau(px)).norm_inf() <
          1e-13);
    // tau(x y) = tau(y) tau(x) stated directly on pairs.
    CHECK((pair_tau(pair_product(px, py)) -
           pair_product(pair_tau(py), pair_tau(px)))
              .norm_inf() < 1e-12);
  }
}

TEST_CASE("psi+ basis action") {
  // e0 e1 -> e1 (k = 0), e1 e2 -> -e1 e2 (k = 1).
  Signature big = paravector_ambient(3);
  Signature small = euclidean(3);
  CHECK(diff_inf(psi_plus_even(Multivector::blade(big, 0b0011)),
                 Multivector::basis_vector(small, 0)) == 0.0);
  CHECK(diff_inf(psi_plus_even(Multivector::blade(big, 0b0110)),
                 Multivector::blade(small, 0b011, -1.0)) == 0.0);
  // e0 e1 e2 e3 -> -e1 e2 e3 (k = 1).
  CHECK(diff_inf(psi_plus_even(Multivector::blade(big, 0b1111)),
                 Multivector::blade(small, 0b111, -1.0)) == 0.0);
}

TEST_CASE("psi+ is an algebra isomorphism intertwining Phi and Delta") {
  Rng rng(23, 0);
  for (int n : {2, 3, 4}) {
    Signature big = paravector_ambient(n);
    for (int t = 0; t < 50; ++t) {
      Multivector x = random_even(big, rng);
      Multivector y = random_even(big, rng);
      CHECK(diff_inf(psi_plus_even(x * y), psi_plus_even(x) * psi_plus_even(y)) <
            1e-12);
      CHECK(trace_phi(x) == doctest::Approx(trace_phi(psi_plus_even(x))).epsilon(1e-13));
      CHECK(diff_inf(psi_plus_even(norm_delta(x)), norm_delta(psi_plus_even(x))) <
            1e-12);
    }
  }
}

TEST_CASE("pair map round trips both ways") {
  Rng rng(24, 0);
  for (int n : {2, 3, 4}) {
    Signature big = paravector_ambient(n);
    Signature small = euclidean(n);
    for (int t = 0; t < 30; ++t) {
      Multivector x = random_mv(big, rng);
      CHECK(diff_inf(big_from_pair(pair_from_big(x)), x) == 0.0);
      PairElement p{random_mv(small, rng), random_mv(small, rng)};
      PairElement back = pair_from_big(big_from_pair(p));
      CHECK((back - p).norm_inf() == 0.0);
    }
  }
}

TEST_CASE("group members lift to even elements with unit norm upstairs") {
  // The boost-rotation products that act on the sphere correspond, through
  // the pair picture, to even elements of the big algebra with Delta = 1
  // whose conjugation preserves the span of {e0, ..., e_{n+1}}.
  Rng rng(25, 0);
  Signature small = euclidean(3);
  auto random_unit3 = [&] {
    std::vector<double> v(3);
    double n2 = 0;
    for (auto& c : v) c = rng.next_normal();
    n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    for (auto& c : v) c /= std::sqrt(n2);
    return v;
  };
  for (int t = 0; t < 25; ++t) {
    Multivector g = boost_from_alpha(0.8 * rng.next_double(), random_unit3()) *
                    (Multivector::paravector(small, 0.0, random_unit3()) *
                     Multivector::paravector(small, 0.0, random_unit3()));
    Multivector lift = big_from_pair(PairElement{g, Multivector(small)});

    // Even upstairs.
    for (std::uint32_t mask = 0; mask < lift.size(); ++mask)
      if (std::popcount(mask) % 2 == 1) CHECK(lift[mask] == 0.0);

    // Delta of the lift is the scalar 1.
    double delta;
    CHECK(norm_delta_scalar(lift, delta));
    CHECK(delta == doctest::Approx(1.0).epsilon(1e-11));

    // Conjugation preserves the vector space upstairs.
    Multivector lift_tau = involution(lift, Involution::tau);
    for (int i = 0; i < 4; ++i) {
      Multivector v = Multivector::basis_vector(paravector_ambient(3), i);
      Multivector image = lift * v * lift_tau;
      for (std::uint32_t mask = 0; mask < image.size(); ++mask)
        if (std::popcount(mask) != 1)
          CHECK(std::fabs(image[mask]) < 1e-11);
    }
  }
}

TEST_CASE("psi+ rejects odd input") {
  Signature big = paravector_ambient(3);
  Multivector odd = Multivector::basis_vector(big, 1);
  CHECK_THROWS_AS(psi_plus_even(odd), std::invalid_argument);
  PairElement p = pair_from_big(odd);
  CHECK_THROWS_AS(psi_plus(p), std::invalid_argument);
}
