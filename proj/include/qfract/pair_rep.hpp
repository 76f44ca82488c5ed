#pragma once

#include <stdexcept>

#include "qfract/clifford.hpp"

namespace qfract::clifford {

// Even/odd split of Cl(1,n+1) presented over Cl(n+1,0): the matrix
//   A(a,b) = [[a, b], [pi(b), pi(a)]]
// closes under multiplication, so a pair (a,b) of elements of Cl(n+1,0)
// carries the whole algebra. Even elements are the pairs with b = 0.
struct PairElement {
  Multivector a;
  Multivector b;

  PairElement(Multivector a_, Multivector b_) : a(std::move(a_)), b(std::move(b_)) {
    if (!(a.sig() == b.sig()))
      throw std::invalid_argument("PairElement: signature mismatch");
  }
  static PairElement zero(Signature sig) {
    return {Multivector(sig), Multivector(sig)};
  }
  static PairElement one(Signature sig) {
    return {Multivector::scalar(sig, 1.0), Multivector(sig)};
  }

  PairElement& operator+=(const PairElement& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend PairElement operator+(PairElement x, const PairElement& y) { return x += y; }
  friend PairElement operator-(const PairElement& x, const PairElement& y) {
    return {x.a - y.a, x.b - y.b};
  }

  double norm_inf() const { return std::max(a.norm_inf(), b.norm_inf()); }
};

// (a,b)(a',b') = (a a' + b pi(b'), a b' + b pi(a')).
PairElement pair_product(const PairElement& x, const PairElement& y);

// Principal automorphism and anti-automorphism of the big algebra in pair form.
PairElement pair_pi(const PairElement& x);
PairElement pair_tau(const PairElement& x);

// Image of the paravector x0 + x under the defining Clifford map; it squares
// to (x0^2 - |x|^2) * (1, 0).
PairElement embed_paravector(const Paravector& p);

// Isomorphism from Cl(1,n+1) onto pairs over Cl(n+1,0). Generator images:
// e0 -> (0, 1), e_i -> (0, -e_i); blades map by multiplying generator images.
PairElement pair_from_big(const Multivector& x);

// Inverse of the above; (a, 0) lifts to the even part, (0, b) to the odd.
Multivector big_from_pair(const PairElement& x);

// Projection onto the small algebra; defined on even elements (b = 0).
Multivector psi_plus(const PairElement& x, double tol = tol::scalar_residue);

// Direct blade form of the even isomorphism:
//   e_{i1}..e_{i2k}      -> (-1)^k e_{i1}..e_{i2k}
//   e0 e_{i1}..e_{i2k+1} -> (-1)^k e_{i1}..e_{i2k+1}
// Throws if x has an odd part.
Multivector psi_plus_even(const Multivector& x, double tol = tol::scalar_residue);

}  // namespace qfract::clifford
