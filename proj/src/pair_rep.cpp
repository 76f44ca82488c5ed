#include "qfract/pair_rep.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qfract::clifford {

PairElement pair_product(const PairElement& x, const PairElement& y) {
  if (!(x.a.sig() == y.a.sig()))
    throw std::invalid_argument("pair_product: signature mismatch");
  Multivector pib = involution(y.b, Involution::pi);
  Multivector pia = involution(y.a, Involution::pi);
  return {geometric_product(x.a, y.a) + geometric_product(x.b, pib),
          geometric_product(x.a, y.b) + geometric_product(x.b, pia)};
}

PairElement pair_pi(const PairElement& x) { return {x.a, x.b * -1.0}; }

PairElement pair_tau(const PairElement& x) {
  return {involution(x.a, Involution::nu), involution(x.b, Involution::tau)};
}

PairElement embed_paravector(const Paravector& p) {
  Signature sig = euclidean(p.dim());
  Multivector b(sig);
  b[0] = p.x0;
  for (int i = 0; i < p.dim(); ++i) b[std::size_t{1} << i] = -p.x[i];
  return {Multivector(sig), std::move(b)};
}

namespace {

// Per-blade image of the isomorphism. Bit 0 of the big mask is e0; the
// remaining bits shift down to the small algebra's generators. The sign and
// the slot (a or b) follow from multiplying out the generator images.
struct BladeImage {
  std::uint32_t mask;
  double sign;
  bool odd;  // lands in the b component
};

BladeImage blade_image(std::uint32_t big_mask) {
  bool has_e0 = big_mask & 1u;
  std::uint32_t rest = big_mask >> 1;
  int m = std::popcount(rest);
  BladeImage out{rest, 1.0, false};
  if (!has_e0 && m % 2 == 0) {
    out.sign = (m / 2) % 2 ? -1.0 : 1.0;
  } else if (!has_e0) {
    out.odd = true;
    out.sign = ((m + 1) / 2) % 2 ? -1.0 : 1.0;
  } else if (m % 2 == 1) {
    out.sign = ((m - 1) / 2) % 2 ? -1.0 : 1.0;
  } else {
    out.odd = true;
    out.sign = (m / 2) % 2 ? -1.0 : 1.0;
  }
  return out;
}

}  // namespace

PairElement pair_from_big(const Multivector& x) {
  if (x.sig().p != 1)
    throw std::invalid_argument("pair_from_big: expected signature (1,n)");
  Signature small = euclidean(x.sig().q);
  PairElement out = PairElement::zero(small);
  for (std::uint32_t mask = 0; mask < x.size(); ++mask) {
    double c = x[mask];
    if (c == 0.0) continue;
    BladeImage im = blade_image(mask);
    (im.odd ? out.b : out.a)[im.mask] += im.sign * c;
  }
  return out;
}

Multivector big_from_pair(const PairElement& x) {
  // blade_image is a bijection between big blades and (slot, small blade)
  // pairs; invert it slot by slot. a-slots come from blades without e0 of
  // even grade or with e0 of odd remaining grade; b-slots from the rest.
  Signature big = paravector_ambient(x.a.sig().dim());
  Multivector out(big);
  for (std::uint32_t small = 0; small < x.a.size(); ++small) {
    int m = std::popcount(small);
    double ca = x.a[small];
    if (ca != 0.0) {
      std::uint32_t mask = (m % 2 == 0) ? (small << 1) : ((small << 1) | 1u);
      BladeImage im = blade_image(mask);
      out[mask] += ca / im.sign;
    }
    double cb = x.b[small];
    if (cb != 0.0) {
      std::uint32_t mask = (m % 2 == 1) ? (small << 1) : ((small << 1) | 1u);
      BladeImage im = blade_image(mask);
      out[mask] += cb / im.sign;
    }
  }
  return out;
}

Multivector psi_plus(const PairElement& x, double tol) {
  double scale = std::max(1.0, x.norm_inf());
  if (x.b.norm_inf() > tol * scale)
    throw std::invalid_argument("psi_plus: element has an odd part");
  return x.a;
}

Multivector psi_plus_even(const Multivector& x, double tol) {
  if (x.sig().p != 1)
    throw std::invalid_argument("psi_plus_even: expected signature (1,n)");
  double scale = std::max(1.0, x.norm_inf());
  Multivector out(euclidean(x.sig().q));
  for (std::uint32_t mask = 0; mask < x.size(); ++mask) {
    double c = x[mask];
    if (c == 0.0) continue;
    if (std::popcount(mask) % 2 == 1) {
      if (std::fabs(c) > tol * scale)
        throw std::invalid_argument("psi_plus_even: element has an odd part");
      continue;
    }
    BladeImage im = blade_image(mask);
    out[im.mask] += im.sign * c;
  }
  return out;
}

}  // namespace qfract::clifford
