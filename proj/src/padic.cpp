#include "rqf/padic.hpp"

#include <algorithm>

#include "rqf/errors.hpp"

namespace rqf {

namespace {

Int embed(const QuadInt& x, const Int& r, const Int& mod_pt) {
  Int v = (x.a + x.b * r) * invmod(Int(2), mod_pt);
  return mod(v, mod_pt);
}

}  // namespace

Int PadicEmbeddingPair::phi1(const QuadInt& x) const { return embed(x, r1, modulus); }
Int PadicEmbeddingPair::phi2(const QuadInt& x) const { return embed(x, r2, modulus); }

PadicEmbeddingPair split_embeddings(const QuadraticField& k, std::int64_t p, int t) {
  if (t < 2) throw Error(ErrorKind::InvalidArgument, "precision t must be at least 2");
  const Int pp(static_cast<long>(p));
  if (!is_split(k, pp)) throw Error(ErrorKind::NotSplit, std::to_string(p) + " is not split");
  const Int d(static_cast<long>(k.disc()));
  Int r = *sqrt_mod_prime(mod(d, pp), pp);
  Int r0 = std::min(r, Int(pp - r));
  PadicEmbeddingPair out;
  out.p = p;
  out.t = t;
  out.modulus = ipow(pp, static_cast<unsigned long>(t));
  out.r1 = hensel_lift_sqrt(d, r0, pp, t);
  out.r2 = mod(-out.r1, out.modulus);
  return out;
}

FermatQuotient residue_delta(const Int& u, std::int64_t p, int t) {
  const Int pp(static_cast<long>(p));
  const Int m = ipow(pp, static_cast<unsigned long>(t));
  if (u % pp == 0) throw Error(ErrorKind::NotCoprime, "residue divisible by p");
  Int y = mod(powmod(mod(u, m), Int(p - 1), m) - 1, m);
  FermatQuotient f;
  f.precision = t;
  if (y == 0) {
    f.delta = t - 1;
    f.saturated = true;
  } else {
    f.delta = valuation(y, pp) - 1;
  }
  return f;
}

FermatQuotient residue_delta_by_order(const Int& u, std::int64_t p, int t) {
  const Int pp(static_cast<long>(p));
  const Int m = ipow(pp, static_cast<unsigned long>(t));
  if (u % pp == 0) throw Error(ErrorKind::NotCoprime, "residue divisible by p");
  Int y = powmod(mod(u, m), Int(p - 1), m);
  // y lies in 1 + pZ/p^t; its order is p^j with j = t - v_p(y - 1).
  int j = 0;
  while (y != 1) {
    y = powmod(y, pp, m);
    ++j;
  }
  FermatQuotient f;
  f.precision = t;
  if (j == 0) {
    f.delta = t - 1;
    f.saturated = true;
  } else {
    f.delta = t - j - 1;
  }
  return f;
}

namespace {

FermatQuotient combine(const FermatQuotient& a, const FermatQuotient& b) {
  if (a.saturated && b.saturated) return a;
  if (a.saturated) return b;
  if (b.saturated) return a;
  return a.delta <= b.delta ? a : b;
}

void require_coprime(const QuadInt& x, std::int64_t p) {
  if (norm(x) % p == 0)
    throw Error(ErrorKind::NotCoprime, "element is not prime to " + std::to_string(p));
}

}  // namespace

FermatQuotient fermat_quotient(const QuadInt& x, const PadicEmbeddingPair& pair) {
  require_coprime(x, pair.p);
  FermatQuotient f1 = residue_delta(pair.phi1(x), pair.p, pair.t);
  FermatQuotient f2 = residue_delta(pair.phi2(x), pair.p, pair.t);
  Int n = mod(norm(x), pair.modulus);
  if ((n == 1 || n == pair.modulus - 1) &&
      (f1.saturated != f2.saturated || (!f1.saturated && f1.delta != f2.delta)))
    throw Error(ErrorKind::InvalidArgument, "embeddings disagree on a norm +-1 element");
  return combine(f1, f2);
}

FermatQuotient fermat_quotient_by_order(const QuadInt& x, const PadicEmbeddingPair& pair) {
  require_coprime(x, pair.p);
  return combine(residue_delta_by_order(pair.phi1(x), pair.p, pair.t),
                 residue_delta_by_order(pair.phi2(x), pair.p, pair.t));
}

FermatQuotient fermat_quotient_counit(const PUnitRecord& pu, const PadicEmbeddingPair& pair) {
  // eta generates a power of the prime where phi_1 vanishes, so phi_2(eta) is a unit.
  Int u = pair.phi2(pu.eta);
  if (u % pair.p == 0)
    throw Error(ErrorKind::InvalidArgument, "p-unit is not a unit at the second embedding");
  return residue_delta(u, pair.p, pair.t);
}

int delta_auto(const QuadraticField& k, const QuadInt& x, std::int64_t p, int t) {
  while (true) {
    FermatQuotient f = fermat_quotient(x, split_embeddings(k, p, t));
    if (!f.saturated) return f.delta;
    if (t >= kMaxPrecision) break;
    t = std::min(2 * t, kMaxPrecision);
  }
  throw Error(ErrorKind::PrecisionExhausted, "delta saturated at precision " + std::to_string(kMaxPrecision));
}

int delta_counit_auto(const QuadraticField& k, const PUnitRecord& pu, std::int64_t p, int t) {
  while (true) {
    FermatQuotient f = fermat_quotient_counit(pu, split_embeddings(k, p, t));
    if (!f.saturated) return f.delta;
    if (t >= kMaxPrecision) break;
    t = std::min(2 * t, kMaxPrecision);
  }
  throw Error(ErrorKind::PrecisionExhausted, "delta saturated at precision " + std::to_string(kMaxPrecision));
}

}  // namespace rqf
