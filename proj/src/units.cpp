#include "rqf/units.hpp"

#include <cmath>

#include "field_cache.hpp"
#include "rqf/errors.hpp"

namespace rqf {

UnitRecord compute_fundamental_unit(const QuadraticField& k) {
  // Expand omega = (delta + sqrt D)/2 with P_0 = delta, Q_0 = 2 and stop at the
  // first index j with Q_{j+1} = 2; then p_j - q_j * conj(omega) is the unit.
  const Int d(static_cast<long>(k.disc()));
  const long delta = k.disc() & 1;
  const Int& s = k.sqrt_disc_floor();
  Int P = delta, Q = 2;
  Int p_prev = 1, p_cur = 0;  // p_{-1}, p_{-2} rolled forward below
  Int q_prev = 0, q_cur = 1;
  Int pj, qj;
  while (true) {
    Int a = (P + s) / Q;
    pj = a * p_prev + p_cur;
    qj = a * q_prev + q_cur;
    p_cur = p_prev;
    p_prev = pj;
    q_cur = q_prev;
    q_prev = qj;
    Int P2 = a * Q - P;
    Int Q2 = (d - P2 * P2) / Q;
    P = P2;
    Q = Q2;
    if (Q == 2) break;
  }
  UnitRecord u;
  u.eps = k.make(2 * pj - qj * delta, qj);
  Int n = norm(u.eps);
  if (n != 1 && n != -1)
    throw Error(ErrorKind::InvalidArgument, "continued fraction produced a non-unit");
  u.norm_eps = n.get_si();
  u.regulator_log = log_abs(u.eps);
  return u;
}

const UnitRecord& QuadraticField::unit() const {
  auto& cache = FieldCacheAccess::get(*this);
  std::call_once(cache.unit_once,
                 [&] { cache.unit = std::make_unique<UnitRecord>(compute_fundamental_unit(*this)); });
  return *cache.unit;
}

const UnitRecord& fundamental_unit(const QuadraticField& k) { return k.unit(); }

QuadInt unit_inverse(const QuadInt& u) {
  Int n = norm(u);
  if (n == 1) return conj(u);
  if (n == -1) return -conj(u);
  throw Error(ErrorKind::InvalidArgument, "not a unit");
}

namespace {

// Positive associate of x times powers of `unit` in [1, unit).
QuadInt into_window(const QuadInt& x0, const QuadInt& unit, double log_unit) {
  QuadInt x = sign_of(x0.a, x0.b, x0.disc) < 0 ? -x0 : x0;
  const QuadInt inv = unit_inverse(unit);
  const double shift = std::floor(log_abs(x) / log_unit);
  if (shift >= 1) {
    x = x * pow(inv, static_cast<unsigned long>(shift));
  } else if (shift <= -1) {
    x = x * pow(unit, static_cast<unsigned long>(-shift));
  }
  while (!real_ge_one(x)) x = x * unit;
  while (compare_real(x, unit) >= 0) x = x * inv;
  return x;
}

}  // namespace

QuadInt canonical_associate(const QuadraticField& k, const QuadInt& x) {
  if (x.disc != k.disc()) throw Error(ErrorKind::FieldMismatch, "element from another field");
  const UnitRecord& u = k.unit();
  return into_window(x, u.eps, u.regulator_log);
}

QuadInt canonical_norm_representative(const QuadraticField& k, const QuadInt& x) {
  if (x.disc != k.disc()) throw Error(ErrorKind::FieldMismatch, "element from another field");
  const UnitRecord& u = k.unit();
  if (u.norm_eps == 1) return into_window(x, u.eps, u.regulator_log);
  return into_window(x, u.eps * u.eps, 2 * u.regulator_log);
}

Ideal embedding_prime(const QuadraticField& k, std::int64_t p) {
  const Int pp(static_cast<long>(p));
  if (!is_split(k, pp)) throw Error(ErrorKind::NotSplit, std::to_string(p) + " is not split");
  const Int d(static_cast<long>(k.disc()));
  Int r = *sqrt_mod_prime(mod(d, pp), pp);
  Int r1 = std::min(r, Int(pp - r));
  // phi_1((b + sqrt D)/2) = (b + r1)/2 = 0 (mod p) iff b = -r1 (mod p).
  Int b = mod(-r1, pp);
  if ((b - d) % 2 != 0) b += pp;
  return make_ideal(pp, b, k.disc());
}

PUnitRecord p_unit(const QuadraticField& k, std::int64_t p) {
  PUnitRecord out;
  out.prime = embedding_prime(k, p);
  const ClassGroup& cg = k.class_group();
  out.h0 = cg.order(cg.class_of(out.prime));
  auto g = cg.generator(tracked_pow(track(out.prime), static_cast<unsigned long>(out.h0)));
  if (!g) throw Error(ErrorKind::InvalidArgument, "power of prime is not principal");
  out.eta = canonical_associate(k, *g);
  Int n = abs(norm(out.eta));
  if (n != ipow(Int(static_cast<long>(p)), static_cast<unsigned long>(out.h0)))
    throw Error(ErrorKind::InvalidArgument, "p-unit has wrong norm");
  return out;
}

}  // namespace rqf
