#pragma once

// Primitive ideals [a, (b + sqrt D)/2] of O_k, the matching binary quadratic
// forms, products, and reduction with a tracked multiplier.

#include <cstdint>

#include "rqf/qfield.hpp"

namespace rqf {

/// Primitive ideal aZ + ((b + sqrt D)/2)Z with b^2 = D (mod 4a).
/// b is kept in (-a, a].
struct Ideal {
  Int a;
  Int b;
  std::int64_t disc = 0;

  bool operator==(const Ideal& o) const = default;
};

/// Binary quadratic form A x^2 + B xy + C y^2 with B^2 - 4AC = D.
struct Form {
  Int A;
  Int B;
  Int C;

  bool operator==(const Form& o) const = default;
  Int discriminant() const { return B * B - 4 * A * C; }
};

/// Validates and normalizes; throws InvalidArgument if b^2 != D (mod 4a).
Ideal make_ideal(const Int& a, const Int& b, std::int64_t disc);
Ideal unit_ideal(std::int64_t disc);
/// Prime ideal above q. For split q the default choice has the smaller root
/// b in [0, 2q); `other` selects its conjugate. Throws InvalidArgument for inert q.
Ideal prime_ideal(const QuadraticField& k, const Int& q, bool other = false);
Ideal conj(const Ideal& I);

Form to_form(const Ideal& I);
/// Ideal attached to a form with A > 0.
Ideal to_ideal(const Form& f, std::int64_t disc);
/// Indefinite reduction: 0 < B < sqrt D and sqrt D - B < 2|A| < sqrt D + B.
bool is_reduced(const Form& f, std::int64_t disc);

/// I*J = content * ideal.
struct IdealProduct {
  Int content;
  Ideal ideal;
};
IdealProduct multiply(const Ideal& I, const Ideal& J);
/// (gamma) = content * ideal.
IdealProduct principal_ideal(const QuadInt& gamma);
bool contains(const Ideal& I, const QuadInt& x);

bool is_reduced(const Ideal& I);

/// The fractional ideal factor * ideal.
struct TrackedIdeal {
  Ideal ideal;
  QuadFrac factor;
};

TrackedIdeal track(const Ideal& I);
/// One reduction step: I = (gamma / c) * I' with gamma = (b + sqrt D)/2 and
/// c = (b^2 - D)/(4a).
TrackedIdeal rho(const TrackedIdeal& t);
/// Applies rho until the ideal is reduced.
TrackedIdeal reduce(const TrackedIdeal& t);
TrackedIdeal reduce(const Ideal& I);
/// Reduction without the multiplier.
Ideal reduce_ideal(const Ideal& I);
/// Reduced representative of the product, with multiplier.
TrackedIdeal tracked_multiply(const TrackedIdeal& x, const TrackedIdeal& y);
TrackedIdeal tracked_pow(const TrackedIdeal& x, unsigned long e);

}  // namespace rqf
