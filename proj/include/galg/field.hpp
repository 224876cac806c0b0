#pragma once

#include <gmpxx.h>

#include <string>

#include "galg/errors.hpp"

namespace galg {

class Scalar;

enum class FieldKind { rationals, prime };

// Coefficient field for a session: exact rationals or F_p with p < 2^31.
// Scalars from different fields never mix; every binary op checks.
class Field {
 public:
  Field() : kind_(FieldKind::rationals), p_(0) {}

  static Field rationals();
  static Field prime(long p);

  FieldKind kind() const { return kind_; }
  long modulus() const { return p_; }
  bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

  std::string describe() const;  // "rational" or "prime:p"

  Scalar zero() const;
  Scalar one() const;
  Scalar from_long(long v) const;
  Scalar from_fraction(long num, long den) const;
  // Accepts an optional sign, an integer, and an optional /integer part.
  Scalar parse(const std::string& text) const;

 private:
  FieldKind kind_;
  long p_;
};

// Immutable canonical field element. Rational values keep positive
// denominators with gcd(num, den) = 1; prime values sit in [0, p).
class Scalar {
 public:
  Scalar() : field_(Field::rationals()), q_(0), r_(0) {}

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inv() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Deterministic total order inside one field; used for canonical printing.
  bool operator<(const Scalar& o) const;

  std::string str() const;

  // Rational-mode accessors (throw in prime mode).
  const mpq_class& rational() const;
  long residue() const;

 private:
  friend class Field;
  Field field_;
  mpq_class q_;
  long long r_;

  void check_same(const Scalar& o) const;
};

}  // namespace galg
