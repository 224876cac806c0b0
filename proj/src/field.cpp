#include "galg/field.hpp"

#include <cctype>

namespace galg {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long long mod_pos(long long v, long long p) {
  v %= p;
  if (v < 0) v += p;
  return v;
}

// Extended Euclid; a in [1, p), p prime.
long long mod_inv(long long a, long long p) {
  long long t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    long long q = r / nr;
    long long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return t;
}

}  // namespace

Field Field::rationals() {
  Field f;
  f.kind_ = FieldKind::rationals;
  f.p_ = 0;
  return f;
}

Field Field::prime(long p) {
  if (p <= 1 || p >= (1L << 31))
    throw Error("field modulus out of range: " + std::to_string(p));
  if (!is_prime(p)) throw Error("field modulus is not prime: " + std::to_string(p));
  Field f;
  f.kind_ = FieldKind::prime;
  f.p_ = p;
  return f;
}

std::string Field::describe() const {
  if (kind_ == FieldKind::rationals) return "rational";
  return "prime:" + std::to_string(p_);
}

Scalar Field::zero() const { return from_long(0); }

Scalar Field::one() const { return from_long(1); }

Scalar Field::from_long(long v) const {
  Scalar s;
  s.field_ = *this;
  if (kind_ == FieldKind::rationals) {
    s.q_ = mpq_class(v);
    s.r_ = 0;
  } else {
    s.q_ = 0;
    s.r_ = mod_pos(v, p_);
  }
  return s;
}

Scalar Field::from_fraction(long num, long den) const {
  if (den == 0) throw Error("zero denominator");
  if (kind_ == FieldKind::rationals) {
    Scalar s;
    s.field_ = *this;
    s.q_ = mpq_class(num, den);
    s.q_.canonicalize();
    return s;
  }
  return from_long(num) / from_long(den);
}

Scalar Field::parse(const std::string& raw) const {
  size_t lo = raw.find_first_not_of(" \t");
  size_t hi = raw.find_last_not_of(" \t");
  std::string text = lo == std::string::npos ? std::string() : raw.substr(lo, hi - lo + 1);
  size_t i = 0;
  auto fail = [&](const std::string& msg) -> void { throw ParseError(msg); };
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_start) fail("expected integer in scalar '" + text + "'");
  std::string num = text.substr(num_start, i - num_start);
  std::string den = "1";
  if (i < text.size() && text[i] == '/') {
    ++i;
    size_t den_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start) fail("expected denominator in scalar '" + text + "'");
    den = text.substr(den_start, i - den_start);
  }
  if (i != text.size()) fail("trailing characters in scalar '" + text + "'");

  if (kind_ == FieldKind::rationals) {
    Scalar s;
    s.field_ = *this;
    mpq_class q{mpz_class(num), mpz_class(den)};
    if (q.get_den() == 0) fail("zero denominator in scalar '" + text + "'");
    q.canonicalize();
    s.q_ = neg ? mpq_class(-q) : q;
    return s;
  }
  mpz_class n(num), d(den);
  mpz_class pm(static_cast<long>(p_));
  long long nr = mpz_class(n % pm).get_si();
  long long dr = mpz_class(d % pm).get_si();
  if (dr == 0) fail("denominator reduces to zero mod " + std::to_string(p_));
  Scalar s = from_long(nr) / from_long(dr);
  return neg ? -s : s;
}

void Scalar::check_same(const Scalar& o) const {
  if (field_ != o.field_)
    throw FieldMismatchError("scalars from different fields: " + field_.describe() + " vs " +
                             o.field_.describe());
}

bool Scalar::is_zero() const {
  return field_.kind() == FieldKind::rationals ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const {
  return field_.kind() == FieldKind::rationals ? q_ == 1 : r_ == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.field_ = field_;
  if (field_.kind() == FieldKind::rationals)
    s.q_ = q_ + o.q_;
  else
    s.r_ = (r_ + o.r_) % field_.modulus();
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.field_ = field_;
  if (field_.kind() == FieldKind::rationals)
    s.q_ = q_ * o.q_;
  else
    s.r_ = (r_ * o.r_) % field_.modulus();
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::operator-() const {
  Scalar s;
  s.field_ = field_;
  if (field_.kind() == FieldKind::rationals)
    s.q_ = -q_;
  else
    s.r_ = r_ == 0 ? 0 : field_.modulus() - r_;
  return s;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error("inversion of zero");
  Scalar s;
  s.field_ = field_;
  if (field_.kind() == FieldKind::rationals)
    s.q_ = 1 / q_;
  else
    s.r_ = mod_inv(r_, field_.modulus());
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  check_same(o);
  return field_.kind() == FieldKind::rationals ? q_ == o.q_ : r_ == o.r_;
}

bool Scalar::operator<(const Scalar& o) const {
  check_same(o);
  return field_.kind() == FieldKind::rationals ? q_ < o.q_ : r_ < o.r_;
}

std::string Scalar::str() const {
  if (field_.kind() == FieldKind::prime) return std::to_string(r_);
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

const mpq_class& Scalar::rational() const {
  if (field_.kind() != FieldKind::rationals) throw Error("not a rational scalar");
  return q_;
}

long Scalar::residue() const {
  if (field_.kind() != FieldKind::prime) throw Error("not a prime-field scalar");
  return static_cast<long>(r_);
}

}  // namespace galg
