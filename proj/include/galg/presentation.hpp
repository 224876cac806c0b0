#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "galg/field.hpp"

namespace galg {

// Quasi-commutation data for n generators. For i > j the relation reads
//   X_i X_j - b_ij X_j X_i + sum_k c_ij^k (lin_k) + d_ij (const) = 0
// where lin_k / const are X_k / 1 in the plain flavor and Z X_k / Z^2 in the
// homogenized flavor (Z central of degree 1). quantum_poly keeps only b.
struct GPresentation {
  enum class Flavor { plain, homogenized, quantum_poly };

  Field field;
  int n = 0;
  std::vector<std::string> gen_names;
  std::map<std::pair<int, int>, Scalar> b;      // keys (i, j), i > j, 1-based; complete
  std::map<std::array<int, 3>, Scalar> c;       // keys (i, j, k); nonzero entries only
  std::map<std::pair<int, int>, Scalar> d;      // keys (i, j); nonzero entries only
  Flavor flavor = Flavor::plain;

  bool has_z() const { return flavor == Flavor::homogenized; }
  Scalar b_at(int i, int j) const;
  Scalar c_at(int i, int j, int k) const;  // zero when absent
  Scalar d_at(int i, int j) const;         // zero when absent
  // Name of letter code: 0 = Z (homogenized), 1..n = gen_names.
  std::string letter_name(int code) const;

  bool operator==(const GPresentation& o) const;
};

using PresHandle = std::shared_ptr<const GPresentation>;

// Full structural validation (names, key ranges, b completeness and
// nonzeroness, flavor constraints). Throws ParseError.
void validate_presentation(const GPresentation& p);

GPresentation parse_presentation(const std::string& text, const Field& field);
std::string print_presentation(const GPresentation& p);

GPresentation homogenize_presentation(const GPresentation& p);  // plain -> homogenized
GPresentation dehomogenize_presentation(const GPresentation& p);  // homogenized -> plain
GPresentation quantum_poly_of(const GPresentation& p);  // homogenized -> quantum_poly

}  // namespace galg
