#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "galg/presentation.hpp"

namespace galg {

// PBW monomial Z^z X_1^{e_1} ... X_n^{e_n}; z stays 0 outside the
// homogenized flavor.
struct Monomial {
  int z = 0;
  std::vector<int> e;

  int degree() const;
  bool operator==(const Monomial& o) const { return z == o.z && e == o.e; }
  // Report order: total degree ascending, then lexicographic on the reduced
  // word with the letter ranking X_1 < ... < X_n < Z.
  bool operator<(const Monomial& o) const;
};

// Letter codes for raw words: 0 = Z (homogenized flavor only), 1..n = X_i.
using Word = std::vector<int>;

Word monomial_word(const Monomial& m);  // Z letters first, then X's ascending

struct RewriteOptions {
  int degree_cap = 24;
};

// Sparse element of the algebra in the PBW basis; zero coefficients are
// never stored. All elements carry the presentation they live over.
class NCElement {
 public:
  NCElement() = default;
  explicit NCElement(PresHandle pres) : pres_(std::move(pres)) {}

  static NCElement zero(PresHandle pres) { return NCElement(std::move(pres)); }
  static NCElement one(PresHandle pres);
  static NCElement generator(PresHandle pres, int letter);  // 0 = Z, 1..n

  const PresHandle& pres() const { return pres_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }

  void add_term(const Monomial& m, const Scalar& coeff);
  NCElement operator+(const NCElement& o) const;
  NCElement operator-(const NCElement& o) const;
  NCElement scaled(const Scalar& s) const;

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const NCElement& o) const;
  bool operator!=(const NCElement& o) const { return !(*this == o); }

  int max_degree() const;  // -1 for zero

 private:
  PresHandle pres_;
  std::map<Monomial, Scalar> terms_;
};

// Reduces coeff * (word of generator letters) to the PBW basis via the
// leftmost-innermost strategy: the leftmost adjacent inversion is rewritten
// first. Deterministic for every input, confluent or not.
NCElement normal_form(const PresHandle& pres, const Word& word, const Scalar& coeff,
                      const RewriteOptions& opts = {});

NCElement nc_mul(const NCElement& a, const NCElement& b, const RewriteOptions& opts = {});

struct ConfluenceFailure {
  Word overlap;
  NCElement left;   // overlap reduced with the left pair first
  NCElement right;  // overlap reduced with the right pair first
};

struct ConfluenceReport {
  bool certified = false;
  std::vector<ConfluenceFailure> failures;
};

// Checks every overlap word X_k X_j X_i (k > j > i; the low letter may be Z
// in the homogenized flavor) by reducing both first steps to normal form.
ConfluenceReport certify_confluence(const PresHandle& pres, const RewriteOptions& opts = {});

// Ring morphism Z -> 1; result lives over the plain-flavor presentation.
NCElement dehomogenize(const NCElement& a);
// Pads every term with Z powers up to target_degree; result is homogeneous
// over the homogenized presentation. Requires a plain-flavor input.
NCElement homogenize_element(const NCElement& a, int target_degree);

// Number of PBW monomials of total degree d.
mpz_class graded_dim(const GPresentation& p, int d);

NCElement parse_element(const PresHandle& pres, const std::string& text,
                        const RewriteOptions& opts = {});
std::string print_element(const NCElement& a);

}  // namespace galg
