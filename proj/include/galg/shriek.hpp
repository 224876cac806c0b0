#pragma once

#include <memory>
#include <string>
#include <vector>

#include "galg/linalg.hpp"
#include "galg/presentation.hpp"
#include "galg/rewrite.hpp"

namespace galg {

// Words over the dual letters. Codes 0..n-1 are the duals of X_1..X_n; code
// n is the dual of Z (absent in a C-slice). Note this differs from the
// primal Word encoding, where Z is letter 0: here z ranks last so that the
// lexicographically least spanning words survive reduction.
using DWord = std::vector<int>;

// Coordinates in the chosen basis of one graded component.
struct ShriekElement {
  int degree = 0;
  std::vector<Scalar> coords;
};

// The quadratic dual of a homogenized presentation (full algebra, letters
// x_1..x_n, z) or its z-free subalgebra (a C-slice, letters x_1..x_n).
// Components vanish above `top`; the top component is one-dimensional and
// its basis word x_1 x_2 ... x_n (z) is the socle label.
struct ShriekAlgebra {
  Field field;
  bool c_slice = false;
  int n = 0;        // primal generator count
  int letters = 0;  // n + 1 for the full algebra, n for a slice
  int top = 0;      // letters
  std::vector<std::string> letter_names;

  std::vector<std::vector<DWord>> basis;  // per degree 0..top
  // lmul[g][d]: left multiplication by letter g, basis[d] -> basis[d+1].
  std::vector<std::vector<Matrix>> lmul;
  // Reduced degree-2 relation rows as ((u, v), coeff) lists; a module is
  // genuine iff every row annihilates it.
  std::vector<std::vector<std::pair<std::pair<int, int>, Scalar>>> relations2;

  // Full algebra only: per degree, basis indices of z-free words followed by
  // the z-carrying ones (each certified to be a z-free word with one
  // trailing z). For each letter g, g*z = c0[g] + z*c1[g] with both parts
  // z-free; coords are over the z-free bases of degrees 2 and 1.
  std::vector<std::vector<int>> zfree;
  std::vector<std::vector<int>> ztail;
  std::vector<std::vector<Scalar>> gz_c0;
  std::vector<std::vector<Scalar>> gz_c1;

  std::string fingerprint;

  int dim(int degree) const {
    return degree < 0 || degree > top ? 0 : static_cast<int>(basis[degree].size());
  }
  int basis_index(int degree, const DWord& w) const;  // -1 when absent
  std::string word_name(const DWord& w) const;

  ShriekElement zero_element(int degree) const;
  ShriekElement basis_element(int degree, int index) const;
  ShriekElement letter_element(int g) const { return basis_element(1, g); }
};

using ShriekHandle = std::shared_ptr<const ShriekAlgebra>;

// Builds the quadratic dual of a certified homogenized presentation.
// Certifies the graded dimension formula, the z-free/z-tail split per
// degree, closure of the z-free span under multiplication, and the
// invertibility of the [z-free | z-front] change of basis in every degree.
ShriekHandle build_shriek(const GPresentation& p, const RewriteOptions& opts = {});

// The z-free slice as a standalone algebra over letters x_1..x_n.
ShriekHandle c_subalgebra(const ShriekHandle& b);

ShriekElement shriek_mul(const ShriekAlgebra& a, const ShriekElement& u, const ShriekElement& v);
ShriekElement shriek_add(const ShriekAlgebra& a, const ShriekElement& u, const ShriekElement& v);

// Coefficient of the socle label in u * v; degrees must be complementary.
Scalar socle_pairing(const ShriekAlgebra& a, const ShriekElement& u, const ShriekElement& v);

// Human-readable form of one degree-2 relation row, e.g. "Y*X + 1/2*X*Y".
std::string relation_string(const ShriekAlgebra& a,
                            const std::vector<std::pair<std::pair<int, int>, Scalar>>& row);

// Splits a full-algebra element into its z-free part and the complement
// spanned by the trailing-z basis words.
std::pair<ShriekElement, ShriekElement> c_sub_projection(const ShriekAlgebra& a,
                                                         const ShriekElement& u);

struct NakayamaMap {
  ShriekHandle algebra;
  std::vector<Matrix> sigma;  // per degree 0..top
  Scalar z_scale;             // sigma(z) = z_scale * z
  bool is_automorphism = false;
  bool preserves_c_sub = false;
  bool z_scaling = false;

  bool certified() const { return is_automorphism && preserves_c_sub && z_scaling; }
};

// Solves beta(sigma(y), x) = beta(x, y) per degree from the socle pairing
// and certifies the result. socle_scale rescales the socle functional on
// both sides; the solved map must not depend on it.
NakayamaMap nakayama(const ShriekHandle& a, const Scalar& socle_scale);
NakayamaMap nakayama(const ShriekHandle& a);
NakayamaMap nakayama_inverse(const NakayamaMap& s);

ShriekElement apply_nakayama(const NakayamaMap& s, const ShriekElement& u);

}  // namespace galg
