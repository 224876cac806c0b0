#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "galg/shriek.hpp"
#include "support/testutil.hpp"

using namespace galg;
using galg::testutil::load_pres;

namespace {

const Field Q = Field::rationals();

ShriekHandle build(const char* name) { return build_shriek(*load_pres(name)); }

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ShriekElement random_element(const ShriekAlgebra& a, int degree, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-3, 3);
  ShriekElement e = a.zero_element(degree);
  for (auto& c : e.coords) c = a.field.from_long(num(rng));
  return e;
}

// The product of every pair of basis words, fetched through the public
// multiplication; used to cross-check structure constants.
ShriekElement word_product(const ShriekAlgebra& a, int du, int iu, int dv, int iv) {
  return shriek_mul(a, a.basis_element(du, iu), a.basis_element(dv, iv));
}

}  // namespace

TEST_CASE("quantum plane dual carries the known relations") {
  auto b = build("qplane_h.galg");
  CHECK(b->n == 2);
  CHECK(b->letters == 3);
  CHECK(b->top == 3);
  CHECK(b->letter_names == std::vector<std::string>{"X", "Y", "Z"});
  CHECK(b->dim(0) == 1);
  CHECK(b->dim(1) == 3);
  CHECK(b->dim(2) == 3);
  CHECK(b->dim(3) == 1);
  CHECK(b->dim(4) == 0);

  // Degree-2 survivors are the lex-least words xy, xz, yz.
  CHECK(b->basis[2] == std::vector<DWord>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(b->basis[3] == std::vector<DWord>{{0, 1, 2}});

  int x = 0, y = 1, z = 2;
  // y x = -1/2 x y, squares vanish, z anticommutes.
  ShriekElement yx = word_product(*b, 1, y, 1, x);
  CHECK(yx.coords[0] == Q.from_fraction(-1, 2));
  CHECK(yx.coords[1].is_zero());
  CHECK(yx.coords[2].is_zero());
  CHECK(word_product(*b, 1, x, 1, x).coords == b->zero_element(2).coords);
  CHECK(word_product(*b, 1, y, 1, y).coords == b->zero_element(2).coords);
  ShriekElement zx = word_product(*b, 1, z, 1, x);
  CHECK(zx.coords[1] == Q.from_long(-1));
  ShriekElement zy = word_product(*b, 1, z, 1, y);
  CHECK(zy.coords[2] == Q.from_long(-1));
  // Relation rows in printable form.
  std::vector<std::string> rels;
  for (const auto& row : b->relations2) rels.push_back(relation_string(*b, row));
  std::sort(rels.begin(), rels.end());
  CHECK(rels == std::vector<std::string>{"X*X", "Y*X + 1/2*X*Y", "Y*Y", "Z*X + X*Z",
                                         "Z*Y + Y*Z", "Z*Z"});
}

TEST_CASE("heisenberg-style dual of the homogenized weyl algebra") {
  auto b = build("weyl_h.galg");
  CHECK(b->dim(0) == 1);
  CHECK(b->dim(1) == 3);
  CHECK(b->dim(2) == 3);
  CHECK(b->dim(3) == 1);
  // x = dual of X, d = dual of D, z = dual of Z; the constant term of the
  // primal relation shows up as z^2 = -x d.
  int x = 0, d = 1, z = 2;
  ShriekElement zz = word_product(*b, 1, z, 1, z);
  CHECK(zz.coords[0] == Q.from_long(-1));  // over basis {xd, xz, dz}
  CHECK(zz.coords[1].is_zero());
  CHECK(zz.coords[2].is_zero());
  ShriekElement dx = word_product(*b, 1, d, 1, x);
  CHECK(dx.coords[0] == Q.from_long(-1));
  CHECK(word_product(*b, 1, x, 1, x).coords == b->zero_element(2).coords);
  CHECK(word_product(*b, 1, d, 1, d).coords == b->zero_element(2).coords);
}

TEST_CASE("graded dimensions follow the binomial formula") {
  struct Case {
    const char* file;
    int n;
  } cases[] = {{"comm1_h.galg", 1}, {"comm2_h.galg", 2}, {"comm3_h.galg", 3},
               {"qplane_h.galg", 2}, {"sl2_h.galg", 3}, {"weyl_h.galg", 2}};
  for (const auto& [file, n] : cases) {
    auto b = build(file);
    CHECK(b->top == n + 1);
    long total = 0;
    for (int j = 0; j <= b->top; ++j) {
      CHECK(b->dim(j) == binom(n, j) + binom(n, j - 1));
      CHECK(static_cast<int>(b->zfree[j].size()) == binom(n, j));
      CHECK(static_cast<int>(b->ztail[j].size()) == binom(n, j - 1));
      total += b->dim(j);
    }
    CHECK(total == (1L << (n + 1)));
    CHECK(b->dim(b->top) == 1);
    // Socle label is x_1 x_2 ... x_n z.
    DWord label(static_cast<size_t>(n + 1));
    for (int i = 0; i <= n; ++i) label[static_cast<size_t>(i)] = i;
    CHECK(b->basis[b->top] == std::vector<DWord>{label});
  }
}

TEST_CASE("sl2 dual degree-2 basis") {
  auto b = build("sl2_h.galg");
  std::vector<DWord> expect{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  CHECK(b->basis[2] == expect);
}

TEST_CASE("multiplication is associative and graded") {
  std::mt19937 rng(17);
  for (const char* name : {"qplane_h.galg", "weyl_h.galg", "sl2_h.galg"}) {
    auto b = build(name);
    for (int trial = 0; trial < 15; ++trial) {
      int du = trial % 2, dv = 1, dw = 1 + trial % 2;
      ShriekElement u = random_element(*b, du, rng);
      ShriekElement v = random_element(*b, dv, rng);
      ShriekElement w = random_element(*b, dw, rng);
      ShriekElement left = shriek_mul(*b, shriek_mul(*b, u, v), w);
      ShriekElement right = shriek_mul(*b, u, shriek_mul(*b, v, w));
      CHECK(left.degree == right.degree);
      CHECK(left.coords == right.coords);
    }
    // Unit law via the empty word.
    ShriekElement one = b->basis_element(0, 0);
    ShriekElement v = random_element(*b, 2, rng);
    CHECK(shriek_mul(*b, one, v).coords == v.coords);
    CHECK(shriek_mul(*b, v, one).coords == v.coords);
  }
}

TEST_CASE("quadratic relation rows annihilate the algebra itself") {
  auto b = build("sl2_h.galg");
  for (const auto& row : b->relations2) {
    for (int d = 0; d + 2 <= b->top; ++d) {
      for (int i = 0; i < b->dim(d); ++i) {
        ShriekElement acc = b->zero_element(d + 2);
        for (const auto& [uv, coeff] : row) {
          ShriekElement t = shriek_mul(
              *b, b->letter_element(uv.first),
              shriek_mul(*b, b->letter_element(uv.second), b->basis_element(d, i)));
          for (size_t t2 = 0; t2 < acc.coords.size(); ++t2)
            acc.coords[t2] = acc.coords[t2] + coeff * t.coords[t2];
        }
        CHECK(acc.coords == b->zero_element(d + 2).coords);
      }
    }
  }
}

TEST_CASE("z-free split certifies and multiplies into itself") {
  auto b = build("sl2_h.galg");
  int zl = b->n;  // z letter code
  for (int dj = 0; dj <= b->top; ++dj) {
    for (int i : b->zfree[dj])
      for (int letter : b->basis[dj][static_cast<size_t>(i)]) CHECK(letter != zl);
    for (int i : b->ztail[dj]) {
      const DWord& w = b->basis[dj][static_cast<size_t>(i)];
      REQUIRE(!w.empty());
      CHECK(w.back() == zl);
      for (size_t t = 0; t + 1 < w.size(); ++t) CHECK(w[t] != zl);
    }
  }
  // Products of z-free words stay inside the z-free span.
  std::mt19937 rng(3);
  for (int du = 1; du <= 2; ++du)
    for (int dv = 1; du + dv <= b->top && dv <= 2; ++dv)
      for (int iu : b->zfree[du])
        for (int iv : b->zfree[dv]) {
          ShriekElement p = word_product(*b, du, iu, dv, iv);
          for (int t : b->ztail[du + dv]) CHECK(p.coords[static_cast<size_t>(t)].is_zero());
        }
}

TEST_CASE("per-letter z decomposition g z = c0 + z c1") {
  for (const char* name : {"qplane_h.galg", "weyl_h.galg", "sl2_h.galg"}) {
    auto b = build(name);
    int zl = b->n;
    ShriekElement z = b->letter_element(zl);
    for (int g = 0; g < b->letters; ++g) {
      ShriekElement gz = shriek_mul(*b, b->letter_element(g), z);
      // c0 lives in the z-free part of degree 2, c1 in degree 1.
      ShriekElement c0 = b->zero_element(2);
      for (size_t t = 0; t < b->gz_c0[static_cast<size_t>(g)].size(); ++t)
        c0.coords[static_cast<size_t>(b->zfree[2][t])] = b->gz_c0[static_cast<size_t>(g)][t];
      ShriekElement c1 = b->zero_element(1);
      for (size_t t = 0; t < b->gz_c1[static_cast<size_t>(g)].size(); ++t)
        c1.coords[static_cast<size_t>(b->zfree[1][t])] = b->gz_c1[static_cast<size_t>(g)][t];
      ShriekElement rebuilt = shriek_add(*b, c0, shriek_mul(*b, z, c1));
      CHECK(rebuilt.coords == gz.coords);
    }
  }
}

TEST_CASE("c slice of the quantum plane dual") {
  auto b = build("qplane_h.galg");
  auto c = c_subalgebra(b);
  CHECK(c->c_slice);
  CHECK(c->letters == 2);
  CHECK(c->top == 2);
  CHECK(c->dim(0) == 1);
  CHECK(c->dim(1) == 2);
  CHECK(c->dim(2) == 1);
  CHECK(c->fingerprint == b->fingerprint + "/C");
  CHECK(c->relations2.size() == 3);
  ShriekElement yx = shriek_mul(*c, c->letter_element(1), c->letter_element(0));
  CHECK(yx.coords[0] == Q.from_fraction(-1, 2));
  CHECK(shriek_mul(*c, c->letter_element(0), c->letter_element(0)).coords ==
        c->zero_element(2).coords);
  CHECK_THROWS_AS(c_subalgebra(c), Error);
}

TEST_CASE("c slice projection splits elements") {
  auto b = build("weyl_h.galg");
  std::mt19937 rng(37);
  for (int d = 0; d <= b->top; ++d) {
    ShriekElement u = random_element(*b, d, rng);
    auto [cp, zp] = c_sub_projection(*b, u);
    ShriekElement sum = shriek_add(*b, cp, zp);
    CHECK(sum.coords == u.coords);
    for (int i : b->ztail[d]) CHECK(cp.coords[static_cast<size_t>(i)].is_zero());
    for (int i : b->zfree[d]) CHECK(zp.coords[static_cast<size_t>(i)].is_zero());
  }
}

TEST_CASE("socle pairing is nondegenerate in every degree") {
  for (const char* name : {"qplane_h.galg", "weyl_h.galg", "sl2_h.galg", "comm2_h.galg"}) {
    auto b = build(name);
    for (int d = 0; d <= b->top; ++d) {
      int e = b->top - d;
      Matrix gram(b->dim(d), b->dim(e), Q);
      for (int i = 0; i < b->dim(d); ++i)
        for (int j = 0; j < b->dim(e); ++j)
          gram.at(i, j) = socle_pairing(*b, b->basis_element(d, i), b->basis_element(e, j));
      CHECK(gram.rows() == gram.cols());
      CHECK(rank_of(gram) == gram.rows());
    }
  }
  auto b = build("qplane_h.galg");
  CHECK_THROWS_AS(socle_pairing(*b, b->basis_element(1, 0), b->basis_element(1, 0)), Error);
}

TEST_CASE("nakayama of the quantum plane dual matches the closed form") {
  auto b = build("qplane_h.galg");
  NakayamaMap s = nakayama(b);
  CHECK(s.certified());
  CHECK(s.z_scale.is_one());
  // sigma(x) = x/q, sigma(y) = q y, sigma(z) = z with q = 2.
  Matrix expect(3, 3, Q);
  expect.at(0, 0) = Q.from_fraction(1, 2);
  expect.at(1, 1) = Q.from_long(2);
  expect.at(2, 2) = Q.one();
  CHECK(s.sigma[1] == expect);
  CHECK(s.sigma[0] == Matrix::identity(1, Q));
  CHECK(s.sigma[3] == Matrix::identity(1, Q));
}

TEST_CASE("nakayama defining identity and certificates") {
  for (const char* name : {"qplane_h.galg", "weyl_h.galg", "sl2_h.galg"}) {
    auto b = build(name);
    NakayamaMap s = nakayama(b);
    CHECK(s.is_automorphism);
    CHECK(s.preserves_c_sub);
    CHECK(s.z_scaling);
    // beta(sigma(y), x) = beta(x, y) on all complementary basis pairs.
    for (int d = 0; d <= b->top; ++d) {
      int e = b->top - d;
      for (int i = 0; i < b->dim(d); ++i)
        for (int j = 0; j < b->dim(e); ++j) {
          ShriekElement sy = apply_nakayama(s, b->basis_element(e, j));
          Scalar lhs = socle_pairing(*b, sy, b->basis_element(d, i));
          Scalar rhs = socle_pairing(*b, b->basis_element(d, i), b->basis_element(e, j));
          CHECK(lhs == rhs);
        }
    }
    // sigma(z) = k z exactly.
    ShriekElement sz = apply_nakayama(s, b->letter_element(b->n));
    for (int t = 0; t < b->n; ++t) CHECK(sz.coords[static_cast<size_t>(t)].is_zero());
    CHECK(sz.coords[static_cast<size_t>(b->n)] == s.z_scale);
  }
}

TEST_CASE("weyl dual nakayama is the identity") {
  auto b = build("weyl_h.galg");
  NakayamaMap s = nakayama(b);
  CHECK(s.certified());
  CHECK(s.z_scale.is_one());
  for (int d = 0; d <= b->top; ++d) CHECK(s.sigma[d] == Matrix::identity(b->dim(d), Q));
}

TEST_CASE("commutative duals give the parity sign") {
  struct Case {
    const char* file;
    int n;
  } cases[] = {{"comm1_h.galg", 1}, {"comm2_h.galg", 2}, {"comm3_h.galg", 3}};
  for (const auto& [file, n] : cases) {
    auto b = build(file);
    NakayamaMap s = nakayama(b);
    CHECK(s.certified());
    Scalar sign = Q.from_long(n % 2 ? -1 : 1);
    CHECK(s.z_scale == sign);
    CHECK(s.sigma[1] == Matrix::identity(n + 1, Q).scaled(sign));
  }
}

TEST_CASE("nakayama ignores the socle normalization") {
  auto b = build("sl2_h.galg");
  NakayamaMap base = nakayama(b);
  for (long num : {2L, -3L}) {
    NakayamaMap other = nakayama(b, Q.from_fraction(num, 7));
    CHECK(other.certified());
    for (int d = 0; d <= b->top; ++d) CHECK(other.sigma[d] == base.sigma[d]);
    CHECK(other.z_scale == base.z_scale);
  }
  CHECK_THROWS_AS(nakayama(b, Q.zero()), Error);
}

TEST_CASE("nakayama inverse composes to the identity") {
  auto b = build("qplane_h.galg");
  NakayamaMap s = nakayama(b);
  NakayamaMap si = nakayama_inverse(s);
  CHECK(si.certified());
  for (int d = 0; d <= b->top; ++d)
    CHECK(s.sigma[d] * si.sigma[d] == Matrix::identity(b->dim(d), Q));
  CHECK((s.z_scale * si.z_scale).is_one());
}

TEST_CASE("nakayama is multiplicative on random pairs") {
  auto b = build("sl2_h.galg");
  NakayamaMap s = nakayama(b);
  std::mt19937 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    int du = 1 + trial % 2, dv = 1;
    ShriekElement u = random_element(*b, du, rng);
    ShriekElement v = random_element(*b, dv, rng);
    ShriekElement lhs = apply_nakayama(s, shriek_mul(*b, u, v));
    ShriekElement rhs = shriek_mul(*b, apply_nakayama(s, u), apply_nakayama(s, v));
    CHECK(lhs.coords == rhs.coords);
  }
}

TEST_CASE("build rejects wrong flavors and broken data") {
  CHECK_THROWS_AS(build("weyl.galg"), FlavorError);
  CHECK_THROWS_AS(build("qplane.galg"), FlavorError);
  CHECK_THROWS_AS(build("sl2_bad_h.galg"), ConfluenceError);
}

TEST_CASE("prime field build stays consistent") {
  Field p = Field::prime(101);
  auto pres = galg::testutil::load_pres("qplane_h.galg", p);
  auto b = build_shriek(*pres);
  CHECK(b->field == p);
  CHECK(b->dim(1) == 3);
  NakayamaMap s = nakayama(b);
  CHECK(s.certified());
  // 1/q = inverse of 2 mod 101.
  CHECK(s.sigma[1].at(0, 0) == p.from_long(2).inv());
}
