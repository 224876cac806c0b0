#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "galg/presentation.hpp"
#include "support/testutil.hpp"

using namespace galg;
using galg::testutil::load_pres;

namespace {
const Field Q = Field::rationals();

GPresentation parse(const std::string& text) { return parse_presentation(text, Q); }
}  // namespace

TEST_CASE("weyl corpus file parses to the expected data") {
  auto p = load_pres("weyl.galg");
  CHECK(p->n == 2);
  CHECK(p->gen_names == std::vector<std::string>{"X", "D"});
  CHECK(p->flavor == GPresentation::Flavor::plain);
  CHECK(p->b_at(2, 1).is_one());
  CHECK(p->d_at(2, 1).is_one());
  CHECK(p->c_at(2, 1, 1).is_zero());
  CHECK(!p->has_z());
  CHECK(p->letter_name(1) == "X");
  CHECK(p->letter_name(2) == "D");
}

TEST_CASE("sl2 corpus file carries the bracket constants") {
  auto p = load_pres("sl2.galg");
  CHECK(p->n == 3);
  CHECK(p->b_at(3, 2).is_one());
  CHECK(p->c_at(2, 1, 3) == Q.one());
  CHECK(p->c_at(3, 1, 1) == Q.from_long(-2));
  CHECK(p->c_at(3, 2, 2) == Q.from_long(2));
  CHECK(p->d_at(3, 1).is_zero());
}

TEST_CASE("homogenized flavor exposes Z as letter 0") {
  auto p = load_pres("weyl_h.galg");
  CHECK(p->flavor == GPresentation::Flavor::homogenized);
  CHECK(p->has_z());
  CHECK(p->letter_name(0) == "Z");
}

TEST_CASE("print then parse round trips") {
  for (const char* name : {"weyl.galg", "weyl_h.galg", "sl2.galg", "sl2_h.galg",
                           "qplane.galg", "qplane_h.galg"}) {
    auto p = load_pres(name);
    GPresentation back = parse(print_presentation(*p));
    CHECK(back == *p);
  }
}

TEST_CASE("homogenize and dehomogenize are mutually inverse on the data") {
  auto plain = load_pres("sl2.galg");
  GPresentation h = homogenize_presentation(*plain);
  CHECK(h.flavor == GPresentation::Flavor::homogenized);
  CHECK(h.b == plain->b);
  CHECK(h.c == plain->c);
  CHECK(h.d == plain->d);
  GPresentation back = dehomogenize_presentation(h);
  CHECK(back == *plain);
  CHECK_THROWS_AS(homogenize_presentation(h), FlavorError);
  CHECK_THROWS_AS(dehomogenize_presentation(*plain), FlavorError);
}

TEST_CASE("quantum_poly_of keeps only the quasi-commutation scalars") {
  auto h = load_pres("sl2_h.galg");
  GPresentation q = quantum_poly_of(*h);
  CHECK(q.flavor == GPresentation::Flavor::quantum_poly);
  CHECK(q.b == h->b);
  CHECK(q.c.empty());
  CHECK(q.d.empty());
  CHECK_THROWS_AS(quantum_poly_of(q), FlavorError);
}

TEST_CASE("parser rejects malformed input with located errors") {
  CHECK_THROWS_AS(parse("flavor = plain\nb 2 1 = 1\n"), ParseError);  // no gens
  CHECK_THROWS_AS(parse("gens = X, D\nflavor = plain\n"), ParseError);  // missing b
  CHECK_THROWS_AS(parse("gens = X, D\nflavor = plain\nb 2 1 = 0\n"), ParseError);
  CHECK_THROWS_AS(parse("gens = X, D\nflavor = plain\nb 1 2 = 1\n"), ParseError);
  CHECK_THROWS_AS(parse("gens = X, D\nflavor = plain\nb 2 1 = 1\nb 2 1 = 2\n"), ParseError);
  CHECK_THROWS_AS(parse("gens = X, D\nflavor = nope\nb 2 1 = 1\n"), ParseError);
  CHECK_THROWS_AS(parse("gens = X, X\nflavor = plain\nb 2 1 = 1\n"), ParseError);
  CHECK_THROWS_AS(parse("gens = X, Z\nflavor = plain\nb 2 1 = 1\n"), ParseError);
  CHECK_THROWS_AS(parse("gens = X, D\nflavor = plain\nb 2 1 = 1\nc 2 1 9 = 1\n"), ParseError);
  CHECK_THROWS_AS(parse("gens = X, D\nflavor = plain\nb 2 1 = 1\nbogus 1 = 2\n"), ParseError);
  CHECK_THROWS_AS(
      parse("gens = X, D\nflavor = quantum_poly\nb 2 1 = 1\nd 2 1 = 1\n"), ParseError);
  try {
    parse("gens = X, D\nflavor = plain\nb 2 1 = q\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("zero c and d lines are dropped rather than stored") {
  GPresentation p = parse("gens = X, D\nflavor = plain\nb 2 1 = 1\nc 2 1 1 = 0\nd 2 1 = 0\n");
  CHECK(p.c.empty());
  CHECK(p.d.empty());
  CHECK(p.c_at(2, 1, 1).is_zero());
}

TEST_CASE("comments and blank lines are ignored") {
  GPresentation p = parse("# header\n\ngens = X, D\n# mid\nflavor = plain\nb 2 1 = 3/2\n");
  CHECK(p.b_at(2, 1) == Q.from_fraction(3, 2));
}

TEST_CASE("presentation respects the session field") {
  Field p5 = Field::prime(5);
  GPresentation p = parse_presentation("gens = X, D\nflavor = plain\nb 2 1 = 7\n", p5);
  CHECK(p.b_at(2, 1) == p5.from_long(2));
  // b reducing to zero mod p is rejected just like a literal zero.
  CHECK_THROWS_AS(
      parse_presentation("gens = X, D\nflavor = plain\nb 2 1 = 5\n", p5), ParseError);
}

TEST_CASE("validate_presentation guards hand-built data") {
  GPresentation p;
  p.field = Q;
  p.n = 2;
  p.gen_names = {"X", "D"};
  p.flavor = GPresentation::Flavor::plain;
  CHECK_THROWS_AS(validate_presentation(p), ParseError);  // b missing
  p.b[{2, 1}] = Q.one();
  CHECK_NOTHROW(validate_presentation(p));
  p.c[{{2, 1, 3}}] = Q.one();  // k out of range
  CHECK_THROWS_AS(validate_presentation(p), ParseError);
}
