#include "galg/presentation.hpp"

#include <cctype>
#include <sstream>

namespace galg {

Scalar GPresentation::b_at(int i, int j) const {
  auto it = b.find({i, j});
  if (it == b.end()) throw Error("missing b coefficient");
  return it->second;
}

Scalar GPresentation::c_at(int i, int j, int k) const {
  auto it = c.find({i, j, k});
  return it == c.end() ? field.zero() : it->second;
}

Scalar GPresentation::d_at(int i, int j) const {
  auto it = d.find({i, j});
  return it == d.end() ? field.zero() : it->second;
}

std::string GPresentation::letter_name(int code) const {
  if (code == 0) return "Z";
  return gen_names.at(code - 1);
}

bool GPresentation::operator==(const GPresentation& o) const {
  return field == o.field && n == o.n && gen_names == o.gen_names && b == o.b && c == o.c &&
         d == o.d && flavor == o.flavor;
}

namespace {

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  return true;
}

}  // namespace

void validate_presentation(const GPresentation& p) {
  if (p.n < 1) throw ParseError("presentation needs at least one generator");
  if (static_cast<int>(p.gen_names.size()) != p.n)
    throw ParseError("generator name count does not match n");
  for (int i = 0; i < p.n; ++i) {
    if (!valid_name(p.gen_names[i])) throw ParseError("bad generator name '" + p.gen_names[i] + "'");
    if (p.gen_names[i] == "Z")
      throw ParseError("generator name 'Z' is reserved for the homogenizing variable");
    for (int j = 0; j < i; ++j)
      if (p.gen_names[i] == p.gen_names[j])
        throw ParseError("duplicate generator name '" + p.gen_names[i] + "'");
  }
  for (int i = 2; i <= p.n; ++i)
    for (int j = 1; j < i; ++j) {
      auto it = p.b.find({i, j});
      if (it == p.b.end())
        throw ParseError("missing b " + std::to_string(i) + " " + std::to_string(j));
      if (it->second.is_zero())
        throw ParseError("zero b " + std::to_string(i) + " " + std::to_string(j));
      if (it->second.field() != p.field) throw ParseError("b coefficient from wrong field");
    }
  for (const auto& [key, val] : p.b)
    if (!(key.first > key.second && key.second >= 1 && key.first <= p.n))
      throw ParseError("b index out of range");
  for (const auto& [key, val] : p.c) {
    auto [i, j, k] = key;
    if (!(i > j && j >= 1 && i <= p.n && k >= 1 && k <= p.n)) throw ParseError("c index out of range");
    if (val.is_zero()) throw ParseError("stored c coefficient is zero");
    if (val.field() != p.field) throw ParseError("c coefficient from wrong field");
  }
  for (const auto& [key, val] : p.d) {
    if (!(key.first > key.second && key.second >= 1 && key.first <= p.n))
      throw ParseError("d index out of range");
    if (val.is_zero()) throw ParseError("stored d coefficient is zero");
    if (val.field() != p.field) throw ParseError("d coefficient from wrong field");
  }
  if (p.flavor == GPresentation::Flavor::quantum_poly && (!p.c.empty() || !p.d.empty()))
    throw ParseError("quantum_poly flavor admits no c or d coefficients");
}

namespace {

struct LineScanner {
  const std::string& line;
  int lineno;
  size_t pos = 0;

  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, lineno, static_cast<int>(pos) + 1);
  }
  bool done() {
    skip_ws();
    return pos >= line.size() || line[pos] == '#';
  }
  std::string word() {
    skip_ws();
    size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])) &&
           line[pos] != '=' && line[pos] != ',' && line[pos] != '#')
      ++pos;
    if (pos == start) fail("expected a token");
    return line.substr(start, pos - start);
  }
  void expect(char ch) {
    skip_ws();
    if (pos >= line.size() || line[pos] != ch) fail(std::string("expected '") + ch + "'");
    ++pos;
  }
  bool peek(char ch) {
    skip_ws();
    return pos < line.size() && line[pos] == ch;
  }
  int integer() {
    std::string w = word();
    try {
      size_t used = 0;
      int v = std::stoi(w, &used);
      if (used != w.size()) fail("bad integer '" + w + "'");
      return v;
    } catch (const ParseError&) {
      throw;
    } catch (...) {
      fail("bad integer '" + w + "'");
    }
  }
  std::string rest() {
    skip_ws();
    size_t start = pos;
    size_t end = line.find('#', start);
    if (end == std::string::npos) end = line.size();
    while (end > start && std::isspace(static_cast<unsigned char>(line[end - 1]))) --end;
    pos = end;
    return line.substr(start, end - start);
  }
};

}  // namespace

GPresentation parse_presentation(const std::string& text, const Field& field) {
  GPresentation p;
  p.field = field;
  bool have_gens = false;
  bool have_flavor = false;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    LineScanner sc{line, lineno};
    if (sc.done()) continue;
    std::string head = sc.word();
    if (head == "gens") {
      if (have_gens) sc.fail("duplicate gens line");
      sc.expect('=');
      while (true) {
        std::string name = sc.word();
        p.gen_names.push_back(name);
        if (sc.peek(',')) {
          sc.expect(',');
          continue;
        }
        break;
      }
      if (!sc.done()) sc.fail("trailing characters after gens list");
      p.n = static_cast<int>(p.gen_names.size());
      have_gens = true;
    } else if (head == "flavor") {
      if (have_flavor) sc.fail("duplicate flavor line");
      sc.expect('=');
      std::string fl = sc.word();
      if (!sc.done()) sc.fail("trailing characters after flavor");
      if (fl == "plain")
        p.flavor = GPresentation::Flavor::plain;
      else if (fl == "homogenized")
        p.flavor = GPresentation::Flavor::homogenized;
      else if (fl == "quantum_poly")
        p.flavor = GPresentation::Flavor::quantum_poly;
      else
        sc.fail("unknown flavor '" + fl + "'");
      have_flavor = true;
    } else if (head == "b" || head == "c" || head == "d") {
      if (!have_gens) sc.fail("gens line must precede coefficient lines");
      int i = sc.integer();
      int j = sc.integer();
      int k = head == "c" ? sc.integer() : 0;
      sc.expect('=');
      std::string sval = sc.rest();
      if (sval.empty()) sc.fail("missing scalar value");
      Scalar v = field.zero();
      try {
        v = field.parse(sval);
      } catch (const ParseError& e) {
        sc.fail(e.what());
      }
      if (i < 1 || i > p.n || j < 1 || j > p.n || i <= j)
        sc.fail("coefficient indices must satisfy n >= i > j >= 1");
      if (head == "b") {
        if (p.b.count({i, j})) sc.fail("duplicate b coefficient");
        if (v.is_zero()) sc.fail("zero b " + std::to_string(i) + " " + std::to_string(j));
        p.b[{i, j}] = v;
      } else if (head == "c") {
        if (k < 1 || k > p.n) sc.fail("c target index out of range");
        if (p.c.count({i, j, k})) sc.fail("duplicate c coefficient");
        if (!v.is_zero()) p.c[{i, j, k}] = v;
      } else {
        if (p.d.count({i, j})) sc.fail("duplicate d coefficient");
        if (!v.is_zero()) p.d[{i, j}] = v;
      }
    } else {
      sc.fail("unknown directive '" + head + "'");
    }
  }
  if (!have_gens) throw ParseError("missing gens line", lineno, 1);
  validate_presentation(p);
  return p;
}

std::string print_presentation(const GPresentation& p) {
  std::ostringstream out;
  out << "gens = ";
  for (int i = 0; i < p.n; ++i) {
    if (i) out << ", ";
    out << p.gen_names[i];
  }
  out << "\n";
  switch (p.flavor) {
    case GPresentation::Flavor::plain:
      out << "flavor = plain\n";
      break;
    case GPresentation::Flavor::homogenized:
      out << "flavor = homogenized\n";
      break;
    case GPresentation::Flavor::quantum_poly:
      out << "flavor = quantum_poly\n";
      break;
  }
  for (const auto& [key, val] : p.b)
    out << "b " << key.first << " " << key.second << " = " << val.str() << "\n";
  for (const auto& [key, val] : p.c)
    out << "c " << key[0] << " " << key[1] << " " << key[2] << " = " << val.str() << "\n";
  for (const auto& [key, val] : p.d)
    out << "d " << key.first << " " << key.second << " = " << val.str() << "\n";
  return out.str();
}

GPresentation homogenize_presentation(const GPresentation& p) {
  if (p.flavor != GPresentation::Flavor::plain)
    throw FlavorError("homogenize_presentation expects the plain flavor");
  GPresentation q = p;
  q.flavor = GPresentation::Flavor::homogenized;
  return q;
}

GPresentation dehomogenize_presentation(const GPresentation& p) {
  if (p.flavor != GPresentation::Flavor::homogenized)
    throw FlavorError("dehomogenize_presentation expects the homogenized flavor");
  GPresentation q = p;
  q.flavor = GPresentation::Flavor::plain;
  return q;
}

GPresentation quantum_poly_of(const GPresentation& p) {
  if (p.flavor != GPresentation::Flavor::homogenized)
    throw FlavorError("quantum_poly_of expects the homogenized flavor");
  GPresentation q = p;
  q.flavor = GPresentation::Flavor::quantum_poly;
  q.c.clear();
  q.d.clear();
  return q;
}

}  // namespace galg
