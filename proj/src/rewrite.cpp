#include "galg/rewrite.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace galg {

int Monomial::degree() const {
  int d = z;
  for (int v : e) d += v;
  return d;
}

bool Monomial::operator<(const Monomial& o) const {
  int da = degree(), db = o.degree();
  if (da != db) return da < db;
  // Lex on the reduced word; Z ranks above every X so constants and pure X
  // words come first among equals.
  Word wa = monomial_word(*this), wb = monomial_word(o);
  size_t n = std::max(e.size(), o.e.size());
  auto rank = [n](int letter) { return letter == 0 ? static_cast<int>(n) + 1 : letter; };
  for (size_t i = 0; i < wa.size() && i < wb.size(); ++i) {
    int ra = rank(wa[i]), rb = rank(wb[i]);
    if (ra != rb) return ra < rb;
  }
  return wa.size() < wb.size();
}

Word monomial_word(const Monomial& m) {
  Word w;
  w.reserve(m.degree());
  for (int i = 0; i < m.z; ++i) w.push_back(0);
  for (size_t g = 0; g < m.e.size(); ++g)
    for (int i = 0; i < m.e[g]; ++i) w.push_back(static_cast<int>(g) + 1);
  return w;
}

NCElement NCElement::one(PresHandle pres) {
  NCElement a(pres);
  Monomial m;
  m.e.assign(pres->n, 0);
  a.add_term(m, pres->field.one());
  return a;
}

NCElement NCElement::generator(PresHandle pres, int letter) {
  if (letter < 0 || letter > pres->n) throw Error("generator letter out of range");
  if (letter == 0 && !pres->has_z()) throw FlavorError("Z exists only in the homogenized flavor");
  NCElement a(pres);
  Monomial m;
  m.e.assign(pres->n, 0);
  if (letter == 0)
    m.z = 1;
  else
    m.e[letter - 1] = 1;
  a.add_term(m, pres->field.one());
  return a;
}

void NCElement::add_term(const Monomial& m, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, coeff);
    return;
  }
  Scalar v = it->second + coeff;
  if (v.is_zero())
    terms_.erase(it);
  else
    it->second = v;
}

namespace {

void check_compatible(const NCElement& a, const NCElement& b) {
  if (!a.pres() || !b.pres() || !(*a.pres() == *b.pres()))
    throw Error("elements over different presentations");
}

}  // namespace

NCElement NCElement::operator+(const NCElement& o) const {
  check_compatible(*this, o);
  NCElement r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

NCElement NCElement::operator-(const NCElement& o) const {
  return *this + o.scaled(-o.pres()->field.one());
}

NCElement NCElement::scaled(const Scalar& s) const {
  NCElement r(pres_);
  if (s.is_zero()) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
  return r;
}

bool NCElement::operator==(const NCElement& o) const {
  check_compatible(*this, o);
  return terms_ == o.terms_;
}

int NCElement::max_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

namespace {

// One rewrite of the adjacent inversion at position t: word[t] > word[t+1].
// Emits the replacement combination into out.
void apply_rule(const GPresentation& p, const Word& word, size_t t, const Scalar& coeff,
                std::vector<std::pair<Word, Scalar>>& out) {
  int a = word[t], b = word[t + 1];
  auto emit = [&](std::initializer_list<int> mid, const Scalar& s) {
    if (s.is_zero()) return;
    Word w;
    w.reserve(word.size() - 2 + mid.size());
    w.insert(w.end(), word.begin(), word.begin() + t);
    w.insert(w.end(), mid.begin(), mid.end());
    w.insert(w.end(), word.begin() + t + 2, word.end());
    out.emplace_back(std::move(w), s);
  };
  if (b == 0) {
    // X_a Z -> Z X_a
    emit({0, a}, coeff);
    return;
  }
  emit({b, a}, coeff * p.b_at(a, b));
  bool homog = p.has_z();
  for (int k = 1; k <= p.n; ++k) {
    Scalar ck = p.c_at(a, b, k);
    if (ck.is_zero()) continue;
    if (homog)
      emit({0, k}, -(coeff * ck));
    else
      emit({k}, -(coeff * ck));
  }
  Scalar dk = p.d_at(a, b);
  if (!dk.is_zero()) {
    if (homog)
      emit({0, 0}, -(coeff * dk));
    else
      emit({}, -(coeff * dk));
  }
}

int leftmost_inversion(const Word& w) {
  for (size_t t = 0; t + 1 < w.size(); ++t)
    if (w[t] > w[t + 1]) return static_cast<int>(t);
  return -1;
}

Monomial sorted_word_monomial(const GPresentation& p, const Word& w) {
  Monomial m;
  m.e.assign(p.n, 0);
  for (int letter : w) {
    if (letter == 0)
      ++m.z;
    else
      ++m.e[letter - 1];
  }
  return m;
}

void check_word(const GPresentation& p, const Word& w, const RewriteOptions& opts) {
  if (static_cast<int>(w.size()) > opts.degree_cap)
    throw DegreeCapError("word of degree " + std::to_string(w.size()) + " exceeds degree cap " +
                         std::to_string(opts.degree_cap));
  for (int letter : w) {
    if (letter < 0 || letter > p.n) throw Error("letter out of range in word");
    if (letter == 0 && !p.has_z()) throw FlavorError("Z exists only in the homogenized flavor");
  }
}

// Fully reduces a pending combination of words; each word follows the
// deterministic leftmost-innermost strategy.
NCElement reduce_all(const PresHandle& pres, std::vector<std::pair<Word, Scalar>> pending) {
  const GPresentation& p = *pres;
  NCElement out(pres);
  std::map<Word, Scalar> work;
  for (auto& [w, s] : pending) {
    if (s.is_zero()) continue;
    auto it = work.find(w);
    if (it == work.end())
      work.emplace(std::move(w), s);
    else {
      Scalar v = it->second + s;
      if (v.is_zero())
        work.erase(it);
      else
        it->second = v;
    }
  }
  while (!work.empty()) {
    auto it = work.begin();
    Word w = it->first;
    Scalar s = it->second;
    work.erase(it);
    int t = leftmost_inversion(w);
    if (t < 0) {
      out.add_term(sorted_word_monomial(p, w), s);
      continue;
    }
    std::vector<std::pair<Word, Scalar>> next;
    apply_rule(p, w, static_cast<size_t>(t), s, next);
    for (auto& [nw, ns] : next) {
      auto jt = work.find(nw);
      if (jt == work.end())
        work.emplace(std::move(nw), ns);
      else {
        Scalar v = jt->second + ns;
        if (v.is_zero())
          work.erase(jt);
        else
          jt->second = v;
      }
    }
  }
  return out;
}

}  // namespace

NCElement normal_form(const PresHandle& pres, const Word& word, const Scalar& coeff,
                      const RewriteOptions& opts) {
  if (coeff.field() != pres->field) throw FieldMismatchError("coefficient from wrong field");
  check_word(*pres, word, opts);
  if (coeff.is_zero()) return NCElement::zero(pres);
  return reduce_all(pres, {{word, coeff}});
}

NCElement nc_mul(const NCElement& a, const NCElement& b, const RewriteOptions& opts) {
  check_compatible(a, b);
  const PresHandle& pres = a.pres();
  std::vector<std::pair<Word, Scalar>> pending;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      Word w = monomial_word(ma);
      Word wb = monomial_word(mb);
      w.insert(w.end(), wb.begin(), wb.end());
      check_word(*pres, w, opts);
      pending.emplace_back(std::move(w), ca * cb);
    }
  return reduce_all(pres, std::move(pending));
}

ConfluenceReport certify_confluence(const PresHandle& pres, const RewriteOptions& opts) {
  const GPresentation& p = *pres;
  ConfluenceReport rep;
  rep.certified = true;
  int low = p.has_z() ? 0 : 1;
  for (int k = 3; k <= p.n; ++k)
    for (int j = 2; j < k; ++j)
      for (int i = low; i < j; ++i) {
        Word w{k, j, i};
        std::vector<std::pair<Word, Scalar>> first;
        apply_rule(p, w, 0, p.field.one(), first);
        NCElement left = reduce_all(pres, std::move(first));
        std::vector<std::pair<Word, Scalar>> second;
        apply_rule(p, w, 1, p.field.one(), second);
        NCElement right = reduce_all(pres, std::move(second));
        if (!(left == right)) {
          rep.certified = false;
          rep.failures.push_back({w, left, right});
        }
      }
  // Two-letter ambiguities X_j X_i Z with j > i >= 1 (only the homogenized
  // flavor has Z).
  if (p.has_z())
    for (int j = 2; j <= p.n; ++j)
      for (int i = 1; i < j; ++i) {
        Word w{j, i, 0};
        std::vector<std::pair<Word, Scalar>> first;
        apply_rule(p, w, 0, p.field.one(), first);
        NCElement left = reduce_all(pres, std::move(first));
        std::vector<std::pair<Word, Scalar>> second;
        apply_rule(p, w, 1, p.field.one(), second);
        NCElement right = reduce_all(pres, std::move(second));
        if (!(left == right)) {
          rep.certified = false;
          rep.failures.push_back({w, left, right});
        }
      }
  (void)opts;
  return rep;
}

NCElement dehomogenize(const NCElement& a) {
  const GPresentation& p = *a.pres();
  if (p.flavor != GPresentation::Flavor::homogenized)
    throw FlavorError("dehomogenize expects an element over the homogenized flavor");
  auto plain = std::make_shared<const GPresentation>(dehomogenize_presentation(p));
  NCElement r(plain);
  for (const auto& [m, c] : a.terms()) {
    Monomial mm = m;
    mm.z = 0;
    r.add_term(mm, c);
  }
  return r;
}

NCElement homogenize_element(const NCElement& a, int target_degree) {
  const GPresentation& p = *a.pres();
  if (p.flavor != GPresentation::Flavor::plain)
    throw FlavorError("homogenize_element expects an element over the plain flavor");
  if (a.max_degree() > target_degree)
    throw Error("target degree " + std::to_string(target_degree) +
                " below element degree " + std::to_string(a.max_degree()));
  auto homog = std::make_shared<const GPresentation>(homogenize_presentation(p));
  NCElement r(homog);
  for (const auto& [m, c] : a.terms()) {
    Monomial mm = m;
    mm.z = target_degree - m.degree();
    r.add_term(mm, c);
  }
  return r;
}

mpz_class graded_dim(const GPresentation& p, int d) {
  if (d < 0) throw Error("graded_dim needs d >= 0");
  int vars = p.has_z() ? p.n + 1 : p.n;
  // Monomials of degree d in `vars` commuting slots: C(vars + d - 1, d).
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(vars + d - 1),
               static_cast<unsigned long>(d));
  return r;
}

namespace {

struct ElementScanner {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos));
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  bool peek_digit() {
    skip_ws();
    return pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));
  }
  bool accept(char ch) {
    skip_ws();
    if (pos < text.size() && text[pos] == ch) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string number() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      size_t den = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == den) fail("expected denominator");
    }
    if (pos == start) fail("expected number");
    return text.substr(start, pos - start);
  }
  std::string name() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected generator name");
    return text.substr(start, pos - start);
  }
  int exponent() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected exponent");
    return std::stoi(text.substr(start, pos - start));
  }
};

int letter_code(const GPresentation& p, const std::string& name) {
  if (name == "Z") {
    if (!p.has_z()) throw FlavorError("Z exists only in the homogenized flavor");
    return 0;
  }
  for (int i = 0; i < p.n; ++i)
    if (p.gen_names[i] == name) return i + 1;
  throw ParseError("unknown generator '" + name + "'");
}

}  // namespace

NCElement parse_element(const PresHandle& pres, const std::string& text,
                        const RewriteOptions& opts) {
  const GPresentation& p = *pres;
  ElementScanner sc{text};
  NCElement out(pres);
  bool first = true;
  while (true) {
    sc.skip_ws();
    bool neg = false;
    if (sc.accept('-'))
      neg = true;
    else if (sc.accept('+')) {
      if (first) sc.fail("unexpected '+'");
    } else if (!first) {
      if (sc.done()) break;
      sc.fail("expected '+' or '-'");
    }
    if (sc.done()) sc.fail("expected a term");
    Scalar coeff = p.field.one();
    bool have_word = false;
    Word word;
    if (sc.peek_digit()) {
      coeff = p.field.parse(sc.number());
      if (sc.accept('*')) have_word = true;
    } else {
      have_word = true;
    }
    if (have_word) {
      while (true) {
        std::string gen = sc.name();
        int code = 0;
        try {
          code = letter_code(p, gen);
        } catch (const ParseError& e) {
          sc.fail(e.what());
        }
        int exp = 1;
        if (sc.accept('^')) exp = sc.exponent();
        if (exp < 0) sc.fail("negative exponent");
        for (int t = 0; t < exp; ++t) word.push_back(code);
        if (!sc.accept('*')) break;
      }
    }
    if (neg) coeff = -coeff;
    out = out + normal_form(pres, word, coeff, opts);
    first = false;
    if (sc.done()) break;
  }
  return out;
}

std::string print_element(const NCElement& a) {
  if (a.is_zero()) return "0";
  const GPresentation& p = *a.pres();
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    Scalar mag = c;
    bool neg = c < p.field.zero();
    if (p.field.kind() == FieldKind::prime) neg = false;
    if (neg) mag = -c;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    std::ostringstream word;
    bool empty_word = true;
    auto put = [&](const std::string& name, int exp) {
      if (exp == 0) return;
      if (!empty_word) word << "*";
      word << name;
      if (exp > 1) word << "^" << exp;
      empty_word = false;
    };
    put("Z", m.z);
    // Z first mirrors the PBW normal order Z^a X_1^{e_1} ... X_n^{e_n}.
    std::ostringstream xs;
    {
      bool e0 = true;
      for (int g = 0; g < p.n; ++g) {
        if (m.e[g] == 0) continue;
        if (!e0) xs << "*";
        xs << p.gen_names[g];
        if (m.e[g] > 1) xs << "^" << m.e[g];
        e0 = false;
      }
      if (!e0) {
        if (!empty_word) word << "*";
        word << xs.str();
        empty_word = false;
      }
    }
    if (empty_word) {
      out << mag.str();
    } else {
      if (!mag.is_one()) out << mag.str() << "*";
      out << word.str();
    }
  }
  return out.str();
}

}  // namespace galg
