#include "galg/fdmod.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace galg {

namespace {

// Generator-block column offsets in the free-module component of degree d.
std::vector<int> block_offsets(const ShriekAlgebra& a, const std::vector<int>& gens, int d) {
  std::vector<int> off(gens.size() + 1, 0);
  for (size_t k = 0; k < gens.size(); ++k) off[k + 1] = off[k] + a.dim(d - gens[k]);
  return off;
}

// First/last indices with a nonzero dimension; {-1, -1} for the zero module.
std::pair<int, int> nonzero_window(const std::vector<int>& dims) {
  int first = -1, last = -1;
  for (size_t i = 0; i < dims.size(); ++i)
    if (dims[i] > 0) {
      if (first < 0) first = static_cast<int>(i);
      last = static_cast<int>(i);
    }
  return {first, last};
}

// Trims m in place; `side` (when nonempty, one matrix per component) is
// sliced to the same window.
void trim_in_place(GradedModule& m, std::vector<Matrix>* side) {
  auto [first, last] = nonzero_window(m.dims);
  if (first < 0) {
    m.lo = 0;
    m.dims.clear();
    for (auto& v : m.act) v.clear();
    if (side) side->clear();
    return;
  }
  if (first == 0 && last == static_cast<int>(m.dims.size()) - 1) return;
  m.lo += first;
  m.dims = std::vector<int>(m.dims.begin() + first, m.dims.begin() + last + 1);
  for (auto& v : m.act) v = std::vector<Matrix>(v.begin() + first, v.begin() + last + 1);
  if (side) *side = std::vector<Matrix>(side->begin() + first, side->begin() + last + 1);
}

}  // namespace

int GradedModule::total_dim() const {
  int t = 0;
  for (int d : dims) t += d;
  return t;
}

Matrix GradedModule::action(int g, int d) const {
  if (!algebra) throw Error("module carries no algebra");
  if (g < 0 || g >= algebra->letters) throw Error("letter out of range");
  if (d >= lo && d <= hi()) return act[g][static_cast<size_t>(d - lo)];
  return Matrix(dim_at(d + 1), dim_at(d), algebra->field);
}

Matrix GradedModule::word_action(const DWord& w, int d) const {
  Matrix r = Matrix::identity(dim_at(d), algebra->field);
  int deg = d;
  for (int t = static_cast<int>(w.size()) - 1; t >= 0; --t) {
    r = action(w[t], deg) * r;
    ++deg;
  }
  return r;
}

GradedModule zero_module(const ShriekHandle& a) {
  GradedModule m;
  m.algebra = a;
  m.act.assign(a->letters, {});
  return m;
}

GradedModule simple_module(const ShriekHandle& a, int degree) {
  GradedModule m;
  m.algebra = a;
  m.lo = degree;
  m.dims = {1};
  m.act.assign(a->letters, {Matrix(0, 1, a->field)});
  return m;
}

GradedModule free_module(const ShriekHandle& a, const std::vector<int>& gen_degrees) {
  if (gen_degrees.empty()) return zero_module(a);
  GradedModule m;
  m.algebra = a;
  m.lo = *std::min_element(gen_degrees.begin(), gen_degrees.end());
  int hi = *std::max_element(gen_degrees.begin(), gen_degrees.end()) + a->top;
  m.dims.resize(hi - m.lo + 1, 0);
  for (int d = m.lo; d <= hi; ++d)
    m.dims[d - m.lo] = block_offsets(*a, gen_degrees, d).back();
  m.act.assign(a->letters, {});
  for (int g = 0; g < a->letters; ++g) {
    m.act[g].reserve(m.dims.size());
    for (int d = m.lo; d <= hi; ++d) {
      Matrix blk(m.dim_at(d + 1), m.dim_at(d), a->field);
      auto roff = block_offsets(*a, gen_degrees, d + 1);
      auto coff = block_offsets(*a, gen_degrees, d);
      for (size_t k = 0; k < gen_degrees.size(); ++k) {
        int dd = d - gen_degrees[k];
        if (dd < 0 || dd > a->top) continue;
        const Matrix& l = a->lmul[g][dd];
        for (int r = 0; r < l.rows(); ++r)
          for (int c = 0; c < l.cols(); ++c) blk.at(roff[k] + r, coff[k] + c) = l.at(r, c);
      }
      m.act[g].push_back(std::move(blk));
    }
  }
  return m;
}

GradedModule trim_module(const GradedModule& m) {
  GradedModule r = m;
  trim_in_place(r, nullptr);
  return r;
}

bool same_graded_dims(const GradedModule& a, const GradedModule& b) {
  GradedModule x = trim_module(a), y = trim_module(b);
  if (x.dims.empty() && y.dims.empty()) return true;
  return x.lo == y.lo && x.dims == y.dims;
}

std::vector<std::string> check_module(const GradedModule& m) {
  if (!m.algebra) throw Error("module carries no algebra");
  const ShriekAlgebra& a = *m.algebra;
  if (static_cast<int>(m.act.size()) != a.letters)
    throw Error("expected one action family per letter, got " + std::to_string(m.act.size()));
  for (int g = 0; g < a.letters; ++g) {
    if (m.act[g].size() != m.dims.size())
      throw Error("action count for " + a.letter_names[g] + " does not match the degree range");
    for (size_t i = 0; i < m.dims.size(); ++i) {
      int d = m.lo + static_cast<int>(i);
      const Matrix& mat = m.act[g][i];
      if (mat.rows() != m.dim_at(d + 1) || mat.cols() != m.dims[i])
        throw Error("action shape mismatch for " + a.letter_names[g] + " at degree " +
                    std::to_string(d) + ": got " + std::to_string(mat.rows()) + "x" +
                    std::to_string(mat.cols()) + ", expected " + std::to_string(m.dim_at(d + 1)) +
                    "x" + std::to_string(m.dims[i]));
      if (mat.field() != a.field)
        throw FieldMismatchError("module matrices use a different field than the algebra");
    }
  }
  std::vector<std::string> violations;
  for (const auto& row : a.relations2) {
    for (int d = m.lo; d <= m.hi(); ++d) {
      Matrix s(m.dim_at(d + 2), m.dim_at(d), a.field);
      for (const auto& [uv, coeff] : row)
        s = s + (m.action(uv.first, d + 1) * m.action(uv.second, d)).scaled(coeff);
      if (!s.is_zero())
        violations.push_back("relation " + relation_string(a, row) + " violated at degree " +
                             std::to_string(d));
    }
  }
  return violations;
}

CoverResult projective_cover(const GradedModule& m) {
  GradedModule mt = trim_module(m);
  const ShriekHandle& ah = m.algebra;
  CoverResult out;
  if (mt.is_zero()) {
    out.cover = zero_module(ah);
    return out;
  }
  const ShriekAlgebra& a = *ah;
  const Field& f = a.field;

  // Generators: unit vectors completing the radical component per degree.
  std::vector<std::pair<int, int>> positions;  // (degree, row)
  for (int d = mt.lo; d <= mt.hi(); ++d) {
    int dim = mt.dim_at(d);
    Matrix j(dim, 0, f);
    for (int g = 0; g < a.letters; ++g) j = Matrix::hcat(j, mt.action(g, d - 1));
    int jcols = j.cols();
    Matrix aug = Matrix::hcat(j, Matrix::identity(dim, f));
    RrefResult rr = rref_in_place(aug);
    Matrix lift(dim, 0, f);
    for (int p : rr.pivot_cols) {
      if (p < jcols) continue;
      out.gen_degrees.push_back(d);
      positions.emplace_back(d, p - jcols);
      Matrix col(dim, 1, f);
      col.at(p - jcols, 0) = f.one();
      lift = Matrix::hcat(lift, col);
    }
    out.lifts.push_back(lift);
  }

  out.cover = free_module(ah, out.gen_degrees);

  // Images of all algebra basis words on each generator, degree by degree:
  // G(d+1) is the unique solution of G(d+1) * [lmul blocks] = [action * G(d)].
  std::vector<Matrix> lt(a.top);
  for (int dd = 0; dd < a.top; ++dd) {
    Matrix l(a.dim(dd + 1), 0, f);
    for (int g = 0; g < a.letters; ++g) l = Matrix::hcat(l, a.lmul[g][dd]);
    lt[dd] = l.transpose();
  }
  std::vector<std::vector<Matrix>> gvecs(out.gen_degrees.size());
  for (size_t k = 0; k < out.gen_degrees.size(); ++k) {
    int e = positions[k].first;
    Matrix g0(mt.dim_at(e), 1, f);
    g0.at(positions[k].second, 0) = f.one();
    gvecs[k].push_back(g0);
    for (int dd = 0; dd < a.top; ++dd) {
      Matrix r(mt.dim_at(e + dd + 1), 0, f);
      for (int g = 0; g < a.letters; ++g)
        r = Matrix::hcat(r, mt.action(g, e + dd) * gvecs[k][dd]);
      auto sol = solve(lt[dd], r.transpose());
      if (!sol) throw Error("cover transport system inconsistent");
      gvecs[k].push_back(sol->transpose());
    }
  }

  for (int d = out.cover.lo; d <= out.cover.hi(); ++d) {
    Matrix cm(mt.dim_at(d), 0, f);
    for (size_t k = 0; k < out.gen_degrees.size(); ++k) {
      int dd = d - out.gen_degrees[k];
      if (dd < 0 || dd > a.top) continue;
      cm = Matrix::hcat(cm, gvecs[k][dd]);
    }
    if (rank_of(cm) != mt.dim_at(d))
      throw Error("cover not surjective at degree " + std::to_string(d));
    out.cover_map.push_back(std::move(cm));
  }
  if (mt.hi() > out.cover.hi()) throw Error("module extends past its cover");
  return out;
}

SyzygyResult syzygy_of_cover(const CoverResult& c) {
  SyzygyResult out;
  if (c.cover.is_zero()) {
    out.omega = c.cover;
    return out;
  }
  const ShriekAlgebra& a = *c.cover.algebra;
  const Field& f = a.field;
  size_t len = c.cover.dims.size();
  std::vector<Matrix> ker(len);
  for (size_t i = 0; i < len; ++i) ker[i] = kernel_basis(c.cover_map[i]);

  out.omega.algebra = c.cover.algebra;
  out.omega.lo = c.cover.lo;
  out.omega.dims.resize(len);
  for (size_t i = 0; i < len; ++i) out.omega.dims[i] = ker[i].cols();
  out.omega.act.assign(a.letters, std::vector<Matrix>(len, Matrix()));
  for (size_t i = 0; i < len; ++i) {
    Matrix next = i + 1 < len ? ker[i + 1] : Matrix(0, 0, f);
    for (int g = 0; g < a.letters; ++g) {
      Matrix rhs = c.cover.act[g][i] * ker[i];
      if (next.rows() == 0) {
        if (!rhs.is_zero()) throw Error("syzygy action leaves the kernel");
        out.omega.act[g][i] = Matrix(0, ker[i].cols(), f);
        continue;
      }
      auto sol = solve(next, rhs);
      if (!sol) throw Error("syzygy action leaves the kernel");
      out.omega.act[g][i] = *sol;
    }
  }
  out.embed = std::move(ker);
  trim_in_place(out.omega, &out.embed);
  return out;
}

GradedModule syzygy(const GradedModule& m) { return syzygy_of_cover(projective_cover(m)).omega; }

namespace {

// Generator slots of a cover, in gen_degrees order.
std::vector<std::pair<int, int>> gen_positions(const CoverResult& c, int lo) {
  std::vector<std::pair<int, int>> pos;
  for (size_t i = 0; i < c.lifts.size(); ++i)
    for (int col = 0; col < c.lifts[i].cols(); ++col)
      for (int r = 0; r < c.lifts[i].rows(); ++r)
        if (!c.lifts[i].at(r, col).is_zero()) {
          pos.emplace_back(lo + static_cast<int>(i), r);
          break;
        }
  return pos;
}

}  // namespace

ResolutionData resolve(const GradedModule& m, int max_step) {
  if (max_step < 0) throw Error("max_step must be nonnegative");
  ResolutionData out;
  out.minimal = true;
  ShriekHandle a = m.algebra;
  GradedModule cur = trim_module(m);
  std::vector<int> prev_gens;
  std::vector<Matrix> embed;
  int embed_lo = 0;
  int cur_lo_hint = cur.lo;
  for (int step = 0; step <= max_step; ++step) {
    CoverResult cov = projective_cover(cur);
    ResolutionStep st;
    st.gen_degrees = cov.gen_degrees;
    if (step > 0) {
      auto pos = gen_positions(cov, cur_lo_hint);
      st.boundary.assign(st.gen_degrees.size(), {});
      for (size_t j = 0; j < pos.size(); ++j) {
        auto [e, row] = pos[j];
        const Matrix& emb = embed[static_cast<size_t>(e - embed_lo)];
        st.boundary[j].assign(prev_gens.size(), {});
        auto off = block_offsets(*a, prev_gens, e);
        for (size_t k = 0; k < prev_gens.size(); ++k) {
          int wd = e - prev_gens[k];
          for (int wi = 0; wi < a->dim(wd); ++wi) {
            const Scalar& coeff = emb.at(off[k] + wi, row);
            if (coeff.is_zero()) continue;
            const DWord& w = a->basis[wd][wi];
            if (w.empty()) out.minimal = false;
            st.boundary[j][k].emplace_back(w, coeff);
          }
        }
      }
    }
    out.steps.push_back(std::move(st));
    if (step == max_step) break;
    SyzygyResult syz = syzygy_of_cover(cov);
    prev_gens = cov.gen_degrees;
    embed = std::move(syz.embed);
    embed_lo = syz.omega.lo;
    cur_lo_hint = syz.omega.lo;
    cur = std::move(syz.omega);
  }
  return out;
}

std::vector<ExtRow> ext_dims(const GradedModule& m, int max_step) {
  ResolutionData res = resolve(m, max_step);
  std::vector<ExtRow> out;
  for (size_t i = 0; i < res.steps.size(); ++i) {
    ExtRow row;
    row.step = static_cast<int>(i);
    row.total = static_cast<int>(res.steps[i].gen_degrees.size());
    row.degrees = res.steps[i].gen_degrees;
    out.push_back(std::move(row));
  }
  return out;
}

bool is_koszul(const GradedModule& m, int max_step) {
  GradedModule cur = trim_module(m);
  if (cur.is_zero()) return true;
  CoverResult cov = projective_cover(cur);
  for (int e : cov.gen_degrees)
    if (e != cov.gen_degrees[0]) throw Error("module not generated in a single degree");
  int e0 = cov.gen_degrees[0];
  for (int i = 1; i <= max_step; ++i) {
    cur = syzygy_of_cover(cov).omega;
    if (cur.is_zero()) return true;
    cov = projective_cover(cur);
    for (int e : cov.gen_degrees)
      if (e != e0 + i) return false;
  }
  return true;
}

GradedModule induce(const ShriekHandle& b, const GradedModule& m) {
  if (b->c_slice) throw Error("induce expects the full algebra");
  if (!m.algebra || !m.algebra->c_slice) throw Error("induce expects a module over a C-slice");
  if (m.algebra->fingerprint != b->fingerprint + "/C")
    throw Error("module is not over the matching C-slice");
  const Field& f = b->field;
  const ShriekHandle& c = m.algebra;
  GradedModule mt = trim_module(m);
  if (mt.is_zero()) return zero_module(b);

  // Action of a slice element (coords over the slice basis of degree cdeg)
  // from module degree d.
  auto act_elem = [&](const std::vector<Scalar>& coords, int cdeg, int d) {
    Matrix r(mt.dim_at(d + cdeg), mt.dim_at(d), f);
    for (size_t i = 0; i < coords.size(); ++i) {
      if (coords[i].is_zero()) continue;
      r = r + mt.word_action(c->basis[cdeg][i], d).scaled(coords[i]);
    }
    return r;
  };

  GradedModule out;
  out.algebra = b;
  out.lo = mt.lo;
  out.dims.resize(mt.dims.size() + 1);
  for (size_t i = 0; i < out.dims.size(); ++i) {
    int d = out.lo + static_cast<int>(i);
    out.dims[i] = mt.dim_at(d) + mt.dim_at(d - 1);
  }
  out.act.assign(b->letters, {});
  for (int g = 0; g < b->letters; ++g) {
    for (size_t i = 0; i < out.dims.size(); ++i) {
      int d = out.lo + static_cast<int>(i);
      int r1 = mt.dim_at(d + 1), r2 = mt.dim_at(d);
      int c1 = mt.dim_at(d), c2 = mt.dim_at(d - 1);
      Matrix blk(r1 + r2, c1 + c2, f);
      if (g < b->n) {
        Matrix tl = mt.action(g, d);
        for (int r = 0; r < r1; ++r)
          for (int cc = 0; cc < c1; ++cc) blk.at(r, cc) = tl.at(r, cc);
      } else {
        for (int r = 0; r < r2; ++r) blk.at(r1 + r, r) = f.one();
      }
      Matrix tr = act_elem(b->gz_c0[g], 2, d - 1);
      Matrix br = act_elem(b->gz_c1[g], 1, d - 1);
      for (int r = 0; r < r1; ++r)
        for (int cc = 0; cc < c2; ++cc) blk.at(r, c1 + cc) = tr.at(r, cc);
      for (int r = 0; r < r2; ++r)
        for (int cc = 0; cc < c2; ++cc) blk.at(r1 + r, c1 + cc) = br.at(r, cc);
      out.act[g].push_back(std::move(blk));
    }
  }
  trim_in_place(out, nullptr);
  auto violations = check_module(out);
  if (!violations.empty())
    throw ModuleCertError("induced module failed certification", violations);
  return out;
}

GradedModule restrict_to_c(const GradedModule& m) {
  if (!m.algebra || m.algebra->c_slice) throw Error("restrict expects a module over the full algebra");
  ShriekHandle c = c_subalgebra(m.algebra);
  GradedModule out;
  out.algebra = c;
  out.lo = m.lo;
  out.dims = m.dims;
  out.act.assign(c->letters, {});
  for (int g = 0; g < c->letters; ++g) out.act[g] = m.act[g];
  auto violations = check_module(out);
  if (!violations.empty())
    throw ModuleCertError("restricted module failed certification", violations);
  return out;
}

bool is_f_local(const GradedModule& m) {
  return syzygy(restrict_to_c(m)).is_zero();
}

GradedModule twist_by_nakayama(const GradedModule& m, const NakayamaMap& s) {
  if (!m.algebra || !s.algebra) throw Error("twist needs an algebra on both sides");
  if (m.algebra->fingerprint != s.algebra->fingerprint)
    throw Error("twist: map and module come from different algebra builds");
  const ShriekAlgebra& a = *m.algebra;
  GradedModule out = m;
  const Matrix& s1 = s.sigma.at(1);
  for (int g = 0; g < a.letters; ++g)
    for (size_t i = 0; i < m.dims.size(); ++i) {
      Matrix sum(m.act[g][i].rows(), m.act[g][i].cols(), a.field);
      for (int h = 0; h < a.letters; ++h) {
        const Scalar& coeff = s1.at(h, g);
        if (coeff.is_zero()) continue;
        sum = sum + m.act[h][i].scaled(coeff);
      }
      out.act[g][i] = std::move(sum);
    }
  return out;
}

GradedModule ar_translate_endpoint(const GradedModule& m, const NakayamaMap& s) {
  GradedModule omega = syzygy(m);
  if (omega.is_zero()) throw Error("projective module: translate endpoint undefined");
  GradedModule omega2 = syzygy(omega);
  if (omega2.is_zero()) return omega2;
  return twist_by_nakayama(omega2, s);
}

std::optional<std::vector<Matrix>> find_graded_isomorphism(const GradedModule& m,
                                                           const GradedModule& n,
                                                           unsigned seed) {
  if (!m.algebra || !n.algebra || m.algebra->fingerprint != n.algebra->fingerprint)
    throw Error("isomorphism search needs modules over one algebra build");
  const Field& f = m.algebra->field;
  GradedModule x = trim_module(m), y = trim_module(n);
  if (!same_graded_dims(x, y)) return std::nullopt;
  if (x.is_zero()) return std::vector<Matrix>{};

  size_t len = x.dims.size();
  std::vector<int> off(len + 1, 0);
  for (size_t i = 0; i < len; ++i) off[i + 1] = off[i] + x.dims[i] * x.dims[i];
  int nvars = off[len];

  std::vector<SparseRow> eqs;
  for (int g = 0; g < x.algebra->letters; ++g)
    for (size_t i = 0; i < len; ++i) {
      int d = x.lo + static_cast<int>(i);
      Matrix am = x.action(g, d), an = y.action(g, d);
      int dn = x.dim_at(d + 1), dc = x.dims[i];
      for (int r = 0; r < dn; ++r)
        for (int c = 0; c < dc; ++c) {
          SparseRow row;
          for (int k = 0; k < dc; ++k)
            if (!an.at(r, k).is_zero()) row.emplace_back(off[i] + k * dc + c, -an.at(r, k));
          if (i + 1 < len)
            for (int k = 0; k < dn; ++k)
              if (!am.at(k, c).is_zero()) row.emplace_back(off[i + 1] + r * dn + k, am.at(k, c));
          if (!row.empty()) eqs.push_back(std::move(row));
        }
    }

  SparseRref rr = sparse_rref(std::move(eqs), nvars);
  auto basis = sparse_kernel_basis(rr, nvars, f);
  if (basis.empty()) return std::nullopt;

  auto to_maps = [&](const std::vector<Scalar>& v) {
    std::vector<Matrix> maps(len);
    for (size_t i = 0; i < len; ++i) {
      Matrix t(x.dims[i], x.dims[i], f);
      for (int r = 0; r < x.dims[i]; ++r)
        for (int c = 0; c < x.dims[i]; ++c) t.at(r, c) = v[off[i] + r * x.dims[i] + c];
      maps[i] = std::move(t);
    }
    return maps;
  };
  auto invertible = [&](const std::vector<Matrix>& maps) {
    for (size_t i = 0; i < len; ++i)
      if (rank_of(maps[i]) != x.dims[i]) return false;
    return true;
  };

  for (const auto& v : basis) {
    auto maps = to_maps(v);
    if (invertible(maps)) return maps;
  }
  std::vector<Scalar> sum(nvars, f.zero());
  for (const auto& v : basis)
    for (int i = 0; i < nvars; ++i) sum[i] = sum[i] + v[i];
  {
    auto maps = to_maps(sum);
    if (invertible(maps)) return maps;
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(-3, 3);
  for (int attempt = 0; attempt < 300; ++attempt) {
    std::vector<Scalar> v(nvars, f.zero());
    bool any = false;
    for (const auto& b : basis) {
      int cf = pick(rng);
      if (cf == 0) continue;
      any = true;
      Scalar s = f.from_long(cf);
      for (int i = 0; i < nvars; ++i) v[i] = v[i] + b[i] * s;
    }
    if (!any) continue;
    auto maps = to_maps(v);
    if (invertible(maps)) return maps;
  }
  return std::nullopt;
}

namespace {

// Line/column-tracked reader for module files.
struct ModScanner {
  const std::string& text;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit ModScanner(const std::string& t) : text(t) {}
  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char get() {
    char ch = text[pos++];
    if (ch == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return ch;
  }
  void skip_space() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) get();
  }
  void expect(char ch) {
    skip_space();
    if (eof() || peek() != ch)
      throw ParseError(std::string("expected '") + ch + "'", line, col);
    get();
  }
  bool try_consume(char ch) {
    skip_space();
    if (!eof() && peek() == ch) {
      get();
      return true;
    }
    return false;
  }
  std::string scalar_token() {
    skip_space();
    int l = line, c = col;
    std::string tok;
    while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '-' ||
                      peek() == '+' || peek() == '/'))
      tok += get();
    if (tok.empty()) throw ParseError("expected a scalar", l, c);
    return tok;
  }
};

Matrix parse_matrix(ModScanner& sc, const Field& f, int rows, int cols, int at_line) {
  Matrix m(rows, cols, f);
  sc.expect('[');
  for (int r = 0; r < rows; ++r) {
    sc.expect('[');
    for (int c = 0; c < cols; ++c) {
      int l = sc.line, cl = sc.col;
      std::string tok = sc.scalar_token();
      try {
        m.at(r, c) = f.parse(tok);
      } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()), l, cl);
      }
      if (c + 1 < cols) sc.expect(',');
    }
    sc.expect(']');
    if (r + 1 < rows) sc.expect(',');
  }
  sc.expect(']');
  sc.skip_space();
  if (!sc.eof() && sc.peek() != '\n' && sc.peek() != '#')
    throw ParseError("trailing characters after matrix", sc.line, sc.col);
  (void)at_line;
  return m;
}

std::vector<std::string> logical_lines(const std::string& text, std::vector<int>& line_no) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string raw;
  int ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    size_t a = raw.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = raw.find_last_not_of(" \t\r");
    lines.push_back(raw.substr(a, b - a + 1));
    line_no.push_back(ln);
  }
  return lines;
}

}  // namespace

ModuleHeader module_file_header(const std::string& text) {
  std::vector<int> line_no;
  auto lines = logical_lines(text, line_no);
  ModuleHeader h;
  bool saw_algebra = false, saw_over = false;
  for (size_t i = 0; i < lines.size() && (!saw_algebra || !saw_over); ++i) {
    std::istringstream ls(lines[i]);
    std::string key, eq, val;
    ls >> key >> eq;
    if (key == "algebra" && eq == "=") {
      std::getline(ls, val);
      size_t a = val.find_first_not_of(" \t");
      if (a == std::string::npos) throw ParseError("empty algebra name", line_no[i], 1);
      h.algebra = val.substr(a);
      saw_algebra = true;
    } else if (key == "over" && eq == "=") {
      ls >> val;
      if (val == "B!")
        h.over_c = false;
      else if (val == "C!")
        h.over_c = true;
      else
        throw ParseError("over must be B! or C!", line_no[i], 1);
      saw_over = true;
    }
  }
  if (!saw_algebra) throw ParseError("missing 'algebra =' header line");
  if (!saw_over) throw ParseError("missing 'over =' header line");
  return h;
}

GradedModule parse_module(const std::string& text, const ShriekHandle& a) {
  ModuleHeader h = module_file_header(text);
  if (h.over_c != a->c_slice)
    throw ParseError(std::string("module is declared over ") + (h.over_c ? "C!" : "B!") +
                     " but the algebra handle does not match");
  std::vector<int> line_no;
  auto lines = logical_lines(text, line_no);

  std::map<int, int> dim_of;
  struct ActLine {
    int g, d, line;
    std::string rhs;
  };
  std::vector<ActLine> acts;
  bool dims_done = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::istringstream ls(lines[i]);
    std::string key;
    ls >> key;
    if (key == "algebra" || key == "over") continue;
    if (key == "dim") {
      if (dims_done) throw ParseError("dim lines must precede act lines", line_no[i], 1);
      int d, m;
      std::string eq;
      if (!(ls >> d >> eq >> m) || eq != "=")
        throw ParseError("expected 'dim <degree> = <count>'", line_no[i], 1);
      if (m < 0) throw ParseError("negative dimension", line_no[i], 1);
      if (dim_of.count(d)) throw ParseError("duplicate dim line for degree " + std::to_string(d),
                                            line_no[i], 1);
      dim_of[d] = m;
    } else if (key == "act") {
      dims_done = true;
      std::string name, eq;
      int d;
      if (!(ls >> name >> d >> eq) || eq != "=")
        throw ParseError("expected 'act <letter> <degree> = [[...]]'", line_no[i], 1);
      int g = -1;
      for (int t = 0; t < a->letters; ++t)
        if (a->letter_names[t] == name) g = t;
      if (g < 0) throw ParseError("unknown letter '" + name + "'", line_no[i], 1);
      std::string rhs;
      std::getline(ls, rhs);
      acts.push_back({g, d, line_no[i], rhs});
    } else {
      throw ParseError("unknown directive '" + key + "'", line_no[i], 1);
    }
  }

  GradedModule m;
  m.algebra = a;
  if (dim_of.empty()) {
    if (!acts.empty())
      throw ParseError("act line without any dim lines", acts.front().line, 1);
    m.act.assign(a->letters, {});
    return m;
  }
  m.lo = dim_of.begin()->first;
  int hi = dim_of.rbegin()->first;
  m.dims.assign(hi - m.lo + 1, 0);
  for (auto [d, k] : dim_of) m.dims[d - m.lo] = k;
  m.act.assign(a->letters, {});
  for (int g = 0; g < a->letters; ++g) {
    m.act[g].reserve(m.dims.size());
    for (int d = m.lo; d <= hi; ++d)
      m.act[g].push_back(Matrix(m.dim_at(d + 1), m.dim_at(d), a->field));
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& al : acts) {
    if (!seen.insert({al.g, al.d}).second)
      throw ParseError("duplicate act line for " + a->letter_names[al.g] + " at degree " +
                       std::to_string(al.d), al.line, 1);
    int rows = m.dim_at(al.d + 1), cols = m.dim_at(al.d);
    if (rows == 0 || cols == 0)
      throw ParseError("act line touches a zero-dimensional component; omit it", al.line, 1);
    ModScanner sc(al.rhs);
    sc.line = al.line;
    Matrix mat = parse_matrix(sc, a->field, rows, cols, al.line);
    m.act[al.g][al.d - m.lo] = std::move(mat);
  }
  return m;
}

std::string print_module(const GradedModule& m, const std::string& algebra_name) {
  std::ostringstream out;
  out << "algebra = " << algebra_name << "\n";
  out << "over = " << (m.algebra && m.algebra->c_slice ? "C!" : "B!") << "\n";
  for (size_t i = 0; i < m.dims.size(); ++i)
    out << "dim " << m.lo + static_cast<int>(i) << " = " << m.dims[i] << "\n";
  if (!m.algebra) return out.str();
  for (int g = 0; g < m.algebra->letters; ++g)
    for (size_t i = 0; i < m.dims.size(); ++i) {
      const Matrix& mat = m.act[g][i];
      if (mat.rows() == 0 || mat.cols() == 0 || mat.is_zero()) continue;
      out << "act " << m.algebra->letter_names[g] << " " << m.lo + static_cast<int>(i) << " = [";
      for (int r = 0; r < mat.rows(); ++r) {
        if (r) out << ",";
        out << "[";
        for (int c = 0; c < mat.cols(); ++c) {
          if (c) out << ",";
          out << mat.at(r, c).str();
        }
        out << "]";
      }
      out << "]\n";
    }
  return out.str();
}

}  // namespace galg
