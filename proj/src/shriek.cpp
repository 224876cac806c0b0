#include "galg/shriek.hpp"

#include <algorithm>
#include <sstream>

namespace galg {

namespace {

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long pow_long(int base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

long word_value(const DWord& w, int L) {
  long v = 0;
  for (int letter : w) v = v * L + letter;
  return v;
}

DWord value_word(long v, int L, int len) {
  DWord w(len, 0);
  for (int i = len - 1; i >= 0; --i) {
    w[i] = static_cast<int>(v % L);
    v /= L;
  }
  return w;
}

// Column order realizes "greatest word first" so that the surviving
// (non-pivot) words are the lexicographically least ones.
long col_of_value(long v, long max_value) { return max_value - v; }

// Per-degree reduction context: fully reduced relation rows in column space
// plus the survivor labeling.
struct Ctx {
  long max_value = 0;
  std::vector<SparseRow> rows;
  std::map<long, int> pivot_row;      // col -> row index
  std::map<long, int> survivor_coord; // col -> basis index
  std::vector<DWord> basis;
};

Ctx make_ctx(std::vector<SparseRow> rows, int L, int degree, const Field& f) {
  Ctx ctx;
  ctx.max_value = pow_long(L, degree) - 1;
  SparseRref rr = sparse_rref(std::move(rows), static_cast<int>(ctx.max_value) + 1);
  ctx.rows = std::move(rr.rows);
  for (size_t i = 0; i < rr.pivot_cols.size(); ++i) ctx.pivot_row[rr.pivot_cols[i]] = static_cast<int>(i);
  std::vector<long> survivor_values;
  for (long col = 0; col <= ctx.max_value; ++col)
    if (!ctx.pivot_row.count(col)) survivor_values.push_back(ctx.max_value - col);
  std::sort(survivor_values.begin(), survivor_values.end());
  for (size_t i = 0; i < survivor_values.size(); ++i) {
    ctx.basis.push_back(value_word(survivor_values[i], L, degree));
    ctx.survivor_coord[ctx.max_value - survivor_values[i]] = static_cast<int>(i);
  }
  (void)f;
  return ctx;
}

// Coordinates of a word's class over the survivor basis.
std::vector<Scalar> reduce_value(const Ctx& ctx, long v, const Field& f) {
  std::vector<Scalar> coords(ctx.basis.size(), f.zero());
  long col = col_of_value(v, ctx.max_value);
  auto piv = ctx.pivot_row.find(col);
  if (piv == ctx.pivot_row.end()) {
    coords[ctx.survivor_coord.at(col)] = f.one();
    return coords;
  }
  const SparseRow& row = ctx.rows[piv->second];
  for (const auto& [c, s] : row) {
    if (c == col) continue;
    coords[ctx.survivor_coord.at(c)] = coords[ctx.survivor_coord.at(c)] - s;
  }
  return coords;
}

}  // namespace

int ShriekAlgebra::basis_index(int degree, const DWord& w) const {
  if (degree < 0 || degree > top) return -1;
  const auto& bs = basis[degree];
  auto it = std::lower_bound(bs.begin(), bs.end(), w);
  if (it != bs.end() && *it == w) return static_cast<int>(it - bs.begin());
  return -1;
}

std::string ShriekAlgebra::word_name(const DWord& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += letter_names.at(w[i]);
  }
  return s;
}

ShriekElement ShriekAlgebra::zero_element(int degree) const {
  return {degree, std::vector<Scalar>(dim(degree), field.zero())};
}

ShriekElement ShriekAlgebra::basis_element(int degree, int index) const {
  ShriekElement e = zero_element(degree);
  e.coords.at(index) = field.one();
  return e;
}

ShriekHandle build_shriek(const GPresentation& p, const RewriteOptions& opts) {
  if (p.flavor != GPresentation::Flavor::homogenized)
    throw FlavorError("build_shriek expects a homogenized presentation");
  ConfluenceReport conf = certify_confluence(std::make_shared<const GPresentation>(p), opts);
  if (!conf.certified) {
    std::ostringstream msg;
    msg << "presentation not certified: " << conf.failures.size() << " failing overlap(s)";
    throw ConfluenceError(msg.str());
  }

  const Field& f = p.field;
  int n = p.n;
  int L = n + 1;

  auto alg = std::make_shared<ShriekAlgebra>();
  alg->field = f;
  alg->c_slice = false;
  alg->n = n;
  alg->letters = L;
  alg->top = L;
  alg->letter_names = p.gen_names;
  alg->letter_names.push_back("Z");

  // Relation space of the primal algebra inside V (x) V; dual letters i-1
  // stand for X_i and n stands for Z. The homogenized relation is
  // X_i X_j - b X_j X_i + sum_k c Z X_k + d Z^2, plus centrality of Z.
  std::vector<std::vector<Scalar>> rel_rows;
  auto pair_value = [L](int u, int v) { return u * L + v; };
  for (int i = 2; i <= n; ++i)
    for (int j = 1; j < i; ++j) {
      std::vector<Scalar> row(L * L, f.zero());
      row[pair_value(i - 1, j - 1)] = f.one();
      row[pair_value(j - 1, i - 1)] = -p.b_at(i, j);
      for (int k = 1; k <= n; ++k) {
        Scalar ck = p.c_at(i, j, k);
        if (!ck.is_zero()) row[pair_value(n, k - 1)] = row[pair_value(n, k - 1)] + ck;
      }
      Scalar dk = p.d_at(i, j);
      if (!dk.is_zero()) row[pair_value(n, n)] = row[pair_value(n, n)] + dk;
      rel_rows.push_back(std::move(row));
    }
  for (int i = 1; i <= n; ++i) {
    std::vector<Scalar> row(L * L, f.zero());
    row[pair_value(i - 1, n)] = f.one();
    row[pair_value(n, i - 1)] = -f.one();
    rel_rows.push_back(std::move(row));
  }

  Matrix rel(static_cast<int>(rel_rows.size()), L * L, f);
  for (size_t i = 0; i < rel_rows.size(); ++i)
    for (int j = 0; j < L * L; ++j) rel.at(static_cast<int>(i), j) = rel_rows[i][j];
  int rel_rank = rank_of(rel);
  Matrix perp = kernel_basis(rel);  // columns span the dual relation space
  if (rel_rank + perp.cols() != L * L)
    throw Error("relation space dimensions inconsistent");

  // Graded pieces of the two-sided ideal: I_2 is the dual relation space,
  // I_d = I_2 (x) W^(d-2) + V* (x) I_{d-1}.
  std::vector<Ctx> ctx(L + 2);
  ctx[0].max_value = 0;
  ctx[0].basis = {DWord{}};
  ctx[0].survivor_coord[0] = 0;
  ctx[1] = make_ctx({}, L, 1, f);

  std::vector<SparseRow> i2_rows;
  long max2 = L * L - 1;
  for (int j = 0; j < perp.cols(); ++j) {
    SparseRow row;
    for (int v = 0; v < L * L; ++v)
      if (!perp.at(v, j).is_zero())
        row.emplace_back(static_cast<int>(col_of_value(v, max2)), perp.at(v, j));
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    i2_rows.push_back(std::move(row));
  }
  ctx[2] = make_ctx(std::move(i2_rows), L, 2, f);

  for (int d = 3; d <= L + 1; ++d) {
    long maxd = pow_long(L, d) - 1;
    long max_prev = pow_long(L, d - 1) - 1;
    std::vector<SparseRow> rows;
    long suffixes = pow_long(L, d - 2);
    for (const SparseRow& r2 : ctx[2].rows)
      for (long w = 0; w < suffixes; ++w) {
        SparseRow row;
        row.reserve(r2.size());
        for (const auto& [c2, s] : r2) {
          long v2 = max2 - c2;
          long v = v2 * suffixes + w;
          row.emplace_back(static_cast<int>(col_of_value(v, maxd)), s);
        }
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        rows.push_back(std::move(row));
      }
    long block = pow_long(L, d - 1);
    for (int g = 0; g < L; ++g)
      for (const SparseRow& rp : ctx[d - 1].rows) {
        SparseRow row;
        row.reserve(rp.size());
        for (const auto& [cp, s] : rp) {
          long vp = max_prev - cp;
          long v = static_cast<long>(g) * block + vp;
          row.emplace_back(static_cast<int>(col_of_value(v, maxd)), s);
        }
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        rows.push_back(std::move(row));
      }
    ctx[d] = make_ctx(std::move(rows), L, d, f);
  }

  for (int d = 0; d <= L; ++d) {
    long expect = binom(n, d) + binom(n, d - 1);
    if (static_cast<long>(ctx[d].basis.size()) != expect)
      throw Error("graded dimension mismatch at degree " + std::to_string(d) + ": got " +
                  std::to_string(ctx[d].basis.size()) + ", expected " + std::to_string(expect));
  }
  if (!ctx[L + 1].basis.empty())
    throw Error("graded dimension mismatch at degree " + std::to_string(L + 1) +
                ": expected 0");

  alg->basis.resize(L + 1);
  for (int d = 0; d <= L; ++d) alg->basis[d] = ctx[d].basis;

  // Socle label: the increasing word x_1 x_2 ... x_n z.
  {
    DWord expect(L);
    for (int i = 0; i < L; ++i) expect[i] = i;
    if (alg->basis[L].size() != 1 || alg->basis[L][0] != expect)
      throw Error("socle label is not the increasing word");
  }

  auto reduce_concat = [&](const DWord& a, const DWord& b) {
    int d = static_cast<int>(a.size() + b.size());
    long v = word_value(a, L) * pow_long(L, static_cast<int>(b.size())) + word_value(b, L);
    return reduce_value(ctx[d], v, f);
  };

  alg->lmul.assign(L, {});
  for (int g = 0; g < L; ++g) {
    alg->lmul[g].resize(L + 1);
    for (int d = 0; d < L; ++d) {
      Matrix m(alg->dim(d + 1), alg->dim(d), f);
      for (int j = 0; j < alg->dim(d); ++j) {
        auto coords = reduce_concat({g}, alg->basis[d][j]);
        for (int i = 0; i < alg->dim(d + 1); ++i) m.at(i, j) = coords[i];
      }
      alg->lmul[g][d] = std::move(m);
    }
    alg->lmul[g][L] = Matrix(0, alg->dim(L), f);
  }

  for (const SparseRow& r2 : ctx[2].rows) {
    std::vector<std::pair<std::pair<int, int>, Scalar>> rel2;
    for (const auto& [c, s] : r2) {
      long v = max2 - c;
      rel2.emplace_back(std::make_pair(static_cast<int>(v / L), static_cast<int>(v % L)), s);
    }
    alg->relations2.push_back(std::move(rel2));
  }

  // z-free / trailing-z split per degree.
  alg->zfree.resize(L + 1);
  alg->ztail.resize(L + 1);
  for (int d = 0; d <= L; ++d) {
    for (int i = 0; i < alg->dim(d); ++i) {
      const DWord& w = alg->basis[d][i];
      int zcount = static_cast<int>(std::count(w.begin(), w.end(), n));
      if (zcount == 0) {
        alg->zfree[d].push_back(i);
      } else {
        if (zcount != 1 || w.back() != n)
          throw Error("basis word with interior z at degree " + std::to_string(d));
        alg->ztail[d].push_back(i);
      }
    }
    if (static_cast<long>(alg->zfree[d].size()) != binom(n, d))
      throw Error("z-free dimension mismatch at degree " + std::to_string(d));
    if (static_cast<long>(alg->ztail[d].size()) != binom(n, d - 1))
      throw Error("z-tail dimension mismatch at degree " + std::to_string(d));
  }

  // The z-free span must be multiplicatively closed.
  for (int d1 = 0; d1 <= n; ++d1)
    for (int d2 = 0; d1 + d2 <= n; ++d2)
      for (int i : alg->zfree[d1])
        for (int j : alg->zfree[d2]) {
          auto coords = reduce_concat(alg->basis[d1][i], alg->basis[d2][j]);
          for (int t : alg->ztail[d1 + d2])
            if (!coords[t].is_zero())
              throw Error("z-free span not closed under multiplication");
        }

  // Change of basis [z-free | z * z-free] must be invertible in every degree,
  // realizing the splitting into the subalgebra and its z-translate.
  std::vector<Matrix> zfront_inv(L + 1);
  for (int d = 1; d <= L; ++d) {
    int dim = alg->dim(d);
    Matrix m(dim, dim, f);
    int col = 0;
    for (int i : alg->zfree[d]) m.at(i, col++) = f.one();
    for (int j : alg->zfree[d - 1]) {
      DWord zw{n};
      auto coords = reduce_concat(zw, alg->basis[d - 1][j]);
      for (int i = 0; i < dim; ++i) m.at(i, col) = coords[i];
      ++col;
    }
    auto inv = inverse(m);
    if (!inv) throw Error("z-front change of basis singular at degree " + std::to_string(d));
    zfront_inv[d] = *inv;
  }

  // Decompose g * z = c0 + z * c1 with z-free parts (degree-2 solve).
  alg->gz_c0.assign(L, {});
  alg->gz_c1.assign(L, {});
  for (int g = 0; g < L; ++g) {
    auto coords = reduce_concat({g}, {n});
    std::vector<Scalar> mixed(alg->dim(2), f.zero());
    for (int i = 0; i < alg->dim(2); ++i) mixed[i] = coords[i];
    auto split = zfront_inv[2].apply(mixed);
    size_t nfree = alg->zfree[2].size();
    alg->gz_c0[g].assign(split.begin(), split.begin() + nfree);
    alg->gz_c1[g].assign(split.begin() + nfree, split.end());
  }

  std::ostringstream fp;
  fp << "B!:" << f.describe() << ":n=" << n << ":gens";
  for (const auto& name : alg->letter_names) fp << ":" << name;
  fp << ":rel";
  for (const auto& row : alg->relations2) {
    fp << "|";
    for (const auto& [uv, s] : row) fp << uv.first << "," << uv.second << "=" << s.str() << ";";
  }
  alg->fingerprint = fp.str();
  return alg;
}

ShriekHandle c_subalgebra(const ShriekHandle& b) {
  if (b->c_slice) throw Error("already a C-slice");
  const ShriekAlgebra& B = *b;
  auto alg = std::make_shared<ShriekAlgebra>();
  alg->field = B.field;
  alg->c_slice = true;
  alg->n = B.n;
  alg->letters = B.n;
  alg->top = B.n;
  alg->letter_names.assign(B.letter_names.begin(), B.letter_names.end() - 1);

  alg->basis.resize(alg->top + 1);
  // Parent index -> slice index per degree.
  std::vector<std::map<int, int>> slice_of(B.top + 1);
  for (int d = 0; d <= alg->top; ++d) {
    for (int i : B.zfree[d]) {
      slice_of[d][i] = static_cast<int>(alg->basis[d].size());
      alg->basis[d].push_back(B.basis[d][i]);
    }
  }

  alg->lmul.assign(alg->letters, {});
  for (int g = 0; g < alg->letters; ++g) {
    alg->lmul[g].resize(alg->top + 1);
    for (int d = 0; d < alg->top; ++d) {
      Matrix m(alg->dim(d + 1), alg->dim(d), B.field);
      for (int j = 0; j < alg->dim(d); ++j) {
        int pj = B.zfree[d][j];
        for (int i = 0; i < alg->dim(d + 1); ++i)
          m.at(i, j) = B.lmul[g][d].at(B.zfree[d + 1][i], pj);
        // Certified at build: parent product has no z-tail support.
        for (int t : B.ztail[d + 1])
          if (!B.lmul[g][d].at(t, pj).is_zero()) throw Error("slice closure violated");
      }
      alg->lmul[g][d] = std::move(m);
    }
    alg->lmul[g][alg->top] = Matrix(0, alg->dim(alg->top), B.field);
  }

  for (const auto& row : B.relations2) {
    bool zf = true;
    for (const auto& [uv, s] : row)
      if (uv.first >= B.n || uv.second >= B.n) {
        zf = false;
        break;
      }
    if (zf) alg->relations2.push_back(row);
  }
  if (static_cast<long>(alg->relations2.size()) != static_cast<long>(B.n) * (B.n + 1) / 2)
    throw Error("z-free relation count mismatch");

  alg->fingerprint = B.fingerprint + "/C";
  return alg;
}

ShriekElement shriek_add(const ShriekAlgebra& a, const ShriekElement& u, const ShriekElement& v) {
  if (u.degree != v.degree) throw Error("sum of elements in different degrees");
  ShriekElement r = u;
  for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = r.coords[i] + v.coords[i];
  (void)a;
  return r;
}

ShriekElement shriek_mul(const ShriekAlgebra& a, const ShriekElement& u, const ShriekElement& v) {
  if (static_cast<int>(u.coords.size()) != a.dim(u.degree) ||
      static_cast<int>(v.coords.size()) != a.dim(v.degree))
    throw Error("element coordinates do not match the algebra");
  int d = u.degree + v.degree;
  ShriekElement out = a.zero_element(d);
  if (d > a.top) return out;
  for (int i = 0; i < a.dim(u.degree); ++i) {
    if (u.coords[i].is_zero()) continue;
    const DWord& w = a.basis[u.degree][i];
    std::vector<Scalar> vec = v.coords;
    int deg = v.degree;
    for (int t = static_cast<int>(w.size()) - 1; t >= 0; --t) {
      vec = a.lmul[w[t]][deg].apply(vec);
      ++deg;
    }
    for (size_t t = 0; t < vec.size(); ++t) out.coords[t] = out.coords[t] + u.coords[i] * vec[t];
  }
  return out;
}

std::string relation_string(const ShriekAlgebra& a,
                            const std::vector<std::pair<std::pair<int, int>, Scalar>>& row) {
  std::string out;
  bool first = true;
  for (const auto& [uv, coeff] : row) {
    std::string cs = coeff.str();
    bool neg = !cs.empty() && cs[0] == '-';
    std::string mag = neg ? cs.substr(1) : cs;
    std::string name = a.letter_names.at(uv.first) + "*" + a.letter_names.at(uv.second);
    std::string term = mag == "1" ? name : mag + "*" + name;
    if (first) {
      out = neg ? "-" + term : term;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

Scalar socle_pairing(const ShriekAlgebra& a, const ShriekElement& u, const ShriekElement& v) {
  if (u.degree + v.degree != a.top)
    throw Error("socle pairing needs complementary degrees (" + std::to_string(u.degree) + " + " +
                std::to_string(v.degree) + " != " + std::to_string(a.top) + ")");
  ShriekElement p = shriek_mul(a, u, v);
  return p.coords.at(0);
}

std::pair<ShriekElement, ShriekElement> c_sub_projection(const ShriekAlgebra& a,
                                                         const ShriekElement& u) {
  if (a.c_slice) throw Error("c_sub_projection needs the full algebra");
  ShriekElement cp = a.zero_element(u.degree);
  ShriekElement zp = a.zero_element(u.degree);
  for (int i : a.zfree[u.degree]) cp.coords[i] = u.coords[i];
  for (int i : a.ztail[u.degree]) zp.coords[i] = u.coords[i];
  return {cp, zp};
}

namespace {

void certify_map(const ShriekAlgebra& a, NakayamaMap& s) {
  const Field& f = a.field;
  s.is_automorphism = true;
  s.preserves_c_sub = true;
  s.z_scaling = true;
  for (int d = 0; d <= a.top; ++d)
    if (rank_of(s.sigma[d]) != a.dim(d)) s.is_automorphism = false;
  auto apply = [&](int d, const std::vector<Scalar>& v) { return s.sigma[d].apply(v); };
  for (int d1 = 0; d1 <= a.top && s.is_automorphism; ++d1)
    for (int d2 = 0; d1 + d2 <= a.top && s.is_automorphism; ++d2)
      for (int i = 0; i < a.dim(d1) && s.is_automorphism; ++i)
        for (int j = 0; j < a.dim(d2); ++j) {
          ShriekElement u = a.basis_element(d1, i);
          ShriekElement v = a.basis_element(d2, j);
          ShriekElement uv = shriek_mul(a, u, v);
          std::vector<Scalar> lhs = apply(d1 + d2, uv.coords);
          ShriekElement su{d1, apply(d1, u.coords)};
          ShriekElement sv{d2, apply(d2, v.coords)};
          std::vector<Scalar> rhs = shriek_mul(a, su, sv).coords;
          if (lhs != rhs) {
            s.is_automorphism = false;
            break;
          }
        }
  if (!a.c_slice) {
    for (int d = 0; d <= a.top && s.preserves_c_sub; ++d)
      for (int i : a.zfree[d]) {
        for (int t : a.ztail[d])
          if (!s.sigma[d].at(t, i).is_zero()) {
            s.preserves_c_sub = false;
            break;
          }
        if (!s.preserves_c_sub) break;
      }
    int zi = a.n;  // letter z sits last in the degree-1 basis
    s.z_scale = s.sigma[1].at(zi, zi);
    for (int h = 0; h < a.dim(1); ++h)
      if (h != zi && !s.sigma[1].at(h, zi).is_zero()) s.z_scaling = false;
    if (s.z_scale.is_zero()) s.z_scaling = false;
  } else {
    s.z_scale = f.one();
  }
}

}  // namespace

NakayamaMap nakayama(const ShriekHandle& a, const Scalar& socle_scale) {
  const ShriekAlgebra& A = *a;
  if (A.c_slice) throw Error("nakayama is defined on the full algebra");
  if (socle_scale.is_zero()) throw Error("socle scale must be nonzero");
  NakayamaMap s;
  s.algebra = a;
  s.z_scale = A.field.one();
  s.sigma.resize(A.top + 1);
  for (int d = 0; d <= A.top; ++d) {
    int dim = A.dim(d);
    int cod = A.dim(A.top - d);
    if (dim != cod) throw NakayamaCertError("socle pairing blocks are not square");
    Matrix gram(dim, cod, A.field);  // beta(u_a, v_b)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < cod; ++j)
        gram.at(i, j) =
            socle_pairing(A, A.basis_element(d, i), A.basis_element(A.top - d, j)) * socle_scale;
    Matrix rhs(cod, dim, A.field);  // beta(v_b, u_c)
    for (int i = 0; i < cod; ++i)
      for (int j = 0; j < dim; ++j)
        rhs.at(i, j) =
            socle_pairing(A, A.basis_element(A.top - d, i), A.basis_element(d, j)) * socle_scale;
    Matrix gt = gram.transpose();
    if (rank_of(gt) != dim)
      throw NakayamaCertError("socle pairing Gram matrix singular at degree " + std::to_string(d));
    auto sol = solve(gt, rhs);
    if (!sol) throw NakayamaCertError("socle pairing system inconsistent at degree " + std::to_string(d));
    s.sigma[d] = *sol;
  }
  certify_map(A, s);
  return s;
}

NakayamaMap nakayama(const ShriekHandle& a) { return nakayama(a, a->field.one()); }

NakayamaMap nakayama_inverse(const NakayamaMap& s) {
  NakayamaMap r;
  r.algebra = s.algebra;
  r.sigma.resize(s.sigma.size());
  for (size_t d = 0; d < s.sigma.size(); ++d) {
    auto inv = inverse(s.sigma[d]);
    if (!inv) throw NakayamaCertError("map not invertible at degree " + std::to_string(d));
    r.sigma[d] = *inv;
  }
  certify_map(*s.algebra, r);
  return r;
}

ShriekElement apply_nakayama(const NakayamaMap& s, const ShriekElement& u) {
  return {u.degree, s.sigma.at(u.degree).apply(u.coords)};
}

}  // namespace galg
