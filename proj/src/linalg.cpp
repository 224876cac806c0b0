#include "galg/linalg.hpp"

#include <algorithm>
#include <map>

namespace galg {

Matrix Matrix::identity(int n, const Field& f) {
  Matrix m(n, n, f);
  for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix shape mismatch in product");
  Matrix r(rows_, o.cols_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) = r.at(i, j) + a * b;
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch in sum");
  Matrix r(rows_, cols_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j) + o.at(i, j);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(-field_.one()); }

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r(rows_, cols_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j) * s;
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_) return false;
  for (size_t i = 0; i < data_.size(); ++i)
    if (data_[i] != o.data_[i]) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw Error("matrix/vector shape mismatch");
  std::vector<Scalar> r(rows_, field_.zero());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] = r[i] + at(i, j) * v[j];
  return r;
}

Matrix Matrix::columns(const std::vector<int>& idx) const {
  Matrix r(rows_, static_cast<int>(idx.size()), field_);
  for (int j = 0; j < static_cast<int>(idx.size()); ++j)
    for (int i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
  return r;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error("hcat shape mismatch");
  Matrix r(a.rows(), a.cols() + b.cols(), a.field());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
  }
  return r;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error("vcat shape mismatch");
  Matrix r(a.rows() + b.rows(), a.cols(), a.field());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
  return r;
}

RrefResult rref_in_place(Matrix& m) {
  RrefResult res;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!m.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
    Scalar inv = m.at(row, col).inv();
    for (int j = col; j < m.cols(); ++j) m.at(row, j) = m.at(row, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col);
      for (int j = col; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(row, j);
    }
    res.pivot_cols.push_back(col);
    ++row;
  }
  res.rank = row;
  return res;
}

int rank_of(Matrix m) { return rref_in_place(m).rank; }

Matrix kernel_basis(const Matrix& m) {
  Matrix r = m;
  RrefResult rr = rref_in_place(r);
  std::vector<int> free_cols;
  {
    size_t p = 0;
    for (int c = 0; c < m.cols(); ++c) {
      if (p < rr.pivot_cols.size() && rr.pivot_cols[p] == c)
        ++p;
      else
        free_cols.push_back(c);
    }
  }
  Matrix k(m.cols(), static_cast<int>(free_cols.size()), m.field());
  for (int j = 0; j < static_cast<int>(free_cols.size()); ++j) {
    int fc = free_cols[j];
    k.at(fc, j) = m.field().one();
    for (int i = 0; i < rr.rank; ++i) k.at(rr.pivot_cols[i], j) = -r.at(i, fc);
  }
  return k;
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs) {
  if (m.rows() != rhs.rows()) throw Error("solve shape mismatch");
  Matrix aug = Matrix::hcat(m, rhs);
  RrefResult rr = rref_in_place(aug);
  // Inconsistent iff a pivot lands in the rhs block.
  for (int c : rr.pivot_cols)
    if (c >= m.cols()) return std::nullopt;
  Matrix x(m.cols(), rhs.cols(), m.field());
  for (int i = 0; i < static_cast<int>(rr.pivot_cols.size()); ++i)
    for (int j = 0; j < rhs.cols(); ++j) x.at(rr.pivot_cols[i], j) = aug.at(i, m.cols() + j);
  return x;
}

std::optional<std::vector<Scalar>> solve_vec(const Matrix& m, const std::vector<Scalar>& rhs) {
  Matrix r(m.rows(), 1, m.field());
  for (int i = 0; i < m.rows(); ++i) r.at(i, 0) = rhs[i];
  auto x = solve(m, r);
  if (!x) return std::nullopt;
  std::vector<Scalar> v(m.cols(), m.field().zero());
  for (int i = 0; i < m.cols(); ++i) v[i] = x->at(i, 0);
  return v;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse of non-square matrix");
  auto x = solve(m, Matrix::identity(m.rows(), m.field()));
  if (!x) return std::nullopt;
  // solve() only guarantees a particular solution; full rank makes it unique.
  if (rank_of(m) != m.rows()) return std::nullopt;
  return x;
}

namespace {

void row_axpy(SparseRow& target, const Scalar& coeff, const SparseRow& src) {
  SparseRow out;
  out.reserve(target.size() + src.size());
  size_t a = 0, b = 0;
  while (a < target.size() || b < src.size()) {
    if (b == src.size() || (a < target.size() && target[a].first < src[b].first)) {
      out.push_back(target[a++]);
    } else if (a == target.size() || src[b].first < target[a].first) {
      out.emplace_back(src[b].first, coeff * src[b].second);
      ++b;
    } else {
      Scalar v = target[a].second + coeff * src[b].second;
      if (!v.is_zero()) out.emplace_back(target[a].first, v);
      ++a;
      ++b;
    }
  }
  // Drop zeros that slipped in via coeff * 0 cancellation.
  SparseRow clean;
  clean.reserve(out.size());
  for (auto& e : out)
    if (!e.second.is_zero()) clean.push_back(std::move(e));
  target = std::move(clean);
}

}  // namespace

SparseRref sparse_rref(std::vector<SparseRow> input, int ncols) {
  std::map<int, SparseRow> by_pivot;
  for (auto& row : input) {
    SparseRow cur = std::move(row);
    // Clear every entry sitting on an existing pivot column, not just the
    // leading one; pivot rows are fully reduced, so each step only shrinks
    // the pivot-column support of cur.
    for (bool again = true; again && !cur.empty();) {
      again = false;
      for (const auto& [c, s] : cur) {
        auto it = by_pivot.find(c);
        if (it == by_pivot.end()) continue;
        row_axpy(cur, -s, it->second);
        again = true;
        break;
      }
    }
    if (cur.empty()) continue;
    Scalar inv = cur.front().second.inv();
    for (auto& e : cur) e.second = e.second * inv;
    int lead = cur.front().first;
    // Clear the new pivot column from existing rows to keep full reduction.
    for (auto& [pc, prow] : by_pivot) {
      (void)pc;
      auto hit = std::lower_bound(prow.begin(), prow.end(), lead,
                                  [](const auto& e, int c) { return e.first < c; });
      if (hit != prow.end() && hit->first == lead) row_axpy(prow, -hit->second, cur);
    }
    by_pivot.emplace(lead, std::move(cur));
  }
  SparseRref res;
  for (auto& [pc, prow] : by_pivot) {
    res.pivot_cols.push_back(pc);
    res.rows.push_back(std::move(prow));
  }
  (void)ncols;
  return res;
}

std::string matrix_literal(const Matrix& m) {
  std::string s = "[";
  for (int r = 0; r < m.rows(); ++r) {
    if (r) s += ",";
    s += "[";
    for (int c = 0; c < m.cols(); ++c) {
      if (c) s += ",";
      s += m.at(r, c).str();
    }
    s += "]";
  }
  s += "]";
  return s;
}

std::vector<std::vector<Scalar>> sparse_kernel_basis(const SparseRref& r, int ncols,
                                                     const Field& f) {
  std::vector<bool> is_pivot(ncols, false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int fc = 0; fc < ncols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Scalar> v(ncols, f.zero());
    v[fc] = f.one();
    for (size_t i = 0; i < r.rows.size(); ++i) {
      const SparseRow& row = r.rows[i];
      auto hit = std::lower_bound(row.begin(), row.end(), fc,
                                  [](const auto& e, int c) { return e.first < c; });
      if (hit != row.end() && hit->first == fc) v[r.pivot_cols[i]] = -hit->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace galg
