#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "galg/field.hpp"

namespace galg {

// Dense matrix over one field. Sized 0xN / Nx0 matrices are legal and keep
// their field so shape algebra stays total.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0), field_(Field::rationals()) {}
  Matrix(int rows, int cols, const Field& f)
      : rows_(rows), cols_(cols), field_(f), data_(static_cast<size_t>(rows) * cols, f.zero()) {}

  static Matrix identity(int n, const Field& f);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const Scalar& at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;  // this * v
  Matrix columns(const std::vector<int>& idx) const;
  // Glue blocks: [A | B] and [A ; B].
  static Matrix hcat(const Matrix& a, const Matrix& b);
  static Matrix vcat(const Matrix& a, const Matrix& b);

 private:
  int rows_, cols_;
  Field field_;
  std::vector<Scalar> data_;
};

struct RrefResult {
  int rank = 0;
  std::vector<int> pivot_cols;
};

// In-place reduced row echelon form; pivots scan columns left to right.
RrefResult rref_in_place(Matrix& m);
int rank_of(Matrix m);
// Columns of the result form a basis of {x : m x = 0}.
Matrix kernel_basis(const Matrix& m);
// Solves m x = rhs (all columns); nullopt when inconsistent.
std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs);
std::optional<std::vector<Scalar>> solve_vec(const Matrix& m, const std::vector<Scalar>& rhs);
std::optional<Matrix> inverse(const Matrix& m);

// Sparse elimination kernel for large homogeneous systems. Rows hold sorted
// (column, value) pairs with nonzero values.
using SparseRow = std::vector<std::pair<int, Scalar>>;

struct SparseRref {
  // Fully reduced rows, sorted by pivot column; row front is the pivot entry
  // normalized to 1.
  std::vector<SparseRow> rows;
  std::vector<int> pivot_cols;  // same order as rows
};

// Row-major bracket literal, e.g. [[1,0],[0,1]]; the module-file format.
std::string matrix_literal(const Matrix& m);

SparseRref sparse_rref(std::vector<SparseRow> input, int ncols);
// Kernel basis of the row space viewed as a linear system (rows are
// equations over ncols unknowns); dense output vectors.
std::vector<std::vector<Scalar>> sparse_kernel_basis(const SparseRref& r, int ncols, const Field& f);

}  // namespace galg
