#pragma once

#include <optional>
#include <vector>

#include "convcode/field.hpp"

namespace convcode {

/// Dense matrix over a prime field, row-major.
class Matrix {
 public:
  /// Zero matrix of the given shape.
  Matrix(int rows, int cols, const PrimeField& field);

  static Matrix identity(int n, const PrimeField& field);
  /// Square matrix with d on the diagonal; d must be nonempty.
  static Matrix diagonal(const std::vector<FieldElem>& d);
  /// All rows must have equal length and share one field.
  static Matrix from_rows(const std::vector<std::vector<FieldElem>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }

  FieldElem& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const FieldElem& at(int i, int j) const {
    return e_[static_cast<std::size_t>(i) * cols_ + j];
  }

  std::vector<FieldElem> row(int i) const;
  std::vector<FieldElem> col(int j) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_;
  int cols_;
  std::uint32_t p_;
  std::vector<FieldElem> e_;
};

/// Throws DimensionError unless inner dimensions agree.
Matrix operator*(const Matrix& a, const Matrix& b);

/// Matrix-vector product a * v.
std::vector<FieldElem> mat_vec(const Matrix& a, const std::vector<FieldElem>& v);

/// Vector-matrix product v * a (v as a row vector).
std::vector<FieldElem> vec_mat(const std::vector<FieldElem>& v, const Matrix& a);

/// Exact inverse by Gauss-Jordan elimination.  Throws SingularMatrixError
/// if the matrix is not square or not invertible.
Matrix mat_inverse(const Matrix& a);

/// Rank by Gaussian elimination.
int mat_rank(const Matrix& a);

/// Solves a * x = b if a solution exists; nullopt if the system is
/// inconsistent.  Underdetermined systems return one solution with free
/// variables set to zero.
std::optional<std::vector<FieldElem>> mat_solve(const Matrix& a,
                                                const std::vector<FieldElem>& b);

/// Expresses v as a linear combination of the basis vectors, returning the
/// coefficients in basis order, or nullopt if v lies outside their span.
std::optional<std::vector<FieldElem>> in_span(
    const std::vector<FieldElem>& v,
    const std::vector<std::vector<FieldElem>>& basis);

}  // namespace convcode
