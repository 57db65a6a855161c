#include "convcode/matrix.hpp"

#include <string>

namespace convcode {

Matrix::Matrix(int rows, int cols, const PrimeField& field)
    : rows_(rows), cols_(cols), p_(field.modulus()) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix shape");
  e_.assign(static_cast<std::size_t>(rows) * cols, field.zero());
}

Matrix Matrix::identity(int n, const PrimeField& field) {
  Matrix m(n, n, field);
  for (int i = 0; i < n; ++i) m.at(i, i) = field.one();
  return m;
}

Matrix Matrix::diagonal(const std::vector<FieldElem>& d) {
  if (d.empty()) throw DimensionError("diagonal needs at least one entry");
  PrimeField field(d[0].p);
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()), field);
  for (std::size_t i = 0; i < d.size(); ++i) {
    check_same_field(d[i], d[0]);
    m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
  }
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<FieldElem>>& rows) {
  if (rows.empty() || rows[0].empty()) {
    throw DimensionError("from_rows needs a nonempty row set");
  }
  PrimeField field(rows[0][0].p);
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()),
           field);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) {
      throw DimensionError("ragged rows in from_rows");
    }
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      check_same_field(rows[i][j], rows[0][0]);
      m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
  }
  return m;
}

std::vector<FieldElem> Matrix::row(int i) const {
  std::vector<FieldElem> out(cols_);
  for (int j = 0; j < cols_; ++j) out[j] = at(i, j);
  return out;
}

std::vector<FieldElem> Matrix::col(int j) const {
  std::vector<FieldElem> out(rows_);
  for (int i = 0; i < rows_; ++i) out[i] = at(i, j);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product shape mismatch: " +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
  }
  if (a.modulus() != b.modulus()) throw FieldMismatchError("matrix moduli differ");
  PrimeField field(a.modulus());
  Matrix c(a.rows(), b.cols(), field);
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      FieldElem aik = a.at(i, k);
      if (aik.value == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        c.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return c;
}

std::vector<FieldElem> mat_vec(const Matrix& a, const std::vector<FieldElem>& v) {
  if (static_cast<int>(v.size()) != a.cols()) {
    throw DimensionError("mat_vec length mismatch");
  }
  PrimeField field(a.modulus());
  std::vector<FieldElem> out(a.rows(), field.zero());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out[i] += a.at(i, j) * v[j];
    }
  }
  return out;
}

std::vector<FieldElem> vec_mat(const std::vector<FieldElem>& v, const Matrix& a) {
  if (static_cast<int>(v.size()) != a.rows()) {
    throw DimensionError("vec_mat length mismatch");
  }
  PrimeField field(a.modulus());
  std::vector<FieldElem> out(a.cols(), field.zero());
  for (int i = 0; i < a.rows(); ++i) {
    if (v[i].value == 0) continue;
    for (int j = 0; j < a.cols(); ++j) {
      out[j] += v[i] * a.at(i, j);
    }
  }
  return out;
}

Matrix mat_inverse(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw SingularMatrixError("inverse of a non-square matrix");
  }
  int n = a.rows();
  PrimeField field(a.modulus());
  Matrix work = a;
  Matrix inv = Matrix::identity(n, field);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i) {
      if (work.at(i, col).value != 0) { pivot = i; break; }
    }
    if (pivot < 0) throw SingularMatrixError("singular matrix");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(work.at(pivot, j), work.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    }
    FieldElem scale = ff_inv(work.at(col, col));
    for (int j = 0; j < n; ++j) {
      work.at(col, j) *= scale;
      inv.at(col, j) *= scale;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || work.at(i, col).value == 0) continue;
      FieldElem f = work.at(i, col);
      for (int j = 0; j < n; ++j) {
        work.at(i, j) -= f * work.at(col, j);
        inv.at(i, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

int mat_rank(const Matrix& a) {
  Matrix work = a;
  int rank = 0;
  for (int col = 0; col < work.cols() && rank < work.rows(); ++col) {
    int pivot = -1;
    for (int i = rank; i < work.rows(); ++i) {
      if (work.at(i, col).value != 0) { pivot = i; break; }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = 0; j < work.cols(); ++j) {
        std::swap(work.at(pivot, j), work.at(rank, j));
      }
    }
    FieldElem scale = ff_inv(work.at(rank, col));
    for (int j = col; j < work.cols(); ++j) work.at(rank, j) *= scale;
    for (int i = 0; i < work.rows(); ++i) {
      if (i == rank || work.at(i, col).value == 0) continue;
      FieldElem f = work.at(i, col);
      for (int j = col; j < work.cols(); ++j) {
        work.at(i, j) -= f * work.at(rank, j);
      }
    }
    ++rank;
  }
  return rank;
}

std::optional<std::vector<FieldElem>> mat_solve(
    const Matrix& a, const std::vector<FieldElem>& b) {
  if (static_cast<int>(b.size()) != a.rows()) {
    throw DimensionError("mat_solve right-hand side length mismatch");
  }
  PrimeField field(a.modulus());
  // Augmented [a | b] reduced to row echelon form.
  Matrix work(a.rows(), a.cols() + 1, field);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) work.at(i, j) = a.at(i, j);
    check_same_field(b[i], field.zero());
    work.at(i, a.cols()) = b[i];
  }
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < a.cols() && rank < work.rows(); ++col) {
    int pivot = -1;
    for (int i = rank; i < work.rows(); ++i) {
      if (work.at(i, col).value != 0) { pivot = i; break; }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = 0; j <= a.cols(); ++j) {
        std::swap(work.at(pivot, j), work.at(rank, j));
      }
    }
    FieldElem scale = ff_inv(work.at(rank, col));
    for (int j = col; j <= a.cols(); ++j) work.at(rank, j) *= scale;
    for (int i = 0; i < work.rows(); ++i) {
      if (i == rank || work.at(i, col).value == 0) continue;
      FieldElem f = work.at(i, col);
      for (int j = col; j <= a.cols(); ++j) {
        work.at(i, j) -= f * work.at(rank, j);
      }
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int i = rank; i < work.rows(); ++i) {
    if (work.at(i, a.cols()).value != 0) return std::nullopt;
  }
  std::vector<FieldElem> x(a.cols(), field.zero());
  for (int i = 0; i < rank; ++i) x[pivot_col[i]] = work.at(i, a.cols());
  return x;
}

std::optional<std::vector<FieldElem>> in_span(
    const std::vector<FieldElem>& v,
    const std::vector<std::vector<FieldElem>>& basis) {
  if (basis.empty()) throw DimensionError("in_span needs a nonempty basis");
  for (const auto& b : basis) {
    if (b.size() != v.size()) {
      throw DimensionError("in_span basis vector length mismatch");
    }
  }
  if (v.empty()) throw DimensionError("in_span target must be nonempty");
  PrimeField field(v[0].p);
  // Columns are the basis vectors; solve for the coefficient vector.
  Matrix a(static_cast<int>(v.size()), static_cast<int>(basis.size()), field);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      check_same_field(basis[j][i], v[0]);
      a.at(static_cast<int>(i), static_cast<int>(j)) = basis[j][i];
    }
  }
  return mat_solve(a, v);
}

}  // namespace convcode
