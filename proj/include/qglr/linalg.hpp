#ifndef QGLR_LINALG_HPP
#define QGLR_LINALG_HPP

#include <cstddef>
#include <vector>

namespace qglr {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. Sized for desk-scale problems
// (orders up to a few hundred); no view/expression machinery.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix identity(std::size_t order);

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Square matrix with entries[i][j] == entries[j][i] guaranteed by
// construction: every mutation writes both triangles.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t order, double fill = 0.0);

  // Rejects non-square or non-symmetric (exact comparison) input.
  static SymmetricMatrix from_matrix(const Matrix& m);

  // scale * X^T X without forming the transpose; both triangles share the
  // one accumulated sum, keeping symmetry exact.
  static SymmetricMatrix scaled_gram(const Matrix& x, double scale);

  void set(std::size_t i, std::size_t j, double value);
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  std::size_t order() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
Matrix operator-(const Matrix& a, const Matrix& b);

// Kronecker product: block (i,j) of the result is a(i,j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

// Gauss-Jordan with partial pivoting; throws NumericError on a singular input.
Matrix invert(const Matrix& m);

// Solves a * x = b for square a (same elimination as invert).
Vector solve(const Matrix& a, const Vector& b);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, iterated
// until the off-diagonal Frobenius norm falls below `off_tol`. Returned
// unsorted. Throws NumericError if the sweep cap is hit.
Vector jacobi_eigenvalues(const SymmetricMatrix& a, double off_tol = 1e-12);

double min_eigenvalue(const SymmetricMatrix& a, double off_tol = 1e-12);

}  // namespace qglr

#endif
