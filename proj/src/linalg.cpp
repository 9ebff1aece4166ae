#include "qglr/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "qglr/errors.hpp"

namespace qglr {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t order) {
  Matrix m(order, order);
  for (std::size_t i = 0; i < order; ++i) m(i, i) = 1.0;
  return m;
}

SymmetricMatrix::SymmetricMatrix(std::size_t order, double fill)
    : m_(order, order, fill) {}

SymmetricMatrix SymmetricMatrix::from_matrix(const Matrix& m) {
  if (m.rows() != m.cols())
    throw InvalidInputError("symmetric matrix must be square, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i))
        throw InvalidInputError("matrix is not symmetric at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
  SymmetricMatrix s;
  s.m_ = m;
  return s;
}

SymmetricMatrix SymmetricMatrix::scaled_gram(const Matrix& x, double scale) {
  if (x.empty()) throw InvalidInputError("empty design matrix");
  const std::size_t n = x.rows(), p = x.cols();
  SymmetricMatrix s(p);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = j; k < p; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += x(i, j) * x(i, k);
      s.set(j, k, scale * sum);
    }
  }
  return s;
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double value) {
  m_(i, j) = value;
  m_(j, i) = value;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidInputError("matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInputError("matrix difference shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i)
    c.data()[i] = a.data()[i] - b.data()[i];
  return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.empty() || b.empty()) throw InvalidInputError("kron of empty matrix");
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          c(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return c;
}

namespace {

// In-place Gauss-Jordan on [a | rhs], partial pivoting.
void eliminate(Matrix& a, Matrix& rhs) {
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == 0.0) throw NumericError("singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      for (std::size_t j = 0; j < rhs.cols(); ++j) std::swap(rhs(col, j), rhs(pivot, j));
    }
    const double inv = 1.0 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) a(col, j) *= inv;
    for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(col, j) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) a(r, j) -= f * a(col, j);
      for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(r, j) -= f * rhs(col, j);
    }
  }
}

}  // namespace

Matrix invert(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidInputError("cannot invert non-square matrix");
  Matrix a = m;
  Matrix rhs = Matrix::identity(m.rows());
  eliminate(a, rhs);
  return rhs;
}

Vector solve(const Matrix& a, const Vector& b) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw InvalidInputError("solve shape mismatch");
  Matrix work = a;
  Matrix rhs(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  eliminate(work, rhs);
  Vector x(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) x[i] = rhs(i, 0);
  return x;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

}  // namespace

Vector jacobi_eigenvalues(const SymmetricMatrix& sym, double off_tol) {
  Matrix a = sym.matrix();
  const std::size_t n = a.rows();
  if (n == 0) throw InvalidInputError("empty matrix has no eigenvalues");
  double frob = 0.0;
  for (double v : a.data()) frob += v * v;
  frob = std::sqrt(frob);
  // Rotation roundoff leaves residue ~eps*|A|, so the stop threshold scales
  // with the matrix norm once entries exceed O(1).
  const double stop = off_tol * std::max(1.0, frob);
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= stop) {
      Vector ev(n);
      for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
      return ev;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  throw NumericError("jacobi eigensolver did not converge");
}

double min_eigenvalue(const SymmetricMatrix& a, double off_tol) {
  const Vector ev = jacobi_eigenvalues(a, off_tol);
  double m = ev[0];
  for (double v : ev)
    if (v < m) m = v;
  return m;
}

}  // namespace qglr
