#ifndef QGLR_BOUNDS_HPP
#define QGLR_BOUNDS_HPP

#include "qglr/linalg.hpp"

namespace qglr {

// Diagonal lower bound built from absolute row sums of a symmetric matrix.
// b_tilde holds the (strictly negative) diagonal of the bound; b_bar its
// element-wise reciprocal magnitudes, the per-coordinate step scaling.
struct DiagonalBound {
  Vector b_tilde;
  Vector b_bar;
  double epsilon = 1e-8;

  std::size_t size() const { return b_tilde.size(); }
  SymmetricMatrix as_diagonal_matrix() const;
};

// -1/4 X^T X, the classic lower bound for the binary log-likelihood Hessian.
SymmetricMatrix fixed_hessian_bound_binary(const Matrix& x);

// -1/2 X^T X, the multiclass counterpart. Element-wise exactly twice the
// binary bound (both are power-of-two scalings of the same accumulated sums).
SymmetricMatrix fixed_hessian_bound_multiclass(const Matrix& x);

// Signed row sums of hbar, the Bonte-Vercauteren diagonal. Kept for baseline
// comparison; can be zero or positive on sparse data, which is exactly the
// failure mode the absolute-row-sum bound removes.
Vector sfh_rowsum_diagonal(const SymmetricMatrix& hbar);

// b_tilde[k] = -epsilon - sum_i |hbar(k,i)|, b_bar[k] = 1/|b_tilde[k]|.
DiagonalBound quadratic_bound(const SymmetricMatrix& hbar, double epsilon = 1e-8);

// G[k] = b_bar[k] * g[k].
Vector quadratic_gradient(const DiagonalBound& bound, const Vector& g);

// True iff min eigenvalue of (a - b) >= -tol, i.e. b <= a in the Loewner
// order up to tolerance.
bool is_loewner_leq(const SymmetricMatrix& b, const SymmetricMatrix& a, double tol);
bool is_loewner_leq(const DiagonalBound& b, const SymmetricMatrix& a, double tol);

}  // namespace qglr

#endif
