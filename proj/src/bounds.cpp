#include "qglr/bounds.hpp"

#include <cmath>
#include <string>

#include "qglr/errors.hpp"

namespace qglr {

SymmetricMatrix DiagonalBound::as_diagonal_matrix() const {
  SymmetricMatrix m(b_tilde.size());
  for (std::size_t i = 0; i < b_tilde.size(); ++i) m.set(i, i, b_tilde[i]);
  return m;
}

SymmetricMatrix fixed_hessian_bound_binary(const Matrix& x) {
  return SymmetricMatrix::scaled_gram(x, -0.25);
}

SymmetricMatrix fixed_hessian_bound_multiclass(const Matrix& x) {
  return SymmetricMatrix::scaled_gram(x, -0.5);
}

Vector sfh_rowsum_diagonal(const SymmetricMatrix& hbar) {
  const std::size_t n = hbar.order();
  Vector b(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) b[k] += hbar(k, i);
  return b;
}

DiagonalBound quadratic_bound(const SymmetricMatrix& hbar, double epsilon) {
  if (epsilon <= 0.0) throw InvalidInputError("epsilon must be positive");
  const std::size_t n = hbar.order();
  DiagonalBound bound;
  bound.epsilon = epsilon;
  bound.b_tilde.resize(n);
  bound.b_bar.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double row = epsilon;
    for (std::size_t i = 0; i < n; ++i) row += std::abs(hbar(k, i));
    bound.b_tilde[k] = -row;
    bound.b_bar[k] = 1.0 / row;
  }
  return bound;
}

Vector quadratic_gradient(const DiagonalBound& bound, const Vector& g) {
  if (bound.size() != g.size())
    throw InvalidInputError("bound/gradient length mismatch: " +
                            std::to_string(bound.size()) + " vs " +
                            std::to_string(g.size()));
  Vector out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) out[k] = bound.b_bar[k] * g[k];
  return out;
}

bool is_loewner_leq(const SymmetricMatrix& b, const SymmetricMatrix& a, double tol) {
  if (b.order() != a.order())
    throw InvalidInputError("Loewner comparison order mismatch");
  const SymmetricMatrix diff =
      SymmetricMatrix::from_matrix(a.matrix() - b.matrix());
  return min_eigenvalue(diff) >= -tol;
}

bool is_loewner_leq(const DiagonalBound& b, const SymmetricMatrix& a, double tol) {
  if (b.size() != a.order())
    throw InvalidInputError("Loewner comparison order mismatch");
  return is_loewner_leq(b.as_diagonal_matrix(), a, tol);
}

}  // namespace qglr
