#include "qglr/polyapprox.hpp"

#include <cmath>
#include <vector>

#include "qglr/errors.hpp"
#include "qglr/linalg.hpp"
#include "qglr/lrmodel.hpp"

namespace qglr {

double SigmoidPoly::eval(double x) const {
  const double x2 = x * x;
  // Horner over the odd part
  return c0 + x * (c1 + x2 * (c3 + x2 * c5));
}

SigmoidPoly paper_poly() {
  SigmoidPoly p;
  p.c0 = 0.5;
  p.c1 = 0.19131;
  p.c3 = -0.0045963;
  p.c5 = 0.0000412332;
  p.lo = -8.0;
  p.hi = 8.0;
  return p;
}

PolyEval eval(const SigmoidPoly& poly, double x) {
  return PolyEval{poly.eval(x), !poly.in_domain(x)};
}

SigmoidPoly fit_least_squares(int degree, double lo, double hi,
                              std::size_t n_samples) {
  if (degree == 7)
    throw InvalidInputError(
        "degree 7 exceeds the coefficient set this poly type carries");
  if (degree != 1 && degree != 3 && degree != 5)
    throw InvalidInputError("fit degree must be one of 1, 3, 5");
  if (!(lo < hi)) throw InvalidInputError("fit domain is empty");
  const std::size_t terms = static_cast<std::size_t>(degree + 1) / 2 + 1;
  if (n_samples < static_cast<std::size_t>(degree) + 1)
    throw InvalidInputError("need at least degree+1 sample points");

  // Basis powers: 0, 1, 3, 5, 7 (first `terms` of them)
  std::vector<int> powers{0};
  for (int k = 1; k <= degree; k += 2) powers.push_back(k);

  Matrix normal(terms, terms);
  Vector rhs(terms, 0.0);
  const double step = (hi - lo) / static_cast<double>(n_samples - 1);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const double x = lo + static_cast<double>(s) * step;
    const double target = sigmoid(x);
    std::vector<double> basis(terms);
    for (std::size_t t = 0; t < terms; ++t) basis[t] = std::pow(x, powers[t]);
    for (std::size_t r = 0; r < terms; ++r) {
      rhs[r] += basis[r] * target;
      for (std::size_t c = 0; c < terms; ++c) normal(r, c) += basis[r] * basis[c];
    }
  }

  Vector coeff;
  try {
    coeff = solve(normal, rhs);
  } catch (const NumericError&) {
    throw NumericError("sigmoid fit failed: singular normal matrix");
  }

  SigmoidPoly poly;
  poly.lo = lo;
  poly.hi = hi;
  poly.c0 = coeff[0];
  if (terms > 1) poly.c1 = coeff[1];
  if (terms > 2) poly.c3 = coeff[2];
  if (terms > 3) poly.c5 = coeff[3];
  return poly;
}

}  // namespace qglr
