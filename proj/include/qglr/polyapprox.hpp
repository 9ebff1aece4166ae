#ifndef QGLR_POLYAPPROX_HPP
#define QGLR_POLYAPPROX_HPP

#include <cstddef>

namespace qglr {

// Odd-basis polynomial c0 + c1 x + c3 x^3 + c5 x^5 approximating the sigmoid
// over [lo, hi]. Even-order terms above c0 vanish by the sigmoid's symmetry
// about (0, 1/2) and are fixed at zero structurally.
struct SigmoidPoly {
  double c0 = 0.0;
  double c1 = 0.0;
  double c3 = 0.0;
  double c5 = 0.0;
  double lo = -8.0;
  double hi = 8.0;

  double eval(double x) const;
  bool in_domain(double x) const { return x >= lo && x <= hi; }
};

// Evaluation result carrying the out-of-domain indicator; the value is
// computed as-is either way.
struct PolyEval {
  double value;
  bool domain_exceeded;
};

// The published degree-5 coefficients on [-8, 8].
SigmoidPoly paper_poly();

PolyEval eval(const SigmoidPoly& poly, double x);

// Least-squares fit of the odd basis {1, x, x^3, ...} up to `degree` against
// the exact sigmoid on a uniform grid of n_samples points over [lo, hi]
// (endpoints included), via the normal equations. degree in {1,3,5}; 7 is
// rejected because SigmoidPoly carries no c7.
SigmoidPoly fit_least_squares(int degree, double lo, double hi,
                              std::size_t n_samples);

}  // namespace qglr

#endif
